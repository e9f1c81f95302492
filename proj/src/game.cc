#include "ipd/game.h"

#include <stdexcept>

namespace ipd {

const char* outcome_name(Outcome o) {
  static const char* names[] = {"cc", "cd", "dc", "dd"};
  return names[static_cast<int>(o)];
}

GameParams GameParams::make(const Rational& T, const Rational& R, const Rational& P, const Rational& S) {
  if (!(T > R)) throw std::invalid_argument("payoffs violate T > R");
  if (!(R > P)) throw std::invalid_argument("payoffs violate R > P");
  if (!(P > S)) throw std::invalid_argument("payoffs violate P > S");
  if (!(2 * R > T + S)) throw std::invalid_argument("payoffs violate 2R > T + S");

  GameParams g;
  g.t_ = T;
  g.r_ = R;
  g.p_ = P;
  g.s_ = S;
  g.mid_ = (T + S) / 2;
  g.pbar_ = P < g.mid_ ? P : g.mid_;
  g.pay_ = {PointQ{R, R}, PointQ{S, T}, PointQ{T, S}, PointQ{P, P}};
  for (int i = 0; i < 4; ++i) g.payd_[i] = to_double(g.pay_[i]);

  if (P > g.mid_) {
    // )(S,T),(P,P)( meets )(R,R),(T,S)(
    Rational m1 = (P - T) / (P - S);
    Rational m2 = (S - R) / (T - R);
    Rational x = (R - m2 * R - T + m1 * S) / (m1 - m2);
    g.wbar_ = {x, T + m1 * (x - S)};
  } else {
    g.wbar_ = {T, S};
  }

  if (g.quadrilateral())
    g.hull_ = {g.pp(), g.ts(), g.rr(), g.st()};
  else
    g.hull_ = {g.ts(), g.rr(), g.st()};
  for (const auto& v : g.hull_) g.hulld_.push_back(to_double(v));
  g.width_ = to_double(T - S);
  return g;
}

std::string GameParams::describe() const {
  return "(T,R,P,S) = (" + to_string(t_) + ", " + to_string(r_) + ", " + to_string(p_) + ", " + to_string(s_) + ")";
}

}  // namespace ipd

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "ipd/rational.h"

namespace ipd {

enum class Move : std::uint8_t { C, D };

// Indexed from X's point of view: cd means X cooperates and Y defects.
enum class Outcome : std::uint8_t { CC = 0, CD = 1, DC = 2, DD = 3 };

inline Outcome make_outcome(Move x, Move y) {
  return static_cast<Outcome>((x == Move::D ? 2 : 0) + (y == Move::D ? 1 : 0));
}
inline Outcome switched(Outcome o) {
  if (o == Outcome::CD) return Outcome::DC;
  if (o == Outcome::DC) return Outcome::CD;
  return o;
}
const char* outcome_name(Outcome o);

template <class Num>
struct BasicPoint {
  Num x{}, y{};

  friend BasicPoint operator+(const BasicPoint& a, const BasicPoint& b) { return {a.x + b.x, a.y + b.y}; }
  friend BasicPoint operator-(const BasicPoint& a, const BasicPoint& b) { return {a.x - b.x, a.y - b.y}; }
  friend BasicPoint operator*(const Num& k, const BasicPoint& a) { return {k * a.x, k * a.y}; }
  friend bool operator==(const BasicPoint& a, const BasicPoint& b) { return a.x == b.x && a.y == b.y; }
};

using Point = BasicPoint<double>;
using PointQ = BasicPoint<Rational>;

template <class Num>
BasicPoint<Num> switched(const BasicPoint<Num>& p) { return {p.y, p.x}; }

inline Point to_double(const PointQ& p) { return {to_double(p.x), to_double(p.y)}; }
inline PointQ exact_point(const Point& p) { return {exact_from_double(p.x), exact_from_double(p.y)}; }

inline double dist(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

template <class Num>
Num cross(const BasicPoint<Num>& o, const BasicPoint<Num>& a, const BasicPoint<Num>& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

class GameParams {
 public:
  // Throws std::invalid_argument naming the violated inequality.
  static GameParams make(const Rational& T, const Rational& R, const Rational& P, const Rational& S);
  static GameParams canonical() { return make(5, 3, 1, 0); }

  const Rational& T() const { return t_; }
  const Rational& R() const { return r_; }
  const Rational& P() const { return p_; }
  const Rational& S() const { return s_; }

  // Payoff pair (X, Y) for an outcome.
  const PointQ& payoff(Outcome o) const { return pay_[static_cast<int>(o)]; }
  const Point& payoff_d(Outcome o) const { return payd_[static_cast<int>(o)]; }

  PointQ st() const { return {s_, t_}; }
  PointQ rr() const { return {r_, r_}; }
  PointQ ts() const { return {t_, s_}; }
  PointQ pp() const { return {p_, p_}; }

  // (T+S)/2
  const Rational& mid() const { return mid_; }
  bool quadrilateral() const { return p_ < mid_; }
  const Rational& p_bar() const { return pbar_; }
  PointQ pbar_point() const { return {pbar_, pbar_}; }
  const PointQ& w_bar() const { return wbar_; }

  // Counter-clockwise vertices of the outcome hull.
  const std::vector<PointQ>& hull_vertices() const { return hull_; }
  const std::vector<Point>& hull_vertices_d() const { return hulld_; }

  double width() const { return width_; }
  double diameter() const { return std::sqrt(2.0) * width_; }

  std::string describe() const;

 private:
  GameParams() = default;

  Rational t_, r_, p_, s_, mid_, pbar_;
  PointQ wbar_;
  std::array<PointQ, 4> pay_;
  std::array<Point, 4> payd_;
  std::vector<PointQ> hull_;
  std::vector<Point> hulld_;
  double width_ = 0;
};

inline GameParams validate_params(const Rational& T, const Rational& R, const Rational& P, const Rational& S) {
  return GameParams::make(T, R, P, S);
}

}  // namespace ipd

#include "ipd/match.h"

#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace ipd {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double uniform01(std::mt19937_64& r) { return static_cast<double>(r() >> 11) * 0x1.0p-53; }

// lcm of the payoff denominators
std::int64_t payoff_scale(const GameParams& g) {
  boost::multiprecision::mpz_int l = 1;
  for (const Rational* v : {&g.T(), &g.R(), &g.P(), &g.S()}) {
    boost::multiprecision::mpz_int d = denominator(*v);
    l = boost::multiprecision::lcm(l, d);
  }
  if (l > (std::int64_t(1) << 40)) throw std::invalid_argument("payoff denominators too large for rational mode");
  return l.convert_to<std::int64_t>();
}

struct Player {
  const Strategy& s;
  bool is_y;
  std::mt19937_64 rng;

  double prob(long k, Outcome prev, const HomPoint* h, const Point& avg) const {
    if (k == 1) return s.initial.cooperation();
    if (k <= s.adoption_round()) return s.prefix[k - 2] == Move::C ? 1.0 : 0.0;
    if (auto m = std::get_if<MarkovPlan>(&s.plan)) {
      Outcome own = is_y ? switched(prev) : prev;
      return m->pd[static_cast<int>(own)];
    }
    if (auto sp = std::get_if<SmalePlan>(&s.plan)) {
      if (h) return sp->evaluate(is_y ? HomPoint{h->y, h->x, h->w} : *h);
      return sp->evaluate(is_y ? switched(avg) : avg);
    }
    const auto& sc = std::get<ScriptedPlan>(s.plan);
    if (sc.moves.empty()) throw std::invalid_argument("empty scripted plan");
    return sc.moves[(k - 1) % sc.moves.size()] == Move::C ? 1.0 : 0.0;
  }
};

}  // namespace

InitialPlay InitialPlay::prob(double p) {
  if (!(p >= 0 && p <= 1)) throw std::invalid_argument("initial probability must lie in [0, 1]");
  return {Kind::prob, p};
}

std::string Strategy::describe() const {
  std::string init = initial.kind == InitialPlay::Kind::c ? "c" : initial.kind == InitialPlay::Kind::d ? "d" : "prob";
  std::string plan_s;
  if (auto m = std::get_if<MarkovPlan>(&plan)) plan_s = m->describe();
  else if (auto sp = std::get_if<SmalePlan>(&plan)) plan_s = sp->describe();
  else plan_s = "scripted(" + std::to_string(std::get<ScriptedPlan>(plan).moves.size()) + ")";
  return "initial " + init + ", N* = " + std::to_string(adoption_round()) + ", " + plan_s;
}

Strategy make_strategy(Plan plan, InitialPlay initial, std::vector<Move> prefix) {
  return Strategy{initial, std::move(prefix), std::move(plan)};
}

Trajectory simulate(const Strategy& x, const Strategy& y, const GameParams& g, const SimOptions& o) {
  if (o.rounds < 1) throw std::invalid_argument("rounds must be at least 1");
  Trajectory t;
  t.g_ = g;
  t.seed_ = o.seed;
  t.w_ = o.weights;
  t.mode_ = o.weights.is_uniform() ? o.mode : Arithmetic::floating;
  const bool rational = t.mode_ == Arithmetic::rational;
  const bool weighted = !o.weights.is_uniform();

  t.out_.reserve(o.rounds);
  t.avg_.reserve(o.rounds);
  std::int64_t G = 1;
  std::array<std::int64_t, 4> px{}, py{};
  if (rational) {
    G = payoff_scale(g);
    std::int64_t big = 0;
    for (int i = 0; i < 4; ++i) {
      Rational a = g.payoff(Outcome(i)).x * G, b = g.payoff(Outcome(i)).y * G;
      px[i] = numerator(a).convert_to<std::int64_t>();
      py[i] = numerator(b).convert_to<std::int64_t>();
      big = std::max({big, std::abs(px[i]), std::abs(py[i]), G});
    }
    if (static_cast<long double>(big) * o.rounds > 4.0e18L)
      throw std::invalid_argument("run too long for rational mode; use float mode");
    t.hom_.reserve(o.rounds);
  }
  if (weighted) t.log_W_.reserve(o.rounds);

  Player X{x, false, std::mt19937_64(splitmix64(o.seed * 2))};
  Player Y{y, true, std::mt19937_64(splitmix64(o.seed * 2 + 1))};
  WeightAccumulator acc(o.weights);
  HomPoint h{0, 0, 0};
  Point sum{0, 0}, avg{0, 0};
  Outcome prev = Outcome::CC;

  for (long k = 1; k <= o.rounds; ++k) {
    const HomPoint* hp = (rational && k > 1) ? &h : nullptr;
    double pxk = X.prob(k, prev, hp, avg);
    double pyk = Y.prob(k, prev, hp, avg);
    Move mx = uniform01(X.rng) < pxk ? Move::C : Move::D;
    Move my = uniform01(Y.rng) < pyk ? Move::C : Move::D;
    Outcome oc = make_outcome(mx, my);
    const Point& S = g.payoff_d(oc);
    t.out_.push_back(oc);
    if (rational) {
      int i = static_cast<int>(oc);
      h.x += px[i];
      h.y += py[i];
      h.w += G;
      t.hom_.push_back(h);
      avg = h.approx();
    } else if (!weighted) {
      sum.x += S.x;
      sum.y += S.y;
      avg = {sum.x / k, sum.y / k};
    } else {
      double lam = acc.advance();
      avg = {avg.x + lam * (S.x - avg.x), avg.y + lam * (S.y - avg.y)};
      t.log_W_.push_back(acc.log_W());
    }
    t.avg_.push_back(avg);
    prev = oc;
  }
  return t;
}

PointQ Trajectory::exact_average(long N) const {
  if (mode_ != Arithmetic::rational) throw std::logic_error("exact averages need a rational-mode run");
  return hom_[N - 1].exact();
}

double Trajectory::log_W(long N) const {
  if (!log_W_.empty()) return log_W_[N - 1];
  return std::log(static_cast<double>(N));
}

double Trajectory::step_weight(long N) const {
  if (log_W_.empty()) return 1.0 / N;
  return std::exp(w_.log_weight(N) - log_W_[N - 1]);
}

std::string Trajectory::csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "round,outcome,SX,SY,sX,sY\n";
  for (long N = 1; N <= rounds(); ++N) {
    Outcome oc = out_[N - 1];
    const PointQ& S = g_.payoff(oc);
    os << N << ',' << outcome_name(oc) << ',' << to_string(S.x) << ',' << to_string(S.y) << ',';
    if (mode_ == Arithmetic::rational) {
      PointQ s = exact_average(N);
      os << to_string(s.x) << ',' << to_string(s.y) << '\n';
    } else {
      os << avg_[N - 1].x << ',' << avg_[N - 1].y << '\n';
    }
  }
  return os.str();
}

void Trajectory::write_csv(const std::string& path) const {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << csv();
}

LawReport check_step_law(const Trajectory& t) {
  LawReport r;
  const double diam = t.game().diameter();
  for (long N = 1; N < t.rounds(); ++N) {
    double d = dist(t.average(N + 1), t.average(N));
    double allowed = t.step_weight(N + 1) * diam;
    double excess = d - allowed * (1 + 1e-12) - 1e-15;
    ++r.checked;
    if (excess > 0) {
      ++r.violations;
      r.worst = std::max(r.worst, excess);
    }
  }
  return r;
}

LawReport check_convexity_law(const Trajectory& t) {
  LawReport r;
  const GameParams& g = t.game();
  if (t.mode() == Arithmetic::rational) {
    PointQ prev = t.exact_average(1);
    if (!(prev == g.payoff(t.outcome(1)))) ++r.violations;
    ++r.checked;
    for (long N = 1; N < t.rounds(); ++N) {
      PointQ next = t.exact_average(N + 1);
      Rational a(N, N + 1), b(1, N + 1);
      const PointQ& S = g.payoff(t.outcome(N + 1));
      PointQ expect{a * prev.x + b * S.x, a * prev.y + b * S.y};
      ++r.checked;
      if (!(expect == next)) {
        ++r.violations;
        r.worst = std::max(r.worst, dist(to_double(expect), to_double(next)));
      }
      prev = std::move(next);
    }
    return r;
  }
  const double tol = 1e-12 * g.width();
  for (long N = 1; N < t.rounds(); ++N) {
    double lam = t.step_weight(N + 1);
    const Point& S = g.payoff_d(t.outcome(N + 1));
    Point s = t.average(N);
    Point expect{(1 - lam) * s.x + lam * S.x, (1 - lam) * s.y + lam * S.y};
    double e = dist(expect, t.average(N + 1));
    ++r.checked;
    if (e > tol) {
      ++r.violations;
      r.worst = std::max(r.worst, e);
    }
  }
  return r;
}

Dist4<double> outcome_frequencies(const Trajectory& t, long from, long to) {
  Dist4<double> f{};
  if (from < 1) from = 1;
  if (to > t.rounds()) to = t.rounds();
  if (to < from) return f;
  for (long k = from; k <= to; ++k) f[static_cast<int>(t.outcome(k))] += 1;
  for (auto& v : f) v /= double(to - from + 1);
  return f;
}

}  // namespace ipd

#include "ipd/markov.h"

#include <algorithm>
#include <cmath>

namespace ipd {

MarkovPlan MarkovPlan::make(const Rational& p1, const Rational& p2, const Rational& p3, const Rational& p4) {
  MarkovPlan m;
  m.p = {p1, p2, p3, p4};
  for (int i = 0; i < 4; ++i) {
    if (m.p[i] < 0 || m.p[i] > 1)
      throw std::invalid_argument("Markov plan entry p" + std::to_string(i + 1) + " outside [0, 1]");
    m.pd[i] = to_double(m.p[i]);
  }
  return m;
}

std::string MarkovPlan::describe() const {
  return "(" + to_string(p[0]) + ", " + to_string(p[1]) + ", " + to_string(p[2]) + ", " + to_string(p[3]) + ")";
}

MarkovPlan markov_tft() { return MarkovPlan::make(1, 0, 1, 0); }
MarkovPlan markov_repeat() { return MarkovPlan::make(1, 1, 0, 0); }
MarkovPlan markov_allc() { return MarkovPlan::make(1, 1, 1, 1); }
MarkovPlan markov_alld() { return MarkovPlan::make(0, 0, 0, 0); }

namespace {

template <class Num>
Matrix4<Num> build(const std::array<Num, 4>& p, const std::array<Num, 4>& q) {
  Matrix4<Num> m;
  for (int o = 0; o < 4; ++o) {
    const Num& a = p[o];
    const Num& b = q[static_cast<int>(switched(static_cast<Outcome>(o)))];
    m[o] = {a * b, a * (1 - b), (1 - a) * b, (1 - a) * (1 - b)};
  }
  return m;
}

template <class Num>
Num absval(const Num& x) { return x < 0 ? Num(-x) : x; }

// Solves the stationary equations restricted to J with the last one replaced by sum v = 1.
template <class Num>
Dist4<Num> stationary_on(const Matrix4<Num>& m, const std::vector<int>& J) {
  const size_t n = J.size();
  std::vector<std::vector<Num>> a(n, std::vector<Num>(n + 1, Num(0)));
  for (size_t r = 0; r + 1 < n; ++r) {
    // column J[r] of (M - I) restricted to J
    for (size_t c = 0; c < n; ++c) a[r][c] = m[J[c]][J[r]] - (c == r ? Num(1) : Num(0));
  }
  for (size_t c = 0; c < n; ++c) a[n - 1][c] = 1;
  a[n - 1][n] = 1;
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    for (size_t r = col + 1; r < n; ++r)
      if (absval(a[r][col]) > absval(a[piv][col])) piv = r;
    if (a[piv][col] == 0) throw SolveError("singular stationary system", 0);
    std::swap(a[piv], a[col]);
    for (size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Num f = a[r][col] / a[col][col];
      for (size_t c = col; c <= n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  Dist4<Num> v{};
  for (size_t i = 0; i < 4; ++i) v[i] = 0;
  for (size_t r = 0; r < n; ++r) v[J[r]] = a[r][n] / a[r][r];
  return v;
}

template <class Num>
TerminalSetReport<Num> terminal_sets_impl(const Matrix4<Num>& m) {
  bool reach[4][4];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) reach[i][j] = i == j || m[i][j] > 0;
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) reach[i][j] = reach[i][j] || (reach[i][k] && reach[k][j]);

  TerminalSetReport<Num> rep;
  bool done[4] = {false, false, false, false};
  for (int i = 0; i < 4; ++i) {
    if (done[i]) continue;
    std::vector<int> scc;
    for (int j = 0; j < 4; ++j)
      if (reach[i][j] && reach[j][i]) scc.push_back(j);
    for (int j : scc) done[j] = true;
    // terminal iff everything reachable from i is back in the class
    bool closed = true;
    for (int j = 0; j < 4; ++j)
      if (reach[i][j] && !reach[j][i]) closed = false;
    if (closed) {
      TerminalSet<Num> t;
      t.states = scc;
      t.stationary = stationary_on(m, scc);
      rep.sets.push_back(std::move(t));
    } else {
      rep.transient.insert(rep.transient.end(), scc.begin(), scc.end());
    }
  }
  std::sort(rep.transient.begin(), rep.transient.end());
  return rep;
}

}  // namespace

Matrix4<Rational> transition_matrix(const MarkovPlan& x, const MarkovPlan& y) { return build(x.p, y.p); }
Matrix4<double> transition_matrix_d(const MarkovPlan& x, const MarkovPlan& y) { return build(x.pd, y.pd); }

TerminalSetReport<Rational> terminal_sets(const Matrix4<Rational>& m) { return terminal_sets_impl(m); }

TerminalSetReport<double> terminal_sets(const Matrix4<double>& m) {
  auto rep = terminal_sets_impl(m);
  for (const auto& t : rep.sets) {
    double res = 0;
    for (int j = 0; j < 4; ++j) {
      double s = 0;
      for (int i = 0; i < 4; ++i) s += t.stationary[i] * m[i][j];
      res = std::max(res, std::abs(s - t.stationary[j]));
    }
    if (res > 1e-10) throw SolveError("stationary residual " + std::to_string(res) + " exceeds 1e-10", res);
  }
  return rep;
}

PointQ limiting_payoff(const Dist4<Rational>& v, const GameParams& g) {
  PointQ s{0, 0};
  for (int i = 0; i < 4; ++i) s = s + v[i] * g.payoff(static_cast<Outcome>(i));
  return s;
}

Point limiting_payoff(const Dist4<double>& v, const GameParams& g) {
  Point s{0, 0};
  for (int i = 0; i < 4; ++i) s = s + v[i] * g.payoff_d(static_cast<Outcome>(i));
  return s;
}

MarkovFlags classify_markov(const MarkovPlan& m, const GameParams& g) {
  const auto& p = m.p;
  MarkovFlags f;
  f.agreeable = p[0] == 1;
  f.firm = p[3] == 0;
  f.generous = p[0] == 1 && p[1] > 0 && p[1] < 1 && p[3] > 0;
  const Rational& T = g.T();
  const Rational& R = g.R();
  f.protection_inequalities = p[0] == 1 && (T - R) / (R - g.S()) * p[2] < 1 - p[1] &&
                              (T - R) / (R - g.P()) * p[3] < 1 - p[1];
  f.good = f.protection_inequalities && f.generous;
  return f;
}

PointQ alld_vs_generous_payoff(const MarkovPlan& m, const GameParams& g) {
  if (!classify_markov(m, g).generous)
    throw std::invalid_argument("plan " + m.describe() + " is not generous");
  Rational eps = m.p[3] / (m.p[3] + 1 - m.p[1]);
  return g.pp() + eps * PointQ{g.S() - g.P(), g.T() - g.P()};
}

WeightedDistribution weighted_distribution_average(const Matrix4<double>& m, const Dist4<double>& v1,
                                                   const WeightSequence& w, long N) {
  if (N < 1) throw std::invalid_argument("N must be at least 1");
  WeightAccumulator acc(w);
  Dist4<double> v = v1, avg{};
  for (long n = 1; n <= N; ++n) {
    double lam = acc.advance();
    for (int i = 0; i < 4; ++i) avg[i] = (1 - lam) * avg[i] + lam * v[i];
    Dist4<double> nv{};
    for (int j = 0; j < 4; ++j)
      for (int i = 0; i < 4; ++i) nv[j] += v[i] * m[i][j];
    v = nv;
  }
  WeightedDistribution out;
  out.average = avg;
  for (int j = 0; j < 4; ++j) {
    double s = 0;
    for (int i = 0; i < 4; ++i) s += avg[i] * m[i][j];
    out.residual += std::abs(avg[j] - s);
  }
  double lW = acc.log_W();
  double lwn = acc.log_w();
  double lw_next = w.log_weight(N + 1);
  double hi = std::max(lwn, lw_next), lo = std::min(lwn, lw_next);
  double ldiff = hi == lo ? -INFINITY : hi + std::log1p(-std::exp(lo - hi));
  double lDelta = log_add(acc.log_Delta(), ldiff);
  out.bound = std::exp(log_add(log_add(w.log_weight(1), lw_next), lDelta) - lW);
  return out;
}

}  // namespace ipd

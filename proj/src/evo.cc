#include "ipd/evo.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace ipd {

std::string PayoffMatrix::json() const {
  nlohmann::json j;
  j["exact"] = nlohmann::json::array();
  for (const auto& row : exact) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& v : row) r.push_back(to_string(v));
    j["exact"].push_back(r);
  }
  j["value"] = a;
  return j.dump();
}

PayoffMatrix payoff_matrix_from(const std::vector<std::vector<Rational>>& a) {
  PayoffMatrix A;
  A.exact = a;
  for (const auto& row : a) {
    if (row.size() != a.size()) throw std::invalid_argument("payoff matrix must be square");
    std::vector<double> r;
    for (const auto& v : row) r.push_back(to_double(v));
    A.a.push_back(std::move(r));
  }
  return A;
}

PayoffMatrix build_payoff_matrix(const std::vector<SmalePlan>& roster) {
  if (roster.empty()) throw std::invalid_argument("empty roster");
  const GameParams& g = roster[0].game();
  size_t n = roster.size();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  for (size_t i = 0; i < n; ++i) {
    if (!roster[i].is_simple()) throw std::invalid_argument("roster member " + std::to_string(i) + " is not a simple plan");
    for (size_t j = 0; j < n; ++j) {
      PredictedLimit p;
      try {
        p = predicted_limit(roster[i], roster[j]);
      } catch (const std::domain_error&) {
        throw std::invalid_argument("roster pairing (" + std::to_string(i) + ", " + std::to_string(j) +
                                    ") is an untagged degenerate case");
      }
      switch (p.kind) {
        case PredictedLimit::Kind::point: a[i][j] = p.point.x; break;
        case PredictedLimit::Kind::diagonal: a[i][j] = g.R(); break;
        case PredictedLimit::Kind::codiagonal: a[i][j] = g.mid(); break;
      }
    }
  }
  return payoff_matrix_from(a);
}

double row_payoff(const PayoffMatrix& A, const std::vector<double>& xi, size_t i) {
  double s = 0;
  for (size_t j = 0; j < xi.size(); ++j) s += A.a[i][j] * xi[j];
  return s;
}

double mean_payoff(const PayoffMatrix& A, const std::vector<double>& xi) {
  double s = 0;
  for (size_t i = 0; i < xi.size(); ++i) s += xi[i] * row_payoff(A, xi, i);
  return s;
}

std::vector<double> replicator_field(const std::vector<double>& xi, const PayoffMatrix& A) {
  size_t n = xi.size();
  std::vector<double> row(n), v(n);
  double mean = 0;
  for (size_t i = 0; i < n; ++i) {
    row[i] = row_payoff(A, xi, i);
    mean += xi[i] * row[i];
  }
  for (size_t i = 0; i < n; ++i) v[i] = xi[i] * (row[i] - mean);
  return v;
}

std::string Orbit::csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "t";
  if (!xi.empty())
    for (size_t i = 0; i < xi[0].size(); ++i) os << ",xi_" << i + 1;
  os << '\n';
  for (size_t k = 0; k < t.size(); ++k) {
    os << t[k];
    for (double v : xi[k]) os << ',' << v;
    os << '\n';
  }
  return os.str();
}

namespace {

std::vector<double> rk4(const std::vector<double>& x, const PayoffMatrix& A, double h) {
  size_t n = x.size();
  auto axpy = [&](const std::vector<double>& k, double c) {
    std::vector<double> y(n);
    for (size_t i = 0; i < n; ++i) y[i] = x[i] + c * k[i];
    return y;
  };
  auto k1 = replicator_field(x, A);
  auto k2 = replicator_field(axpy(k1, h / 2), A);
  auto k3 = replicator_field(axpy(k2, h / 2), A);
  auto k4 = replicator_field(axpy(k3, h), A);
  std::vector<double> y(n);
  for (size_t i = 0; i < n; ++i) y[i] = x[i] + h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
  return y;
}

}  // namespace

Orbit integrate(const std::vector<double>& xi0, const PayoffMatrix& A, const IntegrateOptions& o) {
  size_t n = xi0.size();
  if (n != A.size()) throw std::invalid_argument("state and matrix sizes differ");
  double total = 0;
  for (double v : xi0) {
    if (v < 0) throw std::invalid_argument("initial state has a negative entry");
    total += v;
  }
  if (std::abs(total - 1) > 1e-9) throw std::invalid_argument("initial state must sum to 1");
  Orbit orb;
  std::vector<double> x = xi0;
  for (double& v : x) v /= total;
  double t = 0;
  auto record = [&]() {
    orb.t.push_back(t);
    orb.xi.push_back(x);
  };
  auto H = [&](const std::vector<double>& s, int i, int j) { return std::log(s[i]) - std::log(s[j]); };
  auto check_fix = [&]() {
    auto it = std::max_element(x.begin(), x.end());
    if (*it >= o.fixation) {
      orb.fixated = true;
      orb.fixated_at = int(it - x.begin());
    }
  };
  record();
  check_fix();
  long k = 0;
  while (t < o.t_max - 1e-12 && !(orb.fixated && o.stop_at_fixation)) {
    double h = std::min(o.step, o.t_max - t);
    std::vector<double> y;
    for (int tries = 0;; ++tries) {
      y = rk4(x, A, h);
      bool bad = false;
      for (double v : y) bad = bad || v < -1e-12;
      if (!bad) break;
      if (tries > 30) throw std::runtime_error("replicator step unstable");
      h /= 2;
      ++orb.halvings;
    }
    double s = 0;
    for (double& v : y) {
      if (v < 0) v = 0;
      s += v;
    }
    orb.max_simplex_error = std::max(orb.max_simplex_error, std::abs(s - 1));
    for (double& v : y) v /= s;
    for (auto [i, j] : o.monitor) {
      if (x[i] > 0 && x[j] > 0 && y[i] > 0 && y[j] > 0) {
        double h0 = H(x, i, j), h1 = H(y, i, j);
        if (h1 < h0 - 1e-12 * (1 + std::abs(h0))) ++orb.monotonicity_violations;
      }
    }
    x = std::move(y);
    t += h;
    ++k;
    ++orb.steps;
    check_fix();
    if (o.record_every > 0 && k % o.record_every == 0) record();
  }
  if (orb.t.back() != t) record();
  orb.final_state = x;
  orb.final_time = t;
  return orb;
}

bool is_ess(size_t i, const PayoffMatrix& A) {
  for (size_t j = 0; j < A.size(); ++j)
    if (j != i && !(A.exact[j][i] < A.exact[i][i])) return false;
  return true;
}

bool weakly_dominates(size_t i, size_t j, const std::vector<size_t>& J, const PayoffMatrix& A) {
  bool has_i = false, has_j = false;
  for (size_t k : J) has_i |= k == i, has_j |= k == j;
  if (!has_i || !has_j || i == j) return false;
  // strict at k = i or at k = j, either one
  bool strict = false;
  for (size_t k : J) {
    if (A.exact[j][k] > A.exact[i][k]) return false;
    if ((k == i || k == j) && A.exact[j][k] < A.exact[i][k]) strict = true;
  }
  return strict;
}

bool dominates(size_t i, size_t j, const std::vector<size_t>& J, const PayoffMatrix& A) {
  bool has_i = false, has_j = false;
  for (size_t k : J) has_i |= k == i, has_j |= k == j;
  if (!has_i || !has_j || i == j) return false;
  for (size_t k : J)
    if (!(A.exact[j][k] < A.exact[i][k])) return false;
  return true;
}

bool dominates_sequence(size_t i, const std::vector<size_t>& seq, const PayoffMatrix& A) {
  std::vector<size_t> all(A.size());
  for (size_t k = 0; k < all.size(); ++k) all[k] = k;
  size_t n = seq.size();
  if (n == 0) return true;
  for (size_t m = 1; m <= n; ++m) {
    bool ok = true;
    for (size_t p = 0; p < m && ok; ++p) ok = weakly_dominates(i, seq[p], all, A);
    std::vector<size_t> J = all;
    for (size_t p = 0; p < n && ok; ++p) {
      if (p >= m) ok = dominates(i, seq[p], J, A);
      J.erase(std::remove(J.begin(), J.end(), seq[p]), J.end());
    }
    if (ok) return true;
  }
  return false;
}

TheoremCheck check_theorem_hypotheses(const std::vector<SmalePlan>& roster, int i_star) {
  TheoremCheck c;
  if (roster.empty()) return c;
  const GameParams& g = roster[0].game();
  for (const auto& p : roster)
    if (!p.is_simple()) throw std::invalid_argument("roster members must be simple plans");
  if (i_star < 0) {
    for (size_t i = 0; i < roster.size(); ++i)
      if (is_protection_line(roster[i].line(), g)) {
        i_star = int(i);
        break;
      }
  }
  c.i_star = i_star;
  if (i_star < 0 || size_t(i_star) >= roster.size()) {
    c.notes.push_back("no member has a protection line");
    return c;
  }
  const Line& ls = roster[i_star].line();
  bool protection = is_protection_line(ls, g);
  if (!protection) c.notes.push_back("l_{i*} is not a protection line");

  bool rr_free = true, horizontals = true, nonneg = true;
  for (size_t j = 0; j < roster.size(); ++j) {
    if (int(j) == i_star) continue;
    const Line& l = roster[j].line();
    if (l.contains(g.rr())) {
      rr_free = false;
      c.notes.push_back("member " + std::to_string(j) + " passes through (R,R)");
    }
    auto m = l.slope();
    if (!(m && *m == 0 && l.y_at(Rational(0)) >= g.P() && l.y_at(Rational(0)) < g.R())) horizontals = false;
  }
  for (const auto& p : roster) {
    auto m = p.line().slope();
    if (!m || *m < 0) nonneg = false;
  }
  if (!nonneg) c.notes.push_back("some member has negative slope");
  c.ess_theorem = protection && rr_free;
  c.equalizer_theorem = protection && horizontals && roster.size() > 1;

  auto ms = ls.slope();
  bool good_line = ms && *ms > 0 && *ms < 1 && ls.contains(g.rr());
  if (!good_line) c.notes.push_back("l_{i*} is not a line through (R,R) with slope strictly between 0 and 1");
  const AffineMap& Ls = ls.map();
  std::vector<size_t> below;
  std::vector<std::pair<double, size_t>> rest;
  bool horizontals_below = true;
  for (size_t j = 0; j < roster.size(); ++j) {
    if (int(j) == i_star) continue;
    const Line& l = roster[j].line();
    auto seg = clip_to_hull(l, g);
    bool is_below = !seg.empty();
    for (const auto& q : seg) is_below = is_below && Ls(q) <= 0;
    auto m = l.slope();
    if (is_below) {
      below.push_back(j);
      continue;
    }
    if (m && *m == 0) horizontals_below = false;
    if (!good_line) continue;
    auto v = line_intersection(l, ls);
    auto w = line_intersection(switch_line(l), ls);
    if (v.kind != LineIntersection::Kind::point || w.kind != LineIntersection::Kind::point) {
      c.vw_ordered = false;
      continue;
    }
    rest.push_back({to_double(v.point.x), j});
    c.vw.push_back({to_double(v.point.x), to_double(w.point.x)});
  }
  if (!horizontals_below) c.notes.push_back("a horizontal member is not below l_{i*}");
  std::sort(c.vw.begin(), c.vw.end());
  std::sort(rest.begin(), rest.end());
  for (const auto& [vx, wx] : c.vw)
    if (!(vx < wx)) c.vw_ordered = false;
  c.sequence = below;
  for (const auto& r : rest) c.sequence.push_back(r.second);
  c.global_theorem = good_line && rr_free && nonneg && horizontals_below;
  return c;
}

}  // namespace ipd

#include "ipd/path.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ipd {

SeparationPath::SeparationPath(const GameParams& g, std::vector<PointQ> vertices) : v_(std::move(vertices)) {
  if (v_.empty()) throw std::invalid_argument("a path needs at least one vertex");
  for (const auto& p : v_) vd_.push_back(to_double(p));
  graph_ = true;
  for (size_t i = 0; i + 1 < v_.size(); ++i)
    if (!(v_[i].x < v_[i + 1].x)) graph_ = false;
  if (!graph_) return;
  for (size_t i = 0; i < v_.size(); ++i) xcut_.emplace_back(AffineMap(1, 0, -v_[i].x), g);
  ycut_ = SignTest(AffineMap(0, 1, -v_[0].y), g);
  for (size_t i = 0; i + 1 < v_.size(); ++i) edge_.emplace_back(Line::through(v_[i], v_[i + 1]).map(), g);
}

template <class Pt>
int SeparationPath::side_impl(const Pt& s) const {
  if (!graph_) throw std::logic_error("side() on a path that is not a graph");
  const size_t n = v_.size();
  if (xcut_[0].sign(s) < 0) return 1;
  if (xcut_[n - 1].sign(s) > 0) return -1;
  if (n == 1) {
    return ycut_.sign(s);
  }
  size_t lo = 0, hi = n - 2;
  while (lo < hi) {
    size_t mid = (lo + hi + 1) / 2;
    if (xcut_[mid].sign(s) >= 0)
      lo = mid;
    else
      hi = mid - 1;
  }
  return edge_[lo].sign(s);
}

int SeparationPath::side(const PointQ& s) const { return side_impl(s); }
int SeparationPath::side(const Point& s) const { return side_impl(s); }
int SeparationPath::side(const HomPoint& s) const { return side_impl(s); }

bool SeparationPath::contains(const PointQ& s) const {
  if (v_.size() == 1) return v_[0] == s;
  for (size_t i = 0; i + 1 < v_.size(); ++i)
    if (on_segment(v_[i], v_[i + 1], s)) return true;
  return false;
}

double SeparationPath::distance(const Point& s) const {
  if (vd_.size() == 1) return dist(vd_[0], s);
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i + 1 < vd_.size(); ++i) best = std::min(best, segment_distance(vd_[i], vd_[i + 1], s));
  return best;
}

Point SeparationPath::peak() const {
  Point best = vd_[0];
  for (const auto& p : vd_)
    if (p.y > best.y) best = p;
  return best;
}

std::vector<Line> SeparationPath::edge_lines() const {
  std::vector<Line> out;
  for (size_t i = 0; i + 1 < v_.size(); ++i)
    if (!(v_[i] == v_[i + 1])) out.push_back(Line::through(v_[i], v_[i + 1]));
  return out;
}

std::vector<Point> sample_by_arclength(const std::vector<Point>& poly, int n) {
  if (poly.size() == 1 || n < 2) return std::vector<Point>(std::max(n, 1), poly[0]);
  std::vector<double> cum(poly.size(), 0.0);
  for (size_t i = 1; i < poly.size(); ++i) cum[i] = cum[i - 1] + dist(poly[i - 1], poly[i]);
  const double total = cum.back();
  std::vector<Point> out;
  size_t seg = 0;
  for (int k = 0; k < n; ++k) {
    double target = total * k / (n - 1);
    while (seg + 2 < poly.size() && cum[seg + 1] < target) ++seg;
    double len = cum[seg + 1] - cum[seg];
    double t = len > 0 ? std::clamp((target - cum[seg]) / len, 0.0, 1.0) : 0.0;
    out.push_back({poly[seg].x + t * (poly[seg + 1].x - poly[seg].x), poly[seg].y + t * (poly[seg + 1].y - poly[seg].y)});
  }
  out.back() = poly.back();
  return out;
}

namespace {

// Float polygon that knows which of its edges lie on the hull boundary.
struct FastPoly {
  std::vector<Point> v;
  std::vector<char> boundary;

  FastPoly(const ConvexPolygon& p, const GameParams& g) : v(p.vertices_d()) {
    const auto& vq = p.vertices();
    const auto& h = g.hull_vertices();
    for (size_t i = 0; i < vq.size(); ++i) {
      const PointQ& a = vq[i];
      const PointQ& b = vq[(i + 1) % vq.size()];
      bool on = false;
      for (size_t j = 0; j < h.size() && !on; ++j) {
        const PointQ& u = h[j];
        const PointQ& w = h[(j + 1) % h.size()];
        on = on_segment(u, w, a) && on_segment(u, w, b);
      }
      boundary.push_back(on);
    }
  }

  double distance(const Point& q) const {
    if (v.size() == 1) return dist(v[0], q);
    if (v.size() == 2) return segment_distance(v[0], v[1], q);
    bool inside = true;
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < v.size(); ++i) {
      const Point& a = v[i];
      const Point& b = v[(i + 1) % v.size()];
      if (cross(a, b, q) < 0) inside = false;
      best = std::min(best, segment_distance(a, b, q));
    }
    return inside ? 0.0 : best;
  }

  bool interior(const Point& q, double tol) const {
    if (v.size() < 3) return false;
    for (size_t i = 0; i < v.size(); ++i) {
      const Point& a = v[i];
      const Point& b = v[(i + 1) % v.size()];
      double c = cross(a, b, q) / dist(a, b);
      if (c < -tol) return false;
      if (c <= tol && !boundary[i]) return false;
    }
    return true;
  }
};

}  // namespace

PathReport validate_path(const GameParams& g, const SeparationPath& c, bool strict, int sample_n) {
  PathReport rep;
  const double tol = 10 * hull_tolerance(g);
  auto fail = [&](std::string clause, Point a, Point b) {
    rep.ok = false;
    if (rep.violations.size() < 32) rep.violations.push_back({std::move(clause), a, b});
  };
  const auto& vd = c.vertices_d();
  for (size_t i = 0; i + 1 < vd.size(); ++i)
    if (!(c.vertices()[i].x < c.vertices()[i + 1].x)) fail("projection to the first coordinate is not injective", vd[i], vd[i + 1]);
  for (const auto& p : vd)
    if (!in_hull(g, p, tol)) fail("vertex outside the hull", p, p);
  Point pbar = to_double(g.pbar_point()), st = to_double(g.st()), rr = to_double(g.rr()), ts = to_double(g.ts());
  if (segment_distance(pbar, st, vd.front()) > tol) fail("first endpoint not on [(Pbar,Pbar),(S,T)]", vd.front(), vd.front());
  if (segment_distance(rr, ts, vd.back()) > tol) fail("last endpoint not on [(R,R),(T,S)]", vd.back(), vd.back());

  auto samples = sample_by_arclength(vd, sample_n);
  std::vector<FastPoly> up, low;
  for (const auto& s : samples) {
    PointQ sq = exact_point(s);
    up.emplace_back(upper_triangle(g, sq), g);
    low.emplace_back(lower_quadrangle(g, sq), g);
  }
  for (size_t i = 0; i < samples.size(); ++i) {
    for (size_t j = 0; j < samples.size(); ++j) {
      if (i == j || dist(samples[i], samples[j]) < 1e-12) continue;
      const Point& q = samples[j];
      if (strict) {
        if (up[i].distance(q) <= tol) fail("strict: point of C in T(s)", samples[i], q);
        else if (low[i].distance(q) <= tol) fail("strict: point of C in Q(s)", samples[i], q);
      } else {
        if (up[i].interior(q, tol)) fail("(*): point of C in interior of T(s)", samples[i], q);
        else if (low[i].interior(q, tol)) fail("(*): point of C in interior of Q(s)", samples[i], q);
      }
    }
  }
  FastPoly qw(lower_quadrangle(g, g.w_bar()), g);
  for (const auto& q : samples)
    if (qw.interior(q, tol)) fail("point of C in interior of Q(Wbar)", to_double(g.w_bar()), q);
  return rep;
}

namespace {

PointQ left_boundary_at(const GameParams& g, const Rational& h) {
  // on [(Pbar,Pbar),(S,T)]
  const Rational& pb = g.p_bar();
  return {pb + (h - pb) * (g.S() - pb) / (g.T() - pb), h};
}

PointQ right_boundary_at(const GameParams& g, const Rational& h) {
  // on [(R,R),(T,S)]
  return {g.R() + (g.R() - h) * (g.T() - g.R()) / (g.R() - g.S()), h};
}

template <class Make>
PointQ choose_corner(const GameParams& g, const PointQ& peak, Make make, bool left) {
  Rational gap = peak.y - g.P();
  for (int k = 0; k < 80; ++k) {
    gap /= 2;
    PointQ c = make(peak.y - gap);
    if (c == peak) continue;
    Line l = Line::through(left ? c : peak, left ? peak : c);
    if (is_strict(l, g)) return c;
  }
  throw std::domain_error("no strict separation line through the peak was found");
}

}  // namespace

SeparationPath path_from_peak(const GameParams& g, const PointQ& peak) {
  if (!(peak.y > g.P()) || !(peak.y < g.R()))
    throw std::invalid_argument("path_from_peak needs P < s*_Y < R");
  if (!in_hull(g, peak)) throw std::invalid_argument("path_from_peak needs s* in the hull");
  bool on_left = on_segment(g.pbar_point(), g.st(), peak);
  bool on_right = on_segment(g.rr(), g.ts(), peak);
  auto left_at = [&](const Rational& h) { return left_boundary_at(g, h); };
  auto right_at = [&](const Rational& h) { return right_boundary_at(g, h); };
  if (on_left) return SeparationPath(g, {peak, choose_corner(g, peak, right_at, false)});
  if (on_right) return SeparationPath(g, {choose_corner(g, peak, left_at, true), peak});
  return SeparationPath(g, {choose_corner(g, peak, left_at, true), peak, choose_corner(g, peak, right_at, false)});
}

double slope_plus(const GameParams& g, const Point& s) {
  double R = to_double(g.R()), P = to_double(g.P());
  return s.y >= s.x ? (R - s.y) / (R - s.x) : (s.y - P) / (s.x - P);
}

double slope_minus(const GameParams& g, const Point& s) {
  double T = to_double(g.T()), S = to_double(g.S());
  return s.x + s.y >= T + S ? (T - s.y) / (s.x - S) : (s.y - S) / (T - s.x);
}

namespace {

double ode_slope(const GameParams& g, const Point& s) { return 0.5 * (slope_plus(g, s) - slope_minus(g, s)); }

// Parameter at which the ray p + t d leaves the hull.
double exit_parameter(const GameParams& g, const Point& p, const Point& d) {
  const auto& h = g.hull_vertices_d();
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < h.size(); ++i) {
    const Point& a = h[i];
    const Point& b = h[(i + 1) % h.size()];
    double f = std::max(0.0, cross(a, b, p));
    double df = (b.x - a.x) * d.y - (b.y - a.y) * d.x;
    if (df < 0) best = std::min(best, -f / df);
  }
  return best;
}

std::vector<Point> integrate_one_way(const GameParams& g, Point p, double h, double tol) {
  std::vector<Point> out;
  const int max_steps = 100000;
  for (int k = 0; k < max_steps; ++k) {
    double k1 = ode_slope(g, p);
    double k2 = ode_slope(g, {p.x + h / 2, p.y + h / 2 * k1});
    double k3 = ode_slope(g, {p.x + h / 2, p.y + h / 2 * k2});
    double k4 = ode_slope(g, {p.x + h, p.y + h * k3});
    Point q{p.x + h, p.y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)};
    if (!std::isfinite(q.y) || !in_hull(g, q, tol)) {
      if (!std::isfinite(k1)) return out;
      Point d{h, h * k1};
      double t = exit_parameter(g, p, d);
      if (std::isfinite(t) && t > 0) {
        Point e{p.x + t * d.x, p.y + t * d.y};
        if (dist(e, p) > 1e-12) out.push_back(e);
      }
      return out;
    }
    out.push_back(q);
    p = q;
  }
  throw std::domain_error("ODE integration did not leave the hull");
}

}  // namespace

SeparationPath path_from_ode(const GameParams& g, const Point& start, int steps_across) {
  if (!g.quadrilateral()) throw std::invalid_argument("path_from_ode needs P < (T+S)/2");
  if (steps_across < 10) throw std::invalid_argument("path_from_ode needs at least 10 steps across");
  const double tol = 10 * hull_tolerance(g);
  if (!in_hull(g, start, tol)) throw std::invalid_argument("ODE start outside the hull");
  if (!std::isfinite(ode_slope(g, start))) throw std::invalid_argument("ODE slope undefined at the start");
  const double h = g.width() / steps_across;
  auto right = integrate_one_way(g, start, h, tol);
  auto left = integrate_one_way(g, start, -h, tol);
  std::vector<Point> pts(left.rbegin(), left.rend());
  pts.push_back(start);
  pts.insert(pts.end(), right.begin(), right.end());

  Point pbar = to_double(g.pbar_point()), st = to_double(g.st()), rr = to_double(g.rr()), ts = to_double(g.ts());
  const double end_tol = 1e-6 * g.width();
  if (segment_distance(pbar, st, pts.front()) > end_tol || segment_distance(rr, ts, pts.back()) > end_tol)
    throw std::domain_error("integration exits the hull without meeting both boundary segments");
  std::vector<PointQ> q;
  for (const auto& p : pts) q.push_back(exact_point(p));
  return SeparationPath(g, std::move(q));
}

FullHull::FullHull(const GameParams& g, const std::vector<PointQ>& c, HullSide side, bool polyline) {
  if (c.empty()) throw std::invalid_argument("full hull of an empty set");
  std::vector<PointQ> fixed;
  if (side == HullSide::upper)
    fixed = {g.st(), g.rr()};
  else
    fixed = {g.ts(), g.pp(), g.pbar_point()};
  auto piece = [&](std::vector<PointQ> pts) {
    pts.insert(pts.end(), fixed.begin(), fixed.end());
    pieces_.emplace_back(std::move(pts));
  };
  if (!polyline || c.size() == 1) {
    for (const auto& p : c) piece({p});
  } else {
    for (size_t i = 0; i + 1 < c.size(); ++i) piece({c[i], c[i + 1]});
  }
}

bool FullHull::contains(const PointQ& q) const {
  for (const auto& p : pieces_)
    if (p.contains(q)) return true;
  return false;
}

double FullHull::distance(const Point& q) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : pieces_) {
    best = std::min(best, p.distance(q));
    if (best == 0) break;
  }
  return best;
}

bool FullHull::contains(const Point& q, double tol) const { return distance(q) <= tol; }

PolylineIntersection polyline_intersections(const std::vector<Point>& a, const std::vector<Point>& b,
                                            double cluster) {
  PolylineIntersection out;
  std::vector<Point> raw;
  for (size_t i = 0; i + 1 < a.size(); ++i) {
    const Point& p = a[i];
    const Point& p2 = a[i + 1];
    double axlo = std::min(p.x, p2.x), axhi = std::max(p.x, p2.x);
    double aylo = std::min(p.y, p2.y), ayhi = std::max(p.y, p2.y);
    Point r{p2.x - p.x, p2.y - p.y};
    for (size_t j = 0; j + 1 < b.size(); ++j) {
      const Point& q = b[j];
      const Point& q2 = b[j + 1];
      if (std::max(q.x, q2.x) < axlo - cluster || std::min(q.x, q2.x) > axhi + cluster) continue;
      if (std::max(q.y, q2.y) < aylo - cluster || std::min(q.y, q2.y) > ayhi + cluster) continue;
      Point s{q2.x - q.x, q2.y - q.y};
      double den = r.x * s.y - r.y * s.x;
      Point qp{q.x - p.x, q.y - p.y};
      double scale = std::hypot(r.x, r.y) * std::hypot(s.x, s.y);
      if (std::abs(den) <= 1e-14 * scale) {
        // parallel; collinear overlap contributes its end points
        if (std::abs(qp.x * r.y - qp.y * r.x) > cluster * std::hypot(r.x, r.y)) continue;
        double rr = r.x * r.x + r.y * r.y;
        double t0 = (qp.x * r.x + qp.y * r.y) / rr;
        double t1 = t0 + (s.x * r.x + s.y * r.y) / rr;
        double lo = std::max(0.0, std::min(t0, t1)), hi = std::min(1.0, std::max(t0, t1));
        if (lo > hi) continue;
        raw.push_back({p.x + lo * r.x, p.y + lo * r.y});
        raw.push_back({p.x + hi * r.x, p.y + hi * r.y});
        if ((hi - lo) * std::sqrt(rr) > cluster) out.overlap = true;
        continue;
      }
      double t = (qp.x * s.y - qp.y * s.x) / den;
      double u = (qp.x * r.y - qp.y * r.x) / den;
      const double eps = 1e-12;
      if (t < -eps || t > 1 + eps || u < -eps || u > 1 + eps) continue;
      raw.push_back({p.x + t * r.x, p.y + t * r.y});
    }
  }
  for (const auto& p : raw) {
    bool merged = false;
    for (const auto& c : out.points)
      if (dist(c, p) <= cluster) merged = true;
    if (!merged) out.points.push_back(p);
  }
  return out;
}

std::vector<Point> switched(const std::vector<Point>& poly) {
  std::vector<Point> out;
  for (const auto& p : poly) out.push_back(ipd::switched(p));
  return out;
}

}  // namespace ipd

#include "ipd/geometry.h"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace ipd {

AffineMap::AffineMap(const Rational& a, const Rational& b, const Rational& c)
    : a_(a), b_(b), c_(c), ad_(to_double(a)), bd_(to_double(b)), cd_(to_double(c)) {
  if (a == 0 && b == 0) throw std::invalid_argument("affine map needs (a, b) != (0, 0)");
}

double AffineMap::gradient_norm() const { return std::hypot(ad_, bd_); }

Rational AffineMap::max_abs(const GameParams& g) const {
  Rational best = 0;
  for (int i = 0; i < 4; ++i) {
    Rational v = abs((*this)(g.payoff(static_cast<Outcome>(i))));
    if (v > best) best = v;
  }
  return best;
}

std::string AffineMap::describe() const {
  return to_string(a_) + "*x + " + to_string(b_) + "*y + " + to_string(c_);
}

Line Line::through(const PointQ& p, const PointQ& q) {
  if (p == q) throw std::invalid_argument("a line needs two distinct points");
  if (p.x == q.x) return vertical(p.x);
  return through_slope(p, (q.y - p.y) / (q.x - p.x));
}

Line Line::through_slope(const PointQ& p, const Rational& m) {
  return Line(AffineMap(-m, 1, m * p.x - p.y));
}

Line Line::horizontal(const Rational& y) { return Line(AffineMap(0, 1, -y)); }
Line Line::vertical(const Rational& x) { return Line(AffineMap(1, 0, -x)); }

Line Line::from_coefficients(const Rational& a, const Rational& b, const Rational& c) {
  if (b != 0) return Line(AffineMap(a / b, 1, c / b));
  if (a == 0) throw std::invalid_argument("a line needs (a, b) != (0, 0)");
  return Line(AffineMap(1, 0, c / a));
}

std::optional<Rational> Line::slope() const {
  if (is_vertical()) return std::nullopt;
  return -map_.a();
}

Rational Line::y_at(const Rational& x) const {
  if (is_vertical()) throw std::domain_error("y_at on a vertical line");
  return -map_.a() * x - map_.c();
}

double Line::y_at(double x) const {
  if (is_vertical()) throw std::domain_error("y_at on a vertical line");
  return -to_double(map_.a()) * x - to_double(map_.c());
}

std::string Line::describe() const {
  if (is_vertical()) return "x = " + to_string(-map_.c());
  return "y = " + to_string(-map_.a()) + "*x + " + to_string(-map_.c());
}

Line diagonal_line() { return Line::through_slope({0, 0}, 1); }
Line codiagonal_line(const GameParams& g) { return Line::through(g.st(), g.ts()); }

PointQ switch_point(const PointQ& p) { return switched(p); }

Line switch_line(const Line& l) {
  const AffineMap& m = l.map();
  return Line::from_coefficients(m.b(), m.a(), m.c());
}

AffineMap affine_from_line(const Line& l, const GameParams& g) {
  const AffineMap& m = l.map();
  return m.scaled(Rational(1) / m.max_abs(g));
}

bool is_separation_line(const Line& l, const GameParams& g) {
  if (l.is_vertical()) return false;
  const AffineMap& L = l.map();
  return L(g.rr()) >= 0 && L(g.st()) >= 0 && L(g.pp()) <= 0 && L(g.ts()) <= 0;
}

bool is_strict(const Line& l, const GameParams& g) {
  if (!is_separation_line(l, g)) return false;
  for (int i = 0; i < 4; ++i)
    if (l.map()(g.payoff(static_cast<Outcome>(i))) == 0) return false;
  return true;
}

bool is_protection_line(const Line& l, const GameParams& g) {
  auto m = l.slope();
  return m && l.contains(g.rr()) && *m > 0 && *m <= 1;
}

LineIntersection line_intersection(const Line& l1, const Line& l2) {
  const AffineMap& a = l1.map();
  const AffineMap& b = l2.map();
  Rational det = a.a() * b.b() - a.b() * b.a();
  if (det == 0) {
    LineIntersection r;
    r.kind = l1 == l2 ? LineIntersection::Kind::identical : LineIntersection::Kind::parallel;
    return r;
  }
  LineIntersection r;
  r.point.x = (a.b() * b.c() - a.c() * b.b()) / det;
  r.point.y = (a.c() * b.a() - a.a() * b.c()) / det;
  return r;
}

bool on_segment(const PointQ& a, const PointQ& b, const PointQ& q) {
  if (cross(a, b, q) != 0) return false;
  return std::min(a.x, b.x) <= q.x && q.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= q.y &&
         q.y <= std::max(a.y, b.y);
}

double segment_distance(const Point& a, const Point& b, const Point& q) {
  double dx = b.x - a.x, dy = b.y - a.y;
  double len2 = dx * dx + dy * dy;
  double t = len2 > 0 ? ((q.x - a.x) * dx + (q.y - a.y) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(q.x - (a.x + t * dx), q.y - (a.y + t * dy));
}

ConvexPolygon::ConvexPolygon(std::vector<PointQ> pts) {
  if (pts.empty()) throw std::invalid_argument("polygon needs at least one point");
  std::sort(pts.begin(), pts.end(), [](const PointQ& a, const PointQ& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) {
    v_ = pts;
  } else {
    std::vector<PointQ> h(2 * pts.size());
    size_t k = 0;
    for (size_t i = 0; i < pts.size(); ++i) {
      while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
      h[k++] = pts[i];
    }
    for (size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
      while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
      h[k++] = pts[i];
    }
    h.resize(k - 1);
    v_ = std::move(h);
  }
  for (const auto& p : v_) vd_.push_back(to_double(p));
}

bool ConvexPolygon::contains(const PointQ& q) const {
  if (v_.size() == 1) return v_[0] == q;
  if (v_.size() == 2) return on_segment(v_[0], v_[1], q);
  for (size_t i = 0; i < v_.size(); ++i)
    if (cross(v_[i], v_[(i + 1) % v_.size()], q) < 0) return false;
  return true;
}

double ConvexPolygon::distance(const Point& q) const {
  if (vd_.size() == 1) return dist(vd_[0], q);
  if (vd_.size() == 2) return segment_distance(vd_[0], vd_[1], q);
  bool inside = true;
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < vd_.size(); ++i) {
    const Point& a = vd_[i];
    const Point& b = vd_[(i + 1) % vd_.size()];
    if (cross(a, b, q) < 0) inside = false;
    best = std::min(best, segment_distance(a, b, q));
  }
  return inside ? 0.0 : best;
}

bool ConvexPolygon::contains(const Point& q, double tol) const { return distance(q) <= tol; }

bool in_hull(const GameParams& g, const PointQ& p) {
  const auto& h = g.hull_vertices();
  for (size_t i = 0; i < h.size(); ++i)
    if (cross(h[i], h[(i + 1) % h.size()], p) < 0) return false;
  return true;
}

bool in_hull(const GameParams& g, const Point& p, double tol) {
  const auto& h = g.hull_vertices_d();
  for (size_t i = 0; i < h.size(); ++i) {
    const Point& a = h[i];
    const Point& b = h[(i + 1) % h.size()];
    double c = cross(a, b, p) / dist(a, b);
    if (c < -tol) return false;
  }
  return true;
}

double hull_tolerance(const GameParams& g) { return kTau * g.width(); }

namespace {

bool edge_on_hull_boundary(const PointQ& a, const PointQ& b, const GameParams& g) {
  const auto& h = g.hull_vertices();
  for (size_t j = 0; j < h.size(); ++j) {
    const PointQ& u = h[j];
    const PointQ& v = h[(j + 1) % h.size()];
    if (on_segment(u, v, a) && on_segment(u, v, b)) return true;
  }
  return false;
}

}  // namespace

bool in_relative_interior(const ConvexPolygon& poly, const PointQ& q, const GameParams& g) {
  const auto& v = poly.vertices();
  if (v.size() < 3) return false;
  for (size_t i = 0; i < v.size(); ++i) {
    const PointQ& a = v[i];
    const PointQ& b = v[(i + 1) % v.size()];
    Rational c = cross(a, b, q);
    if (c < 0) return false;
    if (c == 0 && !edge_on_hull_boundary(a, b, g)) return false;
  }
  return true;
}

bool in_relative_interior(const ConvexPolygon& poly, const Point& q, const GameParams& g, double tol) {
  const auto& v = poly.vertices();
  const auto& vd = poly.vertices_d();
  if (v.size() < 3) return false;
  for (size_t i = 0; i < v.size(); ++i) {
    size_t j = (i + 1) % v.size();
    double c = cross(vd[i], vd[j], q) / dist(vd[i], vd[j]);
    if (c < -tol) return false;
    if (c <= tol && !edge_on_hull_boundary(v[i], v[j], g)) return false;
  }
  return true;
}

ConvexPolygon upper_triangle(const GameParams& g, const PointQ& s) {
  return ConvexPolygon({s, g.st(), g.rr()});
}

ConvexPolygon lower_quadrangle(const GameParams& g, const PointQ& s) {
  return ConvexPolygon({s, g.ts(), g.pp(), g.pbar_point()});
}

bool upper_triangle_contains(const GameParams& g, const PointQ& s, const PointQ& q) {
  return upper_triangle(g, s).contains(q);
}
bool lower_quadrangle_contains(const GameParams& g, const PointQ& s, const PointQ& q) {
  return lower_quadrangle(g, s).contains(q);
}
bool upper_triangle_interior_contains(const GameParams& g, const PointQ& s, const PointQ& q) {
  return in_relative_interior(upper_triangle(g, s), q, g);
}
bool lower_quadrangle_interior_contains(const GameParams& g, const PointQ& s, const PointQ& q) {
  return in_relative_interior(lower_quadrangle(g, s), q, g);
}

std::vector<PointQ> clip_to_hull(const Line& l, const GameParams& g) {
  const auto& h = g.hull_vertices();
  std::vector<PointQ> hits;
  for (size_t j = 0; j < h.size(); ++j) {
    const PointQ& u = h[j];
    const PointQ& v = h[(j + 1) % h.size()];
    Rational lu = l.map()(u), lv = l.map()(v);
    if (lu == 0) hits.push_back(u);
    if (lv == 0) hits.push_back(v);
    if ((lu < 0 && lv > 0) || (lu > 0 && lv < 0)) {
      Rational t = lu / (lu - lv);
      hits.push_back(u + t * (v - u));
    }
  }
  if (hits.empty()) return {};
  auto less = [](const PointQ& a, const PointQ& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); };
  auto [lo, hi] = std::minmax_element(hits.begin(), hits.end(), less);
  if (*lo == *hi) return {*lo};
  return {*lo, *hi};
}

SignTest::SignTest(const AffineMap& m, const GameParams& g) : map_(m) {
  Rational k = Rational(1) / m.max_abs(g);
  an_ = to_double(m.a() * k);
  bn_ = to_double(m.b() * k);
  cn_ = to_double(m.c() * k);
  using boost::multiprecision::mpz_int;
  mpz_int d = 1;
  for (const Rational* r : {&m.a(), &m.b(), &m.c()}) d = lcm(d, mpz_int(denominator(*r)));
  mpz_int A = mpz_int(numerator(m.a())) * (d / mpz_int(denominator(m.a())));
  mpz_int B = mpz_int(numerator(m.b())) * (d / mpz_int(denominator(m.b())));
  mpz_int C = mpz_int(numerator(m.c())) * (d / mpz_int(denominator(m.c())));
  const mpz_int lim = mpz_int(std::int64_t(1) << 40);
  small_ = abs(A) < lim && abs(B) < lim && abs(C) < lim;
  if (small_) {
    A_ = A.convert_to<std::int64_t>();
    B_ = B.convert_to<std::int64_t>();
    C_ = C.convert_to<std::int64_t>();
  }
}

int SignTest::sign(const PointQ& p) const {
  Rational v = map_(p);
  return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

int SignTest::sign(const Point& p) const {
  double v = value(p);
  if (v > kTau) return 1;
  if (v < -kTau) return -1;
  return 0;
}

int SignTest::sign(const HomPoint& p) const {
  if (!small_) return sign(p.exact());
  __int128 v = __int128(A_) * p.x + __int128(B_) * p.y + __int128(C_) * p.w;
  return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

}  // namespace ipd

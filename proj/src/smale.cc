#include "ipd/smale.h"

#include <cmath>
#include <stdexcept>

namespace ipd {

namespace {
template <class... F>
struct overloaded : F... {
  using F::operator()...;
};
template <class... F>
overloaded(F...) -> overloaded<F...>;

void check_prob(const Rational& p, const char* what) {
  if (p < 0 || p > 1) throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
}
}  // namespace

OnLineRule OnLineRule::prob(const Rational& p) {
  check_prob(p, "on-line probability");
  return {Kind::prob, p};
}

std::string OnLineRule::describe() const {
  switch (kind) {
    case Kind::always_c: return "c";
    case Kind::always_d: return "d";
    case Kind::prob: return "prob(" + to_string(p) + ")";
    case Kind::diagonal_split: return "diagonal_split";
  }
  return "?";
}

SmalePlan::SmalePlan(const GameParams& g, Body body, std::string family)
    : body_(std::move(body)), family_(std::move(family)), g_(g),
      split_(AffineMap(1, 1, -(g.T() + g.S())), g) {
  std::visit(overloaded{
                 [&](const Simple& b) {
                   if (!is_separation_line(b.line, g_))
                     throw std::invalid_argument("line " + b.line.describe() + " is not a separation line");
                   if (b.on_line.kind == OnLineRule::Kind::diagonal_split && !(b.line == diagonal_line()))
                     throw std::invalid_argument("diagonal_split is only defined on the diagonal");
                   tests_.emplace_back(b.line.map(), g_);
                 },
                 [&](const Constant& b) { check_prob(b.prob, "constant probability"); },
                 [&](const Region& b) {
                   check_prob(b.cooperate_default, "region default");
                   for (const auto& h : b.defect) tests_.emplace_back(h.map, g_);
                 },
                 [&](const Path& b) {
                   if (!b.path) throw std::invalid_argument("path plan without a path");
                   if (!b.path->is_graph()) throw std::invalid_argument("path plan needs a graph over the first coordinate");
                   if (b.on_path.kind == OnLineRule::Kind::diagonal_split)
                     throw std::invalid_argument("diagonal_split is only defined on the diagonal");
                 },
             },
             body_);
}

const Line& SmalePlan::line() const {
  if (!is_simple()) throw std::logic_error("plan '" + family_ + "' is not simple");
  return std::get<Simple>(body_).line;
}

template <class Pt>
double SmalePlan::on_line(const OnLineRule& r, const Pt& s) const {
  switch (r.kind) {
    case OnLineRule::Kind::always_c: return 1.0;
    case OnLineRule::Kind::always_d: return 0.0;
    case OnLineRule::Kind::prob: return to_double(r.p);
    case OnLineRule::Kind::diagonal_split: return split_.sign(s) >= 0 ? 1.0 : 0.0;
  }
  return 0.0;
}

template <class Pt>
double SmalePlan::eval(const Pt& s) const {
  return std::visit(overloaded{
                        [&](const Simple& b) {
                          int sg = tests_[0].sign(s);
                          if (sg > 0) return 0.0;
                          if (sg < 0) return 1.0;
                          if (b.rr_cooperates && at_rr(s)) return 1.0;
                          return on_line(b.on_line, s);
                        },
                        [&](const Constant& b) { return to_double(b.prob); },
                        [&](const Region& b) {
                          for (size_t i = 0; i < tests_.size(); ++i) {
                            int sg = tests_[i].sign(s);
                            if (b.defect[i].strict ? sg > 0 : sg >= 0) return 0.0;
                          }
                          return to_double(b.cooperate_default);
                        },
                        [&](const Path& b) {
                          int sg = b.path->side(s);
                          if (sg > 0) return 0.0;
                          if (sg < 0) return 1.0;
                          return on_line(b.on_path, s);
                        },
                    },
                    body_);
}

double SmalePlan::evaluate(const PointQ& s) const {
  if (!in_hull(g_, s)) throw std::domain_error("point outside the outcome hull");
  return eval(s);
}

double SmalePlan::evaluate(const Point& s) const {
  if (!in_hull(g_, s, hull_tolerance(g_))) throw std::domain_error("point outside the outcome hull");
  return eval(s);
}

double SmalePlan::evaluate(const HomPoint& s) const { return eval(s); }

std::string SmalePlan::describe() const {
  return std::visit(overloaded{
                        [&](const Simple& b) { return family_ + " [" + b.line.describe() + ", on line " + b.on_line.describe() + "]"; },
                        [&](const Constant& b) { return family_ + " [constant " + to_string(b.prob) + "]"; },
                        [&](const Region& b) {
                          return family_ + " [" + std::to_string(b.defect.size()) + " defect half-planes, default " +
                                 to_string(b.cooperate_default) + "]";
                        },
                        [&](const Path& b) {
                          return family_ + " [path with " + std::to_string(b.path->vertices().size()) + " vertices]";
                        },
                    },
                    body_);
}

HalfPlane defect_above(const Line& l, const GameParams& g) {
  const AffineMap& m = l.map();
  Rational at = m(g.st());
  if (at == 0) {
    // (S,T) on the line: use the upper side (left side for vertical lines)
    if (l.is_vertical()) return {m.scaled(-1), true};
    return {m, true};
  }
  return {at > 0 ? m : m.scaled(-1), true};
}

SmalePlan make_simple(const GameParams& g, const Line& l, OnLineRule on_line) {
  return SmalePlan(g, SmalePlan::Simple{l, on_line, false}, "simple");
}

SmalePlan make_equalizer(const GameParams& g, const Rational& E, OnLineRule on_line) {
  if (E < g.P() || E > g.R()) throw std::invalid_argument("equalizer needs P <= E <= R");
  return SmalePlan(g, SmalePlan::Simple{Line::horizontal(E), on_line, false}, "equalizer");
}

SmalePlan make_extortionate(const GameParams& g, const Rational& slope, OnLineRule on_line) {
  if (!(slope > 0 && slope < 1)) throw std::invalid_argument("extortionate slope must lie in (0, 1)");
  return SmalePlan(g, SmalePlan::Simple{Line::through_slope(g.pp(), slope), on_line, false}, "extortionate");
}

SmalePlan make_good_simple(const GameParams& g, const Rational& slope, OnLineRule on_line) {
  if (!(slope > 0 && slope < 1)) throw std::invalid_argument("good simple slope must lie in (0, 1)");
  return SmalePlan(g, SmalePlan::Simple{Line::through_slope(g.rr(), slope), on_line, true}, "good");
}

SmalePlan make_allc(const GameParams& g) {
  return SmalePlan(g, SmalePlan::Simple{Line::through(g.st(), g.rr()), OnLineRule::cooperate(), false}, "allc");
}

SmalePlan make_alld(const GameParams& g) {
  if (g.P() <= g.mid())
    return SmalePlan(g, SmalePlan::Simple{Line::through(g.pp(), g.ts()), OnLineRule::defect(), false}, "alld");
  return SmalePlan(g, SmalePlan::Constant{0}, "alld");
}

SmalePlan make_smale_tft(const GameParams& g) {
  return SmalePlan(g, SmalePlan::Simple{diagonal_line(), OnLineRule::diagonal_split(), false}, "smale_tft");
}

SmalePlan make_constant(const GameParams& g, const Rational& p) {
  return SmalePlan(g, SmalePlan::Constant{p}, "constant");
}

SmalePlan make_generous_region(const GameParams& g, const PointQ& V) {
  if (!g.quadrilateral()) throw std::invalid_argument("generous region plan needs P < (T+S)/2");
  if (!(g.R() > V.y && V.y > V.x && V.x >= g.P())) throw std::invalid_argument("generous region plan needs R > V_Y > V_X >= P");
  if (!in_hull(g, V)) throw std::invalid_argument("generous region plan needs V in the hull");
  Line l1 = Line::through(g.rr(), V);
  Line l2 = Line::through(g.pp(), V);
  SmalePlan::Region r{{defect_above(l1, g), defect_above(l2, g)}, 1};
  return SmalePlan(g, std::move(r), "generous_region");
}

namespace {
SmalePlan::Region region_from_polygon(const ConvexPolygon& poly) {
  const auto& v = poly.vertices();
  if (v.size() < 3) throw std::invalid_argument("cooperation polygon is degenerate");
  SmalePlan::Region r;
  r.cooperate_default = 1;
  for (size_t i = 0; i < v.size(); ++i) {
    const PointQ& a = v[i];
    const PointQ& b = v[(i + 1) % v.size()];
    // counter-clockwise: outside is where cross(a, b, s) < 0
    Rational A = b.y - a.y, B = a.x - b.x;
    Rational C = -(A * a.x + B * a.y);
    r.defect.push_back({AffineMap(A, B, C), true});
  }
  return r;
}
}  // namespace

SmalePlan make_convex_generous(const GameParams& g, const std::vector<PointQ>& vertices) {
  ConvexPolygon c(vertices);
  if (c.degenerate()) throw std::invalid_argument("convex-generous set must have interior");
  if (!c.contains(g.pp())) throw std::invalid_argument("convex-generous (i): (P,P) must lie in C");
  if (!c.contains(g.rr())) throw std::invalid_argument("convex-generous (i): (R,R) must lie in C");
  if (!c.contains(g.ts())) throw std::invalid_argument("convex-generous (i): (T,S) must lie in C");
  if (c.contains(g.st())) throw std::invalid_argument("convex-generous (ii): (S,T) must not lie in C");
  if (!in_relative_interior(c, PointQ{g.mid(), g.mid()}, g))
    throw std::invalid_argument("convex-generous (iii): (T+S)/2 (1,1) must lie in the interior of C");
  return SmalePlan(g, region_from_polygon(c), "convex_generous");
}

SmalePlan make_region_polygon(const GameParams& g, const std::vector<PointQ>& vertices, std::string family) {
  return SmalePlan(g, region_from_polygon(ConvexPolygon(vertices)), std::move(family));
}

SmalePlan make_path_plan(const GameParams& g, std::shared_ptr<const SeparationPath> path, OnLineRule on_path) {
  return SmalePlan(g, SmalePlan::Path{std::move(path), on_path}, "path");
}

namespace {

// Vertices of {s in hull : s_X >= s_Y}
std::vector<PointQ> below_diagonal_vertices(const GameParams& g) {
  if (g.quadrilateral()) return {g.rr(), g.ts(), g.pp()};
  return {g.rr(), g.ts(), PointQ{g.mid(), g.mid()}};
}

bool rule_is_one(const OnLineRule& r) {
  return r.kind == OnLineRule::Kind::always_c || (r.kind == OnLineRule::Kind::prob && r.p == 1);
}

bool protection_below_path(const GameParams& g, const SeparationPath& p) {
  // some line through (R,R) with slope in (0,1] has every vertex on or below it
  Rational lo = 0, hi = 1;
  const Rational& R = g.R();
  for (const auto& v : p.vertices()) {
    if (v.x < R) {
      Rational ub = (R - v.y) / (R - v.x);
      if (ub < hi) hi = ub;
    } else if (v.x > R) {
      Rational lb = (v.y - R) / (v.x - R);
      if (lb > lo) lo = lb;
    } else if (v.y > R) {
      return false;
    }
  }
  return lo > 0 ? lo <= hi : hi > 0;
}

bool sampled_generous(const SmalePlan& plan, double cone) {
  const GameParams& g = plan.game();
  auto d = below_diagonal_vertices(g);
  Point a = to_double(d[0]), b = to_double(d[1]), c = to_double(d[2]);
  const int n = 40;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; i + j <= n; ++j) {
      double u = double(i) / n, v = double(j) / n, w = 1 - u - v;
      Point s{u * a.x + v * b.x + w * c.x, u * a.y + v * b.y + w * c.y};
      if (plan.evaluate(s) != 1.0) return false;
    }
  Point m{to_double(g.mid()), to_double(g.mid())}, rr = to_double(g.rr());
  const double tol = hull_tolerance(g);
  for (int k = 0; k < 200; ++k) {
    double t = 0.995 * k / 199.0;
    Point q{m.x + t * (rr.x - m.x), m.y + t * (rr.y - m.y)};
    double r = cone * dist(q, rr);
    for (int dir = 0; dir < 8; ++dir) {
      double ang = dir * M_PI / 4;
      Point s{q.x + r * std::cos(ang), q.y + r * std::sin(ang)};
      if (!in_hull(g, s, tol)) continue;
      if (plan.evaluate(s) != 1.0) return false;
    }
  }
  return true;
}

}  // namespace

SmaleFlags classify_smale(const SmalePlan& plan, double cone) {
  const GameParams& g = plan.game();
  SmaleFlags f;
  f.simple = plan.is_simple();
  f.weakly_agreeable = plan.evaluate(g.rr()) == 1.0;
  f.weakly_firm = plan.evaluate(g.pp()) == 0.0;
  const PointQ mid{g.mid(), g.mid()};
  const auto dv = below_diagonal_vertices(g);
  const PointQ corners[3] = {g.pp(), g.rr(), g.ts()};

  std::visit(overloaded{
                 [&](const SmalePlan::Simple& b) {
                   const AffineMap& L = b.line.map();
                   f.protection_line = is_protection_line(b.line, g);
                   bool ok = L(mid) < 0 && L(g.rr()) <= 0;
                   std::vector<PointQ> on;
                   for (const auto& v : dv) {
                     if (L(v) > 0) ok = false;
                     if (L(v) == 0) on.push_back(v);
                   }
                   for (const auto& v : on)
                     if (plan.evaluate(v) != 1.0) ok = false;
                   if (on.size() == 2 && plan.evaluate(PointQ{(on[0].x + on[1].x) / 2, (on[0].y + on[1].y) / 2}) != 1.0)
                     ok = false;
                   f.generous = ok;
                   bool cg = rule_is_one(b.on_line) && L(g.st()) > 0 && L(mid) < 0;
                   for (const auto& v : corners) cg = cg && L(v) <= 0;
                   f.convex_generous = cg;
                 },
                 [&](const SmalePlan::Constant& b) {
                   f.protection_line = b.prob == 0;
                   f.generous = b.prob == 1;
                   f.convex_generous = false;
                 },
                 [&](const SmalePlan::Region& b) {
                   bool gen = b.cooperate_default == 1;
                   bool cg = b.cooperate_default == 1;
                   bool st_out = false;
                   for (const auto& h : b.defect) {
                     const AffineMap& L = h.map;
                     if (L.b() > 0 || L.b() < 0) {
                       Line l = Line::from_coefficients(L.a(), L.b(), L.c());
                       if (L.b() > 0 && is_protection_line(l, g)) f.protection_line = true;
                     }
                     for (const auto& v : dv) gen = gen && (h.strict ? L(v) <= 0 : L(v) < 0);
                     gen = gen && L(mid) < 0;
                     cg = cg && h.strict && L(mid) < 0;
                     for (const auto& v : corners) cg = cg && L(v) <= 0;
                     if (L(g.st()) > 0) st_out = true;
                   }
                   f.generous = gen;
                   f.convex_generous = cg && st_out;
                 },
                 [&](const SmalePlan::Path& b) {
                   f.protection_line = protection_below_path(g, *b.path);
                   f.generous = sampled_generous(plan, cone);
                   f.convex_generous = false;
                 },
             },
             plan.body());
  f.good = f.weakly_agreeable && f.protection_line && f.generous;
  f.convex_good = f.weakly_agreeable && f.protection_line && f.convex_generous;
  return f;
}

PredictedLimit predicted_limit(const SmalePlan& x, const SmalePlan& y) {
  const Line& lx = x.line();
  const Line& ly = y.line();
  const GameParams& g = x.game();
  PredictedLimit out;
  if (lx == diagonal_line() && ly == diagonal_line()) {
    out.kind = PredictedLimit::Kind::diagonal;
    return out;
  }
  Line cod = codiagonal_line(g);
  if (lx == cod && ly == cod) {
    out.kind = PredictedLimit::Kind::codiagonal;
    return out;
  }
  auto hit = line_intersection(lx, switch_line(ly));
  if (hit.kind != LineIntersection::Kind::point)
    throw std::domain_error("simple plans with parallel lines outside the extreme cases");
  out.point = hit.point;
  return out;
}

}  // namespace ipd

#include <random>

#include "doctest.h"
#include "ipd/path.h"
#include "oracle.h"

using namespace ipd;
using oracle::q;

namespace {
const GameParams g = GameParams::canonical();
}

TEST_CASE("a separation line's hull segment is a path") {
  for (Line l : {Line::horizontal(2), Line::through_slope(g.rr(), q(1, 2)), Line::through_slope(g.pp(), q(1, 3))}) {
    auto seg = clip_to_hull(l, g);
    REQUIRE(seg.size() == 2);
    if (seg[0].x > seg[1].x) std::swap(seg[0], seg[1]);
    SeparationPath c(g, seg);
    CHECK(c.is_graph());
    CHECK(validate_path(g, c, false).ok);
  }
}

TEST_CASE("paths from a peak") {
  auto c = path_from_peak(g, {2, q(5, 2)});
  CHECK(c.vertices().size() == 3);
  CHECK(c.vertices()[1] == PointQ{2, q(5, 2)});
  auto rep = validate_path(g, c, true);
  CHECK(rep.ok);
  // peak is the highest point
  CHECK(c.peak().y == doctest::Approx(2.5));
  // edges are separation lines
  for (const auto& l : c.edge_lines()) CHECK(is_strict(l, g));

  CHECK_THROWS(path_from_peak(g, {2, 3}));
  CHECK_THROWS(path_from_peak(g, {2, 1}));

  // peak on the left boundary (P,P)-(S,T): one segment
  PointQ left = g.pp() + q(1, 4) * (g.st() - g.pp());
  auto one = path_from_peak(g, left);
  CHECK(one.vertices().size() == 2);
  CHECK(one.vertices().front() == left);
  CHECK(validate_path(g, one, true).ok);
}

TEST_CASE("injectivity failure is reported") {
  // touches the upper edge at two heights
  PointQ a = g.st() + q(1, 3) * (g.rr() - g.st()), b = g.st() + q(2, 3) * (g.rr() - g.st());
  SeparationPath c(g, {{q(7, 8), q(3, 2)}, a, {q(3, 2), 3}, b, {4, q(3, 2)}});
  auto rep = validate_path(g, c, false);
  CHECK_FALSE(rep.ok);
  CHECK_FALSE(rep.violations.empty());
}

TEST_CASE("the solution curves through the boundary segments") {
  auto top = path_from_ode(g, {1.5, 4.0});
  for (const auto& p : top.vertices_d()) CHECK(segment_distance(to_double(g.st()), to_double(g.rr()), p) < 1e-9);
  auto bottom = path_from_ode(g, {3.0, 0.5});
  for (const auto& p : bottom.vertices_d()) CHECK(segment_distance(to_double(g.pp()), to_double(g.ts()), p) < 1e-9);

  auto mid = path_from_ode(g, {2.0, 2.2});
  CHECK(mid.is_graph());
  CHECK(validate_path(g, mid, true, 100).ok);
}

TEST_CASE("slope bounds") {
  // on the diagonal m+ is 1
  CHECK(slope_plus(g, {2, 2}) == doctest::Approx(1));
  // above the diagonal m+ = (R - y)/(R - x)
  CHECK(slope_plus(g, {1, 2}) == doctest::Approx(0.5));
  // left of the codiagonal m- = (y - S)/(T - x)
  CHECK(slope_minus(g, {1, 1}) == doctest::Approx(0.25));
}

TEST_CASE("full hulls") {
  auto up = full_hull(g, {g.rr()}, HullSide::upper);
  CHECK(up.contains(g.st() + q(1, 2) * (g.rr() - g.st())));
  CHECK_FALSE(up.contains(PointQ{2, 2}));

  // separation line segment: C+ and C- are the closed half-plane pieces
  Line l = Line::through_slope(g.rr(), q(1, 2));
  auto seg = clip_to_hull(l, g);
  auto cp = full_hull(g, seg, HullSide::upper), cm = full_hull(g, seg, HullSide::lower);
  std::mt19937_64 r(5);
  std::uniform_int_distribution<int> U(0, 100);
  int n = 0;
  while (n < 400) {
    PointQ s{q(U(r), 20), q(U(r), 20)};
    if (!in_hull(g, s)) continue;
    ++n;
    Rational v = s.y - 3 - (s.x - 3) / 2;
    CHECK(cp.contains(s) == (v >= 0));
    CHECK(cm.contains(s) == (v <= 0));
  }
}

TEST_CASE("property: a path splits the hull into C+ minus C, C and C- minus C") {
  auto c = path_from_peak(g, {2, q(5, 2)});
  auto cp = full_hull(g, c.vertices(), HullSide::upper), cm = full_hull(g, c.vertices(), HullSide::lower);
  std::mt19937_64 r(6);
  std::uniform_int_distribution<int> U(0, 200);
  int n = 0;
  while (n < 1000) {
    PointQ s{q(U(r), 40), q(U(r), 40)};
    if (!in_hull(g, s)) continue;
    ++n;
    bool on = c.contains(s);
    bool up = cp.contains(s) && !on, down = cm.contains(s) && !on;
    CHECK(int(up) + int(on) + int(down) == 1);
    CHECK((cp.contains(s) || cm.contains(s)));
  }
}

TEST_CASE("property: strict paths meet switched strict paths once") {
  std::mt19937_64 r(10);
  std::uniform_int_distribution<int> U(0, 500);
  std::vector<SeparationPath> ps;
  while (ps.size() < 12) {
    PointQ s{q(U(r), 100), q(U(r), 100)};
    if (!in_hull(g, s) || !(s.y > g.P() && s.y < g.R())) continue;
    ps.push_back(path_from_peak(g, s));
    CHECK(validate_path(g, ps.back(), true, 120).ok);
    for (const auto& l : ps.back().edge_lines()) CHECK(is_separation_line(l, g));
  }
  for (const auto& a : ps)
    for (const auto& b : ps) {
      auto x = polyline_intersections(a.vertices_d(), switched(b.vertices_d()));
      CHECK_FALSE(x.overlap);
      CHECK(x.points.size() == 1);
    }
}

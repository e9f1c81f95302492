#pragma once

#include <string>
#include <vector>

#include "ipd/geometry.h"

namespace ipd {

// Polyline in the hull. A separation path is additionally the graph of a function of x.
class SeparationPath {
 public:
  SeparationPath(const GameParams& g, std::vector<PointQ> vertices);

  const std::vector<PointQ>& vertices() const { return v_; }
  const std::vector<Point>& vertices_d() const { return vd_; }
  bool is_graph() const { return graph_; }

  // +1 above the path (or left of it), -1 below (or right of it), 0 on it.
  // Requires is_graph().
  int side(const PointQ& s) const;
  int side(const Point& s) const;
  int side(const HomPoint& s) const;

  bool contains(const PointQ& s) const;
  double distance(const Point& s) const;

  // Point at height max over the path (first one if several).
  Point peak() const;

  std::vector<Line> edge_lines() const;

 private:
  template <class Pt>
  int side_impl(const Pt& s) const;

  std::vector<PointQ> v_;
  std::vector<Point> vd_;
  bool graph_ = false;
  std::vector<SignTest> xcut_;  // x - x_i
  std::vector<SignTest> edge_;  // positive above edge i
  SignTest ycut_;
};

struct PathViolation {
  std::string clause;
  Point a, b;
};

struct PathReport {
  bool ok = true;
  std::vector<PathViolation> violations;
};

// Samples sample_n points by arc length and checks, pairwise, the disjointness
// condition (strict: (T(s) u Q(s)) n C = {s}; otherwise only the interiors), endpoint
// segments, injectivity of the x projection and avoidance of the interior of Q(Wbar).
PathReport validate_path(const GameParams& g, const SeparationPath& c, bool strict, int sample_n = 200);

std::vector<Point> sample_by_arclength(const std::vector<Point>& poly, int n);

// Two-segment strict path [V, s*] u [s*, W] peaking at s*.
SeparationPath path_from_peak(const GameParams& g, const PointQ& peak);

// Solution curve of dy/dx = (m+ - m-)/2 through start, clipped to the hull,
// integrated with classical RK4 at step (T - S) / steps_across.
SeparationPath path_from_ode(const GameParams& g, const Point& start, int steps_across = 2000);

// Slope bounds at s: a line of slope m through s separates iff -m_minus <= m <= m_plus.
double slope_plus(const GameParams& g, const Point& s);
double slope_minus(const GameParams& g, const Point& s);

enum class HullSide { upper, lower };

// Union of T(c) (upper) or Q(c) (lower) over c in C; a polyline is filled edge by edge.
class FullHull {
 public:
  FullHull(const GameParams& g, const std::vector<PointQ>& c, HullSide side, bool polyline = true);

  bool contains(const PointQ& q) const;
  bool contains(const Point& q, double tol) const;
  double distance(const Point& q) const;
  const std::vector<ConvexPolygon>& pieces() const { return pieces_; }

 private:
  std::vector<ConvexPolygon> pieces_;
};

inline FullHull full_hull(const GameParams& g, const std::vector<PointQ>& c, HullSide side,
                          bool polyline = true) {
  return FullHull(g, c, side, polyline);
}

struct PolylineIntersection {
  std::vector<Point> points;  // clustered
  bool overlap = false;       // collinear pieces of positive length
};

PolylineIntersection polyline_intersections(const std::vector<Point>& a, const std::vector<Point>& b,
                                            double cluster = 1e-7);

std::vector<Point> switched(const std::vector<Point>& poly);

}  // namespace ipd

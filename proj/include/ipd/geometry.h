#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ipd/game.h"

namespace ipd {

// On-line band for float mode, in units where max |L| over the hull is 1.
inline constexpr double kTau = 1e-9;

// L(x, y) = a x + b y + c, kept exact with a double shadow for fast evaluation.
class AffineMap {
 public:
  AffineMap() : AffineMap(0, 1, 0) {}
  AffineMap(const Rational& a, const Rational& b, const Rational& c);

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  const Rational& c() const { return c_; }

  Rational operator()(const PointQ& p) const { return a_ * p.x + b_ * p.y + c_; }
  double operator()(const Point& p) const { return ad_ * p.x + bd_ * p.y + cd_; }

  // L o Switch
  AffineMap after_switch() const { return {b_, a_, c_}; }
  AffineMap scaled(const Rational& k) const { return {k * a_, k * b_, k * c_}; }
  double gradient_norm() const;

  // max |L| over the hull vertices (the payoff points)
  Rational max_abs(const GameParams& g) const;

  std::string describe() const;

 private:
  Rational a_, b_, c_;
  double ad_, bd_, cd_;
};

// A line, stored as y - m x - k = 0 (b = 1) or x - k = 0 (vertical, b = 0).
// map() is positive above the line, or to the right of a vertical line.
class Line {
 public:
  static Line through(const PointQ& p, const PointQ& q);
  static Line through_slope(const PointQ& p, const Rational& m);
  static Line horizontal(const Rational& y);
  static Line vertical(const Rational& x);
  static Line from_coefficients(const Rational& a, const Rational& b, const Rational& c);

  bool is_vertical() const { return map_.b() == 0; }
  std::optional<Rational> slope() const;
  const AffineMap& map() const { return map_; }

  // y at x for non-vertical lines
  Rational y_at(const Rational& x) const;
  double y_at(double x) const;

  bool contains(const PointQ& p) const { return map_(p) == 0; }

  friend bool operator==(const Line& l, const Line& m) {
    return l.map_.a() == m.map_.a() && l.map_.b() == m.map_.b() && l.map_.c() == m.map_.c();
  }

  std::string describe() const;

 private:
  explicit Line(AffineMap m) : map_(std::move(m)) {}
  AffineMap map_;
};

Line diagonal_line();
Line codiagonal_line(const GameParams& g);

PointQ switch_point(const PointQ& p);
Line switch_line(const Line& l);

// Zero on the line, positive above it, max |L| over the hull equal to 1.
AffineMap affine_from_line(const Line& l, const GameParams& g);

bool is_separation_line(const Line& l, const GameParams& g);
bool is_strict(const Line& l, const GameParams& g);
bool is_protection_line(const Line& l, const GameParams& g);

struct LineIntersection {
  enum class Kind { point, parallel, identical };
  Kind kind = Kind::point;
  PointQ point;
};
LineIntersection line_intersection(const Line& l1, const Line& l2);

// Closed convex polygon, possibly degenerate (segment or point).
class ConvexPolygon {
 public:
  ConvexPolygon() = default;
  explicit ConvexPolygon(std::vector<PointQ> pts);

  const std::vector<PointQ>& vertices() const { return v_; }
  const std::vector<Point>& vertices_d() const { return vd_; }
  bool degenerate() const { return v_.size() < 3; }

  bool contains(const PointQ& q) const;
  // Closed membership with an absolute distance tolerance.
  bool contains(const Point& q, double tol) const;
  // Euclidean distance, 0 inside.
  double distance(const Point& q) const;

 private:
  std::vector<PointQ> v_;
  std::vector<Point> vd_;
};

bool in_hull(const GameParams& g, const PointQ& p);
bool in_hull(const GameParams& g, const Point& p, double tol);
double hull_tolerance(const GameParams& g);  // kTau * (T - S)

// Interior relative to the hull: edges lying on the hull boundary do not count as boundary.
bool in_relative_interior(const ConvexPolygon& poly, const PointQ& q, const GameParams& g);
bool in_relative_interior(const ConvexPolygon& poly, const Point& q, const GameParams& g, double tol);

// T(s) = [s, (S,T), (R,R)] and Q(s) = [s, (T,S), (P,P), (Pbar,Pbar)]
ConvexPolygon upper_triangle(const GameParams& g, const PointQ& s);
ConvexPolygon lower_quadrangle(const GameParams& g, const PointQ& s);

bool upper_triangle_contains(const GameParams& g, const PointQ& s, const PointQ& q);
bool lower_quadrangle_contains(const GameParams& g, const PointQ& s, const PointQ& q);
bool upper_triangle_interior_contains(const GameParams& g, const PointQ& s, const PointQ& q);
bool lower_quadrangle_interior_contains(const GameParams& g, const PointQ& s, const PointQ& q);

// Closed segment [a, b]
bool on_segment(const PointQ& a, const PointQ& b, const PointQ& q);
double segment_distance(const Point& a, const Point& b, const Point& q);

// Portion of a line inside the hull, as its two endpoints; empty when they miss.
std::vector<PointQ> clip_to_hull(const Line& l, const GameParams& g);

}  // namespace ipd

namespace ipd {

// s = (x / w, y / w) with integer coordinates, w > 0. Running sums of integer-scaled
// payoffs land here so exact side tests need no rational arithmetic per round.
struct HomPoint {
  std::int64_t x = 0, y = 0, w = 1;
  PointQ exact() const { return {Rational(x) / w, Rational(y) / w}; }
  Point approx() const { return {double(x) / double(w), double(y) / double(w)}; }
};

// Sign of an affine map in each arithmetic. Float evaluation reports 0 inside
// the band |L| <= kTau * max|L| over the hull.
class SignTest {
 public:
  SignTest() = default;
  SignTest(const AffineMap& m, const GameParams& g);

  const AffineMap& map() const { return map_; }
  int sign(const PointQ& p) const;
  int sign(const Point& p) const;
  int sign(const HomPoint& p) const;
  // normalized value, max |L| over the hull equal to 1
  double value(const Point& p) const { return (an_ * p.x + bn_ * p.y + cn_); }

 private:
  AffineMap map_;
  double an_ = 0, bn_ = 0, cn_ = 0;
  bool small_ = false;
  std::int64_t A_ = 0, B_ = 0, C_ = 0;
};

}  // namespace ipd

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ipd/geometry.h"
#include "ipd/path.h"

namespace ipd {

// What a plan does on its own separation line (or path).
struct OnLineRule {
  enum class Kind { always_c, always_d, prob, diagonal_split };
  Kind kind = Kind::always_c;
  Rational p = 0;

  static OnLineRule cooperate() { return {Kind::always_c, 1}; }
  static OnLineRule defect() { return {Kind::always_d, 0}; }
  static OnLineRule prob(const Rational& p);
  // cooperate at (Q,Q) iff Q >= (T+S)/2
  static OnLineRule diagonal_split() { return {Kind::diagonal_split, 0}; }
  std::string describe() const;
};

// Defect where map > 0 (strict) or map >= 0 (closed).
struct HalfPlane {
  AffineMap map;
  bool strict = true;
};

class SmalePlan {
 public:
  struct Simple {
    Line line;
    OnLineRule on_line;
    bool rr_cooperates = false;  // overrides the rule at (R,R)
  };
  struct Constant {
    Rational prob;
  };
  struct Region {
    std::vector<HalfPlane> defect;
    Rational cooperate_default = 1;
  };
  struct Path {
    std::shared_ptr<const SeparationPath> path;
    OnLineRule on_path;
  };
  using Body = std::variant<Simple, Constant, Region, Path>;

  // Validates the body: simple plans need a separation line, paths a graph,
  // probabilities must lie in [0, 1].
  SmalePlan(const GameParams& g, Body body, std::string family);

  const Body& body() const { return body_; }
  const std::string& family() const { return family_; }
  const GameParams& game() const { return g_; }
  bool is_simple() const { return std::holds_alternative<Simple>(body_); }
  const Line& line() const;

  // Cooperation probability; throws std::domain_error outside the hull.
  double evaluate(const PointQ& s) const;
  double evaluate(const Point& s) const;
  // Trajectory averages are in the hull by construction and are not re-checked.
  double evaluate(const HomPoint& s) const;

  std::string describe() const;

 private:
  template <class Pt>
  double eval(const Pt& s) const;
  template <class Pt>
  double on_line(const OnLineRule& r, const Pt& s) const;
  bool at_rr(const PointQ& s) const { return s == g_.rr(); }
  bool at_rr(const Point& s) const { return dist(s, to_double(g_.rr())) <= hull_tolerance(g_); }
  bool at_rr(const HomPoint& s) const { return at_rr(s.exact()); }

  Body body_;
  std::string family_;
  GameParams g_;
  std::vector<SignTest> tests_;
  SignTest split_;
};

SmalePlan make_equalizer(const GameParams& g, const Rational& E, OnLineRule on_line = OnLineRule::cooperate());
SmalePlan make_extortionate(const GameParams& g, const Rational& slope, OnLineRule on_line = OnLineRule::cooperate());
// Line through (R,R) with slope in (0,1). The rule applies on the line away from (R,R);
// the plan always cooperates at (R,R).
SmalePlan make_good_simple(const GameParams& g, const Rational& slope, OnLineRule on_line = OnLineRule::cooperate());
SmalePlan make_allc(const GameParams& g);
// Simple only when P <= (T+S)/2; otherwise the constant 0 plan.
SmalePlan make_alld(const GameParams& g);
SmalePlan make_smale_tft(const GameParams& g);
SmalePlan make_simple(const GameParams& g, const Line& l, OnLineRule on_line = OnLineRule::cooperate());
SmalePlan make_constant(const GameParams& g, const Rational& p);
// Defect above )(R,R),V( or above )(P,P),V(, cooperate elsewhere; needs P < (T+S)/2 and R > V_Y > V_X >= P.
SmalePlan make_generous_region(const GameParams& g, const PointQ& V);
// Cooperation zone = conv(vertices); checks (P,P),(R,R),(T,S) in C, (S,T) not in C and
// (T+S)/2 on the diagonal in the hull-relative interior of C.
SmalePlan make_convex_generous(const GameParams& g, const std::vector<PointQ>& vertices);
// Cooperate on conv(vertices), defect elsewhere, no further conditions.
SmalePlan make_region_polygon(const GameParams& g, const std::vector<PointQ>& vertices, std::string family = "region");
SmalePlan make_path_plan(const GameParams& g, std::shared_ptr<const SeparationPath> path,
                         OnLineRule on_path = OnLineRule::cooperate());

// Half-plane strictly on the (S,T) side of a line.
HalfPlane defect_above(const Line& l, const GameParams& g);

struct SmaleFlags {
  bool simple = false;
  bool weakly_agreeable = false;
  bool weakly_firm = false;
  bool protection_line = false;
  bool generous = false;
  bool convex_generous = false;
  bool good = false;
  bool convex_good = false;
};

// Generosity is decided exactly for line, region and constant plans (the open set U is
// taken to be the strict cooperation side of every defect test). Path plans are sampled:
// a grid over {s_X >= s_Y} and a cone around [(T+S)/2 (1,1), (R,R)) of half-width
// cone * |q - (R,R)| at each segment point q.
SmaleFlags classify_smale(const SmalePlan& plan, double cone = 0.02);

struct PredictedLimit {
  enum class Kind { point, diagonal, codiagonal };
  Kind kind = Kind::point;
  PointQ point;
};

// Limit of two simple plans: l_X n Switch(l_Y), or a tagged extreme case.
PredictedLimit predicted_limit(const SmalePlan& x, const SmalePlan& y);

}  // namespace ipd

#include "ipd/folk.h"

#include <stdexcept>

namespace ipd {

namespace {

PointQ left_boundary_point(const GameParams& g, const Rational& h) {
  const Rational& pb = g.p_bar();
  return {pb + (h - pb) * (g.S() - pb) / (g.T() - pb), h};
}

PointQ right_boundary_point(const GameParams& g, const Rational& h) {
  return {g.R() + (g.R() - h) * (g.T() - g.R()) / (g.R() - g.S()), h};
}

SmalePlan path_plan_at(const GameParams& g, const PointQ& peak) {
  return make_path_plan(g, std::make_shared<const SeparationPath>(path_from_peak(g, peak)));
}

// P < s_X < R <= s_Y
FolkPair mixed_pair(const GameParams& g, const PointQ& s) {
  SmalePlan y = path_plan_at(g, switch_point(s));
  Rational h = (g.P() + s.x) / 2;
  PointQ v1 = left_boundary_point(g, h), w1 = right_boundary_point(g, h);
  SmalePlan::Region r;
  r.defect.push_back({Line::through(v1, s).map(), true});
  r.defect.push_back({Line::through(s, w1).map(), true});
  r.cooperate_default = 1;
  SmalePlan x(g, std::move(r), "folk_peak_region");
  return {std::move(x), std::move(y), s, FolkCase::mixed};
}

}  // namespace

FolkPair folk_pair(const GameParams& g, const PointQ& s) {
  if (!in_hull(g, s)) throw std::invalid_argument("s* is outside the outcome hull");
  if (!(s.x > g.P() && s.y > g.P())) throw std::invalid_argument("s* needs both coordinates above P");
  if (s == g.rr()) {
    SmalePlan p = make_good_simple(g, Rational(1, 2));
    return {p, p, s, FolkCase::good};
  }
  if (s.x < g.R() && s.y < g.R()) return {path_plan_at(g, s), path_plan_at(g, switch_point(s)), s, FolkCase::paths};
  if (s.x < g.R()) return mixed_pair(g, s);
  FolkPair f = mixed_pair(g, switch_point(s));
  return {std::move(f.y), std::move(f.x), s, FolkCase::mixed};
}

const char* folk_case_name(FolkCase c) {
  switch (c) {
    case FolkCase::paths: return "paths";
    case FolkCase::good: return "good";
    case FolkCase::mixed: return "mixed";
  }
  return "?";
}

}  // namespace ipd

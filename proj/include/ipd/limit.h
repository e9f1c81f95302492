#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ipd/match.h"

namespace ipd {

struct LimitSetEstimate {
  enum class Shape { singleton, segment, loop };
  std::vector<Point> cloud;  // thinned tail
  long tail_from = 0;        // first round of the tail
  double max_step = 0;       // largest tail step
  double final_step = 0;
  double radius = 0;         // connectivity radius, 3 * max_step
  bool connected = false;
  double diameter = 0;
  Point centroid;
  Shape shape = Shape::singleton;
  std::string json() const;
};

const char* shape_name(LimitSetEstimate::Shape s);

// Tail = last tail_fraction of the rounds. Singleton when the cloud diameter is below
// 10 * max_step, segment when the minor principal axis is, loop otherwise.
LimitSetEstimate estimate_limit_set(const Trajectory& t, double tail_fraction = 0.5, std::size_t max_points = 4000);

struct ContainmentReport {
  bool ok = true;
  double worst = 0;
  double tol = 0;
};

// distance(s) is the distance from s to the region, 0 inside. tol < 0 means 5 * the largest tail step.
ContainmentReport verify_containment(const LimitSetEstimate& e, const std::function<double(const Point&)>& distance,
                                     double tol = -1);

// Two-sided Hausdorff distance between a point cloud and a closed polygon boundary,
// the boundary sampled at `samples` points.
double hausdorff_to_loop(const std::vector<Point>& cloud, const std::vector<Point>& loop, int samples = 2000);
double distance_to_loop(const std::vector<Point>& loop, const Point& q);

struct SeparationBound {
  bool refused = false;
  std::string reason;
  double ratio = 0;  // max over N >= N* of L(s^N) W_N / (M max(W_{N*}, w_k for N* < k <= N))
  long worst_round = 0;
};

// M is the max of |L| over the hull. two_sided uses |L|. Refused when the run's
// weights fail Condition 1 or 2.
SeparationBound check_separation_bound(const Trajectory& t, const AffineMap& L, long n_star, bool two_sided = false);

}  // namespace ipd

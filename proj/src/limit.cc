#include "ipd/limit.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

namespace ipd {

namespace {

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Points within r of each other are joined; cells of side r, neighbours in the 3x3 block.
bool connected_at(const std::vector<Point>& pts, double r) {
  if (pts.size() <= 1) return true;
  if (r <= 0) {
    for (const auto& p : pts)
      if (!(p == pts[0])) return false;
    return true;
  }
  auto key = [](std::int64_t i, std::int64_t j) { return (i << 32) ^ (j & 0xffffffff); };
  std::unordered_map<std::int64_t, std::vector<int>> cells;
  std::vector<std::pair<std::int64_t, std::int64_t>> idx(pts.size());
  for (size_t k = 0; k < pts.size(); ++k) {
    std::int64_t i = std::floor(pts[k].x / r), j = std::floor(pts[k].y / r);
    idx[k] = {i, j};
    cells[key(i, j)].push_back(int(k));
  }
  DisjointSets ds(int(pts.size()));
  for (auto& [k, members] : cells) {
    // everything in one cell is within r * sqrt(2); check pairwise against neighbours only through representatives
    auto [ci, cj] = idx[members[0]];
    for (int di = -1; di <= 1; ++di)
      for (int dj = -1; dj <= 1; ++dj) {
        auto it = cells.find(key(ci + di, cj + dj));
        if (it == cells.end()) continue;
        for (int a : members)
          for (int b : it->second) {
            if (ds.find(a) == ds.find(b)) continue;
            if (dist(pts[a], pts[b]) <= r) ds.unite(a, b);
          }
      }
  }
  int root = ds.find(0);
  for (size_t k = 1; k < pts.size(); ++k)
    if (ds.find(int(k)) != root) return false;
  return true;
}

// Duplicate points collapse so that the pairwise pass stays small.
std::vector<Point> dedupe(const std::vector<Point>& pts, double grain) {
  if (grain <= 0) return pts;
  std::unordered_map<std::int64_t, int> seen;
  std::vector<Point> out;
  for (const auto& p : pts) {
    std::int64_t i = std::llround(p.x / grain), j = std::llround(p.y / grain);
    std::int64_t k = (i << 32) ^ (j & 0xffffffff);
    if (seen.emplace(k, 1).second) out.push_back(p);
  }
  return out;
}

}  // namespace

const char* shape_name(LimitSetEstimate::Shape s) {
  switch (s) {
    case LimitSetEstimate::Shape::singleton: return "singleton";
    case LimitSetEstimate::Shape::segment: return "segment";
    case LimitSetEstimate::Shape::loop: return "loop";
  }
  return "?";
}

std::string LimitSetEstimate::json() const {
  nlohmann::json j;
  j["shape"] = shape_name(shape);
  j["tail_from"] = tail_from;
  j["max_step"] = max_step;
  j["radius"] = radius;
  j["connected"] = connected;
  j["diameter"] = diameter;
  j["centroid"] = {centroid.x, centroid.y};
  auto& pts = j["points"] = nlohmann::json::array();
  for (const auto& p : cloud) pts.push_back({p.x, p.y});
  return j.dump();
}

LimitSetEstimate estimate_limit_set(const Trajectory& t, double tail_fraction, std::size_t max_points) {
  LimitSetEstimate e;
  long n = t.rounds();
  long from = std::max(1L, n - static_cast<long>(std::floor(tail_fraction * n)) + 1);
  e.tail_from = from;
  const auto& avg = t.averages();
  for (long N = from; N < n; ++N) e.max_step = std::max(e.max_step, dist(avg[N], avg[N - 1]));
  if (n >= 2) e.final_step = dist(avg[n - 1], avg[n - 2]);
  e.radius = 3 * e.max_step;

  std::vector<Point> tail(avg.begin() + (from - 1), avg.end());
  e.connected = connected_at(dedupe(tail, e.radius / 4), e.radius);

  size_t stride = std::max<size_t>(1, tail.size() / std::max<size_t>(1, max_points));
  for (size_t k = 0; k < tail.size(); k += stride) e.cloud.push_back(tail[k]);
  if (!(e.cloud.back() == tail.back())) e.cloud.push_back(tail.back());

  double cx = 0, cy = 0;
  for (const auto& p : e.cloud) cx += p.x, cy += p.y;
  e.centroid = {cx / e.cloud.size(), cy / e.cloud.size()};
  for (size_t i = 0; i < e.cloud.size(); ++i)
    for (size_t j = i + 1; j < e.cloud.size(); ++j) e.diameter = std::max(e.diameter, dist(e.cloud[i], e.cloud[j]));

  double threshold = 10 * e.max_step;
  if (e.diameter < threshold) {
    e.shape = LimitSetEstimate::Shape::singleton;
  } else {
    double sxx = 0, syy = 0, sxy = 0;
    for (const auto& p : e.cloud) {
      double dx = p.x - e.centroid.x, dy = p.y - e.centroid.y;
      sxx += dx * dx, syy += dy * dy, sxy += dx * dy;
    }
    sxx /= e.cloud.size(), syy /= e.cloud.size(), sxy /= e.cloud.size();
    double tr = sxx + syy, det = sxx * syy - sxy * sxy;
    double minor = tr / 2 - std::sqrt(std::max(0.0, tr * tr / 4 - det));
    e.shape = std::sqrt(std::max(0.0, minor)) < threshold ? LimitSetEstimate::Shape::segment
                                                           : LimitSetEstimate::Shape::loop;
  }
  return e;
}

ContainmentReport verify_containment(const LimitSetEstimate& e, const std::function<double(const Point&)>& distance,
                                     double tol) {
  ContainmentReport r;
  r.tol = tol < 0 ? 5 * e.max_step : tol;
  for (const auto& p : e.cloud) r.worst = std::max(r.worst, distance(p));
  r.ok = r.worst <= r.tol;
  return r;
}

double distance_to_loop(const std::vector<Point>& loop, const Point& q) {
  double best = INFINITY;
  for (size_t i = 0; i < loop.size(); ++i) best = std::min(best, segment_distance(loop[i], loop[(i + 1) % loop.size()], q));
  return best;
}

double hausdorff_to_loop(const std::vector<Point>& cloud, const std::vector<Point>& loop, int samples) {
  double h = 0;
  for (const auto& p : cloud) h = std::max(h, distance_to_loop(loop, p));
  std::vector<Point> closed(loop);
  closed.push_back(loop.front());
  for (const auto& q : sample_by_arclength(closed, samples)) {
    double best = INFINITY;
    for (const auto& p : cloud) best = std::min(best, dist(p, q));
    h = std::max(h, best);
  }
  return h;
}

SeparationBound check_separation_bound(const Trajectory& t, const AffineMap& L, long n_star, bool two_sided) {
  SeparationBound b;
  if (!t.weights().is_uniform()) {
    auto wc = weight_conditions(t.weights(), std::max(1000L, t.rounds()));
    if (!wc.c1 || !wc.c2) {
      b.refused = true;
      b.reason = std::string("weights fail Condition ") + (!wc.c1 ? "1" : "2");
      return b;
    }
  }
  const GameParams& g = t.game();
  double M = to_double(L.max_abs(g));
  if (n_star < 1) n_star = 1;
  if (n_star > t.rounds()) return b;
  // a single step can land a distance w_N/W_N past the line, so the reference
  // weight is the larger of W_{N*} and the biggest step weight seen since
  double lref = t.log_W(n_star);
  b.ratio = -INFINITY;
  for (long N = n_star; N <= t.rounds(); ++N) {
    if (N > n_star) lref = std::max(lref, std::log(t.step_weight(N)) + t.log_W(N));
    double v = L(t.average(N));
    if (two_sided) v = std::abs(v);
    double r = v / M * std::exp(t.log_W(N) - lref);
    if (r > b.ratio) {
      b.ratio = r;
      b.worst_round = N;
    }
  }
  return b;
}

}  // namespace ipd

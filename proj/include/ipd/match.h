#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "ipd/markov.h"
#include "ipd/smale.h"
#include "ipd/weights.h"

namespace ipd {

struct InitialPlay {
  enum class Kind { c, d, prob };
  Kind kind = Kind::c;
  double p = 1;
  static InitialPlay cooperate() { return {Kind::c, 1}; }
  static InitialPlay defect() { return {Kind::d, 0}; }
  static InitialPlay prob(double p);
  double cooperation() const { return kind == Kind::c ? 1 : kind == Kind::d ? 0 : p; }
};

// Fixed move list indexed by absolute round, repeated when it runs out.
struct ScriptedPlan {
  std::vector<Move> moves;
};

using Plan = std::variant<MarkovPlan, SmalePlan, ScriptedPlan>;

// Round 1 is the initial play, rounds 2..N* follow the prefix and the plan decides
// every round after N* = 1 + prefix.size().
struct Strategy {
  InitialPlay initial;
  std::vector<Move> prefix;
  Plan plan;
  long adoption_round() const { return 1 + static_cast<long>(prefix.size()); }
  std::string describe() const;
};

Strategy make_strategy(Plan plan, InitialPlay initial = InitialPlay::cooperate(), std::vector<Move> prefix = {});

enum class Arithmetic { rational, floating };

struct SimOptions {
  long rounds = 1000;
  std::uint64_t seed = 1;
  WeightSequence weights = WeightSequence::uniform();
  // Weighted runs always use floating point.
  Arithmetic mode = Arithmetic::rational;
};

class Trajectory {
 public:
  const GameParams& game() const { return g_; }
  std::uint64_t seed() const { return seed_; }
  Arithmetic mode() const { return mode_; }
  const WeightSequence& weights() const { return w_; }
  long rounds() const { return static_cast<long>(out_.size()); }
  Outcome outcome(long k) const { return out_[k - 1]; }
  const std::vector<Outcome>& outcomes() const { return out_; }
  // s^N for 1 <= N <= rounds
  Point average(long N) const { return avg_[N - 1]; }
  const std::vector<Point>& averages() const { return avg_; }
  // Exact s^N; rational mode only.
  PointQ exact_average(long N) const;
  HomPoint hom_average(long N) const { return hom_[N - 1]; }
  // w_N / W_N
  double step_weight(long N) const;
  double log_W(long N) const;
  std::string csv() const;
  void write_csv(const std::string& path) const;

 private:
  friend Trajectory simulate(const Strategy&, const Strategy&, const GameParams&, const SimOptions&);
  GameParams g_ = GameParams::canonical();
  std::uint64_t seed_ = 0;
  Arithmetic mode_ = Arithmetic::rational;
  WeightSequence w_ = WeightSequence::uniform();
  std::vector<Outcome> out_;
  std::vector<Point> avg_;
  std::vector<HomPoint> hom_;  // rational mode
  std::vector<double> log_W_;  // weighted mode
};

Trajectory simulate(const Strategy& x, const Strategy& y, const GameParams& g, const SimOptions& o);

struct LawReport {
  long checked = 0;
  long violations = 0;
  double worst = 0;  // largest excess over the allowed value
};

// |s^{N+1} - s^N| <= (w_{N+1}/W_{N+1}) diam for every round.
LawReport check_step_law(const Trajectory& t);
// s^{N+1} = (W_N/W_{N+1}) s^N + (w_{N+1}/W_{N+1}) S^{N+1}, exactly in rational mode.
LawReport check_convexity_law(const Trajectory& t);

// Empirical frequencies of cc, cd, dc, dd over rounds from..to.
Dist4<double> outcome_frequencies(const Trajectory& t, long from, long to);

}  // namespace ipd

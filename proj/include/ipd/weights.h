#pragma once

#include <string>
#include <vector>

namespace ipd {

// Positive averaging weights with w_1 = 1, handled in log space so that
// fast-growing sequences such as 2^(n-1) stay finite.
class WeightSequence {
 public:
  enum class Kind { uniform, power, geometric };

  static WeightSequence uniform() { return WeightSequence(Kind::uniform, 0); }
  // w_n = n^e; e = -1 is the harmonic sequence
  static WeightSequence power(double exponent);
  // w_n = r^(n-1)
  static WeightSequence geometric(double ratio);

  Kind kind() const { return kind_; }
  double parameter() const { return param_; }
  bool is_uniform() const;

  double log_weight(long n) const;
  std::string describe() const;

 private:
  WeightSequence(Kind k, double p) : kind_(k), param_(p) {}
  Kind kind_;
  double param_;
};

double log_add(double a, double b);

// Running W_N and Delta_N = sum_{k < N} |w_{k+1} - w_k|.
class WeightAccumulator {
 public:
  explicit WeightAccumulator(WeightSequence w);

  // Moves from N to N + 1 and returns w_{N+1} / W_{N+1}.
  double advance();

  long n() const { return n_; }
  double log_W() const { return log_W_; }
  double log_Delta() const { return log_D_; }
  double log_w() const { return log_w_; }

 private:
  WeightSequence w_;
  long n_ = 0;
  double log_w_ = 0, log_W_ = 0, log_D_;
};

struct WeightTrace {
  long n;
  double step_fraction;   // w_N / W_N
  double log_W;
  double delta_fraction;  // Delta_N / W_N
};

struct WeightConditionReport {
  bool c1 = false, c2 = false, c3 = false;
  bool monotone = false;
  std::vector<WeightTrace> trace;  // at horizon/100, horizon/10, horizon
  std::string method;
};

// Finite-horizon trend tests for the three asymptotic weight conditions:
//   c1  w_N/W_N -> 0:   the ratio at least halves over the last decade
//   c2  W_N -> inf:     the last decade's growth of W is at least 0.9 of the one before
//   c3  Delta_N/W_N -> 0: for monotone w, Delta_N = |w_{N+1} - w_1| and c3 follows from
//       c1 and c2; otherwise the ratio must at least halve over the last decade.
// A family whose limits only show beyond the horizon can fool these tests.
WeightConditionReport weight_conditions(const WeightSequence& w, long horizon);

}  // namespace ipd

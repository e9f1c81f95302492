#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ipd/smale.h"

namespace ipd {

// A_ij is X's payoff when i plays j, kept exactly and as doubles.
struct PayoffMatrix {
  std::vector<std::vector<Rational>> exact;
  std::vector<std::vector<double>> a;
  std::size_t size() const { return a.size(); }
  std::string json() const;
};

// Simple plans only. A diagonal pair pays (R,R) (weakly agreeable, initial c),
// a co-diagonal pair pays (T+S)/2 (1,1); any other parallel pairing is rejected.
PayoffMatrix build_payoff_matrix(const std::vector<SmalePlan>& roster);
PayoffMatrix payoff_matrix_from(const std::vector<std::vector<Rational>>& a);

double row_payoff(const PayoffMatrix& A, const std::vector<double>& xi, std::size_t i);  // A_i xi
double mean_payoff(const PayoffMatrix& A, const std::vector<double>& xi);                // A_xi xi
std::vector<double> replicator_field(const std::vector<double>& xi, const PayoffMatrix& A);

struct IntegrateOptions {
  double t_max = 1e4;
  double step = 0.01;
  double fixation = 1 - 1e-6;
  int record_every = 100;  // steps between stored orbit samples
  bool stop_at_fixation = true;
  // pairs (i, j) whose ln xi_i - ln xi_j is checked for monotonicity at every step
  std::vector<std::pair<int, int>> monitor;
};

struct Orbit {
  std::vector<double> t;
  std::vector<std::vector<double>> xi;
  std::vector<double> final_state;
  double final_time = 0;
  bool fixated = false;
  int fixated_at = -1;
  int halvings = 0;               // step halvings forced by the positivity guard
  long steps = 0;
  double max_simplex_error = 0;   // |sum - 1| before renormalization
  long monotonicity_violations = 0;
  std::string csv() const;
};

Orbit integrate(const std::vector<double>& xi0, const PayoffMatrix& A, const IntegrateOptions& o = {});

bool is_ess(std::size_t i, const PayoffMatrix& A);
// i weakly dominates j in J: A_jk <= A_ik for k in J, strict for at least one of k = i, k = j.
bool weakly_dominates(std::size_t i, std::size_t j, const std::vector<std::size_t>& J, const PayoffMatrix& A);
bool dominates(std::size_t i, std::size_t j, const std::vector<std::size_t>& J, const PayoffMatrix& A);
// Over the whole index set.
bool dominates_sequence(std::size_t i, const std::vector<std::size_t>& seq, const PayoffMatrix& A);

struct TheoremCheck {
  int i_star = -1;
  bool ess_theorem = false;
  bool equalizer_theorem = false;
  bool global_theorem = false;
  // global theorem data: members below l_{i*} first, then the rest by V^j_X
  std::vector<std::size_t> sequence;
  std::vector<std::pair<double, double>> vw;  // (V^j_X, W^j_X) for the rest, in sequence order
  bool vw_ordered = true;                     // V^j_X < W^j_X for each of them
  std::vector<std::string> notes;
};

// i_star < 0 picks the first member with a protection line.
TheoremCheck check_theorem_hypotheses(const std::vector<SmalePlan>& roster, int i_star = -1);

}  // namespace ipd

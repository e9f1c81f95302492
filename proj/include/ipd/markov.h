#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "ipd/game.h"
#include "ipd/weights.h"

namespace ipd {

// Cooperation probabilities after cc, cd, dc, dd, from the plan owner's side.
struct MarkovPlan {
  std::array<Rational, 4> p;
  std::array<double, 4> pd;

  static MarkovPlan make(const Rational& p1, const Rational& p2, const Rational& p3, const Rational& p4);
  std::string describe() const;
};

MarkovPlan markov_tft();     // (1, 0, 1, 0)
MarkovPlan markov_repeat();  // (1, 1, 0, 0)
MarkovPlan markov_allc();
MarkovPlan markov_alld();

template <class Num>
using Matrix4 = std::array<std::array<Num, 4>, 4>;
template <class Num>
using Dist4 = std::array<Num, 4>;

// Row/column order cc, cd, dc, dd from X's side; Y's plan is read through (q1, q3, q2, q4).
Matrix4<Rational> transition_matrix(const MarkovPlan& x, const MarkovPlan& y);
Matrix4<double> transition_matrix_d(const MarkovPlan& x, const MarkovPlan& y);

class SolveError : public std::runtime_error {
 public:
  SolveError(const std::string& what, double residual) : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

template <class Num>
struct TerminalSet {
  std::vector<int> states;
  Dist4<Num> stationary{};
};

template <class Num>
struct TerminalSetReport {
  std::vector<TerminalSet<Num>> sets;
  std::vector<int> transient;
};

TerminalSetReport<Rational> terminal_sets(const Matrix4<Rational>& m);
// Throws SolveError when the stationary residual exceeds 1e-10.
TerminalSetReport<double> terminal_sets(const Matrix4<double>& m);

PointQ limiting_payoff(const Dist4<Rational>& v, const GameParams& g);
Point limiting_payoff(const Dist4<double>& v, const GameParams& g);

struct MarkovFlags {
  bool agreeable = false;
  bool firm = false;
  bool generous = false;
  bool protection_inequalities = false;
  bool good = false;
};

MarkovFlags classify_markov(const MarkovPlan& p, const GameParams& g);

// Limiting payoff of a generous plan p (as X) facing All-D.
PointQ alld_vs_generous_payoff(const MarkovPlan& p, const GameParams& g);

struct WeightedDistribution {
  Dist4<double> average{};
  double residual = 0;  // || vbar - vbar M ||_1
  double bound = 0;     // (w_1 + w_{N+1} + Delta_N) / W_N
};

// vbar^N = sum_{n <= N} w_n v^n / W_N with v^{n+1} = v^n M.
WeightedDistribution weighted_distribution_average(const Matrix4<double>& m, const Dist4<double>& v1,
                                                   const WeightSequence& w, long N);

}  // namespace ipd

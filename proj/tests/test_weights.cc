#include <cmath>

#include "doctest.h"
#include "ipd/markov.h"
#include "ipd/weights.h"

using namespace ipd;

TEST_CASE("weight conditions") {
  auto u = weight_conditions(WeightSequence::uniform(), 10000);
  CHECK(u.c1);
  CHECK(u.c2);
  CHECK(u.c3);

  auto geo = weight_conditions(WeightSequence::geometric(2), 10000);
  CHECK_FALSE(geo.c1);
  // w_N / W_N = 2^(N-1) / (2^N - 1) -> 1/2
  REQUIRE(!geo.trace.empty());
  CHECK(geo.trace.back().step_fraction == doctest::Approx(0.5).epsilon(1e-9));

  auto harm = weight_conditions(WeightSequence::power(-1), 100000);
  CHECK(harm.monotone);
  CHECK(harm.c1);
  CHECK(harm.c2);
  CHECK(harm.c3);

  auto lin = weight_conditions(WeightSequence::power(1), 100000);
  CHECK(lin.c1);
  CHECK(lin.c2);
  CHECK(lin.c3);

  CHECK_THROWS(weight_conditions(WeightSequence::uniform(), 10));
}

TEST_CASE("accumulator matches direct sums") {
  WeightAccumulator acc(WeightSequence::power(1));
  double W = 0, D = 0;
  for (long n = 1; n <= 200; ++n) {
    double lam = acc.advance();
    W += n;
    if (n > 1) D += 1;
    CHECK(lam == doctest::Approx(n / W));
    CHECK(std::exp(acc.log_W()) == doctest::Approx(W));
  }
  CHECK(std::exp(acc.log_Delta()) == doctest::Approx(D));
}

TEST_CASE("geometric weights stay finite") {
  WeightAccumulator acc(WeightSequence::geometric(2));
  for (int n = 0; n < 5000; ++n) acc.advance();
  CHECK(std::isfinite(acc.log_W()));
  CHECK(acc.log_W() == doctest::Approx(5000 * std::log(2.0)).epsilon(1e-9));
}

TEST_CASE("weighted distribution average") {
  auto m = transition_matrix_d(markov_tft(), markov_tft());
  Dist4<double> cd{0, 1, 0, 0};
  auto one = weighted_distribution_average(m, cd, WeightSequence::uniform(), 1);
  CHECK(one.average == cd);

  auto lin = weighted_distribution_average(m, cd, WeightSequence::power(1), 10000);
  CHECK(lin.average[0] == doctest::Approx(0));
  CHECK(lin.average[1] == doctest::Approx(0.5).epsilon(1e-3));
  CHECK(lin.average[2] == doctest::Approx(0.5).epsilon(1e-3));
  CHECK(lin.residual <= lin.bound + 1e-12);

  // uniform weights on an all-positive chain approach its stationary vector
  auto p = MarkovPlan::make(Rational(9, 10), Rational(1, 5), Rational(1, 2), Rational(1, 10));
  auto q = MarkovPlan::make(Rational(4, 5), Rational(1, 3), Rational(2, 3), Rational(1, 4));
  auto mr = transition_matrix(p, q);
  auto rep = terminal_sets(mr);
  REQUIRE(rep.sets.size() == 1);
  auto avg = weighted_distribution_average(transition_matrix_d(p, q), {1, 0, 0, 0}, WeightSequence::uniform(), 20000);
  for (int i = 0; i < 4; ++i) CHECK(avg.average[i] == doctest::Approx(to_double(rep.sets[0].stationary[i])).epsilon(1e-3));
}

TEST_CASE("property: the residual bound holds for random plans") {
  for (int k = 1; k <= 20; ++k) {
    auto p = MarkovPlan::make(Rational(k, 21), Rational(21 - k, 22), Rational(1, 2), Rational(k, 40));
    auto q = MarkovPlan::make(Rational(1), Rational(k, 23), Rational(3, 7), Rational(20 - k + 1, 25));
    auto m = transition_matrix_d(p, q);
    for (auto w : {WeightSequence::uniform(), WeightSequence::power(1), WeightSequence::power(-1)})
      for (long N : {1L, 10L, 1000L, 10000L}) {
        auto r = weighted_distribution_average(m, {0, 0, 0, 1}, w, N);
        CHECK(r.residual <= r.bound + 1e-12);
      }
  }
}

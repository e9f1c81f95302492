#include "doctest.h"
#include "ipd/folk.h"
#include "ipd/match.h"
#include "oracle.h"

using namespace ipd;
using oracle::q;

namespace {
const GameParams g = GameParams::canonical();

Point play(const FolkPair& fp, long rounds) {
  SimOptions o;
  o.rounds = rounds;
  auto t = simulate(make_strategy(fp.x), make_strategy(fp.y), g, o);
  return t.average(rounds);
}
}  // namespace

TEST_CASE("the three cases") {
  auto c2 = folk_pair(g, g.rr());
  CHECK(c2.which == FolkCase::good);
  CHECK(c2.payoff == PointQ{3, 3});
  CHECK(classify_smale(c2.x).good);
  CHECK(classify_smale(c2.y).good);
  CHECK(dist(play(c2, 1000), {3, 3}) == 0);

  auto c1 = folk_pair(g, {2, q(5, 2)});
  CHECK(c1.which == FolkCase::paths);
  CHECK(dist(play(c1, 50000), {2, 2.5}) < 0.01);

  REQUIRE(in_hull(g, PointQ{2, q(7, 2)}));
  auto c3 = folk_pair(g, {2, q(7, 2)});
  CHECK(c3.which == FolkCase::mixed);
  CHECK(dist(play(c3, 50000), {2, 3.5}) < 0.01);

  auto c3s = folk_pair(g, {q(7, 2), 2});
  CHECK(c3s.which == FolkCase::mixed);
  CHECK(dist(play(c3s, 50000), {3.5, 2}) < 0.01);
  CHECK(std::string(folk_case_name(FolkCase::mixed)).size() > 0);
}

TEST_CASE("inadmissible targets") {
  CHECK_THROWS(folk_pair(g, {1, 2}));
  CHECK_THROWS(folk_pair(g, {2, 1}));
  CHECK_THROWS(folk_pair(g, {4, 4}));
}

TEST_CASE("unilateral deviations do not pay") {
  PointQ s{q(11, 5), q(14, 5)};
  auto fp = folk_pair(g, s);
  std::vector<Strategy> devs = {make_strategy(markov_alld()), make_strategy(markov_allc()),
                                make_strategy(make_alld(g)),
                                make_strategy(MarkovPlan::make(q(1, 2), q(1, 2), q(1, 2), q(1, 2)))};
  SimOptions o;
  o.rounds = 50000;
  for (const auto& d : devs) {
    auto tx = simulate(d, make_strategy(fp.y), g, o);
    CHECK(tx.average(o.rounds).x <= to_double(s.x) + 0.01);
    auto ty = simulate(make_strategy(fp.x), d, g, o);
    CHECK(ty.average(o.rounds).y <= to_double(s.y) + 0.01);
  }
}

#include <catch2/catch_amalgamated.hpp>
#include <set>

#include "test_util.hpp"

using namespace laplan;
using testutil::make_instance;

namespace {

// Independent spot-check enumerator: all n^n LA labelings, deduplicated via
// canonical form, feasibility via is_feasible on the built solution. Slow
// but entirely separate from the restricted-growth-string machinery.
double brute_best_partition(const Instance& inst, const std::vector<int>& assign) {
  const int n = inst.n_bs();
  double best = std::numeric_limits<double>::infinity();
  std::set<std::vector<int>> seen;
  std::vector<int> label(n, 0);
  for (;;) {
    std::vector<int> canon(n, -1);
    int next = 0;
    for (int i = 0; i < n; ++i) {
      bool fresh = true;
      for (int j = 0; j < i; ++j)
        if (label[j] == label[i]) {
          canon[i] = canon[j];
          fresh = false;
          break;
        }
      if (fresh) canon[i] = next++;
    }
    if (seen.insert(canon).second) {
      Solution sol = solution_from_assignment(inst, assign, canon);
      if (is_feasible(inst, sol).feasible)
        best = std::min(best, total_cost(inst, sol).total);
    }
    int pos = n - 1;
    while (pos >= 0 && label[pos] == n - 1) label[pos--] = 0;
    if (pos < 0) break;
    ++label[pos];
  }
  return best;
}

std::vector<std::uint64_t> bell_numbers(int up_to) {
  // Bell triangle
  std::vector<std::uint64_t> bell{1};
  std::vector<std::uint64_t> row{1};
  for (int n = 1; n <= up_to; ++n) {
    std::vector<std::uint64_t> next{row.back()};
    for (const std::uint64_t v : row) next.push_back(next.back() + v);
    bell.push_back(next.front());
    row = std::move(next);
  }
  return bell;
}

}  // namespace

TEST_CASE("zero handoffs: everything is optimal, the canonical answer is one LA") {
  Instance inst = make_instance(5, 2, 1);
  const OracleResult res = enumerate_optimal(inst, OracleLimits{});
  CHECK(res.cost.total == 0.0);
  CHECK(res.best.n_la() == 1);  // lexicographically smallest growth string
}

TEST_CASE("unconstrained capacities with positive flow collapse to a single LA") {
  Instance inst = make_instance(6, 2, 1);
  for (int i = 0; i + 1 < 6; ++i) {
    inst.handoff.at(i, i + 1) = 5;
    inst.handoff.at(i + 1, i) = 5;
  }
  inst.validate_and_finalize();
  const OracleResult res = enumerate_optimal(inst, OracleLimits{});
  CHECK(res.cost.total == 0.0);
  CHECK(res.best.n_la() == 1);
}

TEST_CASE("MSC split forces the cut into the optimum") {
  // 6 BSs, 3 per MSC, chain flow 0-1-2-3-4-5: the 2-3 link must cross
  Instance inst = make_instance(6, 2, 2);
  for (int i = 0; i + 1 < 6; ++i) {
    inst.handoff.at(i, i + 1) = 4;
    inst.handoff.at(i + 1, i) = 4;
  }
  inst.validate_and_finalize();
  REQUIRE(inst.bscs[0].msc == 0);
  REQUIRE(inst.bscs[1].msc == 1);
  // pin BSs 0-2 to BSC 0 and 3-5 to BSC 1
  const std::vector<int> fixed{0, 0, 0, 1, 1, 1};
  OracleLimits lim;
  const OracleResult res = enumerate_optimal(inst, lim, fixed);
  double cross_msc = inst.handoff.at(2, 3) + inst.handoff.at(3, 2);
  CHECK(res.cost.total >= cross_msc);
  CHECK(res.cost.total == cross_msc);  // one LA per MSC side is feasible here
  CHECK(check_la_msc(inst, res.best).empty());
}

TEST_CASE("partition count on an unconstrained instance equals the Bell number") {
  const auto bell = bell_numbers(8);
  REQUIRE(bell[6] == 203);
  REQUIRE(bell[8] == 4140);

  for (const int n : {5, 6}) {
    Instance inst = make_instance(n, 1, 1);
    const std::vector<int> fixed(n, 0);
    const OracleResult res = enumerate_optimal(inst, OracleLimits{}, fixed);
    CHECK(res.partitions_enumerated == bell[n]);
    CHECK(res.partitions_feasible == bell[n]);
  }
}

TEST_CASE("oracle agrees with an independent brute-force enumerator") {
  for (const std::uint64_t seed : {41ull, 42ull, 43ull}) {
    GenParams gp;
    gp.n_bs = 6;
    gp.n_bsc = 2;
    gp.n_msc = (seed % 2) ? 1 : 2;
    gp.seed = seed;
    Instance inst = generate(gp);
    Rng rng(1);
    Solution start = initial_topology(inst, rng);

    const OracleResult res = enumerate_optimal(inst, OracleLimits{}, start.bs_to_bsc);
    const double brute = brute_best_partition(inst, start.bs_to_bsc);
    CHECK(res.cost.total == brute);
  }
}

TEST_CASE("joint mode never loses to partition mode on the same instance") {
  GenParams gp;
  gp.n_bs = 7;
  gp.n_bsc = 2;
  gp.n_msc = 1;
  gp.seed = 9;
  Instance inst = generate(gp);
  Rng rng(1);
  Solution start = initial_topology(inst, rng);
  const OracleResult joint = enumerate_optimal(inst, OracleLimits{});
  const OracleResult part = enumerate_optimal(inst, OracleLimits{}, start.bs_to_bsc);
  CHECK(joint.cost.total <= part.cost.total);
}

TEST_CASE("oracle limits and infeasibility") {
  SECTION("too many BSs") {
    Instance inst = make_instance(11, 2, 1);
    CHECK_THROWS_AS(enumerate_optimal(inst, OracleLimits{}), LimitExceeded);
  }
  SECTION("custom limits accept larger instances") {
    Instance inst = make_instance(11, 2, 1);
    OracleLimits lim;
    lim.max_bs = 12;
    CHECK_NOTHROW(enumerate_optimal(inst, lim));
  }
  SECTION("BSC paging can make every plan infeasible") {
    Instance inst = make_instance(3, 1, 1);
    inst.bscs[0].paging_capacity = 25;  // every partition dispatches 30
    inst.validate_and_finalize();
    CHECK_THROWS_AS(enumerate_optimal(inst, OracleLimits{}), InfeasibleInstance);
  }
  SECTION("partition mode without a fixed assignment is a usage error") {
    Instance inst = make_instance(3, 1, 1);
    OracleLimits lim;
    lim.joint_mode = false;
    CHECK_THROWS_AS(enumerate_optimal(inst, lim), InvalidParam);
  }
  SECTION("capacity-violating fixed assignment is rejected") {
    Instance inst = make_instance(3, 2, 1);
    inst.bscs[0].trx_capacity = 1;
    inst.validate_and_finalize();
    const std::vector<int> fixed{0, 0, 0};
    CHECK_THROWS_AS(enumerate_optimal(inst, OracleLimits{}, fixed), ValidationError);
  }
}

TEST_CASE("oracle result is deterministic") {
  GenParams gp;
  gp.n_bs = 8;
  gp.n_bsc = 3;
  gp.n_msc = 2;
  gp.seed = 12;
  Instance inst = generate(gp);
  const OracleResult a = enumerate_optimal(inst, OracleLimits{});
  const OracleResult b = enumerate_optimal(inst, OracleLimits{});
  CHECK(a.best.bs_to_bsc == b.best.bs_to_bsc);
  CHECK(a.best.bs_to_la == b.best.bs_to_la);
  CHECK(a.cost.total == b.cost.total);
}

TEST_CASE("greedy merges everything when paging is slack") {
  Instance inst = make_instance(5, 2, 1);
  for (int i = 0; i + 1 < 5; ++i) {
    inst.handoff.at(i, i + 1) = 2;
    inst.handoff.at(i + 1, i) = 2;
  }
  inst.validate_and_finalize();
  const BaselineResult res = greedy_baseline(inst);
  CHECK(res.cost.total == 0.0);
  CHECK(res.solution.n_la() == 1);
}

TEST_CASE("greedy skips zero-flow merges") {
  Instance inst = make_instance(4, 2, 1);
  // flow only inside {0,1} and inside {2,3}; nothing across
  inst.handoff.at(0, 1) = 3;
  inst.handoff.at(1, 0) = 3;
  inst.handoff.at(2, 3) = 3;
  inst.handoff.at(3, 2) = 3;
  inst.validate_and_finalize();
  const BaselineResult res = greedy_baseline(inst);
  CHECK(res.cost.total == 0.0);
  CHECK(res.solution.n_la() == 2);  // merging the two would not improve
}

TEST_CASE("SA never loses to the greedy baseline") {
  for (const std::uint64_t seed : {61ull, 62ull, 63ull, 64ull, 65ull}) {
    GenParams gp;
    gp.n_bs = 18 + static_cast<int>(seed % 5);
    gp.n_bsc = 3;
    gp.n_msc = 1 + static_cast<int>(seed % 2);
    gp.seed = seed;
    Instance inst = generate(gp);
    const BaselineResult greedy = greedy_baseline(inst);
    SAParams p;
    p.seed = seed;
    p.restarts = 5;
    const SolveResult sa = run(inst, p);
    CHECK(sa.best_cost.total <= greedy.cost.total + 1e-9);
  }
}

#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"

using namespace laplan;
using testutil::fixture;
using testutil::make_instance;

TEST_CASE("bsc_loads sums attached demands") {
  Instance inst = make_instance(2, 2, 1);
  inst.bss[0].call_traffic = 2.5;
  inst.bss[1].call_traffic = 1.5;
  inst.validate_and_finalize();
  Solution sol = solution_from_assignment(inst, {0, 0}, {0, 0});
  const auto loads = bsc_loads(inst, sol);
  CHECK(loads[0].erlang == 4.0);
  CHECK(loads[0].bhca == 60.0);
  CHECK(loads[0].trx == 2);
  // empty BSC
  CHECK(loads[1].erlang == 0.0);
  CHECK(loads[1].bhca == 0.0);
  CHECK(loads[1].trx == 0);
}

TEST_CASE("capacity comparison is inclusive at the boundary") {
  Instance inst = make_instance(2, 1, 1);
  inst.bss[0].call_traffic = 2.5;
  inst.bss[1].call_traffic = 1.5;
  inst.bss[0].bhca = 50;
  inst.bss[1].bhca = 50;
  inst.bss[0].trx_demand = 2;
  inst.bss[1].trx_demand = 1;
  inst.bscs[0].call_capacity = 4.0;
  inst.bscs[0].bhca_capacity = 100;
  inst.bscs[0].trx_capacity = 3;
  inst.validate_and_finalize();
  Solution sol = solution_from_assignment(inst, {0, 0}, {0, 0});
  CHECK(check_bsc_capacity(inst, sol, 0).empty());

  SECTION("erlang overload") {
    inst.bscs[0].call_capacity = 3.9;
    const auto v = check_bsc_capacity(inst, sol, 0);
    REQUIRE(v.size() == 1);
    CHECK(v[0].kind == ViolationKind::CallTraffic);
    CHECK(v[0].entity == 0);
    CHECK(v[0].load == 4.0);
  }
  SECTION("trx overload") {
    inst.bscs[0].trx_capacity = 2;
    const auto v = check_bsc_capacity(inst, sol, 0);
    REQUIRE(v.size() == 1);
    CHECK(v[0].kind == ViolationKind::Trx);
  }
}

TEST_CASE("paging vector sums member rates") {
  Instance inst = make_instance(3, 1, 1);
  inst.bss[0].paging_rate = 3;
  inst.bss[1].paging_rate = 4;
  inst.bss[2].paging_rate = 9;
  inst.validate_and_finalize();
  Solution sol = solution_from_assignment(inst, {0, 0, 0}, {0, 0, 1});
  const auto pv = paging_vector(inst, sol);
  CHECK(pv[0] == 7.0);
  CHECK(pv[1] == 9.0);  // singleton: its own rate
}

TEST_CASE("BS paging violation when the LA vector exceeds the weakest member") {
  Instance inst = make_instance(3, 1, 1, /*bs_paging_cap=*/25.0);
  // rates 10 each; single LA has vector 30 > 25
  Solution one_la = solution_from_assignment(inst, {0, 0, 0}, {0, 0, 0});
  const auto v = check_paging(inst, one_la);
  REQUIRE(v.size() == 3);
  CHECK(v[0].kind == ViolationKind::BsPaging);
  CHECK(v[0].load == 30.0);
  CHECK(v[0].capacity == 25.0);

  // one LA per BS: minimal paging, fine
  Solution singletons = solution_from_assignment(inst, {0, 0, 0}, {0, 1, 2});
  CHECK(check_paging(inst, singletons).empty());
}

TEST_CASE("BSC paging counts each hosted LA's vector once") {
  Instance inst = make_instance(4, 2, 1);
  // LA 0 = {0,1} on BSC 0; LA 1 = {2,3} split across BSC 0 and 1
  Solution sol = solution_from_assignment(inst, {0, 0, 0, 1}, {0, 0, 1, 1});
  // BSC 0 hosts LA0 (20) and LA1 (20) -> 40; BSC 1 hosts LA1 -> 20
  inst.bscs[0].paging_capacity = 40.0;
  inst.bscs[1].paging_capacity = 20.0;
  CHECK(check_paging(inst, sol).empty());

  inst.bscs[0].paging_capacity = 39.9;
  const auto v = check_paging(inst, sol);
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == ViolationKind::BscPaging);
  CHECK(v[0].entity == 0);
  CHECK(v[0].load == 40.0);
}

TEST_CASE("fixture seed-42 initial topology passes the paging checks") {
  Instance inst = load_instance(fixture("fixture6.net"));
  Rng rng(42);
  Solution sol = initial_topology(inst, rng);
  CHECK(check_paging(inst, sol).empty());
}

TEST_CASE("LA-per-MSC rule") {
  Instance inst = make_instance(4, 2, 2);  // BSC0 -> MSC0, BSC1 -> MSC1
  SECTION("one LA per BSC is fine") {
    Solution sol = solution_from_assignment(inst, {0, 0, 1, 1}, {0, 0, 1, 1});
    CHECK(check_la_msc(inst, sol).empty());
  }
  SECTION("spanning two BSCs on one MSC is fine") {
    Instance same = make_instance(4, 2, 1);
    Solution sol = solution_from_assignment(same, {0, 0, 1, 1}, {0, 0, 0, 0});
    CHECK(check_la_msc(same, sol).empty());
  }
  SECTION("spanning MSC 0 and MSC 1 is a violation") {
    Solution sol = solution_from_assignment(inst, {0, 0, 1, 1}, {0, 0, 0, 1});
    const auto v = check_la_msc(inst, sol);
    REQUIRE(v.size() == 1);
    CHECK(v[0].kind == ViolationKind::LaMsc);
    CHECK(v[0].entity == 0);
  }
}

TEST_CASE("is_feasible reports every violation and mutates nothing") {
  Instance inst = make_instance(4, 2, 2, /*bs_paging_cap=*/15.0);
  inst.bscs[0].trx_capacity = 1;
  inst.validate_and_finalize();
  // BSC0 overloaded (2 trx), LA0 spans both MSCs, LA0 vector 20 > 15 caps
  Solution sol = solution_from_assignment(inst, {0, 0, 1, 1}, {0, 0, 0, 1});
  const Solution snapshot = sol;

  const FeasibilityReport rep = is_feasible(inst, sol);
  CHECK_FALSE(rep.feasible);
  bool saw_trx = false, saw_msc = false, saw_bs_paging = false;
  for (const Violation& v : rep.violations) {
    saw_trx |= v.kind == ViolationKind::Trx;
    saw_msc |= v.kind == ViolationKind::LaMsc;
    saw_bs_paging |= v.kind == ViolationKind::BsPaging;
  }
  CHECK(saw_trx);
  CHECK(saw_msc);
  CHECK(saw_bs_paging);

  CHECK(sol.bs_to_bsc == snapshot.bs_to_bsc);
  CHECK(sol.bs_to_la == snapshot.bs_to_la);
  CHECK(sol.la_paging == snapshot.la_paging);
}

TEST_CASE("cached loads match recomputation after applied moves") {
  GenParams gp;
  gp.n_bs = 10;
  gp.n_bsc = 3;
  gp.n_msc = 1;
  gp.seed = 55;
  Instance inst = generate(gp);
  Rng rng(2);
  Solution sol = initial_topology(inst, rng);
  int applied = 0;
  for (int step = 0; step < 2000 && applied < 200; ++step) {
    auto mv = propose_move(inst, sol, rng);
    if (!mv) continue;
    sol.apply_move(inst, *mv);
    ++applied;
    const auto fresh = bsc_loads(inst, sol);
    for (int c = 0; c < inst.n_bsc(); ++c) {
      REQUIRE_THAT(sol.bsc_loads[c].erlang,
                   Catch::Matchers::WithinRel(fresh[c].erlang, 1e-9) ||
                       Catch::Matchers::WithinAbs(fresh[c].erlang, 1e-9));
      REQUIRE(sol.bsc_loads[c].trx == fresh[c].trx);
    }
    const auto pv = paging_vector(inst, sol);
    for (int la = 0; la < sol.n_la(); ++la)
      REQUIRE_THAT(sol.la_paging[la], Catch::Matchers::WithinRel(pv[la], 1e-9) ||
                                          Catch::Matchers::WithinAbs(pv[la], 1e-9));
  }
  REQUIRE(applied >= 50);
}

#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"

using namespace laplan;
using testutil::fixture;
using testutil::make_instance;
using testutil::parse_instance;

TEST_CASE("fixture round-trips through the instance format") {
  Instance inst = load_instance(fixture("fixture3.net"));
  CHECK(inst.n_bs() == 3);
  CHECK(inst.n_bsc() == 2);
  CHECK(inst.handoff.n == 3);
  CHECK(inst.handoff.at(0, 1) == 4.0);
  CHECK(inst.handoff.at(1, 0) == 3.5);
  CHECK(inst.handoff.at(0, 2) == 0.0);
  CHECK(inst.proximity_radius == std::numeric_limits<double>::infinity());

  std::ostringstream out;
  write_instance(out, inst);
  Instance back = parse_instance(out.str());
  std::ostringstream out2;
  write_instance(out2, back);
  CHECK(out.str() == out2.str());
}

TEST_CASE("instance validation rejects bad files") {
  const std::string base =
      "[network]\nn_bs = 2\nn_bsc = 1\nn_msc = 2\n"
      "[bs]\n0 0 0 1 10 1 5 50\n1 1 0 1 10 1 5 50\n"
      "[bsc]\n0 0 0 10 100 4 200 0\n";

  SECTION("nonzero diagonal") {
    CHECK_THROWS_MATCHES(parse_instance(base + "[handoff]\n1 1 5\n"), ValidationError,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("nonzero diagonal")));
  }
  SECTION("dangling MSC reference") {
    const std::string bad =
        "[network]\nn_bs = 1\nn_bsc = 1\nn_msc = 2\n"
        "[bs]\n0 0 0 1 10 1 5 50\n"
        "[bsc]\n0 0 0 10 100 4 200 7\n";
    CHECK_THROWS_AS(parse_instance(bad), ValidationError);
  }
  SECTION("negative capacity") {
    const std::string bad =
        "[network]\nn_bs = 1\nn_bsc = 1\nn_msc = 1\n"
        "[bs]\n0 0 0 1 10 1 5 50\n"
        "[bsc]\n0 0 0 -10 100 4 200 0\n";
    CHECK_THROWS_AS(parse_instance(bad), ValidationError);
  }
  SECTION("handoff index out of range") {
    CHECK_THROWS_AS(parse_instance(base + "[handoff]\n0 9 1\n"), ValidationError);
  }
  SECTION("BS paging capacity below own rate") {
    const std::string bad =
        "[network]\nn_bs = 1\nn_bsc = 1\nn_msc = 1\n"
        "[bs]\n0 0 0 1 10 1 50 5\n"
        "[bsc]\n0 0 0 10 100 4 200 0\n";
    CHECK_THROWS_AS(parse_instance(bad), ValidationError);
  }
  SECTION("trx_demand below one") {
    const std::string bad =
        "[network]\nn_bs = 1\nn_bsc = 1\nn_msc = 1\n"
        "[bs]\n0 0 0 1 10 0 5 50\n"
        "[bsc]\n0 0 0 10 100 4 200 0\n";
    CHECK_THROWS_AS(parse_instance(bad), ValidationError);
  }
  SECTION("malformed number is a parse error with line info") {
    CHECK_THROWS_MATCHES(parse_instance(base + "[handoff]\n0 1 abc\n"), ParseError,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring(":11:")));
  }
  SECTION("missing BS row") {
    const std::string bad =
        "[network]\nn_bs = 2\nn_bsc = 1\nn_msc = 1\n"
        "[bs]\n0 0 0 1 10 1 5 50\n"
        "[bsc]\n0 0 0 10 100 4 200 0\n";
    CHECK_THROWS_AS(parse_instance(bad), ParseError);
  }
  SECTION("duplicate handoff entry") {
    CHECK_THROWS_AS(parse_instance(base + "[handoff]\n0 1 1\n0 1 2\n"), ParseError);
  }
  SECTION("missing file") {
    CHECK_THROWS_AS(load_instance("/nonexistent/nowhere.net"), ParseError);
  }
}

TEST_CASE("initial topology on the unique-candidate instance") {
  Instance inst = make_instance(1, 1, 1);
  Rng rng(3);
  Solution sol = initial_topology(inst, rng);
  CHECK(sol.bs_to_bsc == std::vector<int>{0});
  CHECK(sol.bs_to_la == std::vector<int>{0});
  CHECK(sol.n_la() == 1);
}

TEST_CASE("initial topology is feasible and seed-deterministic on the fixture") {
  Instance inst = load_instance(fixture("fixture6.net"));
  Rng rng(42);
  Solution sol = initial_topology(inst, rng);
  CHECK(is_feasible(inst, sol).feasible);

  Rng rng2(42);
  Solution sol2 = initial_topology(inst, rng2);
  CHECK(sol.bs_to_bsc == sol2.bs_to_bsc);
  CHECK(sol.bs_to_la == sol2.bs_to_la);
}

TEST_CASE("initial topology reports impossible demands") {
  Instance inst = make_instance(2, 2, 1);
  inst.bss[1].trx_demand = 99;
  for (auto& c : inst.bscs) c.trx_capacity = 10;
  inst.validate_and_finalize();
  Rng rng(1);
  CHECK_THROWS_AS(initial_topology(inst, rng), InfeasibleInstance);
}

TEST_CASE("solution report round-trips the assignment maps") {
  Instance inst = load_instance(fixture("fixture6.net"));
  Rng rng(7);
  Solution sol = initial_topology(inst, rng);
  assign_labels(sol, "001", "01");
  const CostBreakdown cost = total_cost(inst, sol);
  const FeasibilityReport rep = is_feasible(inst, sol);

  std::ostringstream out;
  write_solution(out, sol, cost, rep, {{"seed", "7"}});
  std::istringstream in(out.str());
  Solution back = read_solution(in, "<inline>", inst);
  CHECK(back.bs_to_bsc == sol.bs_to_bsc);
  CHECK(back.bs_to_la == sol.bs_to_la);
}

TEST_CASE("solution report lists one [la] row per LA") {
  Instance inst = make_instance(6, 3, 1);
  Solution sol = solution_from_assignment(inst, {0, 0, 1, 1, 2, 2}, {0, 0, 1, 1, 2, 2});
  std::ostringstream out;
  write_solution(out, sol, total_cost(inst, sol), is_feasible(inst, sol));

  std::istringstream in(out.str());
  std::string line;
  int la_rows = 0;
  bool in_la = false;
  while (std::getline(in, line)) {
    if (line.rfind("[", 0) == 0) in_la = (line == "[la]");
    else if (in_la && !line.empty() && line[0] != '#') ++la_rows;
  }
  CHECK(la_rows == 3);
}

TEST_CASE("unwritable path surfaces an I/O error naming the path") {
  Instance inst = make_instance(2, 1, 1);
  Solution sol = solution_from_assignment(inst, {0, 0}, {0, 0});
  CHECK_THROWS_MATCHES(
      write_solution("/nonexistent_dir/x.sol", sol, total_cost(inst, sol),
                     is_feasible(inst, sol)),
      IoError,
      Catch::Matchers::MessageMatches(
          Catch::Matchers::ContainsSubstring("/nonexistent_dir/x.sol")));
}

TEST_CASE("caches stay coherent under long random move sequences") {
  GenParams gp;
  gp.n_bs = 12;
  gp.n_bsc = 3;
  gp.n_msc = 2;
  gp.seed = 17;
  Instance inst = generate(gp);
  Rng rng(99);
  Solution sol = initial_topology(inst, rng);

  int applied = 0;
  for (int step = 0; step < 4000 && applied < 600; ++step) {
    auto mv = propose_move(inst, sol, rng);
    if (!mv) continue;
    sol.apply_move(inst, *mv);
    ++applied;
    if (applied % 50 == 0) sol.verify_caches(inst);
  }
  REQUIRE(applied >= 100);
  sol.verify_caches(inst);

  // partition property
  std::size_t members = 0;
  for (int la = 0; la < sol.n_la(); ++la) members += sol.la_members[la].size();
  CHECK(members == static_cast<std::size_t>(inst.n_bs()));
  CHECK(sol.n_la() <= inst.n_bs());
}

TEST_CASE("emptied LAs are deleted and indices stay dense") {
  Instance inst = make_instance(3, 2, 1);
  // two LAs; BS 2 alone in LA 1
  Solution sol = solution_from_assignment(inst, {0, 0, 1}, {0, 0, 1});
  Move mv;
  mv.bs = 2;
  mv.old_bsc = 1;
  mv.new_bsc = 0;
  mv.old_la = 1;
  mv.target_la = 0;
  sol.apply_move(inst, mv);
  CHECK(sol.n_la() == 1);
  CHECK(sol.bs_to_la == std::vector<int>{0, 0, 0});
  sol.verify_caches(inst);
}

TEST_CASE("label assignment validates GSM identifier shapes") {
  Instance inst = make_instance(2, 1, 1);
  Solution sol = solution_from_assignment(inst, {0, 0}, {0, 1});
  assign_labels(sol, "310", "26");
  REQUIRE(sol.la_labels.size() == 2);
  CHECK(sol.la_labels[1].lac == 1);
  CHECK_THROWS_AS(assign_labels(sol, "31", "26"), ValidationError);
  CHECK_THROWS_AS(assign_labels(sol, "310", "2"), ValidationError);
  CHECK_THROWS_AS(assign_labels(sol, "3a0", "26"), ValidationError);
}

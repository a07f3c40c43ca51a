// Command-line front end: solve / gen / check / exact / compare.
// stdout carries machine-readable results only; diagnostics go to stderr.
// Exit codes: 0 success, 1 infeasible or limit exceeded, 2 usage/parse error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "laplan/laplan.hpp"

namespace {

using laplan::format_double;

std::string default_out_path(const std::string& instance_path) {
  const std::size_t slash = instance_path.find_last_of('/');
  const std::size_t dot = instance_path.find_last_of('.');
  if (dot != std::string::npos && (slash == std::string::npos || dot > slash))
    return instance_path.substr(0, dot) + ".sol";
  return instance_path + ".sol";
}

void write_trace(const std::string& path, const std::vector<laplan::TraceRow>& trace) {
  std::ofstream out(path);
  if (!out) throw laplan::IoError("cannot write trace file '" + path + "'");
  out << "iteration,temperature,current_cost,best_cost,accepted\n";
  double level_temp = std::numeric_limits<double>::quiet_NaN();
  for (const laplan::TraceRow& row : trace) {
    if (row.temperature != level_temp) {
      out.flush();  // per temperature level
      level_temp = row.temperature;
    }
    out << row.iteration << ',' << format_double(row.temperature) << ','
        << format_double(row.current_cost) << ',' << format_double(row.best_cost)
        << ',' << (row.accepted ? 1 : 0) << "\n";
  }
  out.flush();
  if (!out) throw laplan::IoError("write failed for '" + path + "'");
}

struct SolveFlags {
  laplan::SAParams params;
  int jobs = 1;
  std::string mcc = "001";
  std::string mnc = "01";
};

void add_sa_flags(CLI::App* cmd, SolveFlags& f) {
  cmd->add_option("--p0", f.params.p0, "starting acceptance probability")
      ->capture_default_str();
  cmd->add_option("--alpha", f.params.alpha, "cooling factor per temperature level")
      ->capture_default_str();
  cmd->add_option("--moves-per-temp", f.params.moves_per_temp,
                  "move attempts per level (0 = neighborhood size)")
      ->capture_default_str();
  cmd->add_option("--t-min", f.params.t_min,
                  "absolute temperature floor (0 = 1e-3 * T0)")
      ->capture_default_str();
  cmd->add_option("--stall-limit", f.params.stall_limit,
                  "unimproved levels before stopping")
      ->capture_default_str();
  cmd->add_option("--seed", f.params.seed, "RNG seed")->capture_default_str();
  cmd->add_option("--restarts", f.params.restarts, "independent runs, best kept")
      ->capture_default_str();
  cmd->add_option("--jobs", f.jobs, "restarts executed concurrently")
      ->capture_default_str();
}

int run_solve(const std::string& instance_path, const SolveFlags& f,
              std::string out_path, const std::string& trace_path,
              bool verify_every_step) {
  laplan::Instance inst = laplan::load_instance(instance_path);
  laplan::SAParams params = f.params;
  params.verify_every_step = verify_every_step;
  laplan::SolveResult res = laplan::run(inst, params, f.jobs);

  laplan::assign_labels(res.best, f.mcc, f.mnc);
  const laplan::FeasibilityReport rep = laplan::is_feasible(inst, res.best);
  if (out_path.empty()) out_path = default_out_path(instance_path);
  laplan::write_solution(out_path, res.best, res.best_cost, rep,
                         {{"seed", std::to_string(params.seed)},
                          {"restarts", std::to_string(params.restarts)},
                          {"p0", format_double(params.p0)},
                          {"alpha", format_double(params.alpha)}});
  if (!trace_path.empty()) write_trace(trace_path, res.trace);

  std::cerr << "proposed=" << res.stats.proposed << " accepted=" << res.stats.accepted
            << " no_candidate=" << res.stats.no_candidate
            << " levels=" << res.stats.levels << " wall_ms=" << res.stats.wall_ms
            << "\n";
  std::cout << "best_cost=" << format_double(res.best_cost.total)
            << " las=" << res.best.n_la()
            << " feasible=" << (rep.feasible ? "true" : "false")
            << " seed=" << params.seed << "\n";
  return rep.feasible ? 0 : 1;
}

int run_gen(const std::string& out_path, const laplan::GenParams& gp) {
  const laplan::Instance inst = laplan::generate(gp);
  laplan::write_instance(out_path, inst);
  std::cout << "instance=" << out_path << " n_bs=" << inst.n_bs()
            << " n_bsc=" << inst.n_bsc() << " n_msc=" << inst.n_msc
            << " seed=" << gp.seed << "\n";
  return 0;
}

int run_check(const std::string& instance_path, const std::string& solution_path) {
  const laplan::Instance inst = laplan::load_instance(instance_path);
  const laplan::Solution sol = laplan::read_solution(solution_path, inst);
  const laplan::CostBreakdown cost = laplan::total_cost(inst, sol);
  const laplan::FeasibilityReport rep = laplan::is_feasible(inst, sol);
  std::cout << "cost=" << format_double(cost.total)
            << " feasible=" << (rep.feasible ? "true" : "false")
            << " violations=" << rep.violations.size() << "\n";
  for (const laplan::Violation& v : rep.violations)
    std::cout << "violation=" << laplan::to_string(v.kind) << " entity=" << v.entity
              << " load=" << format_double(v.load)
              << " capacity=" << format_double(v.capacity) << "\n";
  return rep.feasible ? 0 : 1;
}

int run_exact(const std::string& instance_path, laplan::OracleLimits limits,
              const std::string& fixed_path, std::string out_path,
              const std::string& mcc, const std::string& mnc) {
  const laplan::Instance inst = laplan::load_instance(instance_path);
  std::optional<std::vector<int>> fixed;
  if (!fixed_path.empty()) {
    fixed = laplan::read_solution(fixed_path, inst).bs_to_bsc;
    limits.joint_mode = false;
  }
  laplan::OracleResult res = laplan::enumerate_optimal(inst, limits, fixed);

  laplan::assign_labels(res.best, mcc, mnc);
  const laplan::FeasibilityReport rep = laplan::is_feasible(inst, res.best);
  if (!out_path.empty())
    laplan::write_solution(out_path, res.best, res.cost, rep,
                           {{"method", "exact"},
                            {"partitions_enumerated", std::to_string(res.partitions_enumerated)}});
  std::cout << "best_cost=" << format_double(res.cost.total)
            << " las=" << res.best.n_la()
            << " partitions=" << res.partitions_enumerated
            << " feasible=" << (rep.feasible ? "true" : "false") << "\n";
  return 0;
}

int run_compare(const std::string& instance_path, const SolveFlags& f,
                bool with_exact, const laplan::OracleLimits& limits) {
  using clock = std::chrono::steady_clock;
  const laplan::Instance inst = laplan::load_instance(instance_path);
  const std::string hash = laplan::instance_hash(inst);

  auto ms_since = [](clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(clock::now() - t0).count();
  };
  char timebuf[32];

  std::cout << "method,cost,time_ms,instance_hash\n";

  clock::time_point t0 = clock::now();
  const laplan::BaselineResult greedy = laplan::greedy_baseline(inst);
  std::snprintf(timebuf, sizeof timebuf, "%.3f", ms_since(t0));
  std::cout << "greedy," << format_double(greedy.cost.total) << ',' << timebuf << ','
            << hash << "\n";

  t0 = clock::now();
  const laplan::SolveResult sa = laplan::run(inst, f.params, f.jobs);
  std::snprintf(timebuf, sizeof timebuf, "%.3f", ms_since(t0));
  std::cout << "sa," << format_double(sa.best_cost.total) << ',' << timebuf << ','
            << hash << "\n";

  if (with_exact) {
    t0 = clock::now();
    const laplan::OracleResult exact = laplan::enumerate_optimal(inst, limits);
    std::snprintf(timebuf, sizeof timebuf, "%.3f", ms_since(t0));
    std::cout << "exact," << format_double(exact.cost.total) << ',' << timebuf << ','
              << hash << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Location-area planner for GSM-style cellular networks"};
  app.require_subcommand(1);

  // solve
  auto* solve = app.add_subcommand("solve", "anneal an instance into an LA plan");
  std::string solve_instance, solve_out, solve_trace;
  bool verify_every_step = false;
  SolveFlags solve_flags;
  solve->add_option("instance", solve_instance, "instance file")->required();
  solve->add_option("--out", solve_out, "solution report path (default: <instance>.sol)");
  solve->add_option("--trace", solve_trace, "write per-move trace CSV here");
  solve->add_flag("--verify-every-step", verify_every_step,
                  "audit caches and feasibility after every applied move");
  solve->add_option("--mcc", solve_flags.mcc, "mobile country code for LA labels")
      ->capture_default_str();
  solve->add_option("--mnc", solve_flags.mnc, "mobile network code for LA labels")
      ->capture_default_str();
  add_sa_flags(solve, solve_flags);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a synthetic hex-grid instance");
  std::string gen_out;
  laplan::GenParams gp;
  gen->add_option("out", gen_out, "output instance file")->required();
  gen->add_option("--n-bs", gp.n_bs, "base stations")->required();
  gen->add_option("--n-bsc", gp.n_bsc, "base station controllers")->required();
  gen->add_option("--n-msc", gp.n_msc, "mobile switching centers")->required();
  gen->add_option("--cell-radius", gp.cell_radius, "cell radius, km")->capture_default_str();
  gen->add_option("--traffic-min", gp.traffic_min, "per-BS Erlang minimum")->capture_default_str();
  gen->add_option("--traffic-max", gp.traffic_max, "per-BS Erlang maximum")->capture_default_str();
  gen->add_option("--handoff-scale", gp.handoff_scale, "adjacent-cell handoff scale")
      ->capture_default_str();
  gen->add_option("--tightness", gp.tightness, "total load / total capacity")
      ->capture_default_str();
  gen->add_option("--seed", gp.seed, "RNG seed")->capture_default_str();

  // check
  auto* check = app.add_subcommand("check", "re-validate a solution report");
  std::string check_instance, check_solution;
  check->add_option("instance", check_instance, "instance file")->required();
  check->add_option("solution", check_solution, "solution report")->required();

  // exact
  auto* exact = app.add_subcommand("exact", "brute-force the optimal plan (desk scale)");
  std::string exact_instance, exact_fixed, exact_out;
  std::string exact_mcc = "001", exact_mnc = "01";
  laplan::OracleLimits limits;
  exact->add_option("instance", exact_instance, "instance file")->required();
  exact->add_option("--max-bs", limits.max_bs, "refuse instances above this BS count")
      ->capture_default_str();
  exact->add_option("--max-bsc", limits.max_bsc, "refuse instances above this BSC count")
      ->capture_default_str();
  exact->add_option("--fixed", exact_fixed,
                    "solution report whose BS->BSC map to keep (partition mode)");
  exact->add_option("--out", exact_out, "solution report path");
  exact->add_option("--mcc", exact_mcc, "mobile country code for LA labels")
      ->capture_default_str();
  exact->add_option("--mnc", exact_mnc, "mobile network code for LA labels")
      ->capture_default_str();

  // compare
  auto* compare = app.add_subcommand("compare", "greedy vs SA (vs exact) cost table");
  std::string compare_instance;
  bool with_exact = false;
  SolveFlags compare_flags;
  laplan::OracleLimits compare_limits;
  compare->add_option("instance", compare_instance, "instance file")->required();
  compare->add_flag("--with-exact", with_exact, "also run the enumeration oracle");
  compare->add_option("--max-bs", compare_limits.max_bs, "oracle BS limit")
      ->capture_default_str();
  compare->add_option("--max-bsc", compare_limits.max_bsc, "oracle BSC limit")
      ->capture_default_str();
  add_sa_flags(compare, compare_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (solve->parsed())
      return run_solve(solve_instance, solve_flags, solve_out, solve_trace,
                       verify_every_step);
    if (gen->parsed()) return run_gen(gen_out, gp);
    if (check->parsed()) return run_check(check_instance, check_solution);
    if (exact->parsed())
      return run_exact(exact_instance, limits, exact_fixed, exact_out, exact_mcc,
                       exact_mnc);
    if (compare->parsed())
      return run_compare(compare_instance, compare_flags, with_exact, compare_limits);
  } catch (const laplan::InfeasibleInstance& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const laplan::LimitExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const laplan::GenerationFailed& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const laplan::Error& e) {  // parse/validation/param/io
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <future>
#include <optional>
#include <string>
#include <vector>

#include "laplan/constraints.hpp"
#include "laplan/cost.hpp"
#include "laplan/model.hpp"
#include "laplan/rng.hpp"
#include "laplan/topology.hpp"

namespace laplan {

struct SAParams {
  double p0 = 0.5;               // starting acceptance probability
  double alpha = 0.95;           // geometric cooling factor
  std::int64_t moves_per_temp = 0;  // 0 = neighborhood-size heuristic
  double t_min = 0;              // absolute floor; 0 = 1e-3 * T0
  // Unimproved temperature levels before stopping early. The default floor
  // (1e-3 * T0) is crossed after ~135 levels at alpha 0.95, so 200 leaves
  // the cooling schedule in charge unless a caller opts into an aggressive
  // cutoff; a hot start almost never undercuts the constructive initial
  // plan within 20 levels, which would otherwise end runs before they cool.
  int stall_limit = 200;
  std::uint64_t seed = 1;
  int restarts = 1;
  bool verify_every_step = false;  // audit caches/feasibility after every move

  void validate() const {
    if (!(p0 > 0.0 && p0 < 1.0)) throw InvalidParam("p0 must be in (0,1)");
    if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidParam("alpha must be in (0,1)");
    if (moves_per_temp < 0) throw InvalidParam("moves_per_temp must be >= 1 (0 = auto)");
    if (t_min < 0 || !std::isfinite(t_min))
      throw InvalidParam("t_min must be > 0 (0 = auto)");
    if (stall_limit < 1) throw InvalidParam("stall_limit must be >= 1");
    if (restarts < 1) throw InvalidParam("restarts must be >= 1");
  }
};

struct TraceRow {
  std::int64_t iteration;
  double temperature;
  double current_cost;
  double best_cost;
  bool accepted;
};

struct SAStats {
  std::int64_t proposed = 0;
  std::int64_t accepted = 0;
  std::int64_t rejected = 0;
  std::int64_t no_candidate = 0;
  std::int64_t levels = 0;
  std::int64_t verified_states = 0;
  int restarts = 0;
  double wall_ms = 0;
};

struct SolveResult {
  Solution best;
  CostBreakdown best_cost;
  std::vector<TraceRow> trace;
  SAStats stats;
};

// T = -max(dE)/ln(P0), with the initial solution cost standing in for the
// dE scale.
inline double initial_temperature(double initial_cost, double p0) {
  if (!(p0 > 0.0 && p0 < 1.0)) throw InvalidParam("p0 must be in (0,1)");
  if (initial_cost < 0) throw InvalidParam("initial cost must be >= 0");
  if (initial_cost == 0) return 0.0;
  return -initial_cost / std::log(p0);
}

// Metropolis rule P = exp(-dE/t); improving and equal-cost moves always pass.
inline bool accept(double delta, double temperature, Rng& rng) {
  if (delta <= 0) return true;
  return rng.next_double() < std::exp(-delta / temperature);
}

inline double cool(double temperature, double alpha) { return alpha * temperature; }

// Size of the single-move neighborhood: per BS, the in-proximity BSCs other
// than its own. Used as the default attempts-per-level so a level tests
// roughly the whole neighborhood once.
inline std::int64_t neighborhood_size(const Instance& inst) {
  std::int64_t total = 0;
  for (int b = 0; b < inst.n_bs(); ++b)
    total += std::max<std::int64_t>(
        0, static_cast<std::int64_t>(inst.near_ids[b].size()) - 1);
  return std::max<std::int64_t>(1, total);
}

namespace detail {

// Would moving `b` onto `new_bsc` into `target` (kNewLa = fresh singleton)
// keep every paging capacity intact? Computes the post-move load of each
// affected BSC from the caches; loads elsewhere only decrease.
inline bool paging_ok_after(const Instance& inst, const Solution& sol, int b,
                            int new_bsc, int old_la, int target) {
  if (target == old_la) return true;  // nothing on the target side changes

  const double rate = inst.bss[b].paging_rate;
  const double pv_old = sol.la_paging[old_la];
  const double pv_old_after = pv_old - rate;
  const bool old_survives = sol.la_members[old_la].size() > 1;

  double pv_target = 0, pv_target_after = rate;
  if (target != Move::kNewLa) {
    pv_target = sol.la_paging[target];
    pv_target_after = pv_target + rate;
    if (pv_target_after > inst.bss[b].paging_capacity) return false;
    for (const int m : sol.la_members[target])
      if (pv_target_after > inst.bss[m].paging_capacity) return false;
  }
  // a fresh singleton is within b's own capacity by instance invariant

  const int old_bsc = sol.bs_to_bsc[b];
  std::vector<int> affected_v;
  affected_v.reserve(sol.la_hosts[old_la].size() + 4);
  affected_v.push_back(old_bsc);
  affected_v.push_back(new_bsc);
  for (const auto& [c, cnt] : sol.la_hosts[old_la]) affected_v.push_back(c);
  if (target != Move::kNewLa)
    for (const auto& [c, cnt] : sol.la_hosts[target]) affected_v.push_back(c);
  std::sort(affected_v.begin(), affected_v.end());
  affected_v.erase(std::unique(affected_v.begin(), affected_v.end()), affected_v.end());

  for (const int c : affected_v) {
    double load = sol.bsc_paging[c];
    // old LA's contribution
    {
      const auto it = sol.la_hosts[old_la].find(c);
      const int before = it == sol.la_hosts[old_la].end() ? 0 : it->second;
      const int after = before - (c == old_bsc ? 1 : 0);
      if (before > 0) load -= pv_old;
      if (after > 0 && old_survives) load += pv_old_after;
    }
    // target's contribution
    if (target == Move::kNewLa) {
      if (c == new_bsc) load += rate;
    } else {
      const auto it = sol.la_hosts[target].find(c);
      const int before = it == sol.la_hosts[target].end() ? 0 : it->second;
      const int after = before + (c == new_bsc ? 1 : 0);
      if (before > 0) load -= pv_target;
      if (after > 0) load += pv_target_after;
    }
    if (load > inst.bscs[c].paging_capacity) return false;
  }
  return true;
}

}  // namespace detail

// One neighbor draw: random BS, random different in-proximity BSC, capacity
// check, then LA repair -- a shuffled scan of the LAs already residing on
// the new BSC, falling back to a fresh singleton LA. Returns nullopt when
// the sampled pair admits no feasible repair; the caller counts that as a
// tested neighbor.
inline std::optional<Move> propose_move(const Instance& inst, const Solution& sol,
                                        Rng& rng) {
  const int b = rng.next_index(static_cast<std::size_t>(inst.n_bs()));
  const int cur = sol.bs_to_bsc[b];

  std::vector<int> alts;
  alts.reserve(inst.near_ids[b].size());
  for (const int c : inst.near_ids[b])
    if (c != cur) alts.push_back(c);
  if (alts.empty()) return std::nullopt;
  const int nb = alts[rng.next_index(alts.size())];

  const BaseStation& bs = inst.bss[b];
  const Bsc& cap = inst.bscs[nb];
  if (sol.bsc_loads[nb].erlang + bs.call_traffic > cap.call_capacity ||
      sol.bsc_loads[nb].bhca + bs.bhca > cap.bhca_capacity ||
      sol.bsc_loads[nb].trx + bs.trx_demand > cap.trx_capacity)
    return std::nullopt;

  const int old_la = sol.bs_to_la[b];
  Move mv;
  mv.bs = b;
  mv.old_bsc = cur;
  mv.new_bsc = nb;
  mv.old_la = old_la;
  mv.target_la = Move::kNewLa;

  std::vector<int> cands = sol.las_on_bsc(nb);
  rng.shuffle(cands);
  bool found = false;
  for (const int la : cands) {
    if (sol.la_to_msc[la] != inst.bscs[nb].msc) continue;  // cannot happen; guard
    if (detail::paging_ok_after(inst, sol, b, nb, old_la, la)) {
      mv.target_la = la;
      found = true;
      break;
    }
  }
  if (!found && !detail::paging_ok_after(inst, sol, b, nb, old_la, Move::kNewLa))
    return std::nullopt;

  mv.delta = delta_cost(inst, sol, mv);
  return mv;
}

namespace detail {

constexpr double kTempFloor = 1e-9;  // substitute when a zero-cost start gives T0 = 0

struct RestartOutcome {
  Solution best;
  double best_total = 0;
  std::vector<TraceRow> trace;
  SAStats stats;
};

inline void audit_state(const Instance& inst, const Solution& sol, double running_total) {
  sol.verify_caches(inst);
  const FeasibilityReport rep = is_feasible(inst, sol);
  if (!rep.feasible)
    throw std::logic_error(
        std::string("verify-every-step: infeasible state, first violation ") +
        to_string(rep.violations.front().kind) + " at entity " +
        std::to_string(rep.violations.front().entity));
  const double full = total_cost(inst, sol).total;
  if (std::fabs(full - running_total) > 1e-9 * std::max(1.0, std::fabs(full)))
    throw std::logic_error("verify-every-step: incremental cost " +
                           std::to_string(running_total) + " != recomputed " +
                           std::to_string(full));
}

inline RestartOutcome run_restart(const Instance& inst, const SAParams& p,
                                  std::uint64_t seed) {
  Rng rng(seed);
  RestartOutcome out;

  Solution cur = initial_topology(inst, rng, /*randomize_first_order=*/true);
  double cur_total = total_cost(inst, cur).total;
  out.best = cur;
  out.best_total = cur_total;

  const double t0 = initial_temperature(cur_total, p.p0);
  const double t_min =
      p.t_min > 0 ? p.t_min : std::max(1e-3 * t0, kTempFloor);
  double temp = std::max(t0, t_min);
  const std::int64_t moves_per_temp =
      p.moves_per_temp > 0 ? p.moves_per_temp : neighborhood_size(inst);

  std::int64_t iteration = 0;
  int stall = 0;
  for (;;) {
    bool improved = false;
    for (std::int64_t k = 0; k < moves_per_temp; ++k) {
      std::optional<Move> mv = propose_move(inst, cur, rng);
      if (!mv) {
        ++out.stats.no_candidate;
        continue;
      }
      ++out.stats.proposed;
      const bool acc = accept(mv->delta, temp, rng);
      if (acc) {
        cur.apply_move(inst, *mv);
        cur_total += mv->delta;
        ++out.stats.accepted;
        if (p.verify_every_step) {
          audit_state(inst, cur, cur_total);
          ++out.stats.verified_states;
        }
        if (cur_total < out.best_total) {
          out.best = cur;
          out.best_total = cur_total;
          improved = true;
        }
      } else {
        ++out.stats.rejected;
      }
      out.trace.push_back({++iteration, temp, cur_total, out.best_total, acc});
    }
    ++out.stats.levels;
    stall = improved ? 0 : stall + 1;
    if (stall >= p.stall_limit) break;
    temp = cool(temp, p.alpha);
    if (temp < t_min) break;
  }
  return out;
}

}  // namespace detail

// Full schedule: per restart, build an initial topology, heat to
// T0 = -cost/ln(p0), test ~neighborhood_size moves per level, cool by alpha,
// stop on the floor or after stall_limit unimproved levels. Restart k seeds
// its own stream with seed ^ k; outcomes merge deterministically in restart
// order, so results are identical however many threads run them.
inline SolveResult run(const Instance& inst, const SAParams& params, int jobs = 1) {
  params.validate();
  const auto t_start = std::chrono::steady_clock::now();

  std::vector<detail::RestartOutcome> outcomes(params.restarts);
  if (jobs <= 1 || params.restarts == 1) {
    for (int k = 0; k < params.restarts; ++k)
      outcomes[k] = detail::run_restart(inst, params, params.seed ^ static_cast<std::uint64_t>(k));
  } else {
    for (int base = 0; base < params.restarts; base += jobs) {
      const int end = std::min(params.restarts, base + jobs);
      std::vector<std::future<detail::RestartOutcome>> wave;
      for (int k = base; k < end; ++k)
        wave.push_back(std::async(std::launch::async, [&inst, &params, k] {
          return detail::run_restart(inst, params,
                                     params.seed ^ static_cast<std::uint64_t>(k));
        }));
      for (int k = base; k < end; ++k) outcomes[k] = wave[k - base].get();
    }
  }

  int best_k = 0;
  for (int k = 1; k < params.restarts; ++k)
    if (outcomes[k].best_total < outcomes[best_k].best_total) best_k = k;

  SolveResult res;
  res.best = std::move(outcomes[best_k].best);
  res.best_cost = total_cost(inst, res.best);
  res.stats.restarts = params.restarts;

  // best_cost column becomes the running best across restarts in merge order
  double global_best = std::numeric_limits<double>::infinity();
  std::int64_t iteration = 0;
  for (detail::RestartOutcome& o : outcomes) {
    for (TraceRow row : o.trace) {
      row.iteration = ++iteration;
      row.best_cost = global_best = std::min(global_best, row.best_cost);
      res.trace.push_back(row);
    }
    global_best = std::min(global_best, o.best_total);
    res.stats.proposed += o.stats.proposed;
    res.stats.accepted += o.stats.accepted;
    res.stats.rejected += o.stats.rejected;
    res.stats.no_candidate += o.stats.no_candidate;
    res.stats.levels += o.stats.levels;
    res.stats.verified_states += o.stats.verified_states;
  }
  res.stats.wall_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t_start)
                          .count();
  return res;
}

}  // namespace laplan

#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "laplan/constraints.hpp"
#include "laplan/model.hpp"
#include "laplan/rng.hpp"

namespace laplan {

constexpr int kInitialTopologyRetries = 50;

// Constructive start: first-fit each BS onto its nearest in-radius BSC with
// remaining Erlang/BHCA/TRX headroom, seed one LA per used BSC (trivially
// single-MSC), then split any LA whose paging vector overruns a member by
// peeling off the highest-rate BS into a fresh LA on the same BSC. The first
// attempt places BSs in id order unless randomize_first_order is set (the
// annealer sets it so restarts spread over distinct starts); later attempts
// reshuffle. Deterministic for a given seed.
inline Solution initial_topology(const Instance& inst, Rng& rng,
                                 bool randomize_first_order = false) {
  const int n = inst.n_bs();
  std::string why = "no feasible topology found";

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);

  for (int attempt = 0; attempt < kInitialTopologyRetries; ++attempt) {
    if (attempt > 0 || randomize_first_order) rng.shuffle(order);

    std::vector<int> bs_to_bsc(n, -1);
    std::vector<BscLoad> loads(inst.bscs.size());
    // attached paging rates lower-bound a BSC's dispatch load under any
    // partition, so the placement must respect that budget up front
    std::vector<double> paging(inst.bscs.size(), 0.0);
    bool placed_all = true;
    for (const int b : order) {
      const BaseStation& bs = inst.bss[b];
      int chosen = -1;
      for (const int c : inst.near_by_dist[b]) {
        const Bsc& cap = inst.bscs[c];
        if (loads[c].erlang + bs.call_traffic <= cap.call_capacity &&
            loads[c].bhca + bs.bhca <= cap.bhca_capacity &&
            loads[c].trx + bs.trx_demand <= cap.trx_capacity &&
            paging[c] + bs.paging_rate <= cap.paging_capacity) {
          chosen = c;
          break;
        }
      }
      if (chosen < 0) {
        placed_all = false;
        why = inst.near_by_dist[b].empty()
                  ? "BS " + std::to_string(b) + " has no BSC within proximity_radius"
                  : "BS " + std::to_string(b) +
                        " exceeds the remaining capacity of every BSC in proximity";
        break;
      }
      loads[chosen].erlang += bs.call_traffic;
      loads[chosen].bhca += bs.bhca;
      loads[chosen].trx += bs.trx_demand;
      paging[chosen] += bs.paging_rate;
      bs_to_bsc[b] = chosen;
    }
    if (!placed_all) continue;

    // one LA per used BSC; solution_from_assignment compacts the indices
    std::vector<int> bs_to_la(n);
    for (int b = 0; b < n; ++b) bs_to_la[b] = bs_to_bsc[b];
    Solution sol = solution_from_assignment(inst, bs_to_bsc, std::move(bs_to_la));

    // paging repair: splits keep the per-BSC paging sum unchanged, so they
    // can only fix BS-side violations
    for (bool split = true; split;) {
      split = false;
      for (int la = 0; la < sol.n_la(); ++la) {
        double min_cap = std::numeric_limits<double>::infinity();
        for (const int m : sol.la_members[la])
          min_cap = std::min(min_cap, inst.bss[m].paging_capacity);
        if (sol.la_paging[la] <= min_cap || sol.la_members[la].size() < 2) continue;
        int victim = -1;
        for (const int m : sol.la_members[la])
          if (victim < 0 || inst.bss[m].paging_rate > inst.bss[victim].paging_rate)
            victim = m;
        Move mv;
        mv.bs = victim;
        mv.old_bsc = mv.new_bsc = sol.bs_to_bsc[victim];
        mv.old_la = la;
        mv.target_la = Move::kNewLa;
        sol.apply_move(inst, mv);
        split = true;
        break;
      }
    }

    const FeasibilityReport rep = is_feasible(inst, sol);
    if (rep.feasible) return sol;
    if (!rep.violations.empty()) {
      const Violation& v = rep.violations.front();
      why = std::string("constructed topology violates ") + to_string(v.kind) +
            " at entity " + std::to_string(v.entity);
    }
  }
  throw InfeasibleInstance("initial topology failed after " +
                           std::to_string(kInitialTopologyRetries) +
                           " attempts: " + why);
}

}  // namespace laplan

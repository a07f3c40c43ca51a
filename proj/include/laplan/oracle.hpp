#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "laplan/constraints.hpp"
#include "laplan/cost.hpp"
#include "laplan/model.hpp"
#include "laplan/topology.hpp"

namespace laplan {

struct OracleLimits {
  int max_bs = 10;
  int max_bsc = 3;
  // enumerate BS->BSC assignments too; otherwise a fixed assignment must be
  // supplied and only the partition is searched
  bool joint_mode = true;
};

struct OracleResult {
  Solution best;
  CostBreakdown cost;
  std::uint64_t partitions_enumerated = 0;  // leaves reached by the RGS scan
  std::uint64_t partitions_feasible = 0;
  std::uint64_t assignments_tried = 0;
};

namespace detail {

// Set-partition scan in restricted-growth-string order: BS i may join any
// block seen so far or open the next one, so every partition is visited
// exactly once and the first optimum found is the lexicographically
// smallest. MSC mixing and BS paging overruns prune whole subtrees (both
// only worsen as a block grows); BSC paging is settled at the leaves.
// prune_cost makes it branch-and-bound against *best_total (joint mode);
// partition mode leaves it off so the enumeration count stays exact.
struct PartitionScan {
  const Instance& inst;
  const std::vector<int>& bs_to_bsc;
  bool prune_cost = false;

  std::vector<int> block;         // per BS, block id
  std::vector<int> block_msc;     // per block
  std::vector<double> block_pv;
  std::vector<double> block_min_cap;
  std::vector<int> best_block;
  double best_total = std::numeric_limits<double>::infinity();
  bool found = false;
  std::uint64_t enumerated = 0;
  std::uint64_t feasible = 0;

  explicit PartitionScan(const Instance& in, const std::vector<int>& assign)
      : inst(in), bs_to_bsc(assign) {
    const int n = inst.n_bs();
    block.assign(n, -1);
    block_msc.reserve(n);
    block_pv.reserve(n);
    block_min_cap.reserve(n);
    best_block.assign(n, 0);
  }

  bool bsc_paging_ok(int n_blocks) const {
    const int n = inst.n_bs();
    std::vector<double> load(inst.bscs.size(), 0.0);
    std::vector<char> hosted(inst.bscs.size() * static_cast<std::size_t>(n_blocks), 0);
    for (int b = 0; b < n; ++b) {
      const int c = bs_to_bsc[b];
      char& h = hosted[static_cast<std::size_t>(c) * n_blocks + block[b]];
      if (!h) {
        h = 1;
        load[c] += block_pv[block[b]];
      }
    }
    for (int c = 0; c < inst.n_bsc(); ++c)
      if (load[c] > inst.bscs[c].paging_capacity) return false;
    return true;
  }

  void scan(int i, double cost_so_far) {
    const int n = inst.n_bs();
    if (prune_cost && cost_so_far >= best_total) return;
    if (i == n) {
      ++enumerated;
      if (!bsc_paging_ok(static_cast<int>(block_msc.size()))) return;
      ++feasible;
      if (cost_so_far < best_total) {
        best_total = cost_so_far;
        best_block = block;
        found = true;
      }
      return;
    }
    const BaseStation& bs = inst.bss[i];
    const int msc = inst.bscs[bs_to_bsc[i]].msc;
    const int n_blocks = static_cast<int>(block_msc.size());
    for (int k = 0; k <= n_blocks; ++k) {
      double added = 0;
      for (int j = 0; j < i; ++j)
        if (block[j] != k) added += inst.handoff.at(i, j) + inst.handoff.at(j, i);
      if (k < n_blocks) {
        if (block_msc[k] != msc) continue;
        const double pv = block_pv[k] + bs.paging_rate;
        const double min_cap = std::min(block_min_cap[k], bs.paging_capacity);
        if (pv > min_cap) continue;
        block[i] = k;
        block_pv[k] = pv;
        const double saved_cap = block_min_cap[k];
        block_min_cap[k] = min_cap;
        scan(i + 1, cost_so_far + added);
        block_pv[k] -= bs.paging_rate;
        block_min_cap[k] = saved_cap;
      } else {
        block[i] = k;
        block_msc.push_back(msc);
        block_pv.push_back(bs.paging_rate);
        block_min_cap.push_back(bs.paging_capacity);
        scan(i + 1, cost_so_far + added);
        block_msc.pop_back();
        block_pv.pop_back();
        block_min_cap.pop_back();
      }
      block[i] = -1;
    }
  }
};

}  // namespace detail

// Ground truth at desk scale. Partition mode (fixed assignment) scans every
// set partition; joint mode wraps that in a scan of all capacity-feasible
// in-proximity BS->BSC maps, sharing one incumbent for branch-and-bound.
// Ties go to the earliest assignment, then the smallest growth string.
inline OracleResult enumerate_optimal(const Instance& inst, const OracleLimits& limits,
                                      const std::optional<std::vector<int>>& fixed = {}) {
  if (inst.n_bs() > limits.max_bs)
    throw LimitExceeded("instance has " + std::to_string(inst.n_bs()) +
                        " BSs, oracle limit is " + std::to_string(limits.max_bs));
  if (inst.n_bsc() > limits.max_bsc)
    throw LimitExceeded("instance has " + std::to_string(inst.n_bsc()) +
                        " BSCs, oracle limit is " + std::to_string(limits.max_bsc));
  if (!fixed && !limits.joint_mode)
    throw InvalidParam("partition mode requires a fixed BS->BSC assignment");

  OracleResult res;
  std::vector<int> best_assign;
  std::vector<int> best_block;
  double best_total = std::numeric_limits<double>::infinity();
  bool found = false;

  auto scan_partitions = [&](const std::vector<int>& assign, bool prune_cost) {
    detail::PartitionScan scan(inst, assign);
    scan.prune_cost = prune_cost;
    if (prune_cost) scan.best_total = best_total;
    scan.scan(0, 0.0);
    ++res.assignments_tried;
    res.partitions_enumerated += scan.enumerated;
    res.partitions_feasible += scan.feasible;
    if (scan.found && scan.best_total < best_total) {
      best_total = scan.best_total;
      best_assign = assign;
      best_block = scan.best_block;
      found = true;
    }
  };

  if (fixed) {
    if (static_cast<int>(fixed->size()) != inst.n_bs())
      throw ValidationError("fixed assignment size does not match instance");
    std::vector<BscLoad> loads(inst.bscs.size());
    for (int b = 0; b < inst.n_bs(); ++b) {
      const int c = (*fixed)[b];
      if (c < 0 || c >= inst.n_bsc())
        throw ValidationError("fixed assignment references unknown BSC");
      loads[c].erlang += inst.bss[b].call_traffic;
      loads[c].bhca += inst.bss[b].bhca;
      loads[c].trx += inst.bss[b].trx_demand;
    }
    for (int c = 0; c < inst.n_bsc(); ++c)
      if (loads[c].erlang > inst.bscs[c].call_capacity ||
          loads[c].bhca > inst.bscs[c].bhca_capacity ||
          loads[c].trx > inst.bscs[c].trx_capacity)
        throw ValidationError("fixed assignment violates BSC " + std::to_string(c) +
                              " capacity");
    scan_partitions(*fixed, false);
  } else {
    const int n = inst.n_bs();
    std::vector<int> assign(n, -1);
    std::vector<BscLoad> loads(inst.bscs.size());
    // attached paging rates lower-bound the BSC dispatch load under any
    // partition, so that budget prunes assignments soundly as well
    std::vector<double> paging(inst.bscs.size(), 0.0);
    auto assign_scan = [&](auto&& self, int b) -> void {
      if (b == n) {
        scan_partitions(assign, true);
        return;
      }
      const BaseStation& bs = inst.bss[b];
      for (const int c : inst.near_ids[b]) {
        const Bsc& cap = inst.bscs[c];
        if (loads[c].erlang + bs.call_traffic > cap.call_capacity ||
            loads[c].bhca + bs.bhca > cap.bhca_capacity ||
            loads[c].trx + bs.trx_demand > cap.trx_capacity ||
            paging[c] + bs.paging_rate > cap.paging_capacity)
          continue;
        assign[b] = c;
        loads[c].erlang += bs.call_traffic;
        loads[c].bhca += bs.bhca;
        loads[c].trx += bs.trx_demand;
        paging[c] += bs.paging_rate;
        self(self, b + 1);
        loads[c].erlang -= bs.call_traffic;
        loads[c].bhca -= bs.bhca;
        loads[c].trx -= bs.trx_demand;
        paging[c] -= bs.paging_rate;
        assign[b] = -1;
      }
    };
    assign_scan(assign_scan, 0);
  }

  if (!found)
    throw InfeasibleInstance("no feasible plan exists within the searched space");

  res.best = solution_from_assignment(inst, best_assign, best_block);
  res.cost = total_cost(inst, res.best);
  return res;
}

// Deterministic comparison point: start from the constructive topology and
// keep merging the same-MSC LA pair with the largest bidirectional flow, as
// long as the merged LA stays paging-feasible. Zero-flow merges don't
// improve anything and are never taken.
struct BaselineResult {
  Solution solution;
  CostBreakdown cost;
};

inline BaselineResult greedy_baseline(const Instance& inst) {
  Rng rng(0);
  Solution sol = initial_topology(inst, rng);

  for (;;) {
    const int k = sol.n_la();
    int pick_a = -1, pick_b = -1;
    double pick_flow = 0;
    for (int a = 0; a < k; ++a) {
      for (int b = a + 1; b < k; ++b) {
        if (sol.la_to_msc[a] != sol.la_to_msc[b]) continue;
        double flow = 0;
        for (const int i : sol.la_members[a])
          for (const int j : sol.la_members[b])
            flow += inst.handoff.at(i, j) + inst.handoff.at(j, i);
        if (flow <= pick_flow) continue;

        const double pv = sol.la_paging[a] + sol.la_paging[b];
        bool ok = true;
        for (const int m : sol.la_members[a])
          if (pv > inst.bss[m].paging_capacity) { ok = false; break; }
        if (ok)
          for (const int m : sol.la_members[b])
            if (pv > inst.bss[m].paging_capacity) { ok = false; break; }
        if (ok) {
          for (int c = 0; c < inst.n_bsc() && ok; ++c) {
            const bool ha = sol.la_resides_on(a, c);
            const bool hb = sol.la_resides_on(b, c);
            if (!ha && !hb) continue;
            const double load = sol.bsc_paging[c] - (ha ? sol.la_paging[a] : 0.0) -
                                (hb ? sol.la_paging[b] : 0.0) + pv;
            if (load > inst.bscs[c].paging_capacity) ok = false;
          }
        }
        if (!ok) continue;
        pick_a = a;
        pick_b = b;
        pick_flow = flow;
      }
    }
    if (pick_a < 0) break;

    std::vector<int> bs_to_la = sol.bs_to_la;
    for (const int m : sol.la_members[pick_b]) bs_to_la[m] = pick_a;
    sol = solution_from_assignment(inst, sol.bs_to_bsc, std::move(bs_to_la));
  }
  return {sol, total_cost(inst, sol)};
}

}  // namespace laplan

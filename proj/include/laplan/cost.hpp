#pragma once

#include <map>
#include <utility>
#include <vector>

#include "laplan/model.hpp"

namespace laplan {

// Location-update objective: every handoff crossing an LA border, in either
// direction, is charged once.
struct CostBreakdown {
  double total = 0;
  // (la_a < la_b, summed bidirectional flow), only pairs with positive flow,
  // ascending.
  std::vector<std::pair<std::pair<int, int>, double>> per_la_boundary;
};

inline CostBreakdown total_cost(const Instance& inst, const Solution& sol) {
  CostBreakdown out;
  std::map<std::pair<int, int>, double> boundary;
  const int n = inst.n_bs();
  for (int i = 0; i < n; ++i) {
    const int la_i = sol.bs_to_la[i];
    for (int j = 0; j < n; ++j) {
      if (sol.bs_to_la[j] == la_i) continue;
      const double h = inst.handoff.at(i, j);
      if (h == 0.0) continue;
      out.total += h;
      boundary[std::minmax(la_i, sol.bs_to_la[j])] += h;
    }
  }
  out.per_la_boundary.assign(boundary.begin(), boundary.end());
  return out;
}

// Exact cost change of a move, touching only the moved BS's row and column:
// pairs against the old LA start crossing, pairs against the target stop.
inline double delta_cost(const Instance& inst, const Solution& sol, const Move& mv) {
  const int b = mv.bs;
  double delta = 0;
  for (int j : sol.la_members[mv.old_la]) {
    if (j == b) continue;
    delta += inst.handoff.at(b, j) + inst.handoff.at(j, b);
  }
  if (mv.target_la != Move::kNewLa) {
    for (int j : sol.la_members[mv.target_la]) {
      if (j == b) continue;
      delta -= inst.handoff.at(b, j) + inst.handoff.at(j, b);
    }
  }
  return delta;
}

}  // namespace laplan

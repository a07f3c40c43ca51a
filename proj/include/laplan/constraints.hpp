#pragma once

#include <set>
#include <string>
#include <vector>

#include "laplan/model.hpp"

namespace laplan {

enum class ViolationKind {
  CallTraffic,
  Bhca,
  Trx,
  BsPaging,
  BscPaging,
  LaMsc,
};

inline const char* to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::CallTraffic: return "call_traffic";
    case ViolationKind::Bhca: return "bhca";
    case ViolationKind::Trx: return "trx";
    case ViolationKind::BsPaging: return "bs_paging";
    case ViolationKind::BscPaging: return "bsc_paging";
    case ViolationKind::LaMsc: return "la_msc";
  }
  return "?";
}

inline ViolationKind violation_kind_from_string(const std::string& s) {
  if (s == "call_traffic") return ViolationKind::CallTraffic;
  if (s == "bhca") return ViolationKind::Bhca;
  if (s == "trx") return ViolationKind::Trx;
  if (s == "bs_paging") return ViolationKind::BsPaging;
  if (s == "bsc_paging") return ViolationKind::BscPaging;
  if (s == "la_msc") return ViolationKind::LaMsc;
  throw ParseError("unknown violation kind '" + s + "'");
}

// Violations are data, not exceptions; the annealing loop consults them on
// the hot path.
struct Violation {
  ViolationKind kind;
  int entity;  // BS, BSC or LA id depending on kind
  double load;
  double capacity;
};

struct FeasibilityReport {
  bool feasible = true;
  std::vector<Violation> violations;
};

// All checks below recompute from the assignment maps; they never trust or
// touch the solution's caches. Capacity comparisons are inclusive.

inline std::vector<BscLoad> bsc_loads(const Instance& inst, const Solution& sol) {
  std::vector<BscLoad> loads(inst.bscs.size());
  for (int b = 0; b < inst.n_bs(); ++b) {
    BscLoad& l = loads[sol.bs_to_bsc[b]];
    l.erlang += inst.bss[b].call_traffic;
    l.bhca += inst.bss[b].bhca;
    l.trx += inst.bss[b].trx_demand;
  }
  return loads;
}

inline std::vector<Violation> check_bsc_capacity(const Instance& inst,
                                                 const Solution& sol, int bsc) {
  const std::vector<BscLoad> loads = bsc_loads(inst, sol);
  std::vector<Violation> out;
  const BscLoad& l = loads[bsc];
  const Bsc& c = inst.bscs[bsc];
  if (l.erlang > c.call_capacity)
    out.push_back({ViolationKind::CallTraffic, bsc, l.erlang, c.call_capacity});
  if (l.bhca > c.bhca_capacity)
    out.push_back({ViolationKind::Bhca, bsc, l.bhca, c.bhca_capacity});
  if (l.trx > c.trx_capacity)
    out.push_back({ViolationKind::Trx, bsc, static_cast<double>(l.trx),
                   static_cast<double>(c.trx_capacity)});
  return out;
}

// Per-LA paging rate: every member BS broadcasts all pages of its LA.
inline std::vector<double> paging_vector(const Instance& inst, const Solution& sol) {
  std::vector<double> pv(sol.n_la(), 0.0);
  for (int b = 0; b < inst.n_bs(); ++b) pv[sol.bs_to_la[b]] += inst.bss[b].paging_rate;
  return pv;
}

// BS side: each member must be able to broadcast its LA's full vector.
// BSC side: a controller dispatches each hosted LA's pages once, so its load
// is the sum of the vectors of the distinct LAs it serves.
inline std::vector<Violation> check_paging(const Instance& inst, const Solution& sol) {
  const std::vector<double> pv = paging_vector(inst, sol);
  std::vector<Violation> out;
  for (int b = 0; b < inst.n_bs(); ++b) {
    const double load = pv[sol.bs_to_la[b]];
    if (load > inst.bss[b].paging_capacity)
      out.push_back({ViolationKind::BsPaging, b, load, inst.bss[b].paging_capacity});
  }
  std::vector<std::set<int>> hosted(inst.bscs.size());
  for (int b = 0; b < inst.n_bs(); ++b)
    hosted[sol.bs_to_bsc[b]].insert(sol.bs_to_la[b]);
  for (int c = 0; c < inst.n_bsc(); ++c) {
    double load = 0;
    for (int la : hosted[c]) load += pv[la];
    if (load > inst.bscs[c].paging_capacity)
      out.push_back({ViolationKind::BscPaging, c, load, inst.bscs[c].paging_capacity});
  }
  return out;
}

inline std::vector<Violation> check_la_msc(const Instance& inst, const Solution& sol) {
  std::vector<Violation> out;
  std::vector<std::set<int>> mscs(sol.n_la());
  for (int b = 0; b < inst.n_bs(); ++b)
    mscs[sol.bs_to_la[b]].insert(inst.bscs[sol.bs_to_bsc[b]].msc);
  for (int la = 0; la < sol.n_la(); ++la)
    if (mscs[la].size() > 1)
      out.push_back({ViolationKind::LaMsc, la,
                     static_cast<double>(mscs[la].size()), 1.0});
  return out;
}

// Conjunction of every plan constraint; reports all violations, not just the
// first. Pure: never mutates the solution.
inline FeasibilityReport is_feasible(const Instance& inst, const Solution& sol) {
  sol.check_structure(inst);
  FeasibilityReport rep;
  for (int c = 0; c < inst.n_bsc(); ++c)
    for (const Violation& v : check_bsc_capacity(inst, sol, c))
      rep.violations.push_back(v);
  for (const Violation& v : check_paging(inst, sol)) rep.violations.push_back(v);
  for (const Violation& v : check_la_msc(inst, sol)) rep.violations.push_back(v);
  rep.feasible = rep.violations.empty();
  return rep;
}

}  // namespace laplan

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace laplan {

// ---------------------------------------------------------------------------
// Errors

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : Error {
  using Error::Error;
};
struct ValidationError : Error {
  using Error::Error;
};
struct InfeasibleInstance : Error {
  using Error::Error;
};
struct LimitExceeded : Error {
  using Error::Error;
};
struct GenerationFailed : Error {
  using Error::Error;
};
struct InvalidParam : Error {
  using Error::Error;
};
struct IoError : Error {
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Network description

struct BaseStation {
  int id = 0;
  double x = 0, y = 0;           // km
  double call_traffic = 0;       // Erlang
  double bhca = 0;               // attempts/hour
  int trx_demand = 1;
  double paging_rate = 0;        // pages/hour generated by subscribers here
  double paging_capacity = 0;    // pages/hour this BS can broadcast
};

struct Bsc {
  int id = 0;
  double x = 0, y = 0;
  double call_capacity = 0;
  double bhca_capacity = 0;
  int trx_capacity = 0;
  double paging_capacity = 0;
  int msc = 0;  // fixed homing
};

struct LocationAreaId {
  std::string mcc;  // 3 digits
  std::string mnc;  // 2-3 digits
  int lac = 0;      // [0, 65535]
};

struct HandoffMatrix {
  int n = 0;
  std::vector<double> h;  // row-major n*n, diagonal zero

  double at(int i, int j) const { return h[static_cast<std::size_t>(i) * n + j]; }
  double& at(int i, int j) { return h[static_cast<std::size_t>(i) * n + j]; }

  void resize(int n_bs) {
    n = n_bs;
    h.assign(static_cast<std::size_t>(n) * n, 0.0);
  }
};

struct Instance {
  std::vector<BaseStation> bss;
  std::vector<Bsc> bscs;
  int n_msc = 0;
  HandoffMatrix handoff;
  double proximity_radius = std::numeric_limits<double>::infinity();

  // Per-BS candidate controllers within proximity_radius, derived once after
  // validation. near_by_dist is ordered by (distance, id), near_ids by id.
  std::vector<std::vector<int>> near_by_dist;
  std::vector<std::vector<int>> near_ids;

  int n_bs() const { return static_cast<int>(bss.size()); }
  int n_bsc() const { return static_cast<int>(bscs.size()); }

  double bs_bsc_distance(int bs, int bsc) const {
    const double dx = bss[bs].x - bscs[bsc].x;
    const double dy = bss[bs].y - bscs[bsc].y;
    return std::hypot(dx, dy);
  }

  void validate_and_finalize() {
    if (bss.empty()) throw ValidationError("instance has no base stations");
    if (bscs.empty()) throw ValidationError("instance has no BSCs");
    if (n_msc < 1) throw ValidationError("instance has no MSCs");
    if (!(proximity_radius > 0))
      throw ValidationError("proximity_radius must be positive");
    for (int i = 0; i < n_bs(); ++i) {
      const BaseStation& b = bss[i];
      if (b.id != i) throw ValidationError("BS ids must be dense 0..n_bs-1");
      if (b.call_traffic < 0 || b.bhca < 0 || b.paging_rate < 0 ||
          b.paging_capacity < 0)
        throw ValidationError("BS " + std::to_string(i) +
                              ": load/capacity fields must be >= 0");
      if (b.trx_demand < 1)
        throw ValidationError("BS " + std::to_string(i) + ": trx_demand must be >= 1");
      if (b.paging_capacity < b.paging_rate)
        throw ValidationError("BS " + std::to_string(i) +
                              ": paging_capacity below own paging_rate");
    }
    for (int c = 0; c < n_bsc(); ++c) {
      const Bsc& s = bscs[c];
      if (s.id != c) throw ValidationError("BSC ids must be dense 0..n_bsc-1");
      if (s.call_capacity < 0 || s.bhca_capacity < 0 || s.trx_capacity < 0 ||
          s.paging_capacity < 0)
        throw ValidationError("BSC " + std::to_string(c) + ": capacities must be >= 0");
      if (s.msc < 0 || s.msc >= n_msc)
        throw ValidationError("BSC " + std::to_string(c) + ": msc " +
                              std::to_string(s.msc) + " does not exist (n_msc=" +
                              std::to_string(n_msc) + ")");
    }
    if (handoff.n != n_bs())
      throw ValidationError("handoff matrix dimension " + std::to_string(handoff.n) +
                            " does not match n_bs " + std::to_string(n_bs()));
    for (int i = 0; i < n_bs(); ++i) {
      if (handoff.at(i, i) != 0.0)
        throw ValidationError("nonzero diagonal: h[" + std::to_string(i) + "][" +
                              std::to_string(i) + "]");
      for (int j = 0; j < n_bs(); ++j)
        if (handoff.at(i, j) < 0)
          throw ValidationError("negative handoff h[" + std::to_string(i) + "][" +
                                std::to_string(j) + "]");
    }

    near_by_dist.assign(bss.size(), {});
    near_ids.assign(bss.size(), {});
    for (int b = 0; b < n_bs(); ++b) {
      std::vector<std::pair<double, int>> cand;
      for (int c = 0; c < n_bsc(); ++c) {
        const double d = bs_bsc_distance(b, c);
        if (d <= proximity_radius) cand.emplace_back(d, c);
      }
      std::sort(cand.begin(), cand.end());
      for (const auto& [d, c] : cand) near_by_dist[b].push_back(c);
      near_ids[b] = near_by_dist[b];
      std::sort(near_ids[b].begin(), near_ids[b].end());
    }
  }
};

// ---------------------------------------------------------------------------
// Search state

// One BS-to-BSC reassignment with LA repair. target_la == kNewLa means the
// BS opens a fresh singleton LA on new_bsc.
struct Move {
  static constexpr int kNewLa = -1;

  int bs = -1;
  int old_bsc = -1;
  int new_bsc = -1;
  int old_la = -1;
  int target_la = kNewLa;
  double delta = 0;  // filled on evaluation
};

struct BscLoad {
  double erlang = 0;
  double bhca = 0;
  int trx = 0;
};

// Mutable plan: the BS->BSC and BS->LA maps plus caches maintained
// incrementally under apply_move. la indices are dense; an emptied LA is
// deleted and the last index is swapped into its slot.
struct Solution {
  std::vector<int> bs_to_bsc;
  std::vector<int> bs_to_la;

  // caches
  std::vector<int> la_to_msc;
  std::vector<std::vector<int>> la_members;
  std::vector<std::map<int, int>> la_hosts;  // per LA: bsc -> member count
  std::vector<double> la_paging;             // per LA: sum of member paging_rate
  std::vector<BscLoad> bsc_loads;
  std::vector<double> bsc_paging;  // per BSC: sum of la_paging over hosted LAs

  std::vector<LocationAreaId> la_labels;  // assigned at output time only

  int n_la() const { return static_cast<int>(la_members.size()); }

  bool la_resides_on(int la, int bsc) const {
    return la_hosts[la].count(bsc) != 0;
  }

  // LAs with at least one member attached to bsc, ascending.
  std::vector<int> las_on_bsc(int bsc) const {
    std::vector<int> out;
    for (int la = 0; la < n_la(); ++la)
      if (la_resides_on(la, bsc)) out.push_back(la);
    return out;
  }

  void rebuild_caches(const Instance& inst) {
    const int n = inst.n_bs();
    if (static_cast<int>(bs_to_bsc.size()) != n ||
        static_cast<int>(bs_to_la.size()) != n)
      throw ValidationError("solution arrays do not match instance size");

    int max_la = -1;
    for (int b = 0; b < n; ++b) {
      if (bs_to_bsc[b] < 0 || bs_to_bsc[b] >= inst.n_bsc())
        throw ValidationError("BS " + std::to_string(b) + " assigned to unknown BSC");
      if (bs_to_la[b] < 0) throw ValidationError("negative LA index");
      max_la = std::max(max_la, bs_to_la[b]);
    }
    const int k = max_la + 1;

    la_members.assign(k, {});
    la_hosts.assign(k, {});
    la_paging.assign(k, 0.0);
    la_to_msc.assign(k, -1);
    bsc_loads.assign(inst.bscs.size(), BscLoad{});
    bsc_paging.assign(inst.bscs.size(), 0.0);

    for (int b = 0; b < n; ++b) {
      const int la = bs_to_la[b];
      const int c = bs_to_bsc[b];
      la_members[la].push_back(b);
      la_hosts[la][c] += 1;
      la_paging[la] += inst.bss[b].paging_rate;
      if (la_to_msc[la] < 0) la_to_msc[la] = inst.bscs[c].msc;
      bsc_loads[c].erlang += inst.bss[b].call_traffic;
      bsc_loads[c].bhca += inst.bss[b].bhca;
      bsc_loads[c].trx += inst.bss[b].trx_demand;
    }
    for (int la = 0; la < k; ++la) {
      if (la_members[la].empty())
        throw ValidationError("LA " + std::to_string(la) + " is empty (indices not dense)");
      if (la_members[la].size() == 1)
        la_paging[la] = inst.bss[la_members[la][0]].paging_rate;
      for (const auto& [c, cnt] : la_hosts[la]) bsc_paging[c] += la_paging[la];
    }
    la_labels.clear();
  }

  // Applies a structurally valid move and keeps every cache exact. Returns
  // the LA index the BS ended up in (compaction may renumber).
  int apply_move(const Instance& inst, const Move& mv) {
    const int b = mv.bs;
    const int old_la = mv.old_la;
    const double rate = inst.bss[b].paging_rate;

    // detach from the old controller
    bsc_loads[mv.old_bsc].erlang -= inst.bss[b].call_traffic;
    bsc_loads[mv.old_bsc].bhca -= inst.bss[b].bhca;
    bsc_loads[mv.old_bsc].trx -= inst.bss[b].trx_demand;
    bsc_loads[mv.new_bsc].erlang += inst.bss[b].call_traffic;
    bsc_loads[mv.new_bsc].bhca += inst.bss[b].bhca;
    bsc_loads[mv.new_bsc].trx += inst.bss[b].trx_demand;
    bs_to_bsc[b] = mv.new_bsc;

    // leave the old LA
    {
      auto& members = la_members[old_la];
      members.erase(std::find(members.begin(), members.end(), b));
      for (const auto& [c, cnt] : la_hosts[old_la]) bsc_paging[c] -= rate;
      la_paging[old_la] -= rate;
      auto it = la_hosts[old_la].find(mv.old_bsc);
      if (--(it->second) == 0) {
        la_hosts[old_la].erase(it);
        bsc_paging[mv.old_bsc] -= la_paging[old_la];
      }
      if (members.size() == 1) {
        // snap the cache to the exact single-member value
        const double exact = inst.bss[members[0]].paging_rate;
        const double drift = exact - la_paging[old_la];
        for (const auto& [c, cnt] : la_hosts[old_la]) bsc_paging[c] += drift;
        la_paging[old_la] = exact;
      }
    }

    // join the target (or open a fresh singleton LA)
    int target = mv.target_la;
    if (target == Move::kNewLa) {
      target = n_la();
      la_members.push_back({b});
      la_hosts.push_back({{mv.new_bsc, 1}});
      la_paging.push_back(rate);
      la_to_msc.push_back(inst.bscs[mv.new_bsc].msc);
      bsc_paging[mv.new_bsc] += rate;
    } else {
      la_members[target].push_back(b);
      for (const auto& [c, cnt] : la_hosts[target]) bsc_paging[c] += rate;
      la_paging[target] += rate;
      auto [it, fresh] = la_hosts[target].try_emplace(mv.new_bsc, 0);
      it->second += 1;
      if (fresh) bsc_paging[mv.new_bsc] += la_paging[target];
    }
    bs_to_la[b] = target;

    // delete the old LA if the move emptied it; keep indices dense
    if (la_members[old_la].empty()) {
      const int last = n_la() - 1;
      if (old_la != last) {
        la_members[old_la] = std::move(la_members[last]);
        la_hosts[old_la] = std::move(la_hosts[last]);
        la_paging[old_la] = la_paging[last];
        la_to_msc[old_la] = la_to_msc[last];
        for (int m : la_members[old_la]) bs_to_la[m] = old_la;
        if (target == last) target = old_la;
      }
      la_members.pop_back();
      la_hosts.pop_back();
      la_paging.pop_back();
      la_to_msc.pop_back();
    }
    return target;
  }

  // Structural partition checks that hold for every solution in the system.
  void check_structure(const Instance& inst) const {
    const int n = inst.n_bs();
    std::size_t total = 0;
    for (int la = 0; la < n_la(); ++la) {
      if (la_members[la].empty())
        throw ValidationError("empty LA " + std::to_string(la));
      total += la_members[la].size();
      for (int m : la_members[la])
        if (bs_to_la[m] != la)
          throw ValidationError("membership map out of sync at BS " + std::to_string(m));
    }
    if (total != static_cast<std::size_t>(n))
      throw ValidationError("LA membership is not a partition of the BS set");
    if (n_la() > n)
      throw ValidationError("more LAs than base stations");
  }

  // Compares every cache against a from-scratch rebuild. Integer fields must
  // match exactly, reals within 1e-9 relative.
  void verify_caches(const Instance& inst) const {
    check_structure(inst);
    Solution fresh;
    fresh.bs_to_bsc = bs_to_bsc;
    fresh.bs_to_la = bs_to_la;
    fresh.rebuild_caches(inst);

    auto close = [](double a, double b) {
      return std::fabs(a - b) <= 1e-9 * std::max({1.0, std::fabs(a), std::fabs(b)});
    };
    if (fresh.n_la() != n_la()) throw ValidationError("cache audit: LA count");
    for (int la = 0; la < n_la(); ++la) {
      if (!close(fresh.la_paging[la], la_paging[la]))
        throw ValidationError("cache audit: la_paging[" + std::to_string(la) + "]");
      if (fresh.la_to_msc[la] != la_to_msc[la])
        throw ValidationError("cache audit: la_to_msc[" + std::to_string(la) + "]");
      if (fresh.la_hosts[la] != la_hosts[la])
        throw ValidationError("cache audit: la_hosts[" + std::to_string(la) + "]");
    }
    for (int c = 0; c < inst.n_bsc(); ++c) {
      if (!close(fresh.bsc_loads[c].erlang, bsc_loads[c].erlang) ||
          !close(fresh.bsc_loads[c].bhca, bsc_loads[c].bhca) ||
          fresh.bsc_loads[c].trx != bsc_loads[c].trx)
        throw ValidationError("cache audit: bsc_loads[" + std::to_string(c) + "]");
      if (!close(fresh.bsc_paging[c], bsc_paging[c]))
        throw ValidationError("cache audit: bsc_paging[" + std::to_string(c) + "]");
    }
  }
};

// Builds a Solution from plain assignment arrays. LA ids are remapped to a
// dense 0..k-1 range (ascending by original id).
inline Solution solution_from_assignment(const Instance& inst,
                                         std::vector<int> bs_to_bsc,
                                         std::vector<int> bs_to_la) {
  std::vector<int> distinct = bs_to_la;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  for (int& la : bs_to_la) {
    la = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), la) -
                          distinct.begin());
  }
  Solution s;
  s.bs_to_bsc = std::move(bs_to_bsc);
  s.bs_to_la = std::move(bs_to_la);
  s.rebuild_caches(inst);
  return s;
}

// Cosmetic GSM labels, assigned only when writing a plan out.
inline void assign_labels(Solution& sol, const std::string& mcc,
                          const std::string& mnc) {
  auto digits = [](const std::string& s) {
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
  };
  if (mcc.size() != 3 || !digits(mcc))
    throw ValidationError("mcc must be a 3-digit code");
  if ((mnc.size() != 2 && mnc.size() != 3) || !digits(mnc))
    throw ValidationError("mnc must be a 2- or 3-digit code");
  if (sol.n_la() > 65536)
    throw ValidationError("more LAs than 2-octet location area codes");
  sol.la_labels.resize(sol.n_la());
  for (int la = 0; la < sol.n_la(); ++la) sol.la_labels[la] = {mcc, mnc, la};
}

}  // namespace laplan

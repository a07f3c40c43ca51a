#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <tuple>
#include <vector>

#include "laplan/constraints.hpp"
#include "laplan/model.hpp"
#include "laplan/rng.hpp"

namespace laplan {

struct GenParams {
  int n_bs = 12;
  int n_bsc = 2;
  int n_msc = 1;
  double cell_radius = 1.0;       // km, center-to-vertex
  double traffic_min = 1.0;       // Erlang per BS
  double traffic_max = 5.0;
  double handoff_scale = 10.0;    // base handoffs/hour between adjacent cells
  double tightness = 0.6;         // total load / total capacity
  std::uint64_t seed = 1;

  void validate() const {
    if (n_msc < 1 || n_bsc < n_msc || n_bs < n_bsc)
      throw InvalidParam("need n_bs >= n_bsc >= n_msc >= 1");
    if (!(tightness > 0.0 && tightness <= 1.0))
      throw InvalidParam("tightness must be in (0,1]");
    if (!(traffic_min > 0.0) || traffic_min > traffic_max)
      throw InvalidParam("traffic range must satisfy 0 < min <= max");
    if (!(cell_radius > 0.0)) throw InvalidParam("cell_radius must be positive");
    if (handoff_scale < 0.0) throw InvalidParam("handoff_scale must be >= 0");
  }
};

constexpr int kGenerateRetries = 20;

// Hex-grid layout with gravity-model handoffs. Cells sit on a hexagonal
// lattice; only lattice-adjacent cells exchange handoffs, at
// handoff_scale * t_i * t_j / d^2 jittered +-10% per direction. BSCs sit at
// the centroids of balanced x-sorted cell strips, MSCs at centroids of BSC
// groups with homing by proximity. Capacities are the corresponding cluster
// loads divided by tightness, so the system-wide load/capacity ratio equals
// tightness and the one-LA-per-BSC plan is feasible by construction; the
// generator still self-checks and redraws on the rare failure.
inline Instance generate(const GenParams& params) {
  params.validate();
  Rng rng(params.seed);

  for (int round = 0; round < kGenerateRetries; ++round) {
    Instance inst;
    inst.n_msc = params.n_msc;
    inst.proximity_radius = std::numeric_limits<double>::infinity();

    const double spacing = std::sqrt(3.0) * params.cell_radius;
    const int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(params.n_bs))));
    inst.bss.resize(params.n_bs);
    for (int i = 0; i < params.n_bs; ++i) {
      const int row = i / cols, col = i % cols;
      BaseStation& b = inst.bss[i];
      b.id = i;
      b.x = col * spacing + (row % 2 ? spacing / 2 : 0.0);
      b.y = row * spacing * std::sqrt(3.0) / 2.0;
      const double t = params.traffic_min +
                       (params.traffic_max - params.traffic_min) * rng.next_double();
      b.call_traffic = t;
      b.bhca = 30.0 * t * (0.9 + 0.2 * rng.next_double());
      b.trx_demand = std::max(1, static_cast<int>(std::ceil(t / 4.0)));
      b.paging_rate = 12.0 * t * (0.9 + 0.2 * rng.next_double());
    }

    // balanced contiguous strips by (x, y, id)
    std::vector<int> order(params.n_bs);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      const auto& A = inst.bss[a];
      const auto& B = inst.bss[b];
      return std::tie(A.x, A.y, a) < std::tie(B.x, B.y, b);
    });
    std::vector<int> cluster(params.n_bs);
    for (int r = 0; r < params.n_bs; ++r)
      cluster[order[r]] = static_cast<int>(
          (static_cast<long long>(r) * params.n_bsc) / params.n_bs);

    inst.bscs.resize(params.n_bsc);
    std::vector<double> cl_erlang(params.n_bsc, 0), cl_bhca(params.n_bsc, 0),
        cl_paging(params.n_bsc, 0);
    std::vector<int> cl_trx(params.n_bsc, 0), cl_size(params.n_bsc, 0);
    for (int i = 0; i < params.n_bs; ++i) {
      const int c = cluster[i];
      inst.bscs[c].x += inst.bss[i].x;
      inst.bscs[c].y += inst.bss[i].y;
      cl_erlang[c] += inst.bss[i].call_traffic;
      cl_bhca[c] += inst.bss[i].bhca;
      cl_trx[c] += inst.bss[i].trx_demand;
      cl_paging[c] += inst.bss[i].paging_rate;
      ++cl_size[c];
    }
    for (int c = 0; c < params.n_bsc; ++c) {
      Bsc& s = inst.bscs[c];
      s.id = c;
      s.x /= cl_size[c];
      s.y /= cl_size[c];
      s.call_capacity = cl_erlang[c] / params.tightness;
      s.bhca_capacity = cl_bhca[c] / params.tightness;
      s.trx_capacity = static_cast<int>(std::ceil(cl_trx[c] / params.tightness));
      s.paging_capacity = cl_paging[c] / params.tightness;
    }
    for (int i = 0; i < params.n_bs; ++i)
      inst.bss[i].paging_capacity = cl_paging[cluster[i]] / params.tightness;

    // MSC placement: contiguous BSC groups, then homing by proximity
    std::vector<double> msc_x(params.n_msc, 0), msc_y(params.n_msc, 0);
    std::vector<int> msc_size(params.n_msc, 0);
    for (int c = 0; c < params.n_bsc; ++c) {
      const int g = static_cast<int>((static_cast<long long>(c) * params.n_msc) / params.n_bsc);
      msc_x[g] += inst.bscs[c].x;
      msc_y[g] += inst.bscs[c].y;
      ++msc_size[g];
    }
    for (int g = 0; g < params.n_msc; ++g) {
      msc_x[g] /= msc_size[g];
      msc_y[g] /= msc_size[g];
    }
    for (int c = 0; c < params.n_bsc; ++c) {
      int home = 0;
      double best = std::numeric_limits<double>::infinity();
      for (int g = 0; g < params.n_msc; ++g) {
        const double d = std::hypot(inst.bscs[c].x - msc_x[g], inst.bscs[c].y - msc_y[g]);
        if (d < best) {
          best = d;
          home = g;
        }
      }
      inst.bscs[c].msc = home;
    }

    inst.handoff.resize(params.n_bs);
    const double adj = spacing * 1.001;
    for (int i = 0; i < params.n_bs; ++i) {
      for (int j = 0; j < params.n_bs; ++j) {
        if (i == j) continue;
        const double d = std::hypot(inst.bss[i].x - inst.bss[j].x,
                                    inst.bss[i].y - inst.bss[j].y);
        if (d > adj) continue;
        const double base = params.handoff_scale * inst.bss[i].call_traffic *
                            inst.bss[j].call_traffic / (d * d);
        inst.handoff.at(i, j) = base * (0.9 + 0.2 * rng.next_double());
      }
    }

    inst.validate_and_finalize();

    // self-check: the natural plan (cluster assignment, one LA per BSC)
    Solution plan = solution_from_assignment(inst, cluster, cluster);
    if (is_feasible(inst, plan).feasible) return inst;
  }
  throw GenerationFailed("could not generate a feasible instance after " +
                         std::to_string(kGenerateRetries) + " draws");
}

}  // namespace laplan

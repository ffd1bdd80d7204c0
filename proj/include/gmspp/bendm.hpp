#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gmspp/branch_and_bound.hpp"
#include "gmspp/cuts.hpp"
#include "gmspp/solution.hpp"

namespace gmspp {

struct SolveConfig {
  double time_limit = 900.0;  // wall seconds, covers model build and solve
  CutStage cut_stage = CutStage::Lifted;
  PruneConfig prune;
  long long node_limit = 0;  // 0: unlimited
};

struct SolveReport {
  std::string method;
  MipStatus status = MipStatus::TimeLimit;
  std::optional<Packing> packing;
  // Exact value recomputed from integer coordinates, never copied from the
  // floating solver objective.
  std::optional<Rational> objective;
  double lower_bound = -kInf;
  std::optional<Rational> root_bound;  // assignment relaxation, when computed
  double seconds = 0.0;
  long long nodes = 0;
  int lazy_rounds = 0;
  long long cuts_standard = 0;
  long long cuts_combinatorial = 0;
  long long cuts_lifted = 0;
  long long ycheck_calls = 0;
  double ycheck_seconds = 0.0;
  std::vector<BendersCut> cuts;              // in the order they entered the master
  std::vector<double> candidate_objectives;  // feasible candidates, as accepted

  std::optional<double> gap_percent() const {
    if (!objective) return std::nullopt;
    double obj = to_double(*objective);
    if (obj <= 0.0) return std::nullopt;
    return std::max(0.0, 100.0 * (obj - lower_bound) / obj);
  }
};

namespace detail {

inline double budget_left(double limit, double spent) {
  return std::max(limit - spent, 1e-3);
}

// Per-strip placements read off an integral master vector.
inline std::vector<std::vector<PlacedItem>> master_placements(
    const Instance& inst, const NormalPositionTable& table, const MasterModel& M,
    const std::vector<double>& x) {
  std::vector<std::vector<PlacedItem>> per(inst.m());
  for (int i = 0; i < inst.m(); ++i)
    for (int j = 0; j < inst.n(); ++j) {
      const std::vector<int>& pos = table.at(i, j);
      for (std::size_t r = 0; r < pos.size(); ++r)
        if (x[M.x[i][j][r]] > 0.5)
          per[i].push_back({j, pos[r], inst.items[j].w, inst.items[j].h});
    }
  return per;
}

inline int integral_height(double h_star) {
  long long rounded = std::llround(h_star);
  if (std::abs(h_star - static_cast<double>(rounded)) > 1e-6)
    throw std::logic_error("strip height is fractional at an integer candidate");
  return static_cast<int>(rounded);
}

inline double model_objective_at(const LinearModel& model, const std::vector<double>& x) {
  double v = 0.0;
  for (int j = 0; j < model.n_vars(); ++j) v += model.vars[j].obj * x[j];
  return v;
}

}  // namespace detail

// Decomposition solve: position-indexed master, vertical feasibility enforced
// lazily by the strip height check, one cut per failing strip in strip order.
inline SolveReport solve_bendm(const Instance& inst, const SolveConfig& cfg = {}) {
  using clock = std::chrono::steady_clock;
  auto t0 = clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(clock::now() - t0).count(); };

  SolveReport rep;
  rep.method = "bendm";
  validate_instance(inst);
  NormalPositionTable table = build_table(inst);
  MasterModel M = build_master(inst, table);

  auto checked_ycheck = [&](const YCheckInstance& yc) {
    auto c0 = clock::now();
    YCheckResult r = ycheck(yc, cfg.prune);
    rep.ycheck_seconds += std::chrono::duration<double>(clock::now() - c0).count();
    ++rep.ycheck_calls;
    return r;
  };

  LazyCallback lazy = [&](const std::vector<double>& x) {
    std::vector<LinearRow> rows;
    std::vector<std::vector<PlacedItem>> per = detail::master_placements(inst, table, M, x);
    for (int i = 0; i < inst.m(); ++i) {
      int Hbar = detail::integral_height(x[M.H[i]]);
      if (per[i].empty()) {
        if (Hbar != 0)
          throw std::logic_error("empty strip carries a positive master height");
        continue;
      }
      YCheckInstance yc{inst.strips[i].W, Hbar, per[i]};
      if (checked_ycheck(yc).verdict == YVerdict::Feasible) continue;

      BendersCut cut;
      if (cfg.cut_stage == CutStage::Standard) {
        cut = standard_cut(i, per[i], x[M.H[i]]);
      } else {
        std::vector<int> core_idx = minimal_infeasible_subset(yc, cfg.prune);
        std::vector<PlacedItem> core;
        for (int t : core_idx) core.push_back(yc.items[t]);
        int threshold = Hbar + 1;
        std::optional<LiftResult> lift;
        if (cfg.cut_stage == CutStage::Lifted) lift = lift_intervals(core, inst.strips[i].W);
        cut = lift ? lifted_cut(i, core, *lift, threshold)
                   : combinatorial_cut(i, core, threshold);
      }
      rows.push_back(realize_cut(cut, M, table));
      rep.cuts.push_back(cut);
    }
    if (rows.empty())
      rep.candidate_objectives.push_back(detail::model_objective_at(M.model, x));
    return rows;
  };

  MipOptions mo;
  mo.time_limit = detail::budget_left(cfg.time_limit, elapsed());
  mo.node_limit = cfg.node_limit;
  MipResult res = solve_mip(M.model, mo, lazy);

  rep.status = res.status;
  rep.nodes = res.nodes;
  rep.lazy_rounds = res.lazy_rounds;
  rep.lower_bound = res.bound;
  for (const BendersCut& c : rep.cuts) {
    if (c.stage == CutStage::Standard) ++rep.cuts_standard;
    if (c.stage == CutStage::Combinatorial) ++rep.cuts_combinatorial;
    if (c.stage == CutStage::Lifted) ++rep.cuts_lifted;
  }

  if (!res.x.empty()) {
    // Reassemble the witness: every strip passed its check when the incumbent
    // was accepted, so each check below must come back feasible, and the
    // realized top must land exactly on the master height (the master height
    // is the max of column loads and active cut thresholds, all of which also
    // bound the realized packing from below).
    std::vector<std::vector<PlacedItem>> per =
        detail::master_placements(inst, table, M, res.x);
    Packing pack;
    for (int i = 0; i < inst.m(); ++i) {
      StripPacking sp;
      sp.strip = i;
      if (!per[i].empty()) {
        int Hbar = detail::integral_height(res.x[M.H[i]]);
        YCheckInstance yc{inst.strips[i].W, Hbar, per[i]};
        YCheckResult wit = checked_ycheck(yc);
        if (wit.verdict != YVerdict::Feasible)
          throw std::logic_error("accepted incumbent fails its strip height check");
        int top = 0;
        for (std::size_t t = 0; t < per[i].size(); ++t)
          top = std::max(top, wit.y[t] + per[i][t].h);
        if (top != Hbar)
          throw std::logic_error("realized strip height drifts from the master height");
        sp.H = Hbar;
        for (std::size_t t = 0; t < per[i].size(); ++t)
          sp.items.push_back({per[i][t].j, per[i][t].p, wit.y[t]});
      }
      pack.strips.push_back(sp);
    }
    PackingAudit audit = audit_packing(inst, pack);
    if (!audit.ok)
      throw std::logic_error("decomposition witness fails the packing audit: " +
                             audit.violations.front());
    double obj_d = to_double(audit.objective);
    if (std::abs(obj_d - res.obj) > 1e-5 * (1.0 + std::abs(res.obj)))
      throw std::logic_error("realized objective drifts from the master objective");
    rep.packing = pack;
    rep.objective = audit.objective;
  }
  rep.seconds = elapsed();
  return rep;
}

namespace detail {

// Coordinates of a compact solve are continuous; flooring keeps every active
// separation valid (their offsets are integer), so the floored packing stays
// feasible and its objective can only move down, never past the optimum.
inline Packing decode_bigm(const Instance& inst, const BigmModel& M,
                           const std::vector<double>& x) {
  Packing pack;
  for (int i = 0; i < inst.m(); ++i) {
    StripPacking sp;
    sp.strip = i;
    pack.strips.push_back(sp);
  }
  for (int j = 0; j < inst.n(); ++j) {
    int rank = -1;
    for (std::size_t r = 0; r < M.strips_of[j].size(); ++r)
      if (x[M.z[j][r]] > 0.5) {
        if (rank >= 0) throw std::runtime_error("item assigned to two strips");
        rank = static_cast<int>(r);
      }
    if (rank < 0) throw std::runtime_error("item assigned to no strip");
    int i = M.strips_of[j][rank];
    int xi = static_cast<int>(std::floor(x[M.x[j][rank]] + 1e-6));
    int yi = static_cast<int>(std::floor(x[M.y[j][rank]] + 1e-6));
    pack.strips[i].items.push_back({j, xi, yi});
  }
  for (StripPacking& sp : pack.strips) {
    int top = 0;
    for (const PackedItem& a : sp.items) top = std::max(top, a.y + inst.items[a.j].h);
    sp.H = top;
  }
  return pack;
}

inline void finish_compact_report(const Instance& inst, const BigmModel& M,
                                  const MipResult& res, SolveReport& rep) {
  rep.status = res.status;
  rep.nodes = res.nodes;
  rep.lower_bound = std::max(rep.lower_bound, res.bound);
  if (res.x.empty()) return;
  Packing pack = decode_bigm(inst, M, res.x);
  PackingAudit audit = audit_packing(inst, pack);
  if (!audit.ok)
    throw std::runtime_error("compact decode produced an invalid packing: " +
                             audit.violations.front());
  double obj_d = to_double(audit.objective);
  if (obj_d > res.obj + 1e-5 * (1.0 + std::abs(res.obj)))
    throw std::logic_error("floored packing costs more than the solver solution");
  if (res.status == MipStatus::Optimal &&
      std::abs(obj_d - res.obj) > 1e-5 * (1.0 + std::abs(res.obj)))
    throw std::logic_error("floored optimum drifts from the solver objective");
  rep.packing = pack;
  rep.objective = audit.objective;
}

}  // namespace detail

// Compact big-M solve, plain: no external bound.
inline SolveReport solve_bigm(const Instance& inst, const SolveConfig& cfg = {}) {
  using clock = std::chrono::steady_clock;
  auto t0 = clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(clock::now() - t0).count(); };
  SolveReport rep;
  rep.method = "bigm";
  validate_instance(inst);
  BigmModel M = build_bigm(inst);
  MipOptions mo;
  mo.time_limit = detail::budget_left(cfg.time_limit, elapsed());
  mo.node_limit = cfg.node_limit;
  MipResult res = solve_mip(M.model, mo);
  detail::finish_compact_report(inst, M, res, rep);
  rep.seconds = elapsed();
  return rep;
}

// Compact solve warm-started by the assignment relaxation: its exact value is
// injected as an objective floor before the tree search, and the reported
// bound is the stronger of the two. The time budget is shared.
inline SolveReport solve_bigm_le(const Instance& inst, const SolveConfig& cfg = {}) {
  using clock = std::chrono::steady_clock;
  auto t0 = clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(clock::now() - t0).count(); };
  SolveReport rep;
  rep.method = "bigm-le";
  validate_instance(inst);
  NormalPositionTable table = build_table(inst);
  Rational root = lp_pc_bound(inst, table);
  rep.root_bound = root;
  rep.lower_bound = to_double(root);
  BigmModel M = build_bigm(inst);
  inject_lower_bound(M.model, inst, M.H, root);
  MipOptions mo;
  mo.time_limit = detail::budget_left(cfg.time_limit, elapsed());
  mo.node_limit = cfg.node_limit;
  MipResult res = solve_mip(M.model, mo);
  detail::finish_compact_report(inst, M, res, rep);
  rep.seconds = elapsed();
  return rep;
}

}  // namespace gmspp

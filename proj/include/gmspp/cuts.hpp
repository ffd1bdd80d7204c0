#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gmspp/formulations.hpp"
#include "gmspp/normal_positions.hpp"
#include "gmspp/simplex.hpp"
#include "gmspp/ycheck.hpp"

namespace gmspp {

enum class CutStage { Standard, Combinatorial, Lifted };

inline const char* cut_stage_token(CutStage s) {
  switch (s) {
    case CutStage::Standard: return "standard";
    case CutStage::Combinatorial: return "combinatorial";
    default: return "lifted";
  }
}

// One item term of a cut: the indicator sums x_{i,j,p} over p in [lo, hi].
// Point cuts have lo == hi.
struct CutTerm {
  int j = 0;
  int lo = 0;
  int hi = 0;
};

// Linear form: threshold * sum(term indicators) - H_strip <= threshold * (|terms| - 1).
// Semantics: if every term is active, the strip height reaches the threshold.
struct BendersCut {
  int strip = 0;
  CutStage stage = CutStage::Standard;
  int threshold = 0;
  std::vector<CutTerm> terms;
};

inline BendersCut standard_cut(int strip, const std::vector<PlacedItem>& items,
                               double h_star) {
  BendersCut cut;
  cut.strip = strip;
  cut.stage = CutStage::Standard;
  cut.threshold = static_cast<int>(std::ceil(h_star - 1e-6)) + 1;
  for (const PlacedItem& it : items) cut.terms.push_back({it.j, it.p, it.p});
  return cut;
}

inline BendersCut combinatorial_cut(int strip, const std::vector<PlacedItem>& items,
                                    int threshold) {
  BendersCut cut;
  cut.strip = strip;
  cut.stage = CutStage::Combinatorial;
  cut.threshold = threshold;
  for (const PlacedItem& it : items) cut.terms.push_back({it.j, it.p, it.p});
  return cut;
}

// Greedy single-pass core extraction. Items are tried for removal cheapest
// first (area, then id); a removal sticks when the remainder is still
// infeasible. One pass gives single-removal minimality: when j survived, some
// superset of the final core minus j was feasible, and subsets of feasible
// sets stay feasible.
inline std::vector<int> minimal_infeasible_subset(const YCheckInstance& yc,
                                                  const PruneConfig& cfg = {}) {
  int n = static_cast<int>(yc.items.size());
  if (ycheck(yc, cfg).verdict != YVerdict::Infeasible)
    throw std::logic_error("core extraction requires an infeasible configuration");
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    long long aa = 1LL * yc.items[a].w * yc.items[a].h;
    long long bb = 1LL * yc.items[b].w * yc.items[b].h;
    if (aa != bb) return aa < bb;
    return yc.items[a].j < yc.items[b].j;
  });
  std::vector<char> kept(n, 1);
  for (int idx : order) {
    YCheckInstance sub;
    sub.W = yc.W;
    sub.Hbar = yc.Hbar;
    for (int i = 0; i < n; ++i)
      if (kept[i] && i != idx) sub.items.push_back(yc.items[i]);
    if (ycheck(sub, cfg).verdict == YVerdict::Infeasible) kept[idx] = 0;
  }
  std::vector<int> core;
  for (int i = 0; i < n; ++i)
    if (kept[i]) core.push_back(i);
  return core;
}

// Symmetric column-sharing adjacency over the given placements.
inline std::vector<std::vector<int>> build_conflicts(const std::vector<PlacedItem>& items) {
  int n = static_cast<int>(items.size());
  std::vector<std::vector<int>> adj(n);
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k)
      if (items_share_column(items[j], items[k])) {
        adj[j].push_back(k);
        adj[k].push_back(j);
      }
  return adj;
}

struct LiftResult {
  std::vector<std::pair<int, int>> intervals;  // [lo, hi] per input item
  double lp_objective = 0.0;
};

// Widens each placement into an interval while every originally conflicting
// pair keeps overlapping at the extreme positions: lo_j + w_j >= hi_k + 1.
// Interval widths are traded off by an LP; the optimum is rounded inward and
// repaired toward the original points, which always satisfy the system.
// Items without conflicts keep their point (a true core never contains one).
inline std::optional<LiftResult> lift_intervals(const std::vector<PlacedItem>& items,
                                                int W) {
  int n = static_cast<int>(items.size());
  std::vector<std::vector<int>> adj = build_conflicts(items);
  std::vector<int> lifted;
  for (int j = 0; j < n; ++j)
    if (!adj[j].empty()) lifted.push_back(j);
  if (lifted.empty()) return std::nullopt;

  LinearModel lp;
  std::vector<int> lvar(n, -1), rvar(n, -1);
  for (int j : lifted) {
    lvar[j] = lp.add_var("l_" + std::to_string(j), 0.0, items[j].p, 1.0);
    rvar[j] = lp.add_var("r_" + std::to_string(j), items[j].p, W - items[j].w, -1.0);
  }
  for (int j : lifted)
    for (int k : adj[j])
      lp.add_row("keep_" + std::to_string(j) + "_" + std::to_string(k),
                 {{rvar[k], 1.0}, {lvar[j], -1.0}}, Sense::LE, items[j].w - 1.0);
  LpResult sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal)
    throw std::logic_error("interval widening relaxation must solve");

  LiftResult out;
  out.lp_objective = -sol.obj;
  out.intervals.resize(n);
  for (int j = 0; j < n; ++j) out.intervals[j] = {items[j].p, items[j].p};
  for (int j : lifted) {
    int lo = static_cast<int>(std::ceil(sol.x[lvar[j]] - 1e-6));
    int hi = static_cast<int>(std::floor(sol.x[rvar[j]] + 1e-6));
    lo = std::clamp(lo, 0, items[j].p);
    hi = std::clamp(hi, items[j].p, W - items[j].w);
    out.intervals[j] = {lo, hi};
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (int j : lifted)
      for (int k : adj[j]) {
        if (out.intervals[j].first + items[j].w >= out.intervals[k].second + 1) continue;
        int target = out.intervals[j].first + items[j].w - 1;
        if (target >= items[k].p) {
          out.intervals[k].second = target;
        } else {
          out.intervals[k].second = items[k].p;
          out.intervals[j].first =
              std::max(out.intervals[j].first, items[k].p + 1 - items[j].w);
        }
        changed = true;
      }
  }
  for (int j : lifted) {
    if (out.intervals[j].first < 0 || out.intervals[j].first > items[j].p ||
        out.intervals[j].second < items[j].p ||
        out.intervals[j].second > W - items[j].w)
      throw std::logic_error("widened interval escaped its box");
    for (int k : adj[j])
      if (out.intervals[j].first + items[j].w < out.intervals[k].second + 1)
        throw std::logic_error("interval repair failed to restore overlap");
  }
  return out;
}

inline BendersCut lifted_cut(int strip, const std::vector<PlacedItem>& items,
                             const LiftResult& lift, int threshold) {
  BendersCut cut;
  cut.strip = strip;
  cut.stage = CutStage::Lifted;
  cut.threshold = threshold;
  for (std::size_t t = 0; t < items.size(); ++t)
    cut.terms.push_back({items[t].j, lift.intervals[t].first, lift.intervals[t].second});
  return cut;
}

// Turns a cut into the master-row it stands for. Only existing placement
// variables can carry coefficients, so each term covers the columns of its
// interval that are normal positions of that (strip, item) pair.
inline LinearRow realize_cut(const BendersCut& cut, const MasterModel& master,
                             const NormalPositionTable& table) {
  LinearRow row;
  row.name = "bcut_" + std::to_string(cut.strip) + "_" + cut_stage_token(cut.stage)[0] +
             std::to_string(cut.threshold);
  row.sense = Sense::LE;
  row.rhs = static_cast<double>(cut.threshold) * (static_cast<int>(cut.terms.size()) - 1);
  double coef = static_cast<double>(cut.threshold);
  for (const CutTerm& t : cut.terms) {
    const std::vector<int>& pos = table.at(cut.strip, t.j);
    bool any = false;
    for (std::size_t r = 0; r < pos.size(); ++r)
      if (pos[r] >= t.lo && pos[r] <= t.hi) {
        row.terms.emplace_back(master.x[cut.strip][t.j][r], coef);
        any = true;
      }
    if (!any) throw std::logic_error("cut term covers no placement variable");
  }
  row.terms.emplace_back(master.H[cut.strip], -1.0);
  return row;
}

// Exhaustive soundness check at reference scale: for EVERY integer placement
// of the cut's items inside their intervals, packing just those items on the
// strip needs more than threshold-1 rows. Other items only raise the strip,
// and inactive terms satisfy the inequality outright, so this covers every
// feasible completion.
inline bool validate_cut(const BendersCut& cut, const Instance& inst,
                         long long enumeration_cap = 200000) {
  if (cut.terms.size() > 8) throw std::invalid_argument("cut too large to validate");
  int W = inst.strips[cut.strip].W;
  long long combos = 1;
  for (const CutTerm& t : cut.terms) {
    int lo = std::max(0, t.lo);
    int hi = std::min(t.hi, W - inst.items[t.j].w);
    if (hi < lo) return true;  // term can never activate
    combos *= hi - lo + 1;
    if (combos > enumeration_cap)
      throw std::invalid_argument("interval product too large to validate");
  }
  std::vector<int> pos(cut.terms.size());
  std::function<bool(std::size_t)> rec = [&](std::size_t d) -> bool {
    if (d == cut.terms.size()) {
      YCheckInstance yc;
      yc.W = W;
      yc.Hbar = cut.threshold - 1;
      for (std::size_t t = 0; t < cut.terms.size(); ++t) {
        int j = cut.terms[t].j;
        yc.items.push_back({j, pos[t], inst.items[j].w, inst.items[j].h});
      }
      return oracle_ycheck(yc) == YVerdict::Infeasible;
    }
    int j = cut.terms[d].j;
    int lo = std::max(0, cut.terms[d].lo);
    int hi = std::min(cut.terms[d].hi, W - inst.items[j].w);
    for (int p = lo; p <= hi; ++p) {
      pos[d] = p;
      if (!rec(d + 1)) return false;
    }
    return true;
  };
  return rec(0);
}

// `strip,stage,threshold,|C|,items,positions_or_intervals`
inline std::string cut_log_line(const BendersCut& cut) {
  std::ostringstream os;
  os << cut.strip << ',' << cut_stage_token(cut.stage) << ',' << cut.threshold << ','
     << cut.terms.size() << ',';
  for (std::size_t t = 0; t < cut.terms.size(); ++t)
    os << (t ? ";" : "") << cut.terms[t].j;
  os << ',';
  for (std::size_t t = 0; t < cut.terms.size(); ++t) {
    os << (t ? ";" : "");
    if (cut.terms[t].lo == cut.terms[t].hi)
      os << cut.terms[t].lo;
    else
      os << cut.terms[t].lo << '-' << cut.terms[t].hi;
  }
  return os.str();
}

}  // namespace gmspp

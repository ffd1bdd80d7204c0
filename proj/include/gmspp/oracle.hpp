#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "gmspp/solution.hpp"
#include "gmspp/ycheck.hpp"

namespace gmspp {

struct OracleResult {
  Rational objective;
  Packing packing;
};

namespace detail {

struct SubSolution {
  int H = 0;
  std::vector<int> xs;  // positions, parallel to the ascending item list
};

// Minimal strip height for one item subset at fixed strip width, by complete
// enumeration of x-vectors. Positions are restricted to sums of other subset
// members' widths (computed here from scratch, on purpose); per vector the
// height is the smallest target the exhaustive y-reference accepts.
class SubsetHeightSolver {
 public:
  SubsetHeightSolver(const Instance& inst) : inst_(inst) {}

  const SubSolution& solve(int W, std::uint32_t mask) {
    auto key = std::make_pair(W, mask);
    auto hit = cache_.find(key);
    if (hit != cache_.end()) return hit->second;

    std::vector<int> members;
    for (int j = 0; j < inst_.n(); ++j)
      if (mask >> j & 1) members.push_back(j);
    SubSolution best;
    if (members.empty()) {
      return cache_.emplace(key, best).first->second;
    }

    std::vector<std::vector<int>> pos(members.size());
    for (std::size_t t = 0; t < members.size(); ++t) {
      int limit = W - inst_.items[members[t]].w;
      if (limit < 0) throw std::logic_error("subset member wider than strip");
      std::vector<char> reach(limit + 1, 0);
      reach[0] = 1;
      for (std::size_t u = 0; u < members.size(); ++u) {
        if (u == t) continue;
        int w = inst_.items[members[u]].w;
        for (int v = limit; v >= w; --v)
          if (reach[v - w]) reach[v] = 1;
      }
      for (int v = 0; v <= limit; ++v)
        if (reach[v]) pos[t].push_back(v);
    }

    int total_h = 0;
    for (int j : members) total_h += inst_.items[j].h;
    best.H = total_h + 1;  // sentinel; stacking always beats it

    std::vector<int> xs(members.size());
    std::vector<int> load(W, 0);
    dfs(W, members, pos, 0, xs, load, 0, best);
    if (best.H > total_h) throw std::logic_error("no x-vector evaluated");
    return cache_.emplace(key, std::move(best)).first->second;
  }

 private:
  void dfs(int W, const std::vector<int>& members,
           const std::vector<std::vector<int>>& pos, std::size_t depth,
           std::vector<int>& xs, std::vector<int>& load, int peak, SubSolution& best) {
    if (peak >= best.H) return;
    if (depth == members.size()) {
      YCheckInstance yc;
      yc.W = W;
      for (std::size_t t = 0; t < members.size(); ++t) {
        int j = members[t];
        yc.items.push_back({j, xs[t], inst_.items[j].w, inst_.items[j].h});
      }
      int lo = peak, hi = 0;
      for (std::size_t t = 0; t < members.size(); ++t) hi += inst_.items[members[t]].h;
      while (lo < hi) {
        int mid = lo + (hi - lo) / 2;
        yc.Hbar = mid;
        if (oracle_ycheck(yc) == YVerdict::Feasible)
          hi = mid;
        else
          lo = mid + 1;
      }
      if (lo < best.H) {
        best.H = lo;
        best.xs = xs;
      }
      return;
    }
    int j = members[depth];
    const Item& it = inst_.items[j];
    for (int p : pos[depth]) {
      // interchangeable items are forced into nondecreasing positions
      if (depth > 0) {
        int prev = members[depth - 1];
        if (inst_.items[prev].w == it.w && inst_.items[prev].h == it.h &&
            p < xs[depth - 1])
          continue;
      }
      xs[depth] = p;
      int new_peak = peak;
      bool overload = false;
      for (int c = p; c < p + it.w; ++c) {
        load[c] += it.h;
        new_peak = std::max(new_peak, load[c]);
      }
      if (new_peak >= best.H) overload = true;
      if (!overload) dfs(W, members, pos, depth + 1, xs, load, new_peak, best);
      for (int c = p; c < p + it.w; ++c) load[c] -= it.h;
    }
  }

  const Instance& inst_;
  std::map<std::pair<int, std::uint32_t>, SubSolution> cache_;
};

inline OracleResult solve_exact_impl(const Instance& inst, bool all_integer_x) {
  validate_instance(inst);
  int n = inst.n(), m = inst.m();
  if (n > 7 || m > 3) throw std::invalid_argument("instance too large for exact enumeration");

  std::vector<std::vector<int>> feas(n);
  for (int j = 0; j < n; ++j) feas[j] = feasible_strips(inst, j);

  SubsetHeightSolver strip_solver(inst);
  // the all-integer variant bypasses the cache-backed solver below
  auto subset_height = [&](int W, std::uint32_t mask) -> detail::SubSolution {
    if (!all_integer_x) return strip_solver.solve(W, mask);
    std::vector<int> members;
    for (int j = 0; j < n; ++j)
      if (mask >> j & 1) members.push_back(j);
    SubSolution best;
    if (members.empty()) return best;
    int total_h = 0;
    for (int j : members) total_h += inst.items[j].h;
    best.H = total_h + 1;
    std::vector<int> xs(members.size());
    std::function<void(std::size_t)> rec = [&](std::size_t depth) {
      if (depth == members.size()) {
        YCheckInstance yc;
        yc.W = W;
        for (std::size_t t = 0; t < members.size(); ++t)
          yc.items.push_back({members[t], xs[t], inst.items[members[t]].w,
                              inst.items[members[t]].h});
        int lo = 0, hi = total_h;
        while (lo < hi) {
          int mid = lo + (hi - lo) / 2;
          yc.Hbar = mid;
          if (oracle_ycheck(yc) == YVerdict::Feasible)
            hi = mid;
          else
            lo = mid + 1;
        }
        if (lo < best.H) {
          best.H = lo;
          best.xs = xs;
        }
        return;
      }
      for (int p = 0; p + inst.items[members[depth]].w <= W; ++p) {
        xs[depth] = p;
        rec(depth + 1);
      }
    };
    rec(0);
    return best;
  };

  bool have_best = false;
  Rational best_obj;
  std::vector<int> best_assign;
  std::vector<int> assign(n, 0);
  // odometer over each item's feasible strip list, lexicographic
  for (;;) {
    std::vector<std::uint32_t> masks(m, 0);
    for (int j = 0; j < n; ++j) masks[feas[j][assign[j]]] |= 1u << j;
    Rational obj(0);
    for (int i = 0; i < m; ++i) {
      if (masks[i] == 0) continue;
      obj += inst.strips[i].C * Rational(inst.strips[i].W) *
             Rational(subset_height(inst.strips[i].W, masks[i]).H);
    }
    if (!have_best || obj < best_obj) {
      have_best = true;
      best_obj = obj;
      best_assign = assign;
    }
    int j = n - 1;
    while (j >= 0 && assign[j] + 1 == static_cast<int>(feas[j].size())) assign[j--] = 0;
    if (j < 0) break;
    ++assign[j];
  }

  OracleResult res;
  res.objective = best_obj;
  for (int i = 0; i < m; ++i) {
    std::uint32_t mask = 0;
    for (int j = 0; j < n; ++j)
      if (feas[j][best_assign[j]] == i) mask |= 1u << j;
    if (mask == 0) continue;
    SubSolution sub = subset_height(inst.strips[i].W, mask);
    StripPacking sp;
    sp.strip = i;
    sp.H = sub.H;
    YCheckInstance yc;
    yc.W = inst.strips[i].W;
    yc.Hbar = sub.H;
    std::vector<int> members;
    for (int j = 0; j < n; ++j)
      if (mask >> j & 1) members.push_back(j);
    for (std::size_t t = 0; t < members.size(); ++t)
      yc.items.push_back({members[t], sub.xs[t], inst.items[members[t]].w,
                          inst.items[members[t]].h});
    YCheckResult w = ycheck(yc);
    if (w.verdict != YVerdict::Feasible)
      throw std::logic_error("witness assembly disagrees with the height search");
    for (std::size_t t = 0; t < members.size(); ++t)
      sp.items.push_back({members[t], sub.xs[t], w.y[t]});
    res.packing.strips.push_back(sp);
  }
  if (!verify_packing(inst, res.packing))
    throw std::logic_error("exact solver produced an invalid packing");
  if (packing_objective(inst, res.packing) != res.objective)
    throw std::logic_error("exact solver objective mismatch");
  return res;
}

}  // namespace detail

inline OracleResult solve_exact(const Instance& inst) {
  return detail::solve_exact_impl(inst, false);
}

// Same enumeration with x unrestricted to normal positions; only for the
// property test that the restriction loses nothing.
inline OracleResult solve_exact_full_x(const Instance& inst) {
  if (inst.n() > 4) throw std::invalid_argument("full enumeration limited to 4 items");
  return detail::solve_exact_impl(inst, true);
}

}  // namespace gmspp

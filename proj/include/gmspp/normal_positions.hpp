#pragma once

#include <algorithm>
#include <vector>

#include "gmspp/instance.hpp"

namespace gmspp {

// Normal x-positions: item j on strip i may start only at subset sums of the
// other items' widths that leave room for j. Any packing shifts left onto
// these positions without overlap, so restricting to them loses no optimum.
struct NormalPositionTable {
  // positions[i][j] sorted ascending; empty when j does not fit strip i.
  std::vector<std::vector<std::vector<int>>> positions;

  const std::vector<int>& at(int strip, int item) const { return positions[strip][item]; }
};

inline std::vector<int> normal_positions_for(const std::vector<int>& other_widths,
                                             int limit) {
  // boolean reachability over 0..limit
  if (limit < 0) return {};
  std::vector<char> reach(static_cast<std::size_t>(limit) + 1, 0);
  reach[0] = 1;
  for (int w : other_widths) {
    if (w > limit) continue;
    for (int s = limit; s >= w; --s)
      if (reach[s - w]) reach[s] = 1;
  }
  std::vector<int> out;
  for (int s = 0; s <= limit; ++s)
    if (reach[s]) out.push_back(s);
  return out;
}

inline NormalPositionTable build_table(const Instance& inst) {
  NormalPositionTable t;
  t.positions.assign(inst.m(), std::vector<std::vector<int>>(inst.n()));
  std::vector<int> widths(inst.n());
  for (int j = 0; j < inst.n(); ++j) widths[j] = inst.items[j].w;
  for (int i = 0; i < inst.m(); ++i) {
    for (int j = 0; j < inst.n(); ++j) {
      int limit = inst.strips[i].W - inst.items[j].w;
      if (limit < 0) continue;  // infeasible pair, stays empty
      std::vector<int> others;
      others.reserve(inst.n() - 1);
      for (int k = 0; k < inst.n(); ++k)
        if (k != j) others.push_back(widths[k]);
      t.positions[i][j] = normal_positions_for(others, limit);
    }
  }
  return t;
}

// Positions of item j on strip i whose footprint covers column q, i.e.
// p in [q - w_j + 1, q]. Answered by binary search on the sorted list; the
// covering sets are never materialized.
inline std::vector<int> coverage(const NormalPositionTable& t, const Instance& inst,
                                 int strip, int item, int q) {
  const std::vector<int>& pos = t.at(strip, item);
  int w = inst.items[item].w;
  auto lo = std::lower_bound(pos.begin(), pos.end(), q - w + 1);
  auto hi = std::upper_bound(pos.begin(), pos.end(), q);
  return std::vector<int>(lo, hi);
}

}  // namespace gmspp

#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gmspp {

// One x-fixed item on a strip: occupies columns [p, p+w) and needs h rows.
struct PlacedItem {
  int j = 0;
  int p = 0;
  int w = 0;
  int h = 0;
};

struct YCheckInstance {
  int W = 0;
  int Hbar = 0;
  std::vector<PlacedItem> items;
};

enum class YVerdict { Feasible, Infeasible };

struct PruneConfig {
  bool column_load = true;
  bool area = true;
  bool free_space = true;
  bool symmetry = true;
  bool dominance = true;
  // preprocessing, not part of the pruning toggle set
  bool use_width_lift = true;
  bool use_shrink = true;
  long long node_cap = 10000000;  // 0 = unlimited
};

struct YCheckResult {
  YVerdict verdict = YVerdict::Infeasible;
  std::vector<int> y;  // parallel to the input items when Feasible
  long long nodes = 0;
  long long pruned_column = 0;
  long long pruned_area = 0;
  long long pruned_free = 0;
  long long pruned_symmetry = 0;
  long long pruned_dominance = 0;
};

// Raised when the node cap trips before a verdict is reached. Callers must
// treat this as a hard failure; it is never a stand-in for either verdict.
class YCheckUndecided : public std::runtime_error {
 public:
  explicit YCheckUndecided(long long nodes)
      : std::runtime_error("height check undecided after " + std::to_string(nodes) +
                           " nodes") {}
};

inline void validate_ycheck_instance(const YCheckInstance& yc) {
  if (yc.W < 0 || yc.Hbar < 0) throw std::invalid_argument("negative strip dimensions");
  for (const PlacedItem& it : yc.items) {
    if (it.w <= 0 || it.h <= 0) throw std::invalid_argument("item dimensions must be positive");
    if (it.p < 0 || it.p + it.w > yc.W)
      throw std::invalid_argument("item outside the strip");
  }
}

// Semantic ground truth used by every verdict: vertical disjointness is only
// required of pairs that share a column in the ORIGINAL footprints.
inline bool items_share_column(const PlacedItem& a, const PlacedItem& b) {
  return a.p < b.p + b.w && b.p < a.p + a.w;
}

inline bool verify_y(const YCheckInstance& yc, const std::vector<int>& y) {
  if (y.size() != yc.items.size()) return false;
  int n = static_cast<int>(yc.items.size());
  for (int j = 0; j < n; ++j) {
    if (y[j] < 0 || y[j] + yc.items[j].h > yc.Hbar) return false;
    for (int k = j + 1; k < n; ++k) {
      if (!items_share_column(yc.items[j], yc.items[k])) continue;
      bool disjoint = y[j] + yc.items[j].h <= y[k] || y[k] + yc.items[k].h <= y[j];
      if (!disjoint) return false;
    }
  }
  return true;
}

// Widens each item's occupied interval into adjacent freed columns. The item
// ends up OWNING the wider interval; validity rests on the pair relation
// being preserved exactly: overlapping pairs keep overlapping (intervals only
// grow), and originally disjoint pairs are kept disjoint by the repair pass.
inline std::vector<std::pair<int, int>> width_lift(const YCheckInstance& yc) {
  validate_ycheck_instance(yc);
  int n = static_cast<int>(yc.items.size());
  std::vector<int> a(n, 0), b(n, yc.W);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      if (k == j) continue;
      if (yc.items[k].p + yc.items[k].w <= yc.items[j].p)
        a[j] = std::max(a[j], yc.items[k].p + yc.items[k].w);
      if (yc.items[j].p + yc.items[j].w <= yc.items[k].p)
        b[j] = std::min(b[j], yc.items[k].p);
    }
  }
  // two disjoint items may both claim the gap between them; the left one backs
  // off to where the right one's interval now starts
  std::vector<std::pair<int, int>> out(n);
  for (int j = 0; j < n; ++j) {
    int bj = b[j];
    for (int k = 0; k < n; ++k) {
      if (k == j) continue;
      if (yc.items[j].p + yc.items[j].w <= yc.items[k].p) bj = std::min(bj, a[k]);
    }
    out[j] = {a[j], bj};
  }
  return out;
}

struct ShrunkStrip {
  YCheckInstance yc;
  std::vector<int> kept;  // original indices of surviving columns
};

// Drops every column that is not some item's left border. Two items share a
// column iff they share a kept column (the left border of the righter one
// lies inside any overlap), so the pair relation survives the remap.
inline ShrunkStrip shrink_strip(const YCheckInstance& yc) {
  validate_ycheck_instance(yc);
  ShrunkStrip out;
  out.yc.Hbar = yc.Hbar;
  for (const PlacedItem& it : yc.items) out.kept.push_back(it.p);
  std::sort(out.kept.begin(), out.kept.end());
  out.kept.erase(std::unique(out.kept.begin(), out.kept.end()), out.kept.end());
  out.yc.W = static_cast<int>(out.kept.size());
  for (const PlacedItem& it : yc.items) {
    PlacedItem s = it;
    auto lo = std::lower_bound(out.kept.begin(), out.kept.end(), it.p);
    auto hi = std::lower_bound(out.kept.begin(), out.kept.end(), it.p + it.w);
    s.p = static_cast<int>(lo - out.kept.begin());
    s.w = static_cast<int>(hi - lo);
    out.yc.items.push_back(s);
  }
  return out;
}

namespace detail {

struct YFrame {
  std::vector<int> sky;
  std::uint64_t remaining = 0;
  std::vector<int> y;
  long long waste = 0;
};

}  // namespace detail

// Exact decision by niche enumeration. A skyline of column heights grows
// monotonically; each node finds the lowest contiguous run (leftmost on
// ties) and branches over the items whose footprint fits inside it, plus a
// final branch that closes the run up to its lower neighbor. Verdicts are
// independent of every pruning toggle.
inline YCheckResult ycheck(const YCheckInstance& input, const PruneConfig& cfg = {}) {
  validate_ycheck_instance(input);
  YCheckResult res;
  int n = static_cast<int>(input.items.size());
  if (n == 0) {
    res.verdict = YVerdict::Feasible;
    return res;
  }
  if (n > 63) throw std::invalid_argument("too many items on one strip");

  YCheckInstance work = input;
  if (cfg.use_width_lift) {
    auto iv = width_lift(work);
    for (int j = 0; j < n; ++j) {
      work.items[j].p = iv[j].first;
      work.items[j].w = iv[j].second - iv[j].first;
    }
  }
  if (cfg.use_shrink) work = shrink_strip(work).yc;
  const int W = work.W;
  const int H = work.Hbar;

  long long total_area = 0;
  for (const PlacedItem& it : work.items) total_area += 1LL * it.w * it.h;

  std::vector<detail::YFrame> stack;
  {
    detail::YFrame root;
    root.sky.assign(W, 0);
    root.remaining = (n == 63) ? ~0ULL >> 1 : ((1ULL << n) - 1);
    root.y.assign(n, -1);
    stack.push_back(std::move(root));
  }

  std::vector<int> cand;
  while (!stack.empty()) {
    detail::YFrame fr = std::move(stack.back());
    stack.pop_back();
    ++res.nodes;
    if (cfg.node_cap > 0 && res.nodes > cfg.node_cap) throw YCheckUndecided(res.nodes);

    for (;;) {
      if (fr.remaining == 0) {
        res.verdict = YVerdict::Feasible;
        res.y = fr.y;
        if (!verify_y(input, res.y))
          throw std::logic_error("internal error: witness fails verification");
        return res;
      }

      // lowest contiguous run of the skyline
      int hstar = *std::min_element(fr.sky.begin(), fr.sky.end());
      int nl = 0;
      while (fr.sky[nl] != hstar) ++nl;
      int nr = nl;
      while (nr < W && fr.sky[nr] == hstar) ++nr;

      int min_h = INT32_MAX, min_w = INT32_MAX;
      for (int j = 0; j < n; ++j)
        if (fr.remaining >> j & 1) {
          min_h = std::min(min_h, work.items[j].h);
          min_w = std::min(min_w, work.items[j].w);
        }
      // headroom shrinks monotonically along any path; once the shortest
      // remaining item no longer fits above the lowest run, nothing ever will
      if (H - hstar < min_h) break;

      if (cfg.column_load) {
        bool cut = false;
        std::vector<int> load(W, 0);
        for (int j = 0; j < n && !cut; ++j)
          if (fr.remaining >> j & 1)
            for (int c = work.items[j].p; c < work.items[j].p + work.items[j].w; ++c)
              if (fr.sky[c] + (load[c] += work.items[j].h) > H) {
                cut = true;
                break;
              }
        if (cut) {
          ++res.pruned_column;
          break;
        }
      }
      long long rem_area = 0;
      for (int j = 0; j < n; ++j)
        if (fr.remaining >> j & 1) rem_area += 1LL * work.items[j].w * work.items[j].h;
      if (cfg.area) {
        long long above = 0;
        for (int c = 0; c < W; ++c) above += H - fr.sky[c];
        if (rem_area > above) {
          ++res.pruned_area;
          break;
        }
      }
      if (cfg.free_space && fr.waste + total_area > 1LL * W * H) {
        ++res.pruned_free;
        break;
      }

      cand.clear();
      for (int j = 0; j < n; ++j) {
        if (!(fr.remaining >> j & 1)) continue;
        const PlacedItem& it = work.items[j];
        if (it.p < nl || it.p + it.w > nr) continue;
        if (hstar + it.h > H) continue;
        if (cfg.symmetry) {
          bool twin_below = false;
          for (int k = 0; k < j; ++k)
            if ((fr.remaining >> k & 1) && work.items[k].p == it.p &&
                work.items[k].w == it.w && work.items[k].h == it.h) {
              twin_below = true;
              break;
            }
          if (twin_below) {
            ++res.pruned_symmetry;
            continue;
          }
        }
        cand.push_back(j);
      }

      int close_to = H;
      if (nl > 0) close_to = std::min(close_to, fr.sky[nl - 1]);
      if (nr < W) close_to = std::min(close_to, fr.sky[nr]);

      if (cand.empty() && cfg.dominance && nr - nl < min_w) {
        // no item will ever fit this run again; fold the close into this node
        ++res.pruned_dominance;
        fr.waste += 1LL * (nr - nl) * (close_to - hstar);
        for (int c = nl; c < nr; ++c) fr.sky[c] = close_to;
        continue;
      }

      std::sort(cand.begin(), cand.end(), [&](int a, int b) {
        if (work.items[a].h != work.items[b].h) return work.items[a].h > work.items[b].h;
        if (work.items[a].w != work.items[b].w) return work.items[a].w > work.items[b].w;
        return a < b;
      });

      {
        detail::YFrame close = fr;
        close.waste += 1LL * (nr - nl) * (close_to - hstar);
        for (int c = nl; c < nr; ++c) close.sky[c] = close_to;
        stack.push_back(std::move(close));
      }
      for (auto it = cand.rbegin(); it != cand.rend(); ++it) {
        detail::YFrame child = fr;
        const PlacedItem& item = work.items[*it];
        child.remaining &= ~(1ULL << *it);
        child.y[*it] = hstar;
        for (int c = item.p; c < item.p + item.w; ++c) child.sky[c] = hstar + item.h;
        stack.push_back(std::move(child));
      }
      break;
    }
  }
  res.verdict = YVerdict::Infeasible;
  return res;
}

// Exhaustive reference decision, deliberately coded with none of the
// machinery above: every bottom-justified assignment puts each y at a sum of
// other items' heights, so the full product of those values is scanned with
// early pairwise overlap rejection. Guarded to small item counts.
inline YVerdict oracle_ycheck(const YCheckInstance& yc) {
  validate_ycheck_instance(yc);
  int n = static_cast<int>(yc.items.size());
  if (n > 8) throw std::invalid_argument("reference check is limited to 8 items");
  if (n == 0) return YVerdict::Feasible;

  std::vector<std::vector<int>> levels(n);
  for (int j = 0; j < n; ++j) {
    int cap = yc.Hbar - yc.items[j].h;
    if (cap < 0) return YVerdict::Infeasible;
    std::vector<char> reach(cap + 1, 0);
    reach[0] = 1;
    for (int k = 0; k < n; ++k) {
      if (k == j) continue;
      for (int v = cap; v >= yc.items[k].h; --v)
        if (reach[v - yc.items[k].h]) reach[v] = 1;
    }
    for (int v = 0; v <= cap; ++v)
      if (reach[v]) levels[j].push_back(v);
  }

  std::vector<int> y(n, -1);
  std::vector<int> idx(n, 0);
  int depth = 0;
  while (depth >= 0) {
    if (depth == n) return YVerdict::Feasible;
    bool advanced = false;
    while (idx[depth] < static_cast<int>(levels[depth].size())) {
      int cand_y = levels[depth][idx[depth]++];
      bool ok = true;
      for (int k = 0; k < depth; ++k) {
        if (!items_share_column(yc.items[k], yc.items[depth])) continue;
        if (cand_y + yc.items[depth].h > y[k] && y[k] + yc.items[k].h > cand_y) {
          ok = false;
          break;
        }
      }
      if (ok) {
        y[depth] = cand_y;
        ++depth;
        advanced = true;
        break;
      }
    }
    if (!advanced) {
      idx[depth] = 0;
      --depth;
    }
  }
  return YVerdict::Infeasible;
}

}  // namespace gmspp

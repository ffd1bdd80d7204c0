#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "gmspp/instance.hpp"

namespace gmspp {

struct PackedItem {
  int j = 0;
  int x = 0;
  int y = 0;
};

struct StripPacking {
  int strip = 0;
  int H = 0;
  std::vector<PackedItem> items;
};

struct Packing {
  std::vector<StripPacking> strips;
};

struct PackingAudit {
  bool ok = true;
  Rational objective;  // meaningful only when ok
  std::vector<std::string> violations;
};

// Geometry-only audit: every item placed exactly once on a strip that fits
// it, no rectangle overlap, and each strip's recorded height is exactly the
// top of its tallest stack (an inflated H would inflate the objective).
inline PackingAudit audit_packing(const Instance& inst, const Packing& pack) {
  PackingAudit audit;
  auto flag = [&](std::string msg) {
    audit.ok = false;
    audit.violations.push_back(std::move(msg));
  };
  std::vector<int> placed(inst.n(), 0);
  for (const StripPacking& sp : pack.strips) {
    if (sp.strip < 0 || sp.strip >= inst.m()) {
      flag("unknown strip index " + std::to_string(sp.strip));
      continue;
    }
    int W = inst.strips[sp.strip].W;
    std::string si = std::to_string(sp.strip);
    int top = 0;
    for (const PackedItem& a : sp.items) {
      if (a.j < 0 || a.j >= inst.n()) {
        flag("unknown item index " + std::to_string(a.j) + " on strip " + si);
        continue;
      }
      placed[a.j]++;
      const Item& it = inst.items[a.j];
      std::string ji = std::to_string(a.j);
      if (a.x < 0 || a.x + it.w > W)
        flag("item " + ji + " leaves strip " + si + " horizontally (x=" +
             std::to_string(a.x) + ", w=" + std::to_string(it.w) + ", W=" +
             std::to_string(W) + ")");
      if (a.y < 0 || a.y + it.h > sp.H)
        flag("item " + ji + " leaves strip " + si + " vertically (y=" +
             std::to_string(a.y) + ", h=" + std::to_string(it.h) + ", H=" +
             std::to_string(sp.H) + ")");
      top = std::max(top, a.y + it.h);
    }
    if (top != sp.H)
      flag("strip " + si + " records height " + std::to_string(sp.H) +
           " but its tallest stack tops out at " + std::to_string(top));
    for (std::size_t s = 0; s < sp.items.size(); ++s)
      for (std::size_t t = s + 1; t < sp.items.size(); ++t) {
        const PackedItem& a = sp.items[s];
        const PackedItem& b = sp.items[t];
        if (a.j < 0 || a.j >= inst.n() || b.j < 0 || b.j >= inst.n()) continue;
        const Item& ia = inst.items[a.j];
        const Item& ib = inst.items[b.j];
        bool x_overlap = a.x < b.x + ib.w && b.x < a.x + ia.w;
        bool y_overlap = a.y < b.y + ib.h && b.y < a.y + ia.h;
        if (x_overlap && y_overlap)
          flag("items " + std::to_string(a.j) + " and " + std::to_string(b.j) +
               " overlap on strip " + si);
      }
  }
  for (int j = 0; j < inst.n(); ++j) {
    if (placed[j] == 0) flag("item " + std::to_string(j) + " is never placed");
    if (placed[j] > 1)
      flag("item " + std::to_string(j) + " is placed " + std::to_string(placed[j]) +
           " times");
  }
  if (audit.ok) {
    Rational obj(0);
    for (const StripPacking& sp : pack.strips)
      obj += inst.strips[sp.strip].C * Rational(inst.strips[sp.strip].W) *
             Rational(sp.H);
    audit.objective = obj;
  }
  return audit;
}

inline bool verify_packing(const Instance& inst, const Packing& pack) {
  return audit_packing(inst, pack).ok;
}

inline Rational packing_objective(const Instance& inst, const Packing& pack) {
  Rational obj(0);
  for (const StripPacking& sp : pack.strips)
    obj += inst.strips[sp.strip].C * Rational(inst.strips[sp.strip].W) * Rational(sp.H);
  return obj;
}

}  // namespace gmspp

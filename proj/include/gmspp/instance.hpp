#pragma once

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gmspp/rational.hpp"

namespace gmspp {

struct Item {
  int w = 0;
  int h = 0;
};

struct Strip {
  int W = 0;
  Rational C{1};  // cost per unit area, exact
};

// A classic strip packing instance as read from a benchmark file: n items and
// one strip width. Serves as the base from which multi-strip instances are
// generated.
struct BaseSpp {
  std::string name;
  int W = 0;
  std::vector<Item> items;
};

struct Instance {
  std::string name;
  std::vector<Item> items;
  std::vector<Strip> strips;  // sorted by nondecreasing width

  int n() const { return static_cast<int>(items.size()); }
  int m() const { return static_cast<int>(strips.size()); }
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Strips whose width admits the item, ascending. Every item must have at
// least one; instance validation enforces that.
inline std::vector<int> feasible_strips(const Instance& inst, int j) {
  std::vector<int> out;
  for (int i = 0; i < inst.m(); ++i)
    if (inst.items[j].w <= inst.strips[i].W) out.push_back(i);
  return out;
}

inline void validate_instance(const Instance& inst) {
  if (inst.items.empty()) throw std::invalid_argument("instance has no items");
  if (inst.strips.empty()) throw std::invalid_argument("instance has no strips");
  for (int i = 1; i < inst.m(); ++i)
    if (inst.strips[i].W < inst.strips[i - 1].W)
      throw std::invalid_argument("strips must be sorted by nondecreasing width");
  for (const Strip& s : inst.strips) {
    if (s.W <= 0) throw std::invalid_argument("strip width must be positive");
    if (s.C <= Rational(0)) throw std::invalid_argument("strip cost must be positive");
  }
  for (int j = 0; j < inst.n(); ++j) {
    const Item& it = inst.items[j];
    if (it.w <= 0 || it.h <= 0)
      throw std::invalid_argument("item dimensions must be positive");
    if (it.w > inst.strips.back().W)
      throw std::invalid_argument("item " + std::to_string(j) +
                                  " fits no strip (w=" + std::to_string(it.w) + ")");
  }
}

// Text format: item count, strip width, then one line per item that is either
// "index width height" or "width height". Item ids are re-based to 0..n-1 in
// file order regardless of the index column.
inline BaseSpp parse_spp(const std::string& text, const std::string& name = "base") {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto next_line = [&](const char* what) {
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r\n") != std::string::npos) return;
    }
    throw ParseError(std::string("unexpected end of file, expected ") + what);
  };

  BaseSpp base;
  base.name = name;
  next_line("item count");
  int n = 0;
  {
    std::istringstream ls(line);
    if (!(ls >> n) || n <= 0)
      throw ParseError("line " + std::to_string(lineno) + ": bad item count");
  }
  next_line("strip width");
  {
    std::istringstream ls(line);
    if (!(ls >> base.W) || base.W <= 0)
      throw ParseError("line " + std::to_string(lineno) + ": bad strip width");
  }
  std::vector<std::pair<int, int>> raw;
  for (int j = 0; j < n; ++j) {
    next_line("item line");
    std::istringstream ls(line);
    long long a, b, c;
    if (!(ls >> a >> b)) throw ParseError("line " + std::to_string(lineno) + ": bad item line");
    if (ls >> c) {
      raw.emplace_back(static_cast<int>(b), static_cast<int>(c));  // index w h
    } else {
      raw.emplace_back(static_cast<int>(a), static_cast<int>(b));  // w h
    }
    auto [w, h] = raw.back();
    if (w <= 0 || h <= 0)
      throw ParseError("line " + std::to_string(lineno) + ": nonpositive item dimension");
  }
  // Column-order guard: widths must fit the strip. If the swapped reading
  // would fit we still refuse; guessing silently would corrupt every
  // downstream bound.
  bool as_is_ok = true, swapped_ok = true;
  int bad = -1;
  for (int j = 0; j < n; ++j) {
    if (raw[j].first > base.W) { as_is_ok = false; if (bad < 0) bad = j; }
    if (raw[j].second > base.W) swapped_ok = false;
  }
  if (!as_is_ok) {
    std::string msg = "item " + std::to_string(bad) + " wider than strip (w=" +
                      std::to_string(raw[bad].first) + " > W=" + std::to_string(base.W) + ")";
    if (swapped_ok)
      msg += "; swapped width/height order would fit, refusing to guess the column order";
    throw ParseError(msg);
  }
  base.items.reserve(n);
  for (auto [w, h] : raw) base.items.push_back({w, h});
  return base;
}

inline BaseSpp load_spp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string stem = path;
  if (auto pos = stem.find_last_of('/'); pos != std::string::npos) stem = stem.substr(pos + 1);
  if (auto pos = stem.find_last_of('.'); pos != std::string::npos) stem = stem.substr(0, pos);
  return parse_spp(buf.str(), stem);
}

enum class CostScheme { Proportional, Economies, Diseconomies };

inline const char* scheme_token(CostScheme s) {
  switch (s) {
    case CostScheme::Proportional: return "prop";
    case CostScheme::Economies: return "econ";
    case CostScheme::Diseconomies: return "disecon";
  }
  throw std::logic_error("bad scheme");
}

inline CostScheme scheme_from_token(const std::string& t) {
  if (t == "prop") return CostScheme::Proportional;
  if (t == "econ") return CostScheme::Economies;
  if (t == "disecon") return CostScheme::Diseconomies;
  throw std::invalid_argument("unknown cost scheme '" + t + "' (prop|econ|disecon)");
}

// Derives a multi-strip instance from a base file. m=2 uses width ratios
// (1.0, 1.2), m=3 uses (0.8, 1.0, 1.2); widths are floor(r*W) computed in
// integers. Costs per unit area by scheme, ascending strip width:
//   Proportional  all 1
//   Economies     widest 1.0, each narrower +0.1
//   Diseconomies  narrowest 1.0, each wider +0.1
inline Instance generate_gmspp(const BaseSpp& base, int m, CostScheme scheme) {
  if (m != 2 && m != 3) throw std::invalid_argument("m must be 2 or 3");
  std::vector<std::pair<int, int>> ratios =  // (num, den), ascending
      m == 2 ? std::vector<std::pair<int, int>>{{1, 1}, {6, 5}}
             : std::vector<std::pair<int, int>>{{4, 5}, {1, 1}, {6, 5}};
  Instance inst;
  inst.name = base.name + "_m" + std::to_string(m) + "_" + scheme_token(scheme);
  inst.items = base.items;
  for (int i = 0; i < m; ++i) {
    Strip s;
    s.W = static_cast<int>((static_cast<long long>(ratios[i].first) * base.W) / ratios[i].second);
    switch (scheme) {
      case CostScheme::Proportional: s.C = Rational(1); break;
      case CostScheme::Economies: s.C = Rational(10 + (m - 1 - i), 10); break;
      case CostScheme::Diseconomies: s.C = Rational(10 + i, 10); break;
    }
    inst.strips.push_back(s);
  }
  validate_instance(inst);
  return inst;
}

}  // namespace gmspp

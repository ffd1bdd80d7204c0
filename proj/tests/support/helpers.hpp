#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <set>
#include <vector>

#include "gmspp/instance.hpp"
#include "gmspp/linear_model.hpp"
#include "gmspp/ycheck.hpp"

namespace gmspp::testing {

// Brute-force normal positions: enumerate every subset of the other widths.
// Usable up to ~20 other items; the DP under test must match exactly.
inline std::vector<int> brute_positions(const std::vector<int>& other_widths, int limit) {
  if (limit < 0) return {};
  std::set<int> sums;
  std::size_t k = other_widths.size();
  for (std::size_t mask = 0; mask < (1u << k); ++mask) {
    long long s = 0;
    for (std::size_t b = 0; b < k; ++b)
      if (mask & (1u << b)) s += other_widths[b];
    if (s <= limit) sums.insert(static_cast<int>(s));
  }
  return std::vector<int>(sums.begin(), sums.end());
}

// LP oracle by vertex enumeration: tries every choice of active constraints
// (rows as equalities plus variable bounds), solves the square system, keeps
// the best feasible point. Only for tiny models.
struct VertexOpt {
  bool feasible = false;
  double obj = 0.0;
  std::vector<double> x;
  std::vector<std::vector<double>> argmins;  // all optimal vertices found
};

inline bool solve_square(std::vector<std::vector<double>> a, std::vector<double> b,
                         std::vector<double>& out) {
  int n = static_cast<int>(b.size());
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    double best = 1e-9;
    for (int r = c; r < n; ++r)
      if (std::abs(a[r][c]) > best) { best = std::abs(a[r][c]); piv = r; }
    if (piv < 0) return false;
    std::swap(a[c], a[piv]);
    std::swap(b[c], b[piv]);
    for (int r = 0; r < n; ++r) {
      if (r == c) continue;
      double f = a[r][c] / a[c][c];
      if (f == 0.0) continue;
      for (int k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  out.resize(n);
  for (int i = 0; i < n; ++i) out[i] = b[i] / a[i][i];
  return true;
}

inline VertexOpt vertex_enumerate(const LinearModel& m) {
  int n = m.n_vars();
  // candidate equalities: each row (any sense) and each finite bound
  struct Eq { std::vector<double> a; double b; };
  std::vector<Eq> eqs;
  for (const LinearRow& r : m.rows) {
    Eq e{std::vector<double>(n, 0.0), r.rhs};
    for (auto [v, c] : r.terms) e.a[v] += c;
    eqs.push_back(e);
  }
  for (int j = 0; j < n; ++j) {
    if (m.vars[j].lb != -kInf) {
      Eq e{std::vector<double>(n, 0.0), m.vars[j].lb};
      e.a[j] = 1.0;
      eqs.push_back(e);
    }
    if (m.vars[j].ub != kInf) {
      Eq e{std::vector<double>(n, 0.0), m.vars[j].ub};
      e.a[j] = 1.0;
      eqs.push_back(e);
    }
  }
  auto feasible = [&](const std::vector<double>& x) {
    for (const LinearRow& r : m.rows) {
      double a = 0.0;
      for (auto [v, c] : r.terms) a += c * x[v];
      if (r.sense == Sense::LE && a > r.rhs + 1e-6) return false;
      if (r.sense == Sense::GE && a < r.rhs - 1e-6) return false;
      if (r.sense == Sense::EQ && std::abs(a - r.rhs) > 1e-6) return false;
    }
    for (int j = 0; j < n; ++j) {
      if (m.vars[j].lb != -kInf && x[j] < m.vars[j].lb - 1e-6) return false;
      if (m.vars[j].ub != kInf && x[j] > m.vars[j].ub + 1e-6) return false;
    }
    return true;
  };

  VertexOpt best;
  int k = static_cast<int>(eqs.size());
  std::vector<int> pick(n, 0);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == n) {
      std::vector<std::vector<double>> a(n, std::vector<double>(n));
      std::vector<double> b(n), x;
      for (int i = 0; i < n; ++i) { a[i] = eqs[pick[i]].a; b[i] = eqs[pick[i]].b; }
      if (!solve_square(a, b, x)) return;
      if (!feasible(x)) return;
      double obj = 0.0;
      for (int j = 0; j < n; ++j) obj += m.vars[j].obj * x[j];
      if (!best.feasible || obj < best.obj - 1e-7) {
        best.feasible = true;
        best.obj = obj;
        best.x = x;
        best.argmins.clear();
        best.argmins.push_back(x);
      } else if (std::abs(obj - best.obj) <= 1e-7) {
        best.argmins.push_back(x);
      }
      return;
    }
    for (int i = start; i <= k - (n - depth); ++i) {
      pick[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  if (n > 0 && k >= n) rec(0, 0);
  return best;
}

// Exhaustive pure-binary IP reference: enumerates every 0/1 assignment.
struct BruteIp {
  bool feasible = false;
  double obj = 0.0;
  std::vector<double> x;
};

inline BruteIp brute_binary_ip(const LinearModel& m) {
  int n = m.n_vars();
  BruteIp best;
  for (std::size_t mask = 0; mask < (1ull << n); ++mask) {
    std::vector<double> x(n);
    bool inbounds = true;
    for (int j = 0; j < n; ++j) {
      x[j] = (mask >> j) & 1 ? 1.0 : 0.0;
      if (x[j] < m.vars[j].lb - 1e-9 || x[j] > m.vars[j].ub + 1e-9) inbounds = false;
    }
    if (!inbounds) continue;
    bool ok = true;
    for (const LinearRow& r : m.rows) {
      double a = 0.0;
      for (auto [v, c] : r.terms) a += c * x[v];
      if (r.sense == Sense::LE && a > r.rhs + 1e-9) ok = false;
      if (r.sense == Sense::GE && a < r.rhs - 1e-9) ok = false;
      if (r.sense == Sense::EQ && std::abs(a - r.rhs) > 1e-9) ok = false;
      if (!ok) break;
    }
    if (!ok) continue;
    double obj = 0.0;
    for (int j = 0; j < n; ++j) obj += m.vars[j].obj * x[j];
    if (!best.feasible || obj < best.obj) {
      best.feasible = true;
      best.obj = obj;
      best.x = x;
    }
  }
  return best;
}

// Deterministic small-instance generator shared by property tests and the
// acceptance run. Raw generator output is reduced by modulo on purpose:
// distribution objects are not portable across standard libraries.
class Rng {
 public:
  explicit Rng(unsigned seed) : g_(seed) {}
  int uniform(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(g_() % static_cast<unsigned>(hi - lo + 1));
  }

 private:
  std::mt19937 g_;
};

inline Instance random_instance(unsigned seed) {
  Rng rng(seed);
  Instance inst;
  inst.name = "rnd" + std::to_string(seed);
  int n = rng.uniform(3, 6);
  int m = rng.uniform(1, 2);
  for (int j = 0; j < n; ++j)
    inst.items.push_back({rng.uniform(1, 6), rng.uniform(1, 6)});
  int wmax = 0;
  for (const Item& it : inst.items) wmax = std::max(wmax, it.w);
  std::vector<int> widths;
  for (int i = 0; i < m; ++i) widths.push_back(rng.uniform(wmax, 12));
  std::sort(widths.begin(), widths.end());
  CostScheme scheme = static_cast<CostScheme>(seed % 3);
  for (int i = 0; i < m; ++i) {
    Strip s;
    s.W = widths[i];
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

// Random x-fixed strip configuration with the target height sampled around
// the max column load, so both verdicts show up across seeds.
inline YCheckInstance random_ycheck(unsigned seed, int max_items = 8) {
  Rng rng(seed);
  YCheckInstance yc;
  yc.W = rng.uniform(3, 14);
  int n = rng.uniform(2, max_items);
  std::vector<int> load(yc.W, 0);
  int total_h = 0;
  for (int j = 0; j < n; ++j) {
    int w = rng.uniform(1, yc.W);
    int p = rng.uniform(0, yc.W - w);
    int h = rng.uniform(1, 5);
    yc.items.push_back({j, p, w, h});
    for (int c = p; c < p + w; ++c) load[c] += h;
    total_h += h;
  }
  int lo = *std::max_element(load.begin(), load.end());
  if (rng.uniform(0, 4) == 0)
    yc.Hbar = rng.uniform(lo, total_h);
  else
    yc.Hbar = std::max(0, std::min(total_h, lo + rng.uniform(-1, 2)));
  return yc;
}

}  // namespace gmspp::testing

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "gmspp/instance.hpp"
#include "gmspp/normal_positions.hpp"
#include "gmspp/simplex.hpp"

namespace gmspp {

// Compact coordinate model. Binaries: assignment z_ij, left-of l_jk and
// below b_jk for every ordered pair. One x_ij/y_ij coordinate pair per
// feasible (item, strip). Big-M constants: M_x is the widest strip, M_y the
// total item height.
struct BigmModel {
  LinearModel model;
  std::vector<std::vector<int>> strips_of;  // feasible strips per item
  std::vector<std::vector<int>> x, y, z;    // [j][rank within strips_of[j]]
  std::vector<std::vector<int>> l, b;       // [j][k], -1 on the diagonal
  std::vector<int> H;                       // [i]
  double mx = 0.0, my = 0.0;
};

inline BigmModel build_bigm(const Instance& inst) {
  validate_instance(inst);
  BigmModel M;
  LinearModel& m = M.model;
  int n = inst.n(), ns = inst.m();

  M.strips_of.resize(n);
  for (int j = 0; j < n; ++j) M.strips_of[j] = feasible_strips(inst, j);
  double mx = 0.0, my = 0.0;
  for (const Strip& s : inst.strips) mx = std::max(mx, static_cast<double>(s.W));
  for (const Item& it : inst.items) my += it.h;
  M.mx = mx;
  M.my = my;

  M.z.assign(n, {});
  for (int j = 0; j < n; ++j)
    for (int i : M.strips_of[j])
      M.z[j].push_back(m.add_var("z_" + std::to_string(j) + "_" + std::to_string(i),
                                 0.0, 1.0, 0.0, true));
  M.l.assign(n, std::vector<int>(n, -1));
  M.b.assign(n, std::vector<int>(n, -1));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      if (j == k) continue;
      M.l[j][k] = m.add_var("l_" + std::to_string(j) + "_" + std::to_string(k),
                            0.0, 1.0, 0.0, true);
    }
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      if (j == k) continue;
      M.b[j][k] = m.add_var("b_" + std::to_string(j) + "_" + std::to_string(k),
                            0.0, 1.0, 0.0, true);
    }
  M.x.assign(n, {});
  M.y.assign(n, {});
  for (int j = 0; j < n; ++j)
    for (int i : M.strips_of[j]) {
      M.x[j].push_back(m.add_var("x_" + std::to_string(j) + "_" + std::to_string(i),
                                 0.0, kInf, 0.0));
      M.y[j].push_back(m.add_var("y_" + std::to_string(j) + "_" + std::to_string(i),
                                 0.0, kInf, 0.0));
    }
  M.H.resize(ns);
  for (int i = 0; i < ns; ++i)
    M.H[i] = m.add_var_exact("H_" + std::to_string(i), 0.0, kInf,
                             inst.strips[i].C * Rational(inst.strips[i].W));

  auto rank_of = [&](int j, int i) {
    for (std::size_t r = 0; r < M.strips_of[j].size(); ++r)
      if (M.strips_of[j][r] == i) return static_cast<int>(r);
    return -1;
  };

  // width fit and height link per feasible pair
  for (int j = 0; j < n; ++j)
    for (std::size_t r = 0; r < M.strips_of[j].size(); ++r) {
      int i = M.strips_of[j][r];
      m.add_row("fitx_" + std::to_string(j) + "_" + std::to_string(i),
                {{M.x[j][r], 1.0}}, Sense::LE,
                static_cast<double>(inst.strips[i].W - inst.items[j].w));
      // y + h <= H + h(1-z)  ==>  y - H + h z <= 0
      m.add_row("fity_" + std::to_string(j) + "_" + std::to_string(i),
                {{M.y[j][r], 1.0}, {M.H[i], -1.0},
                 {M.z[j][r], static_cast<double>(inst.items[j].h)}},
                Sense::LE, 0.0);
    }

  // pairwise separation, activated when both items share a strip
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      if (j == k) continue;
      for (int i : M.strips_of[j]) {
        int rk = rank_of(k, i);
        if (rk < 0) continue;
        int rj = rank_of(j, i);
        // x_ij + w_j <= x_ik + Mx(3 - l_jk - z_ij - z_ik)
        m.add_row("sepx_" + std::to_string(j) + "_" + std::to_string(k) + "_" +
                      std::to_string(i),
                  {{M.x[j][rj], 1.0}, {M.x[k][rk], -1.0},
                   {M.l[j][k], mx}, {M.z[j][rj], mx}, {M.z[k][rk], mx}},
                  Sense::LE, 3.0 * mx - inst.items[j].w);
        m.add_row("sepy_" + std::to_string(j) + "_" + std::to_string(k) + "_" +
                      std::to_string(i),
                  {{M.y[j][rj], 1.0}, {M.y[k][rk], -1.0},
                   {M.b[j][k], my}, {M.z[j][rj], my}, {M.z[k][rk], my}},
                  Sense::LE, 3.0 * my - inst.items[j].h);
      }
    }

  // each item goes to exactly one feasible strip
  for (int j = 0; j < n; ++j) {
    std::vector<std::pair<int, double>> terms;
    for (std::size_t r = 0; r < M.strips_of[j].size(); ++r)
      terms.emplace_back(M.z[j][r], 1.0);
    m.add_row("assign_" + std::to_string(j), terms, Sense::EQ, 1.0);
  }

  // coordinates vanish unless the item sits on that strip
  for (int j = 0; j < n; ++j)
    for (std::size_t r = 0; r < M.strips_of[j].size(); ++r) {
      int i = M.strips_of[j][r];
      m.add_row("linkx_" + std::to_string(j) + "_" + std::to_string(i),
                {{M.x[j][r], 1.0}, {M.z[j][r], -static_cast<double>(inst.strips[i].W)}},
                Sense::LE, 0.0);
      m.add_row("linky_" + std::to_string(j) + "_" + std::to_string(i),
                {{M.y[j][r], 1.0}, {M.z[j][r], -my}}, Sense::LE, 0.0);
    }

  // one relation per unordered pair: left, right, below, or above
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k)
      m.add_row("rel_" + std::to_string(j) + "_" + std::to_string(k),
                {{M.l[j][k], 1.0}, {M.l[k][j], 1.0}, {M.b[j][k], 1.0}, {M.b[k][j], 1.0}},
                Sense::EQ, 1.0);

  return M;
}

// Position-indexed master: one binary per (strip, item, normal position) and
// one continuous height per strip. Vertical packing is NOT modeled here; the
// check and its cuts arrive lazily.
struct MasterModel {
  LinearModel model;
  // x[i][j] parallel to table.at(i,j); -1-free: absent pairs have empty lists
  std::vector<std::vector<std::vector<int>>> x;
  std::vector<int> H;
};

inline MasterModel build_master(const Instance& inst, const NormalPositionTable& table) {
  validate_instance(inst);
  MasterModel M;
  LinearModel& m = M.model;
  int n = inst.n(), ns = inst.m();
  M.x.assign(ns, std::vector<std::vector<int>>(n));
  for (int i = 0; i < ns; ++i)
    for (int j = 0; j < n; ++j)
      for (int p : table.at(i, j))
        M.x[i][j].push_back(m.add_var("x_" + std::to_string(i) + "_" + std::to_string(j) +
                                          "_" + std::to_string(p),
                                      0.0, 1.0, 0.0, true));
  M.H.resize(ns);
  for (int i = 0; i < ns; ++i)
    M.H[i] = m.add_var_exact("H_" + std::to_string(i), 0.0, kInf,
                             inst.strips[i].C * Rational(inst.strips[i].W));

  for (int j = 0; j < n; ++j) {
    std::vector<std::pair<int, double>> terms;
    for (int i = 0; i < ns; ++i)
      for (int v : M.x[i][j]) terms.emplace_back(v, 1.0);
    if (terms.empty()) throw std::logic_error("item fits no strip");
    m.add_row("assign_" + std::to_string(j), terms, Sense::EQ, 1.0);
  }

  // per column: stacked height of covering items stays under H_i
  for (int i = 0; i < ns; ++i)
    for (int q = 0; q < inst.strips[i].W; ++q) {
      std::vector<std::pair<int, double>> terms;
      for (int j = 0; j < n; ++j) {
        const std::vector<int>& pos = table.at(i, j);
        int w = inst.items[j].w;
        auto lo = std::lower_bound(pos.begin(), pos.end(), q - w + 1);
        auto hi = std::upper_bound(pos.begin(), pos.end(), q);
        for (auto it = lo; it != hi; ++it)
          terms.emplace_back(M.x[i][j][it - pos.begin()],
                             static_cast<double>(inst.items[j].h));
      }
      if (terms.empty()) continue;
      terms.emplace_back(M.H[i], -1.0);
      m.add_row("col_" + std::to_string(i) + "_" + std::to_string(q), terms, Sense::LE, 0.0);
    }
  return M;
}

// LP relaxation of the master; valid lower bound on the exact optimum. The
// float optimum is snapped back to the exact rational it approximates.
inline Rational lp_pc_bound(const Instance& inst, const NormalPositionTable& table) {
  MasterModel M = build_master(inst, table);
  LpResult r = solve_lp(M.model);
  if (r.status != LpStatus::Optimal)
    throw std::runtime_error("master relaxation did not solve to optimality");
  Rational out;
  if (!snap_rational(r.obj, out, 1000000, 1e-6 * (1.0 + std::abs(r.obj))))
    throw std::runtime_error("cannot certify a rational bound value");
  return out;
}

inline double lp_bigm_bound(const Instance& inst) {
  BigmModel M = build_bigm(inst);
  LpResult r = solve_lp(M.model);
  if (r.status != LpStatus::Optimal)
    throw std::runtime_error("compact relaxation did not solve to optimality");
  return r.obj;
}

// Adds  sum_i C_i W_i H_i >= bound  to a model that owns the given height
// variables. A valid external bound tightens every node relaxation without
// cutting off any integer solution.
inline void inject_lower_bound(LinearModel& model, const Instance& inst,
                               const std::vector<int>& H_vars, const Rational& bound) {
  std::vector<std::pair<int, double>> terms;
  for (int i = 0; i < inst.m(); ++i)
    terms.emplace_back(H_vars[i], to_double(inst.strips[i].C * Rational(inst.strips[i].W)));
  model.add_row("objective_floor", terms, Sense::GE, to_double(bound));
}

}  // namespace gmspp

#pragma once

#include <chrono>
#include <cmath>
#include <functional>
#include <queue>
#include <stdexcept>
#include <vector>

#include "gmspp/simplex.hpp"

namespace gmspp {

enum class MipStatus { Optimal, Infeasible, TimeLimit, Unbounded, IterationLimit };

struct MipOptions {
  double time_limit = 900.0;  // seconds, must be positive
  double int_tol = 1e-6;
  long long node_limit = 0;  // 0: unlimited
  LpOptions lp;
};

struct MipResult {
  MipStatus status = MipStatus::TimeLimit;
  std::vector<double> x;
  double obj = kInf;
  double bound = -kInf;
  long long nodes = 0;
  double seconds = 0.0;
  int lazy_rounds = 0;  // callback invocations that produced at least one row
};

// Lazy constraints: called at every node whose LP solution is integral within
// tolerance, before the incumbent may be updated. Returned rows must each be
// violated by the candidate; they are appended globally and the node is
// re-solved.
using LazyCallback = std::function<std::vector<LinearRow>(const std::vector<double>&)>;

namespace detail {

struct NodeRec {
  int parent = -1;
  int var = -1;
  double lb = 0.0, ub = 0.0;  // the single bound change this node adds
  double bound = -kInf;       // parent LP value at creation
};

struct QEntry {
  double bound;
  long long seq;
  int rec;
  // lowest bound first, ties to the oldest node
  bool operator>(const QEntry& o) const {
    if (bound != o.bound) return bound > o.bound;
    return seq > o.seq;
  }
};

inline double row_activity(const LinearRow& r, const std::vector<double>& x) {
  double a = 0.0;
  for (auto [v, c] : r.terms) a += c * x[v];
  return a;
}

inline double row_violation(const LinearRow& r, const std::vector<double>& x) {
  double a = row_activity(r, x);
  switch (r.sense) {
    case Sense::LE: return a - r.rhs;
    case Sense::GE: return r.rhs - a;
    case Sense::EQ: return std::abs(a - r.rhs);
  }
  return 0.0;
}

}  // namespace detail

// Branch and bound over the simplex kernel. Nodes are explored best bound
// first; branching picks the most fractional integer variable, ties by
// lowest index. Identical inputs replay identical trees.
inline MipResult solve_mip(const LinearModel& model, const MipOptions& opt = {},
                           const LazyCallback& lazy = nullptr) {
  using clock = std::chrono::steady_clock;
  if (opt.time_limit <= 0.0) throw std::invalid_argument("time limit must be positive");
  auto t0 = clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(clock::now() - t0).count(); };

  MipResult res;
  std::vector<LinearRow> cuts;  // grows via the callback, shared by all nodes

  std::vector<detail::NodeRec> arena;
  std::priority_queue<detail::QEntry, std::vector<detail::QEntry>, std::greater<detail::QEntry>> open;
  arena.push_back({});  // root
  open.push({-kInf, 0, 0});
  long long seq = 1;

  std::vector<double> lb0(model.n_vars()), ub0(model.n_vars());
  for (int j = 0; j < model.n_vars(); ++j) {
    lb0[j] = model.vars[j].lb;
    ub0[j] = model.vars[j].ub;
  }
  std::vector<double> lb, ub;

  bool have_incumbent = false;
  double incumbent_obj = kInf;
  std::vector<double> incumbent;

  bool hit_limit = false;
  double limit_bound = kInf;
  while (!open.empty()) {
    if (elapsed() > opt.time_limit || (opt.node_limit > 0 && res.nodes >= opt.node_limit)) {
      hit_limit = true;
      limit_bound = open.top().bound;
      break;
    }
    detail::QEntry top = open.top();
    open.pop();
    if (have_incumbent && top.bound >= incumbent_obj - 1e-9) continue;
    ++res.nodes;

    lb = lb0;
    ub = ub0;
    for (int r = top.rec; r > 0; r = arena[r].parent) {
      const detail::NodeRec& n = arena[r];
      if (n.lb > lb[n.var]) lb[n.var] = n.lb;
      if (n.ub < ub[n.var]) ub[n.var] = n.ub;
    }

    // a node may be re-solved several times while the callback adds rows
    LpResult lp;
    while (true) {
      lp = solve_lp_view(model, cuts, lb, ub, opt.lp);
      if (lp.status == LpStatus::Infeasible) break;
      if (lp.status == LpStatus::Unbounded) {
        res.status = MipStatus::Unbounded;
        res.seconds = elapsed();
        return res;
      }
      if (lp.status == LpStatus::IterationLimit) {
        res.status = MipStatus::IterationLimit;
        res.seconds = elapsed();
        return res;
      }
      if (have_incumbent && lp.obj >= incumbent_obj - 1e-9) break;

      int branch_var = -1;
      double branch_score = -1.0;
      for (int j = 0; j < model.n_vars(); ++j) {
        if (!model.vars[j].integer) continue;
        double f = lp.x[j] - std::floor(lp.x[j]);
        double dist = std::min(f, 1.0 - f);
        if (dist <= opt.int_tol) continue;
        if (dist > branch_score + 1e-12) {
          branch_score = dist;
          branch_var = j;
        }
      }
      if (branch_var < 0) {
        // integral candidate; the callback speaks first
        if (lazy) {
          std::vector<LinearRow> extra = lazy(lp.x);
          if (!extra.empty()) {
            ++res.lazy_rounds;
            for (const LinearRow& r : extra) {
              if (detail::row_violation(r, lp.x) <= opt.int_tol)
                throw std::logic_error("lazy constraint is not violated by the candidate");
              cuts.push_back(r);
            }
            continue;  // same node, fresh LP
          }
        }
        if (lp.obj < incumbent_obj - 1e-9 || !have_incumbent) {
          incumbent_obj = lp.obj;
          incumbent = lp.x;
          have_incumbent = true;
        }
        break;
      }

      // both children inherit this LP value as their bound
      double v = lp.x[branch_var];
      arena.push_back({top.rec, branch_var, lb[branch_var], std::floor(v), lp.obj});
      open.push({lp.obj, seq++, static_cast<int>(arena.size()) - 1});
      arena.push_back({top.rec, branch_var, std::ceil(v), ub[branch_var], lp.obj});
      open.push({lp.obj, seq++, static_cast<int>(arena.size()) - 1});
      break;
    }
  }

  res.seconds = elapsed();
  if (hit_limit) {
    res.status = MipStatus::TimeLimit;
    res.bound = std::min(limit_bound, incumbent_obj);
  } else if (have_incumbent) {
    res.status = MipStatus::Optimal;
    res.bound = incumbent_obj;
  } else {
    res.status = MipStatus::Infeasible;
    res.bound = kInf;
    return res;
  }
  if (have_incumbent) {
    res.x = incumbent;
    res.obj = incumbent_obj;
  }
  return res;
}

}  // namespace gmspp

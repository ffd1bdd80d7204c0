#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "gmspp/linear_model.hpp"

namespace gmspp {

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

struct LpOptions {
  double feas_tol = 1e-7;
  double pivot_tol = 1e-9;
  double opt_tol = 1e-9;   // reduced-cost threshold
  int max_iter = 0;        // 0: derived from problem size
  int bland_after = 40;    // degenerate steps before switching to Bland's rule
  int refactor_every = 256;
};

struct LpResult {
  LpStatus status = LpStatus::IterationLimit;
  double obj = 0.0;
  std::vector<double> x;              // structural values
  std::vector<double> duals;          // one per row
  std::vector<double> reduced_costs;  // one per structural
  int iterations = 0;
};

// Bounded-variable primal simplex, revised form with a dense basis inverse.
// Phase 1 minimizes the total bound violation of basic variables (no
// artificial columns); phase 2 runs the true costs. Dantzig pricing with a
// Bland fallback once a degeneracy streak is detected.
class SimplexSolver {
 public:
  SimplexSolver(const LinearModel& model, const std::vector<LinearRow>* extra_rows,
                const std::vector<double>* lb_over, const std::vector<double>* ub_over,
                const LpOptions& opt)
      : opt_(opt) {
    nb_ = model.n_vars();
    rows_.reserve(model.n_rows() + (extra_rows ? extra_rows->size() : 0));
    for (const LinearRow& r : model.rows) rows_.push_back(&r);
    if (extra_rows)
      for (const LinearRow& r : *extra_rows) rows_.push_back(&r);
    m_ = static_cast<int>(rows_.size());
    n_ = nb_ + m_;

    lb_.resize(n_);
    ub_.resize(n_);
    cost_.assign(n_, 0.0);
    for (int j = 0; j < nb_; ++j) {
      lb_[j] = lb_over ? (*lb_over)[j] : model.vars[j].lb;
      ub_[j] = ub_over ? (*ub_over)[j] : model.vars[j].ub;
      cost_[j] = model.vars[j].obj;
    }
    for (int i = 0; i < m_; ++i) {
      int s = nb_ + i;
      switch (rows_[i]->sense) {
        case Sense::LE: lb_[s] = 0.0; ub_[s] = kInf; break;
        case Sense::GE: lb_[s] = -kInf; ub_[s] = 0.0; break;
        case Sense::EQ: lb_[s] = 0.0; ub_[s] = 0.0; break;
      }
    }
    // column-major structurals
    col_ptr_.assign(nb_ + 1, 0);
    for (int i = 0; i < m_; ++i)
      for (auto [v, c] : rows_[i]->terms)
        if (c != 0.0) ++col_ptr_[v + 1];
    for (int j = 0; j < nb_; ++j) col_ptr_[j + 1] += col_ptr_[j];
    col_row_.resize(col_ptr_[nb_]);
    col_val_.resize(col_ptr_[nb_]);
    std::vector<int> fill(col_ptr_.begin(), col_ptr_.end() - 1);
    for (int i = 0; i < m_; ++i)
      for (auto [v, c] : rows_[i]->terms)
        if (c != 0.0) {
          col_row_[fill[v]] = i;
          col_val_[fill[v]] = c;
          ++fill[v];
        }
    rhs_scale_ = 0.0;
    for (int i = 0; i < m_; ++i) rhs_scale_ = std::max(rhs_scale_, std::abs(rows_[i]->rhs));
  }

  LpResult solve() {
    init_basis();
    int budget = opt_.max_iter > 0 ? opt_.max_iter : 2000 + 30 * (m_ + n_);
    LpResult res;
    // phase 1
    if (infeasibility() > feas_threshold()) {
      LpStatus st = run(true, budget);
      if (st == LpStatus::IterationLimit) return finish(res, st);
      if (infeasibility() > feas_threshold()) return finish(res, LpStatus::Infeasible);
    }
    LpStatus st = run(false, budget);
    return finish(res, st);
  }

 private:
  enum VStat : char { kBasic, kAtLower, kAtUpper, kFree };

  double feas_threshold() const { return 1e-6 * (1.0 + rhs_scale_); }

  double var_value(int j) const {
    switch (stat_[j]) {
      case kAtLower: return lb_[j];
      case kAtUpper: return ub_[j];
      case kFree: return 0.0;
      default: return 0.0;  // basic handled via beta_
    }
  }

  void init_basis() {
    stat_.assign(n_, kAtLower);
    for (int j = 0; j < n_; ++j) {
      if (lb_[j] != -kInf)
        stat_[j] = kAtLower;
      else if (ub_[j] != kInf)
        stat_[j] = kAtUpper;
      else
        stat_[j] = kFree;
    }
    basis_.resize(m_);
    for (int i = 0; i < m_; ++i) {
      basis_[i] = nb_ + i;
      stat_[nb_ + i] = kBasic;
    }
    binv_.assign(static_cast<std::size_t>(m_) * m_, 0.0);
    for (int i = 0; i < m_; ++i) binv_[static_cast<std::size_t>(i) * m_ + i] = 1.0;
    recompute_beta();
    pivots_since_refactor_ = 0;
  }

  // beta = B^-1 (rhs - N x_N)
  void recompute_beta() {
    std::vector<double> t(m_);
    for (int i = 0; i < m_; ++i) t[i] = rows_[i]->rhs;
    for (int j = 0; j < nb_; ++j) {
      if (stat_[j] == kBasic) continue;
      double v = var_value(j);
      if (v == 0.0) continue;
      for (int k = col_ptr_[j]; k < col_ptr_[j + 1]; ++k) t[col_row_[k]] -= col_val_[k] * v;
    }
    for (int i = 0; i < m_; ++i) {
      int s = nb_ + i;
      if (stat_[s] == kBasic) continue;
      double v = var_value(s);
      if (v != 0.0) t[i] -= v;
    }
    beta_.assign(m_, 0.0);
    for (int i = 0; i < m_; ++i) {
      const double* row = &binv_[static_cast<std::size_t>(i) * m_];
      double acc = 0.0;
      for (int k = 0; k < m_; ++k) acc += row[k] * t[k];
      beta_[i] = acc;
    }
  }

  double infeasibility() const {
    double z = 0.0;
    for (int i = 0; i < m_; ++i) {
      int b = basis_[i];
      if (beta_[i] < lb_[b]) z += lb_[b] - beta_[i];
      if (beta_[i] > ub_[b]) z += beta_[i] - ub_[b];
    }
    return z;
  }

  // A_j as dense column into scratch; logical columns are unit vectors.
  void unpack_column(int j, std::vector<double>& dense) const {
    std::fill(dense.begin(), dense.end(), 0.0);
    if (j < nb_) {
      for (int k = col_ptr_[j]; k < col_ptr_[j + 1]; ++k) dense[col_row_[k]] = col_val_[k];
    } else {
      dense[j - nb_] = 1.0;
    }
  }

  void refactorize() {
    // invert the basis matrix by Gauss-Jordan with partial pivoting
    std::vector<double> B(static_cast<std::size_t>(m_) * m_, 0.0);
    std::vector<double> colbuf(m_);
    for (int c = 0; c < m_; ++c) {
      unpack_column(basis_[c], colbuf);
      for (int r = 0; r < m_; ++r) B[static_cast<std::size_t>(r) * m_ + c] = colbuf[r];
    }
    std::vector<double>& inv = binv_;
    inv.assign(static_cast<std::size_t>(m_) * m_, 0.0);
    for (int i = 0; i < m_; ++i) inv[static_cast<std::size_t>(i) * m_ + i] = 1.0;
    for (int c = 0; c < m_; ++c) {
      int piv = -1;
      double best = 0.0;
      for (int r = c; r < m_; ++r) {
        double v = std::abs(B[static_cast<std::size_t>(r) * m_ + c]);
        if (v > best) { best = v; piv = r; }
      }
      if (piv < 0 || best < 1e-12) throw std::runtime_error("singular basis during refactorization");
      if (piv != c) {
        for (int k = 0; k < m_; ++k) {
          std::swap(B[static_cast<std::size_t>(piv) * m_ + k], B[static_cast<std::size_t>(c) * m_ + k]);
          std::swap(inv[static_cast<std::size_t>(piv) * m_ + k], inv[static_cast<std::size_t>(c) * m_ + k]);
        }
      }
      double d = 1.0 / B[static_cast<std::size_t>(c) * m_ + c];
      for (int k = 0; k < m_; ++k) {
        B[static_cast<std::size_t>(c) * m_ + k] *= d;
        inv[static_cast<std::size_t>(c) * m_ + k] *= d;
      }
      for (int r = 0; r < m_; ++r) {
        if (r == c) continue;
        double f = B[static_cast<std::size_t>(r) * m_ + c];
        if (f == 0.0) continue;
        for (int k = 0; k < m_; ++k) {
          B[static_cast<std::size_t>(r) * m_ + k] -= f * B[static_cast<std::size_t>(c) * m_ + k];
          inv[static_cast<std::size_t>(r) * m_ + k] -= f * inv[static_cast<std::size_t>(c) * m_ + k];
        }
      }
    }
    pivots_since_refactor_ = 0;
    recompute_beta();
  }

  // phase-1 costs live on infeasible basics only
  void basic_costs(bool phase1, std::vector<double>& cb) const {
    cb.assign(m_, 0.0);
    for (int i = 0; i < m_; ++i) {
      int b = basis_[i];
      if (phase1) {
        if (beta_[i] < lb_[b] - opt_.feas_tol)
          cb[i] = -1.0;
        else if (beta_[i] > ub_[b] + opt_.feas_tol)
          cb[i] = 1.0;
      } else {
        cb[i] = cost_[b];
      }
    }
  }

  LpStatus run(bool phase1, int& budget) {
    std::vector<double> cb, y(m_), alpha(m_);
    int degen_streak = 0;
    double last_obj = phase1 ? infeasibility() : current_obj();
    while (budget-- > 0) {
      ++iters_;
      if (phase1 && infeasibility() <= feas_threshold()) return LpStatus::Optimal;
      bool bland = degen_streak > opt_.bland_after;

      basic_costs(phase1, cb);
      std::fill(y.begin(), y.end(), 0.0);  // y = cb^T B^-1, accumulated row-wise
      for (int k = 0; k < m_; ++k) {
        if (cb[k] == 0.0) continue;
        const double* row = &binv_[static_cast<std::size_t>(k) * m_];
        double f = cb[k];
        for (int i = 0; i < m_; ++i) y[i] += f * row[i];
      }

      int enter = -1;
      double best_viol = opt_.opt_tol;
      int dir = 0;
      for (int j = 0; j < n_; ++j) {
        if (stat_[j] == kBasic) continue;
        if (lb_[j] == ub_[j]) continue;  // fixed, never enters
        double d;
        if (j < nb_) {
          double dot = 0.0;
          for (int k = col_ptr_[j]; k < col_ptr_[j + 1]; ++k) dot += y[col_row_[k]] * col_val_[k];
          d = (phase1 ? 0.0 : cost_[j]) - dot;
        } else {
          d = (phase1 ? 0.0 : 0.0) - y[j - nb_];
        }
        double viol = 0.0;
        int this_dir = 0;
        if (stat_[j] == kAtLower && d < -opt_.opt_tol) { viol = -d; this_dir = +1; }
        else if (stat_[j] == kAtUpper && d > opt_.opt_tol) { viol = d; this_dir = -1; }
        else if (stat_[j] == kFree && std::abs(d) > opt_.opt_tol) { viol = std::abs(d); this_dir = d < 0 ? +1 : -1; }
        if (this_dir == 0) continue;
        if (bland) { enter = j; dir = this_dir; break; }
        if (viol > best_viol) { best_viol = viol; enter = j; dir = this_dir; }
      }
      if (enter < 0) return LpStatus::Optimal;

      // alpha = B^-1 A_enter
      std::fill(alpha.begin(), alpha.end(), 0.0);
      if (enter < nb_) {
        for (int k = col_ptr_[enter]; k < col_ptr_[enter + 1]; ++k) {
          double f = col_val_[k];
          int r = col_row_[k];
          for (int i = 0; i < m_; ++i) alpha[i] += f * binv_[static_cast<std::size_t>(i) * m_ + r];
        }
      } else {
        int r = enter - nb_;
        for (int i = 0; i < m_; ++i) alpha[i] = binv_[static_cast<std::size_t>(i) * m_ + r];
      }

      // ratio test
      double span = (lb_[enter] != -kInf && ub_[enter] != kInf) ? ub_[enter] - lb_[enter] : kInf;
      double t_best = span;
      int leave = -1;      // -1: bound flip
      int leave_bound = 0; // -1 lower, +1 upper
      double leave_piv = 0.0;
      for (int k = 0; k < m_; ++k) {
        double r = -dir * alpha[k];
        if (std::abs(r) <= opt_.pivot_tol) continue;
        int b = basis_[k];
        double v = beta_[k], lo = lb_[b], hi = ub_[b];
        double target;
        int which;
        if (r > 0) {
          if (v < lo - opt_.feas_tol) { target = lo; which = -1; }
          else if (v > hi + opt_.feas_tol) continue;
          else if (hi == kInf) continue;
          else { target = hi; which = +1; }
        } else {
          if (v > hi + opt_.feas_tol) { target = hi; which = +1; }
          else if (v < lo - opt_.feas_tol) continue;
          else if (lo == -kInf) continue;
          else { target = lo; which = -1; }
        }
        double tk = (target - v) / r;
        if (tk < 0.0) tk = 0.0;
        bool take = false;
        if (tk < t_best - 1e-12) {
          take = true;
        } else if (tk < t_best + 1e-12) {
          if (leave < 0)
            take = true;  // prefer a pivot over a bound flip on ties
          else if (bland ? b < basis_[leave] : std::abs(alpha[k]) > std::abs(leave_piv))
            take = true;
        }
        if (take) {
          if (tk < t_best) t_best = tk;
          leave = k;
          leave_bound = which;
          leave_piv = alpha[k];
        }
      }
      if (t_best == kInf) {
        if (phase1) throw std::runtime_error("phase-1 direction unbounded");
        return LpStatus::Unbounded;
      }

      if (t_best <= 1e-10) ++degen_streak; else degen_streak = 0;

      if (leave < 0) {
        // entering flips to its opposite bound
        for (int k = 0; k < m_; ++k) beta_[k] -= dir * t_best * alpha[k];
        stat_[enter] = dir > 0 ? kAtUpper : kAtLower;
      } else {
        double enter_start = var_value(enter);
        for (int k = 0; k < m_; ++k) beta_[k] -= dir * t_best * alpha[k];
        int lv = basis_[leave];
        stat_[lv] = leave_bound < 0 ? kAtLower : kAtUpper;
        basis_[leave] = enter;
        stat_[enter] = kBasic;
        beta_[leave] = enter_start + dir * t_best;
        // eta update of B^-1
        double piv = alpha[leave];
        double* prow = &binv_[static_cast<std::size_t>(leave) * m_];
        double inv_piv = 1.0 / piv;
        for (int k = 0; k < m_; ++k) prow[k] *= inv_piv;
        for (int i = 0; i < m_; ++i) {
          if (i == leave) continue;
          double f = alpha[i];
          if (f == 0.0) continue;
          double* row = &binv_[static_cast<std::size_t>(i) * m_];
          for (int k = 0; k < m_; ++k) row[k] -= f * prow[k];
        }
        if (++pivots_since_refactor_ >= opt_.refactor_every) refactorize();
      }

      double obj_now = phase1 ? infeasibility() : current_obj();
      if (obj_now < last_obj - 1e-12) degen_streak = 0;
      last_obj = obj_now;
    }
    return LpStatus::IterationLimit;
  }

  double current_obj() const {
    double z = 0.0;
    for (int j = 0; j < nb_; ++j) {
      if (cost_[j] == 0.0) continue;
      z += cost_[j] * (stat_[j] == kBasic ? 0.0 : var_value(j));
    }
    for (int i = 0; i < m_; ++i)
      if (basis_[i] < nb_) z += cost_[basis_[i]] * beta_[i];
    return z;
  }

  LpResult finish(LpResult& res, LpStatus st) {
    res.status = st;
    res.iterations = iters_;
    if (st != LpStatus::Optimal) return res;
    res.x.assign(nb_, 0.0);
    for (int j = 0; j < nb_; ++j)
      if (stat_[j] != kBasic) res.x[j] = var_value(j);
    for (int i = 0; i < m_; ++i)
      if (basis_[i] < nb_) res.x[basis_[i]] = beta_[i];
    for (int j = 0; j < nb_; ++j) {
      if (lb_[j] != -kInf && res.x[j] < lb_[j]) res.x[j] = lb_[j];
      if (ub_[j] != kInf && res.x[j] > ub_[j]) res.x[j] = ub_[j];
    }
    res.obj = 0.0;
    for (int j = 0; j < nb_; ++j) res.obj += cost_[j] * res.x[j];
    // duals and reduced costs from the final basis
    std::vector<double> cb;
    basic_costs(false, cb);
    res.duals.assign(m_, 0.0);
    for (int k = 0; k < m_; ++k) {
      if (cb[k] == 0.0) continue;
      const double* row = &binv_[static_cast<std::size_t>(k) * m_];
      for (int i = 0; i < m_; ++i) res.duals[i] += cb[k] * row[i];
    }
    res.reduced_costs.assign(nb_, 0.0);
    for (int j = 0; j < nb_; ++j) {
      double dot = 0.0;
      for (int k = col_ptr_[j]; k < col_ptr_[j + 1]; ++k) dot += res.duals[col_row_[k]] * col_val_[k];
      res.reduced_costs[j] = cost_[j] - dot;
    }
    return res;
  }

  LpOptions opt_;
  int nb_ = 0, m_ = 0, n_ = 0;
  std::vector<const LinearRow*> rows_;
  std::vector<double> lb_, ub_, cost_;
  std::vector<int> col_ptr_, col_row_;
  std::vector<double> col_val_;

  std::vector<int> basis_;
  std::vector<char> stat_;
  std::vector<double> binv_, beta_;
  double rhs_scale_ = 0.0;
  int pivots_since_refactor_ = 0;
  int iters_ = 0;
};

// Solves the continuous relaxation; integrality flags are ignored by design.
inline LpResult solve_lp(const LinearModel& model, const LpOptions& opt = {}) {
  SimplexSolver s(model, nullptr, nullptr, nullptr, opt);
  return s.solve();
}

inline LpResult solve_lp_view(const LinearModel& model, const std::vector<LinearRow>& extra,
                              const std::vector<double>& lb, const std::vector<double>& ub,
                              const LpOptions& opt = {}) {
  SimplexSolver s(model, &extra, &lb, &ub, opt);
  return s.solve();
}

}  // namespace gmspp

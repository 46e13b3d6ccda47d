#pragma once

#include <limits>
#include <vector>

#include "rcp/errors.hpp"
#include "rcp/scalar.hpp"

namespace rcp {

enum class LpStatus { Optimal, Infeasible, Unbounded };

template <class S>
struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Vec<S> x;
  S objective = S(0);
};

// Dense two-phase primal simplex over the active scalar backend, with
// Bland's rule. Free variables are split into positive parts. Sized for
// the conic feasibility problems in this library (around ten variables
// and constraints); with rational arithmetic the answers are exact.
template <class S>
class DenseLp {
 public:
  explicit DenseLp(int num_vars) : nv_(num_vars) {}

  void add_le(const Vec<S>& a, const S& b) { rows_.push_back({a, b, false}); }
  void add_eq(const Vec<S>& a, const S& b) { rows_.push_back({a, b, true}); }

  int num_rows() const { return static_cast<int>(rows_.size()); }

  LpResult<S> minimize(const Vec<S>& cost) const {
    const int m = num_rows();
    int num_le = 0;
    for (const auto& r : rows_)
      if (!r.eq) ++num_le;
    // columns: x+ | x- | slacks | artificials | rhs
    const int c_slack = 2 * nv_;
    const int c_art = c_slack + num_le;
    const int total = c_art + m;
    Mat<S> t = Mat<S>::Zero(m, total + 1);
    int slack = 0;
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < nv_; ++j) {
        t(i, j) = rows_[i].a(j);
        t(i, nv_ + j) = -rows_[i].a(j);
      }
      if (!rows_[i].eq) t(i, c_slack + slack++) = S(1);
      t(i, total) = rows_[i].b;
      // row scaling keeps the float backend's pivot tolerance meaningful
      S rowmax = t.row(i).head(total).cwiseAbs().maxCoeff();
      if (rowmax > S(0)) t.row(i) /= rowmax;
      if (t(i, total) < S(0)) t.row(i) = -t.row(i);
      t(i, c_art + i) = S(1);
    }

    const S eps = ScalarTraits<S>::exact ? S(0) : S(1e-11);
    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) basis[i] = c_art + i;

    // Phase 1: minimize the sum of artificials.
    Vec<S> d = Vec<S>::Zero(total);
    S obj = S(0);
    for (int i = 0; i < m; ++i) {
      d.head(c_art) -= t.row(i).head(c_art).transpose();
      obj -= t(i, total);
    }
    if (!run(t, d, obj, basis, c_art, eps)) throw LpNumericalFailure("phase 1 stalled");
    if (-obj > (ScalarTraits<S>::exact ? S(0) : S(1e-9))) return {LpStatus::Infeasible, Vec<S>(), S(0)};

    // Pivot remaining artificials out of the basis (or drop redundant rows).
    std::vector<int> live;
    for (int i = 0; i < m; ++i) {
      if (basis[i] < c_art) {
        live.push_back(i);
        continue;
      }
      int enter = -1;
      for (int j = 0; j < c_art && enter < 0; ++j)
        if (abs_val(t(i, j)) > eps) enter = j;
      if (enter >= 0) {
        pivot(t, i, enter);
        basis[i] = enter;
        live.push_back(i);
      }
      // else: redundant row, silently dropped below
    }
    if (static_cast<int>(live.size()) != m) {
      Mat<S> t2(static_cast<int>(live.size()), t.cols());
      std::vector<int> basis2;
      for (std::size_t k = 0; k < live.size(); ++k) {
        t2.row(static_cast<Eigen::Index>(k)) = t.row(live[k]);
        basis2.push_back(basis[live[k]]);
      }
      t = std::move(t2);
      basis = std::move(basis2);
    }

    // Phase 2: the real objective over non-artificial columns.
    d = Vec<S>::Zero(total);
    d.head(nv_) = cost;
    d.segment(nv_, nv_) = -cost;
    obj = S(0);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (d(basis[i]) != S(0)) {
        obj -= d(basis[i]) * t(static_cast<Eigen::Index>(i), total);
        d -= d(basis[i]) * t.row(static_cast<Eigen::Index>(i)).head(total).transpose();
      }
    }
    if (!run(t, d, obj, basis, c_art, eps)) throw LpNumericalFailure("phase 2 stalled");
    for (int j = 0; j < c_art; ++j) {
      if (d(j) < -eps) {
        // entering column with no positive pivot entry was detected in run()
        return {LpStatus::Unbounded, Vec<S>(), S(0)};
      }
    }

    Vec<S> full = Vec<S>::Zero(total);
    for (std::size_t i = 0; i < basis.size(); ++i)
      full(basis[i]) = t(static_cast<Eigen::Index>(i), total);
    LpResult<S> result;
    result.status = LpStatus::Optimal;
    result.x = full.head(nv_) - full.segment(nv_, nv_);
    result.objective = cost.dot(result.x);
    return result;
  }

 private:
  struct Row {
    Vec<S> a;
    S b;
    bool eq;
  };

  static S abs_val(const S& x) { return x < S(0) ? S(-x) : x; }

  static void pivot(Mat<S>& t, int row, int col) {
    t.row(row) /= t(row, col);
    for (Eigen::Index i = 0; i < t.rows(); ++i) {
      if (i == row || t(i, col) == S(0)) continue;
      t.row(i) -= t(i, col) * t.row(row);
    }
  }

  // Bland-rule simplex loop on the current tableau; columns >= col_limit
  // (the artificials) never enter. Returns false on iteration blowup,
  // which only the float backend can reach.
  static bool run(Mat<S>& t, Vec<S>& d, S& obj, std::vector<int>& basis, int col_limit, const S& eps) {
    const int max_iter = 20000;
    const Eigen::Index total = d.size();
    for (int iter = 0; iter < max_iter; ++iter) {
      int enter = -1;
      for (Eigen::Index j = 0; j < std::min<Eigen::Index>(total, col_limit); ++j) {
        if (d(j) < -eps) {
          enter = static_cast<int>(j);
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      S best_ratio = S(0);
      for (Eigen::Index i = 0; i < t.rows(); ++i) {
        if (t(i, enter) <= eps) continue;
        S ratio = t(i, total) / t(i, enter);
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
          leave = static_cast<int>(i);
          best_ratio = ratio;
        }
      }
      if (leave < 0) {
        // unbounded in this column: signal by leaving d(enter) negative
        return true;
      }
      S delta = d(enter) * best_ratio;
      pivot(t, leave, enter);
      obj -= delta;
      d -= d(enter) * t.row(leave).head(total).transpose();
      basis[static_cast<std::size_t>(leave)] = enter;
    }
    return false;
  }

  int nv_;
  std::vector<Row> rows_;
};

}  // namespace rcp

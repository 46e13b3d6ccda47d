#pragma once

#include <optional>

#include "rcp/linalg.hpp"
#include "rcp/scalar.hpp"
#include "rcp/system.hpp"

namespace rcp {

// Affine selector f : G -> Im(B) stored by its vertex values, extended
// barycentrically: f(sum w_i o_i) = sum w_i f(o_i). For quadrilaterals the
// four values are affinely consistent, so the extension is well defined.
// A global matrix form is attached when G has dim+1 vertices (where it is
// canonical on the affine hull, zero on the orthogonal complement).
template <class S>
struct AffineLaw {
  Mat<S> values;  // r x n rows, aligned with RestrictionPolytope::vertices
  std::optional<Mat<S>> F;
  std::optional<Vec<S>> g;

  Vec<S> at_weights(const Vec<S>& weights) const {
    return values.transpose() * weights;
  }
};

// Input-space form u(x) = K x + k of a selector, with the per-vertex inputs
// it interpolates.
template <class S>
struct InputLaw {
  Mat<S> vertex_inputs;  // r x m rows
  Mat<S> K;              // m x n
  Vec<S> k;              // m
};

namespace detail {

// Affine map through given vertex values: picks an independent subset of
// vertex differences, is exact on the affine hull and zero orthogonal to
// it. vals is r x q (q output dims), pts is r x n.
template <class S>
std::pair<Mat<S>, Vec<S>> affine_through(const Mat<S>& pts, const Mat<S>& vals,
                                         const Tolerances<S>& tol) {
  const int r = static_cast<int>(pts.rows());
  const int n = static_cast<int>(pts.cols());
  const int q = static_cast<int>(vals.cols());
  Mat<S> diffs(n, r - 1), vdiffs(q, r - 1);
  for (int i = 1; i < r; ++i) {
    diffs.col(i - 1) = (pts.row(i) - pts.row(0)).transpose();
    vdiffs.col(i - 1) = (vals.row(i) - vals.row(0)).transpose();
  }
  auto piv = pivot_columns<S>(diffs, tol.rank);
  Mat<S> d_sel(n, static_cast<Eigen::Index>(piv.size())), v_sel(q, static_cast<Eigen::Index>(piv.size()));
  for (std::size_t i = 0; i < piv.size(); ++i) {
    d_sel.col(static_cast<Eigen::Index>(i)) = diffs.col(piv[i]);
    v_sel.col(static_cast<Eigen::Index>(i)) = vdiffs.col(piv[i]);
  }
  Mat<S> gram = d_sel.transpose() * d_sel;
  Mat<S> K = v_sel * lu_of<S>(gram, tol.rank).solve(Mat<S>(d_sel.transpose()));
  Vec<S> k = vals.row(0).transpose() - K * pts.row(0).transpose();
  return {std::move(K), std::move(k)};
}

}  // namespace detail

}  // namespace rcp

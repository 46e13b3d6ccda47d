#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "rcp/errors.hpp"
#include "rcp/scalar.hpp"

namespace rcp {

template <class S>
S inf_norm(const Mat<S>& m) {
  if (m.size() == 0) return S(0);
  return m.cwiseAbs().maxCoeff();
}

template <class S>
Eigen::FullPivLU<Mat<S>> lu_of(const Mat<S>& m, const S& rank_tol) {
  Eigen::FullPivLU<Mat<S>> lu(m);
  lu.setThreshold(rank_tol);
  return lu;
}

template <class S>
int rank_of(const Mat<S>& m, const S& rank_tol) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return static_cast<int>(lu_of<S>(m, rank_tol).rank());
}

// Basis (as columns) of the nullspace of m. Rows may be zero.
template <class S>
Mat<S> kernel_of(const Mat<S>& m, const S& rank_tol) {
  if (m.rows() == 0) return Mat<S>::Identity(m.cols(), m.cols());
  auto lu = lu_of<S>(m, rank_tol);
  if (lu.rank() == m.cols()) return Mat<S>(m.cols(), 0);
  return lu.kernel();
}

// Indices of a maximal set of linearly independent columns, ascending.
template <class S>
std::vector<int> pivot_columns(const Mat<S>& m, const S& rank_tol) {
  if (m.rows() == 0 || m.cols() == 0) return {};
  auto lu = lu_of<S>(m, rank_tol);
  const auto& q = lu.permutationQ().indices();
  std::vector<int> cols(lu.rank());
  for (int i = 0; i < static_cast<int>(lu.rank()); ++i) cols[i] = q(i);
  std::sort(cols.begin(), cols.end());
  return cols;
}

// A solution of A x = b when the system is consistent, nullopt otherwise.
// Consistency is decided by residual (exactly in the exact backend).
template <class S>
std::optional<Vec<S>> solve_consistent(const Mat<S>& A, const Vec<S>& b, const Tolerances<S>& tol) {
  if (A.rows() == 0) return Vec<S>::Zero(A.cols());
  auto lu = lu_of<S>(A, tol.rank);
  Vec<S> x = lu.solve(b);
  Vec<S> residual = A * x - b;
  S scale = std::max<S>(S(1), std::max<S>(inf_norm<S>(A) * inf_norm<S>(x), inf_norm<S>(b)));
  if (inf_norm<S>(residual) > tol.solve * scale) return std::nullopt;
  return x;
}

// Least-norm u with B u = c; the system must be consistent (c in Im B).
template <class S>
Vec<S> least_norm_solution(const Mat<S>& B, const Vec<S>& c, const Tolerances<S>& tol) {
  Mat<S> gram = B * B.transpose();
  auto y = solve_consistent<S>(gram, c, tol);
  if (!y) throw ResidualTooLarge("target vector is not in the image of B");
  Vec<S> u = B.transpose() * (*y);
  Vec<S> residual = B * u - c;
  S scale = std::max<S>(S(1), inf_norm<S>(c));
  if (inf_norm<S>(residual) > tol.solve * scale)
    throw ResidualTooLarge("least-norm solve residual exceeds tolerance");
  return u;
}

}  // namespace rcp

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "rcp/errors.hpp"
#include "rcp/geometry.hpp"
#include "rcp/linalg.hpp"
#include "rcp/lp.hpp"

namespace rcp {

// A nonzero element of cone /\ span(basis), scale-fixed to unit inf-norm.
template <class S>
struct ConeWitness {
  Vec<S> b;                 // the witness vector, ||b||_inf = 1
  Vec<S> coords;            // coordinates in the supplied basis, b = basis * coords
  std::vector<int> active;  // constraint indices with h_j . b = 0 (within feas slack)
};

// Evidence that the search came up empty: every per-constraint descent LP
// bottomed out at (numerically) zero, and the lineality part of the cone
// meets the subspace trivially. Reproducible by grid search.
template <class S>
struct ConeSearchCertificate {
  std::vector<std::pair<int, S>> stage1_optima;
  int lineality_dim = 0;
};

namespace detail {

template <class S>
Mat<S> pullback_constraints(const HalfspaceCone<S>& cone, const Mat<S>& basis) {
  Mat<S> g(cone.normals.rows(), basis.cols());
  for (Eigen::Index r = 0; r < cone.normals.rows(); ++r)
    g.row(r) = cone.normals.row(r) * basis;
  return g;
}

template <class S>
void normalize_inf(Vec<S>& v) {
  S norm = inf_norm<S>(v);
  if (norm > S(0)) v /= norm;
}

}  // namespace detail

// Decides cone /\ span(basis) != {0} and returns a witness when one exists.
// Stage 1 runs one descent LP per constraint: minimize h_j . (basis u) over
// the box -1 <= u <= 1 subject to the cone constraints; a strictly negative
// optimum certifies a nontrivial element. If every optimum is zero, any
// nontrivial element must make all constraints tight, so stage 2 falls back
// to the lineality space basis /\ (/\ ker h_j) and returns any nonzero
// element of it. The two stages together are complete for polyhedral cones.
template <class S>
std::optional<ConeWitness<S>> nontrivial_cone_subspace_element(
    const HalfspaceCone<S>& cone, const Mat<S>& basis, const Tolerances<S>& tol,
    ConeSearchCertificate<S>* certificate = nullptr) {
  const int d = static_cast<int>(basis.cols());
  if (certificate) *certificate = {};
  if (d == 0) return std::nullopt;

  Mat<S> g = detail::pullback_constraints<S>(cone, basis);

  auto finish = [&](Vec<S> u) -> ConeWitness<S> {
    Vec<S> b = basis * u;
    S norm = inf_norm<S>(b);
    if (norm > S(0)) {
      b /= norm;
      u /= norm;
    }
    ConeWitness<S> w{std::move(b), std::move(u), {}};
    for (Eigen::Index r = 0; r < g.rows(); ++r) {
      S margin = cone.normals.row(r).dot(w.b);
      S scale = std::max<S>(S(1), inf_norm<S>(Mat<S>(cone.normals.row(r))));
      if (margin > tol.feas * scale)
        throw LpNumericalFailure("witness failed independent re-verification");
      if (margin >= -tol.feas * scale) w.active.push_back(cone.constraints[static_cast<std::size_t>(r)]);
    }
    return w;
  };

  // Stage 1
  std::vector<std::pair<int, S>> optima;
  for (Eigen::Index j = 0; j < g.rows(); ++j) {
    DenseLp<S> lp(d);
    for (Eigen::Index i = 0; i < g.rows(); ++i) lp.add_le(g.row(i).transpose(), S(0));
    for (int k = 0; k < d; ++k) {
      Vec<S> e = Vec<S>::Zero(d);
      e(k) = S(1);
      lp.add_le(e, S(1));
      lp.add_le(Vec<S>(-e), S(1));
    }
    auto res = lp.minimize(g.row(j).transpose());
    if (res.status != LpStatus::Optimal)
      throw LpNumericalFailure("cone descent LP must be feasible and bounded");
    S scale = std::max<S>(S(1), inf_norm<S>(Mat<S>(g.row(j))));
    if (res.objective < -tol.feas * scale) return finish(res.x);
    optima.emplace_back(cone.constraints[static_cast<std::size_t>(j)], res.objective);
  }

  // Stage 2: lineality part
  Mat<S> lineality = kernel_of<S>(g, tol.rank);
  if (lineality.cols() > 0) return finish(lineality.col(0));

  if (certificate) {
    certificate->stage1_optima = std::move(optima);
    certificate->lineality_dim = 0;
  }
  return std::nullopt;
}

// true iff 0 is in the convex hull of the given points (rows), decided by
// LP feasibility over the hull weights.
template <class S>
bool zero_in_hull(const Mat<S>& points, const Tolerances<S>& tol) {
  (void)tol;
  const int r = static_cast<int>(points.rows());
  if (r == 0) throw PreconditionViolated("zero_in_hull needs at least one point");
  DenseLp<S> lp(r);
  for (int i = 0; i < r; ++i) {
    Vec<S> e = Vec<S>::Zero(r);
    e(i) = S(-1);
    lp.add_le(e, S(0));  // lambda_i >= 0
  }
  lp.add_eq(Vec<S>::Ones(r), S(1));
  for (Eigen::Index c = 0; c < points.cols(); ++c) lp.add_eq(points.col(c), S(0));
  auto res = lp.minimize(Vec<S>::Zero(r));
  return res.status == LpStatus::Optimal;
}

namespace detail {

// One or two vectors of span(basis) /\ cone, per the rank cases of the
// independent-pair argument for n = 3, dim B = 2. Two vectors are returned
// whenever the cone meets the subspace in a two-dimensional set; otherwise
// the single spanning direction of the tight edge is returned.
template <class S>
std::vector<Vec<S>> cone_plane_vectors(const HalfspaceCone<S>& cone, const Mat<S>& basis,
                                       const Mat<S>& annihilator, const Tolerances<S>& tol) {
  const int n = static_cast<int>(basis.rows());
  std::vector<Vec<S>> out;
  if (cone.constraints.size() <= 1) {
    // half space or all of R^3: both basis vectors fit after a sign flip
    for (int c = 0; c < 2; ++c) {
      Vec<S> b = basis.col(c);
      if (!cone.constraints.empty() && cone.normals.row(0).dot(b) > S(0)) b = -b;
      detail::normalize_inf<S>(b);
      out.push_back(std::move(b));
    }
    return out;
  }
  if (cone.constraints.size() != 2)
    throw AssumptionViolated("vertex cone with " + std::to_string(cone.constraints.size()) +
                             " constraints outside the independent-pair regime");
  Mat<S> h_pair = cone.normals;
  Mat<S> stacked(2 + annihilator.rows(), n);
  stacked.topRows(2) = h_pair;
  stacked.bottomRows(annihilator.rows()) = annihilator;
  if (rank_of<S>(stacked, tol.rank) == 3) {
    // solve for preimages of (-1,0,0) and (0,-1,0): tight on one normal,
    // strictly inside the other, and annihilated by M
    auto lu = lu_of<S>(stacked, tol.rank);
    for (int k = 0; k < 2; ++k) {
      Vec<S> rhs = Vec<S>::Zero(3);
      rhs(k) = S(-1);
      Vec<S> y = lu.solve(rhs);
      detail::normalize_inf<S>(y);
      out.push_back(std::move(y));
    }
    return out;
  }
  // rank 2: the annihilator row is a combination of the two normals, so the
  // edge direction with both normals tight already lies in the subspace
  Mat<S> edge_kernel = kernel_of<S>(h_pair, tol.rank);
  if (edge_kernel.cols() != 1)
    throw InternalInvariantBroken("two facet normals of a simplex must be independent");
  Vec<S> y = edge_kernel.col(0);
  // deterministic sign: first nonzero coordinate positive
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    if (y(i) != S(0)) {
      if (y(i) < S(0)) y = -y;
      break;
    }
  }
  S residual = inf_norm<S>(Mat<S>(annihilator * y));
  if (residual > tol.solve * std::max<S>(S(1), inf_norm<S>(y)))
    throw InternalInvariantBroken("edge direction escaped the input subspace in the rank-2 case");
  detail::normalize_inf<S>(y);
  out.push_back(std::move(y));
  return out;
}

template <class S>
bool independent_in_basis(const Vec<S>& b1, const Vec<S>& b2, const Mat<S>& basis,
                          const Tolerances<S>& tol) {
  Mat<S> gram = basis.transpose() * basis;
  auto lu = lu_of<S>(gram, tol.rank);
  Vec<S> u1 = lu.solve(basis.transpose() * b1);
  Vec<S> u2 = lu.solve(basis.transpose() * b2);
  detail::normalize_inf<S>(u1);
  detail::normalize_inf<S>(u2);
  S det = u1(0) * u2(1) - u1(1) * u2(0);
  return (det < S(0) ? S(-det) : det) > tol.indep;
}

}  // namespace detail

// Linearly independent b1 in span(basis) /\ cone1, b2 in span(basis) /\ cone2
// for n = 3, dim B = 2 vertex cones. Existence is guaranteed for vertex
// pairs of a restriction polytope not containing v0; the impossible
// fallthrough surfaces as InternalInvariantBroken rather than a guess.
template <class S>
std::pair<Vec<S>, Vec<S>> independent_cone_vectors(const HalfspaceCone<S>& cone1,
                                                   const HalfspaceCone<S>& cone2,
                                                   const Mat<S>& basis, const Mat<S>& annihilator,
                                                   const Tolerances<S>& tol) {
  if (basis.cols() != 2 || basis.rows() != 3)
    throw AssumptionViolated("independent cone vectors require n = 3 and dim B = 2");
  auto r1 = detail::cone_plane_vectors<S>(cone1, basis, annihilator, tol);
  auto r2 = detail::cone_plane_vectors<S>(cone2, basis, annihilator, tol);
  auto indep = [&](const Vec<S>& x, const Vec<S>& y) {
    return detail::independent_in_basis<S>(x, y, basis, tol);
  };
  if (r1.size() == 2) {
    // at least one of the two pairs is independent
    if (indep(r1[0], r2[0])) return {r1[0], r2[0]};
    return {r1[1], r2[0]};
  }
  if (r2.size() == 2) {
    if (indep(r1[0], r2[0])) return {r1[0], r2[0]};
    return {r1[0], r2[1]};
  }
  // doubly degenerate: both cones pinned to edge directions through v0,
  // which are distinct edges for legal inputs
  if (indep(r1[0], r2[0])) return {r1[0], r2[0]};
  throw InternalInvariantBroken("degenerate cone pair produced dependent edge directions");
}

}  // namespace rcp

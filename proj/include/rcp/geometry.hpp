#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "rcp/errors.hpp"
#include "rcp/linalg.hpp"
#include "rcp/scalar.hpp"

namespace rcp {

// Minimal vertex index set I(x): x lies in the relative interior of
// conv{v_i : i in indices}.
struct IndexSet {
  std::vector<int> indices;  // sorted
  // Some barycentric coordinate fell in (0, 10*tau_bary]; the activity
  // decision for it is tolerance-driven rather than clear-cut.
  bool near_degenerate = false;

  bool contains(int i) const {
    return std::binary_search(indices.begin(), indices.end(), i);
  }
};

// H-representation cone {y : h_j . y <= 0, j in constraints}. An empty
// constraint set is all of R^n. Facet 0 never appears: directions through
// the exit facet are always admitted.
template <class S>
struct HalfspaceCone {
  std::vector<int> constraints;  // sorted subset of {1..n}
  Mat<S> normals;                // one row per constraint, same order

  bool contains(const Vec<S>& y, const S& slack) const {
    for (Eigen::Index r = 0; r < normals.rows(); ++r)
      if (normals.row(r).dot(y) > slack) return false;
    return true;
  }
};

// c1 is contained in c2 iff every constraint of c2 is a constraint of c1.
// Pure index comparison; no feasibility machinery involved.
template <class S>
bool cone_includes(const HalfspaceCone<S>& c1, const HalfspaceCone<S>& c2) {
  return std::includes(c1.constraints.begin(), c1.constraints.end(),
                       c2.constraints.begin(), c2.constraints.end());
}

// An n-simplex with vertex 0 opposite the exit facet. Facet j is the facet
// not containing vertex j; its outward normal h_j is the (unnormalized)
// negative gradient of the j-th barycentric coordinate, so it is exact for
// rational inputs and deterministic in the vertex order.
template <class S>
class Simplex {
 public:
  static Simplex from_vertices(Mat<S> vertices, const Tolerances<S>& tol) {
    const int n = static_cast<int>(vertices.cols());
    if (vertices.rows() != n + 1 || n < 1)
      throw DegenerateSimplex("expected n+1 vertices of dimension n");
    Mat<S> edges(n, n);
    for (int i = 0; i < n; ++i)
      edges.col(i) = (vertices.row(i + 1) - vertices.row(0)).transpose();
    auto lu = lu_of<S>(edges, tol.rank);
    if (static_cast<int>(lu.rank()) != n)
      throw DegenerateSimplex("vertices are affinely dependent");
    Simplex s;
    s.n_ = n;
    s.verts_ = std::move(vertices);
    s.einv_ = lu.inverse();
    s.normals_.resize(n + 1, n);
    s.normals_.row(0) = s.einv_.colwise().sum();
    for (int j = 1; j <= n; ++j) s.normals_.row(j) = -s.einv_.row(j - 1);
    s.diam_ = S(0);
    for (int i = 0; i <= n; ++i)
      for (int k = i + 1; k <= n; ++k)
        s.diam_ = std::max<S>(s.diam_, inf_norm<S>(Mat<S>(s.verts_.row(i) - s.verts_.row(k))));
    return s;
  }

  int dim() const { return n_; }
  const Mat<S>& vertices() const { return verts_; }
  const Mat<S>& normals() const { return normals_; }
  Vec<S> vertex(int i) const { return verts_.row(i).transpose(); }
  Vec<S> normal(int j) const { return normals_.row(j).transpose(); }
  const S& diameter() const { return diam_; }

  // Coefficients alpha_0..alpha_n with sum 1 and sum alpha_i v_i = x.
  // x may lie outside the simplex.
  Vec<S> barycentric(const Vec<S>& x) const {
    Vec<S> rest = einv_ * (x - vertex(0));
    Vec<S> alpha(n_ + 1);
    alpha(0) = S(1) - rest.sum();
    alpha.tail(n_) = rest;
    return alpha;
  }

  IndexSet active_indices(const Vec<S>& x, const Tolerances<S>& tol) const {
    Vec<S> alpha = barycentric(x);
    IndexSet set;
    for (int i = 0; i <= n_; ++i) {
      if (alpha(i) < -tol.bary)
        throw PointOutsideSimplex("barycentric coordinate " + std::to_string(i) +
                                  " is negative beyond tolerance");
      if (alpha(i) > tol.bary)
        set.indices.push_back(i);
      if (alpha(i) > S(0) && alpha(i) <= S(10) * tol.bary) set.near_degenerate = true;
    }
    return set;
  }

  HalfspaceCone<S> cone_from_constraints(std::vector<int> constraints) const {
    HalfspaceCone<S> cone;
    std::sort(constraints.begin(), constraints.end());
    cone.constraints = std::move(constraints);
    cone.normals.resize(static_cast<Eigen::Index>(cone.constraints.size()), n_);
    for (std::size_t r = 0; r < cone.constraints.size(); ++r)
      cone.normals.row(static_cast<Eigen::Index>(r)) = normals_.row(cone.constraints[r]);
    return cone;
  }

  // Inside-pointing cone C(x): all facet constraints except those active
  // at x; exit-facet directions (index 0) are never constrained.
  HalfspaceCone<S> tangent_cone(const Vec<S>& x, const Tolerances<S>& tol) const {
    IndexSet active = active_indices(x, tol);
    std::vector<int> J;
    for (int j = 1; j <= n_; ++j)
      if (!active.contains(j)) J.push_back(j);
    return cone_from_constraints(std::move(J));
  }

  // cone of a polytope given by vertices (rows): the intersection of the
  // vertex cones, i.e. the union of their constraint sets.
  HalfspaceCone<S> polytope_cone(const Mat<S>& points, const Tolerances<S>& tol) const {
    std::vector<int> J;
    for (Eigen::Index r = 0; r < points.rows(); ++r) {
      auto cone = tangent_cone(points.row(r).transpose(), tol);
      for (int j : cone.constraints)
        if (std::find(J.begin(), J.end(), j) == J.end()) J.push_back(j);
    }
    return cone_from_constraints(std::move(J));
  }

 private:
  int n_ = 0;
  Mat<S> verts_;    // (n+1) x n
  Mat<S> normals_;  // (n+1) x n
  Mat<S> einv_;     // n x n, rows are barycentric gradients of alpha_1..alpha_n
  S diam_ = S(0);   // inf-norm diameter, the scale for relative tolerances
};

template <class S>
std::vector<Vec<S>> rows_as_vectors(const Mat<S>& m) {
  std::vector<Vec<S>> out;
  out.reserve(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(m.row(r).transpose());
  return out;
}

}  // namespace rcp

#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "rcp/errors.hpp"
#include "rcp/geometry.hpp"
#include "rcp/linalg.hpp"

namespace rcp {

// Affine control system x' = A x + B u + a together with the derived input
// subspace data: a basis of Im(B) (pivot columns of B) and a left
// annihilator M whose rows span Im(B)^perp, so y in Im(B) iff M y = 0.
template <class S>
struct ControlSystem {
  Mat<S> A;
  Mat<S> B;
  Vec<S> a;
  Mat<S> input_basis;           // n x d
  std::vector<int> basis_cols;  // columns of B picked as the basis
  Mat<S> annihilator;           // (n - d) x n

  int dim() const { return static_cast<int>(A.rows()); }
  int input_dim() const { return static_cast<int>(input_basis.cols()); }

  static ControlSystem make(Mat<S> A, Mat<S> B, Vec<S> a, const Tolerances<S>& tol) {
    const int n = static_cast<int>(A.rows());
    if (A.cols() != n || B.rows() != n || a.size() != n)
      throw PreconditionViolated("system matrices have inconsistent shapes");
    ControlSystem sys;
    sys.basis_cols = pivot_columns<S>(B, tol.rank);
    sys.input_basis.resize(n, static_cast<Eigen::Index>(sys.basis_cols.size()));
    for (std::size_t i = 0; i < sys.basis_cols.size(); ++i)
      sys.input_basis.col(static_cast<Eigen::Index>(i)) = B.col(sys.basis_cols[i]);
    sys.annihilator = kernel_of<S>(Mat<S>(B.transpose()), tol.rank).transpose();
    sys.A = std::move(A);
    sys.B = std::move(B);
    sys.a = std::move(a);
    return sys;
  }

  bool in_image(const Vec<S>& y, const Tolerances<S>& tol) const {
    if (annihilator.rows() == 0) return true;
    S scale = std::max<S>(S(1), inf_norm<S>(y)) * std::max<S>(S(1), inf_norm<S>(annihilator));
    return inf_norm<S>(Mat<S>(annihilator * y)) <= tol.solve * scale;
  }

  // Some u with B u = target (least-norm); throws ResidualTooLarge when the
  // target is outside Im(B).
  Vec<S> input_for(const Vec<S>& target, const Tolerances<S>& tol) const {
    return least_norm_solution<S>(B, target, tol);
  }
};

template <class S>
struct AffineSubspace {
  Vec<S> point;      // a particular solution
  Mat<S> directions; // n x k basis of the direction space
  int dim() const { return static_cast<int>(directions.cols()); }
};

// The set O = {x : A x + a in Im(B)} of possible closed-loop equilibria,
// i.e. the solutions of M A x = -M a. Returns nullopt when that system is
// inconsistent (no equilibria anywhere, a vacuous instance).
template <class S>
std::optional<AffineSubspace<S>> equilibrium_subspace(const ControlSystem<S>& sys,
                                                      const Tolerances<S>& tol) {
  const int n = sys.dim();
  Mat<S> ma = sys.annihilator * sys.A;
  Vec<S> rhs = -(sys.annihilator * sys.a);
  if (ma.rows() == 0) return AffineSubspace<S>{Vec<S>::Zero(n), Mat<S>::Identity(n, n)};
  auto p0 = solve_consistent<S>(ma, rhs, tol);
  if (!p0) return std::nullopt;
  return AffineSubspace<S>{std::move(*p0), kernel_of<S>(ma, tol.rank)};
}

enum class Shape { Point, Segment, Triangle, Quadrilateral, FullSimplex };

inline const char* shape_name(Shape s) {
  switch (s) {
    case Shape::Point: return "point";
    case Shape::Segment: return "segment";
    case Shape::Triangle: return "triangle";
    case Shape::Quadrilateral: return "quadrilateral";
    case Shape::FullSimplex: return "full-simplex";
  }
  return "?";
}

// G = O /\ S with its vertex list, intrinsic dimension and per-vertex
// minimal index sets. Vertices are in convex-position cyclic order when
// the dimension is 2.
template <class S>
struct RestrictionPolytope {
  Mat<S> vertices;  // r x n rows
  int dim = 0;
  Shape shape = Shape::Point;
  std::vector<IndexSet> active_sets;

  int count() const { return static_cast<int>(vertices.rows()); }
  Vec<S> vertex(int i) const { return vertices.row(i).transpose(); }
};

namespace detail {

// Convex-position cyclic order of coplanar points: 2D coordinates in the
// plane of the points, then an exact angular sort about the centroid.
template <class S>
std::vector<int> cyclic_order(const Mat<S>& pts, const Tolerances<S>& tol) {
  const int r = static_cast<int>(pts.rows());
  Mat<S> diffs(r - 1, pts.cols());
  for (int i = 1; i < r; ++i) diffs.row(i - 1) = pts.row(i) - pts.row(0);
  auto piv = pivot_columns<S>(Mat<S>(diffs.transpose()), tol.rank);
  if (piv.size() != 2) throw InternalInvariantBroken("cyclic order needs planar points");
  Mat<S> basis(pts.cols(), 2);
  basis.col(0) = diffs.row(piv[0]).transpose();
  basis.col(1) = diffs.row(piv[1]).transpose();
  Mat<S> gram = basis.transpose() * basis;
  auto lu = lu_of<S>(gram, tol.rank);
  std::vector<std::array<S, 2>> uv(static_cast<std::size_t>(r));
  S cu = S(0), cv = S(0);
  for (int i = 0; i < r; ++i) {
    Vec<S> q = lu.solve(basis.transpose() * (pts.row(i) - pts.row(0)).transpose());
    uv[static_cast<std::size_t>(i)] = {q(0), q(1)};
    cu += q(0);
    cv += q(1);
  }
  cu /= S(r);
  cv /= S(r);
  std::vector<int> order(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) order[static_cast<std::size_t>(i)] = i;
  auto half = [&](int i) {  // 0: angle in [0, pi), 1: [pi, 2 pi)
    S du = uv[static_cast<std::size_t>(i)][0] - cu;
    S dv = uv[static_cast<std::size_t>(i)][1] - cv;
    return (dv < S(0) || (dv == S(0) && du < S(0))) ? 1 : 0;
  };
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    if (half(i) != half(j)) return half(i) < half(j);
    S diu = uv[static_cast<std::size_t>(i)][0] - cu, div = uv[static_cast<std::size_t>(i)][1] - cv;
    S dju = uv[static_cast<std::size_t>(j)][0] - cu, djv = uv[static_cast<std::size_t>(j)][1] - cv;
    S cross = diu * djv - div * dju;
    if (cross != S(0)) return cross > S(0);
    return i < j;
  });
  return order;
}

}  // namespace detail

// Vertex enumeration of G = O /\ S by exhaustive face enumeration: for
// every face F of S, solve the equilibrium equations restricted to aff(F)
// and keep isolated solutions that land inside F. Every vertex of G lies in
// the relative interior of exactly one face and is pinned uniquely there,
// so this finds them all; 2^(n+1)-1 faces is trivial for n <= 3.
// Returns nullopt when the intersection is empty.
template <class S>
std::optional<RestrictionPolytope<S>> restriction_polytope(const ControlSystem<S>& sys,
                                                           const Simplex<S>& simplex,
                                                           const Tolerances<S>& tol) {
  const int n = simplex.dim();
  Mat<S> ma = sys.annihilator * sys.A;
  Vec<S> rhs = -(sys.annihilator * sys.a);
  const Eigen::Index mrows = ma.rows();

  std::vector<Vec<S>> found;
  S merge_tol = tol.geo * std::max<S>(S(1), simplex.diameter());
  for (unsigned mask = 1; mask < (1u << (n + 1)); ++mask) {
    std::vector<int> face;
    for (int i = 0; i <= n; ++i)
      if (mask & (1u << i)) face.push_back(i);
    const int k = static_cast<int>(face.size());
    Mat<S> sys_mat(1 + mrows, k);
    Vec<S> sys_rhs(1 + mrows);
    sys_mat.row(0).setOnes();
    sys_rhs(0) = S(1);
    for (int c = 0; c < k; ++c)
      sys_mat.col(c).tail(mrows) = ma * simplex.vertex(face[static_cast<std::size_t>(c)]);
    sys_rhs.tail(mrows) = rhs;
    auto lu = lu_of<S>(sys_mat, tol.rank);
    if (static_cast<int>(lu.rank()) != k) continue;  // not isolated on this face
    Vec<S> lambda = lu.solve(sys_rhs);
    if (inf_norm<S>(Vec<S>(sys_mat * lambda - sys_rhs)) >
        tol.solve * std::max<S>(S(1), inf_norm<S>(sys_rhs)))
      continue;  // inconsistent on this face
    bool inside = true;
    for (int c = 0; c < k && inside; ++c)
      if (lambda(c) < -tol.bary) inside = false;
    if (!inside) continue;
    Vec<S> x = Vec<S>::Zero(n);
    for (int c = 0; c < k; ++c) x += lambda(c) * simplex.vertex(face[static_cast<std::size_t>(c)]);
    bool duplicate = false;
    for (const auto& y : found)
      if (inf_norm<S>(Vec<S>(x - y)) <= merge_tol) duplicate = true;
    if (!duplicate) found.push_back(std::move(x));
  }
  if (found.empty()) return std::nullopt;

  RestrictionPolytope<S> g;
  const int r = static_cast<int>(found.size());
  g.vertices.resize(r, n);
  for (int i = 0; i < r; ++i) g.vertices.row(i) = found[static_cast<std::size_t>(i)].transpose();
  if (r == 1) {
    g.dim = 0;
    g.shape = Shape::Point;
  } else {
    Mat<S> diffs(r - 1, n);
    for (int i = 1; i < r; ++i) diffs.row(i - 1) = g.vertices.row(i) - g.vertices.row(0);
    g.dim = rank_of<S>(diffs, tol.rank);
    if (g.dim == n) {
      if (r != n + 1) throw InternalInvariantBroken("full-dimensional G must be S itself");
      g.shape = Shape::FullSimplex;
    } else if (g.dim == 1) {
      if (r != 2) throw InternalInvariantBroken("one-dimensional G with more than two vertices");
      g.shape = Shape::Segment;
    } else if (g.dim == 2) {
      if (r == 3) {
        g.shape = Shape::Triangle;
      } else if (r == 4) {
        g.shape = Shape::Quadrilateral;
        auto order = detail::cyclic_order<S>(g.vertices, tol);
        Mat<S> sorted(r, n);
        for (int i = 0; i < r; ++i) sorted.row(i) = g.vertices.row(order[static_cast<std::size_t>(i)]);
        g.vertices = std::move(sorted);
      } else {
        // a plane section of a 3-simplex is a triangle or a quadrilateral
        throw InternalInvariantBroken("plane section produced " + std::to_string(r) + " vertices");
      }
    } else {
      throw InternalInvariantBroken("unexpected polytope dimension");
    }
  }
  g.active_sets.reserve(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) g.active_sets.push_back(simplex.active_indices(g.vertex(i), tol));
  return g;
}

enum class CaseTag {
  Dim0,
  V0InG,
  DimN,
  N2D1B1,
  N3D1B1,
  N3D1B2,
  N3D2B1,
  N3D2B2SymTri,
  N3D2B2EdgeTri,
  N3D2B2VertexTri,
  N3D2B2Quad,
  Unsupported,
};

inline const char* case_name(CaseTag t) {
  switch (t) {
    case CaseTag::Dim0: return "DIM0";
    case CaseTag::V0InG: return "V0_IN_G";
    case CaseTag::DimN: return "DIMN";
    case CaseTag::N2D1B1: return "N2_D1B1";
    case CaseTag::N3D1B1: return "N3_D1B1";
    case CaseTag::N3D1B2: return "N3_D1B2";
    case CaseTag::N3D2B1: return "N3_D2B1";
    case CaseTag::N3D2B2SymTri: return "N3_D2B2_SYM_TRI";
    case CaseTag::N3D2B2EdgeTri: return "N3_D2B2_EDGE_TRI";
    case CaseTag::N3D2B2VertexTri: return "N3_D2B2_VERTEX_TRI";
    case CaseTag::N3D2B2Quad: return "N3_D2B2_QUAD";
    case CaseTag::Unsupported: return "UNSUPPORTED";
  }
  return "?";
}

inline std::optional<CaseTag> case_from_name(const std::string& name) {
  for (CaseTag t : {CaseTag::Dim0, CaseTag::V0InG, CaseTag::DimN, CaseTag::N2D1B1,
                    CaseTag::N3D1B1, CaseTag::N3D1B2, CaseTag::N3D2B1, CaseTag::N3D2B2SymTri,
                    CaseTag::N3D2B2EdgeTri, CaseTag::N3D2B2VertexTri, CaseTag::N3D2B2Quad,
                    CaseTag::Unsupported})
    if (name == case_name(t)) return t;
  return std::nullopt;
}

// Case label plus the relabeling that realizes the canonical configuration:
// vertex_relabel maps canonical simplex index -> original index (fixing 0),
// polytope_order maps canonical polytope position -> row of G.vertices.
struct CaseLabel {
  CaseTag tag = CaseTag::Unsupported;
  std::vector<int> vertex_relabel;
  std::vector<int> polytope_order;
  bool ambiguous = false;
  std::vector<CaseTag> also_fits;
};

namespace detail {

inline std::vector<int> identity_perm(int n) {
  std::vector<int> p(static_cast<std::size_t>(n + 1));
  for (int i = 0; i <= n; ++i) p[static_cast<std::size_t>(i)] = i;
  return p;
}

inline std::vector<int> iota_order(int r) {
  std::vector<int> o(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) o[static_cast<std::size_t>(i)] = i;
  return o;
}

// I(o) restricted to {1..n} has at most one element besides k, and o != v0.
inline bool on_edge_through(const IndexSet& is, int k, int* partner) {
  std::vector<int> rest;
  for (int i : is.indices)
    if (i != k) rest.push_back(i);
  if (rest.size() > 1) return false;
  *partner = rest.empty() ? -1 : rest[0];
  return true;
}

template <class S>
std::optional<CaseLabel> match_sym_tri(const RestrictionPolytope<S>& g, int n) {
  // each vertex on a half-open edge (v0, v_a], distinct a's
  CaseLabel label;
  label.tag = CaseTag::N3D2B2SymTri;
  label.vertex_relabel = identity_perm(n);
  label.polytope_order.assign(3, -1);
  std::vector<bool> used(static_cast<std::size_t>(n + 1), false);
  for (int i = 0; i < 3; ++i) {
    int partner = -1;
    if (!on_edge_through(g.active_sets[static_cast<std::size_t>(i)], 0, &partner)) return std::nullopt;
    if (partner <= 0 || used[static_cast<std::size_t>(partner)]) return std::nullopt;
    used[static_cast<std::size_t>(partner)] = true;
    label.polytope_order[static_cast<std::size_t>(partner - 1)] = i;
  }
  return label;
}

template <class S>
std::optional<CaseLabel> match_edge_tri(const RestrictionPolytope<S>& g, int n) {
  // all vertices strictly interior to edges incident to a common vertex
  // v_k, k != 0. Endpoint hits are excluded: those configurations have no
  // vertex whose cone realizes cone(G), so the iff argument below would
  // not apply (they classify as the symmetric or vertex triangle instead).
  for (int k = 1; k <= n; ++k) {
    std::vector<int> partners(3, -2);
    bool ok = true;
    for (int i = 0; i < 3 && ok; ++i) {
      const auto& is = g.active_sets[static_cast<std::size_t>(i)];
      ok = is.indices.size() == 2 && is.contains(k) &&
           on_edge_through(is, k, &partners[static_cast<std::size_t>(i)]);
    }
    if (!ok) continue;
    std::vector<int> sorted = partners;
    std::sort(sorted.begin(), sorted.end());
    if (sorted[0] != 0 || sorted[1] == sorted[2] || sorted[1] == k || sorted[2] == k ||
        sorted[1] <= 0)
      continue;
    CaseLabel label;
    label.tag = CaseTag::N3D2B2EdgeTri;
    label.vertex_relabel = identity_perm(n);
    label.vertex_relabel[1] = k;
    label.vertex_relabel[2] = sorted[1];
    label.vertex_relabel[3] = sorted[2];
    label.polytope_order.assign(3, -1);
    for (int i = 0; i < 3; ++i) {
      int p = partners[static_cast<std::size_t>(i)];
      int pos = (p == 0) ? 1 : (p == sorted[1] ? 0 : 2);
      label.polytope_order[static_cast<std::size_t>(pos)] = i;
    }
    return label;
  }
  return std::nullopt;
}

template <class S>
std::optional<CaseLabel> match_vertex_tri(const RestrictionPolytope<S>& g, int n) {
  // exactly one vertex of G is a simplex vertex v_j (j != 0); the others
  // sit on the two cut edges (v0, v_s) and (v_s, v_t) of the facet F_j
  int hit = -1, j = -1;
  for (int i = 0; i < 3; ++i) {
    if (g.active_sets[static_cast<std::size_t>(i)].indices.size() == 1) {
      if (hit >= 0) return std::nullopt;
      hit = i;
      j = g.active_sets[static_cast<std::size_t>(i)].indices[0];
    }
  }
  if (hit < 0 || j == 0) return std::nullopt;
  int zero_edge = -1, other_edge = -1;
  for (int i = 0; i < 3; ++i) {
    if (i == hit) continue;
    const auto& is = g.active_sets[static_cast<std::size_t>(i)].indices;
    if (is.size() != 2 || std::find(is.begin(), is.end(), j) != is.end()) return std::nullopt;
    if (is[0] == 0)
      zero_edge = i;
    else
      other_edge = i;
  }
  if (zero_edge < 0 || other_edge < 0) return std::nullopt;
  int s = g.active_sets[static_cast<std::size_t>(zero_edge)].indices[1];
  const auto& oi = g.active_sets[static_cast<std::size_t>(other_edge)].indices;
  if (std::find(oi.begin(), oi.end(), s) == oi.end()) return std::nullopt;
  int t = oi[0] == s ? oi[1] : oi[0];
  CaseLabel label;
  label.tag = CaseTag::N3D2B2VertexTri;
  label.vertex_relabel = identity_perm(n);
  label.vertex_relabel[1] = j;
  label.vertex_relabel[2] = s;
  label.vertex_relabel[3] = t;
  label.polytope_order = {hit, zero_edge, other_edge};
  return label;
}

template <class S>
std::optional<CaseLabel> match_quad(const RestrictionPolytope<S>& g, int n) {
  // index pattern {0,q}, {0,r}, {p,q}, {p,r}: the section plane separates
  // {v0, v_p} from {v_q, v_r}
  std::vector<int> zero_side, far_side;
  for (int i = 0; i < 4; ++i) {
    const auto& is = g.active_sets[static_cast<std::size_t>(i)].indices;
    if (is.size() != 2) return std::nullopt;
    if (is[0] == 0)
      zero_side.push_back(i);
    else
      far_side.push_back(i);
  }
  if (zero_side.size() != 2 || far_side.size() != 2) return std::nullopt;
  int p = -1;
  {
    const auto& f0 = g.active_sets[static_cast<std::size_t>(far_side[0])].indices;
    const auto& f1 = g.active_sets[static_cast<std::size_t>(far_side[1])].indices;
    for (int x : f0)
      if (std::find(f1.begin(), f1.end(), x) != f1.end()) p = x;
  }
  if (p <= 0) return std::nullopt;
  auto partner_of = [&](int i, int excl) {
    const auto& is = g.active_sets[static_cast<std::size_t>(i)].indices;
    return is[0] == excl ? is[1] : is[0];
  };
  int q1 = partner_of(zero_side[0], 0), q2 = partner_of(zero_side[1], 0);
  int f1 = partner_of(far_side[0], p), f2 = partner_of(far_side[1], p);
  if (q1 == q2 || std::min(q1, q2) != std::min(f1, f2) || std::max(q1, q2) != std::max(f1, f2))
    return std::nullopt;
  int q = std::min(q1, q2), r = std::max(q1, q2);
  CaseLabel label;
  label.tag = CaseTag::N3D2B2Quad;
  label.vertex_relabel = identity_perm(n);
  label.vertex_relabel[1] = p;
  label.vertex_relabel[2] = q;
  label.vertex_relabel[3] = r;
  label.polytope_order = {
      q1 == q ? zero_side[0] : zero_side[1], q1 == q ? zero_side[1] : zero_side[0],
      f1 == q ? far_side[0] : far_side[1], f1 == q ? far_side[1] : far_side[0]};
  return label;
}

}  // namespace detail

// Places the instance in the taxonomy and returns the index relabeling that
// realizes the canonical configuration. Precedence: the v0 and extreme
// dimension cases dominate the shape cases; among the triangle predicates
// the symmetric one wins, then edge, then vertex (deterministic order, with
// an ambiguity flag whenever several fit).
template <class S>
CaseLabel classify(const RestrictionPolytope<S>& g, const Simplex<S>& simplex, int input_dim,
                   const Tolerances<S>& tol) {
  (void)tol;
  const int n = simplex.dim();
  const int r = g.count();
  CaseLabel label;
  label.vertex_relabel = detail::identity_perm(n);
  label.polytope_order = detail::iota_order(r);
  if (n > 3 || n < 2) {
    label.tag = CaseTag::Unsupported;
    return label;
  }
  if (g.dim == 0) {
    label.tag = CaseTag::Dim0;
    return label;
  }
  if (g.dim == n) {
    // G = S; subsumes the v0 case and shares its verdict criterion
    label.tag = CaseTag::DimN;
    return label;
  }
  for (int i = 0; i < r; ++i) {
    if (g.active_sets[static_cast<std::size_t>(i)].indices == std::vector<int>{0}) {
      label.tag = CaseTag::V0InG;
      return label;
    }
  }
  if (input_dim == 0)
    throw AssumptionViolated("dim B = 0 with intermediate-dimensional G is outside the taxonomy");
  if (n == 2) {
    label.tag = CaseTag::N2D1B1;
    return label;
  }
  if (g.dim == 1) {
    label.tag = input_dim == 1 ? CaseTag::N3D1B1 : CaseTag::N3D1B2;
    return label;
  }
  // n = 3, dim G = 2
  if (input_dim == 1) {
    label.tag = CaseTag::N3D2B1;
    return label;
  }
  if (g.shape == Shape::Quadrilateral) {
    auto quad = detail::match_quad<S>(g, n);
    if (!quad) throw InternalInvariantBroken("quadrilateral with unexpected edge pattern");
    return *quad;
  }
  auto sym = detail::match_sym_tri<S>(g, n);
  auto edge = detail::match_edge_tri<S>(g, n);
  auto vert = detail::match_vertex_tri<S>(g, n);
  std::vector<CaseLabel> fits;
  if (sym) fits.push_back(*sym);
  if (edge) fits.push_back(*edge);
  if (vert) fits.push_back(*vert);
  if (fits.empty())
    throw InternalInvariantBroken("triangle section matched no triangle predicate");
  CaseLabel chosen = fits.front();
  if (fits.size() > 1) {
    chosen.ambiguous = true;
    for (std::size_t i = 1; i < fits.size(); ++i) chosen.also_fits.push_back(fits[i].tag);
  }
  return chosen;
}

}  // namespace rcp

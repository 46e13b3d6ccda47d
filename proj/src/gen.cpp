#include "rcp/gen.hpp"

#include <string>
#include <vector>

#include "rcp/errors.hpp"
#include "rcp/rng.hpp"

namespace rcp {

namespace {

using R = Rational;

const Tolerances<R> kExact = Tolerances<R>::defaults();

Mat<R> random_int_matrix(Rng& rng, int rows, int cols, long lo = -3, long hi = 3) {
  Mat<R> m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = R(rng.int_in(lo, hi));
  return m;
}

Mat<R> random_fullrank(Rng& rng, int rows, int cols) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    Mat<R> m = random_int_matrix(rng, rows, cols);
    if (rank_of<R>(m, R(0)) == std::min(rows, cols)) return m;
  }
  throw Error("random full-rank matrix generation stalled");
}

Mat<R> random_simplex_vertices(Rng& rng, int n) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    Mat<R> verts = random_int_matrix(rng, n + 1, n, -4, 4);
    Mat<R> edges(n, n);
    for (int i = 0; i < n; ++i) edges.col(i) = (verts.row(i + 1) - verts.row(0)).transpose();
    if (rank_of<R>(edges, R(0)) == n) return verts;
  }
  throw Error("random simplex generation stalled");
}

Vec<R> edge_point(const Simplex<R>& s, int i, int j, const R& t) {
  return s.vertex(i) + t * (s.vertex(j) - s.vertex(i));
}

Vec<R> centroid(const Simplex<R>& s) {
  Vec<R> c = Vec<R>::Zero(s.dim());
  for (int i = 0; i <= s.dim(); ++i) c += s.vertex(i);
  return c / R(s.dim() + 1);
}

// w with h_j . w = -1 for all j in rows (strictly inside the cone they cut
// out); rows are padded with random directions to a square solve.
Vec<R> strictly_inside(Rng& rng, const Simplex<R>& s, const std::vector<int>& rows) {
  const int n = s.dim();
  for (int attempt = 0; attempt < 64; ++attempt) {
    Mat<R> m(n, n);
    Vec<R> rhs(n);
    int filled = 0;
    for (int j : rows) {
      if (filled >= n) break;
      m.row(filled) = s.normals().row(j);
      rhs(filled) = R(-1);
      ++filled;
    }
    for (; filled < n; ++filled) {
      m.row(filled) = random_int_matrix(rng, 1, n);
      rhs(filled) = rng.rat_in(-1, 1);
    }
    if (rank_of<R>(m, R(0)) < n) continue;
    return lu_of<R>(m, R(0)).solve(rhs);
  }
  throw Error("interior cone vector generation stalled");
}

// w with h_p . w = 1 and h_q . w = -1: neither w nor -w satisfies both
// facet inequalities.
Vec<R> two_sign_vector(Rng& rng, const Simplex<R>& s, int p, int q) {
  const int n = s.dim();
  for (int attempt = 0; attempt < 64; ++attempt) {
    Mat<R> m(n, n);
    Vec<R> rhs(n);
    m.row(0) = s.normals().row(p);
    rhs(0) = R(1);
    m.row(1) = s.normals().row(q);
    rhs(1) = R(-1);
    for (int r = 2; r < n; ++r) {
      m.row(r) = random_int_matrix(rng, 1, n);
      rhs(r) = rng.rat_in(-1, 1);
    }
    if (rank_of<R>(m, R(0)) < n) continue;
    return lu_of<R>(m, R(0)).solve(rhs);
  }
  throw Error("two-sign vector generation stalled");
}

// rank-d basis (n x d) whose span contains w. For d = 1 the span is w
// itself; for d = 2 the plane is cut out by a random annihilator of w.
Mat<R> basis_containing(Rng& rng, const Vec<R>& w, int d) {
  const int n = static_cast<int>(w.size());
  if (d == 1) {
    Mat<R> q(n, 1);
    q.col(0) = w;
    return q;
  }
  if (d == n) return Mat<R>::Identity(n, n);
  Mat<R> wt(1, n);
  wt.row(0) = w.transpose();
  Mat<R> kernel = kernel_of<R>(wt, R(0));  // n x (n-1)
  for (int attempt = 0; attempt < 64; ++attempt) {
    Vec<R> combo = random_int_matrix(rng, static_cast<int>(kernel.cols()), 1);
    Vec<R> m = kernel * combo;
    if (inf_norm<R>(m) == R(0)) continue;
    Mat<R> mt(1, n);
    mt.row(0) = m.transpose();
    Mat<R> q = kernel_of<R>(mt, R(0));
    if (static_cast<int>(q.cols()) != d) continue;
    return q;
  }
  throw Error("basis generation stalled");
}

// d = 2 basis meeting the cone cut out by rows only at the origin: the
// annihilator is a strictly positive combination of the negated normals,
// which is interior to the polar cone whenever the normals are independent.
Mat<R> basis_avoiding(Rng& rng, const Simplex<R>& s, const std::vector<int>& rows) {
  const int n = s.dim();
  Vec<R> m = Vec<R>::Zero(n);
  for (int j : rows) m -= R(rng.int_in(1, 4)) * s.normal(j).eval();
  Mat<R> mt(1, n);
  mt.row(0) = m.transpose();
  return kernel_of<R>(mt, R(0));
}

struct SystemParts {
  Mat<R> A, B;
  Vec<R> a;
};

// Builds (A, B, a) with Im(B) = span(basis) and equilibrium set exactly
// p0 + span(directions). Requires cols(directions) >= cols(basis).
SystemParts make_system(Rng& rng, const Vec<R>& p0, const Mat<R>& directions, const Mat<R>& basis) {
  const int n = static_cast<int>(p0.size());
  const int d = static_cast<int>(basis.cols());
  const int k = static_cast<int>(directions.cols());
  if (k < d) throw Error("equilibrium set dimension must be >= input subspace dimension");
  SystemParts parts;
  Mat<R> mix = random_fullrank(rng, d, d);
  parts.B = basis * mix;
  if (rng.coin()) {
    // occasionally widen B with a dependent column for variety
    Vec<R> extra = basis * random_int_matrix(rng, d, 1);
    Mat<R> wide(n, d + 1);
    wide.leftCols(d) = parts.B;
    wide.col(d) = extra;
    parts.B = std::move(wide);
  }
  Mat<R> annihilator = kernel_of<R>(Mat<R>(basis.transpose()), R(0)).transpose();  // (n-d) x n
  if (annihilator.rows() == 0) {
    parts.A = random_int_matrix(rng, n, n);
    parts.a = random_int_matrix(rng, n, 1);
    return parts;
  }
  Mat<R> dir_perp = kernel_of<R>(Mat<R>(directions.transpose()), R(0)).transpose();  // (n-k) x n
  Mat<R> target;  // (n-d) x n with kernel exactly span(directions)
  if (dir_perp.rows() == 0) {
    target = Mat<R>::Zero(annihilator.rows(), n);
  } else {
    Mat<R> mixer = random_fullrank(rng, static_cast<int>(annihilator.rows()),
                                   static_cast<int>(dir_perp.rows()));
    target = mixer * dir_perp;
  }
  // A = pinv(M) * target + basis * Z  solves M A = target
  Mat<R> gram = annihilator * annihilator.transpose();
  Mat<R> pinv = annihilator.transpose() * lu_of<R>(gram, R(0)).inverse();
  parts.A = pinv * target + basis * random_int_matrix(rng, d, n);
  parts.a = pinv * (-(target * p0)) + basis * random_int_matrix(rng, d, 1);
  return parts;
}

struct Candidate {
  Mat<R> vertices;
  SystemParts parts;
};

bool pick_meeting(Rng& rng, BasisFlavor flavor) {
  if (flavor == BasisFlavor::ConeMeeting) return true;
  if (flavor == BasisFlavor::ConeAvoiding) return false;
  return rng.coin();
}

std::vector<int> others(int n, std::initializer_list<int> excluded) {
  std::vector<int> out;
  for (int i = 0; i <= n; ++i)
    if (std::find(excluded.begin(), excluded.end(), i) == excluded.end()) out.push_back(i);
  return out;
}

// plane through three points as (normal, offset); n = 3
std::pair<Vec<R>, R> plane_through(const Vec<R>& x1, const Vec<R>& x2, const Vec<R>& x3) {
  Vec<R> u = x2 - x1, v = x3 - x1;
  Vec<R> normal(3);
  normal << u(1) * v(2) - u(2) * v(1), u(2) * v(0) - u(0) * v(2), u(0) * v(1) - u(1) * v(0);
  return {normal, normal.dot(x1)};
}

Mat<R> span_of(const Vec<R>& d1, const Vec<R>& d2) {
  Mat<R> d(d1.size(), 2);
  d.col(0) = d1;
  d.col(1) = d2;
  return d;
}

Candidate gen_dimn(Rng& rng, const Simplex<R>& s, BasisFlavor flavor) {
  const int n = s.dim();
  Candidate cand;
  cand.vertices = s.vertices();
  if (flavor != BasisFlavor::ConeAvoiding && rng.coin()) {
    // full-rank input: O is trivially everything
    Mat<R> basis = random_fullrank(rng, n, n);
    cand.parts = make_system(rng, Vec<R>::Zero(n), Mat<R>::Identity(n, n), basis);
    return cand;
  }
  // restricted input with Im([A a]) inside Im(B): equilibria everywhere
  int d = static_cast<int>(rng.int_in(1, n - 1));
  std::vector<int> all;
  for (int j = 1; j <= n; ++j) all.push_back(j);
  Mat<R> basis;
  if (pick_meeting(rng, flavor)) {
    basis = basis_containing(rng, strictly_inside(rng, s, all), d);
  } else if (n == 3 && d == 2) {
    basis = basis_avoiding(rng, s, all);
  } else {
    basis = basis_containing(rng, two_sign_vector(rng, s, 1, 2), 1);
  }
  d = static_cast<int>(basis.cols());
  Candidate out;
  out.vertices = s.vertices();
  out.parts.B = basis * random_fullrank(rng, d, d);
  out.parts.A = basis * random_int_matrix(rng, d, n);
  out.parts.a = basis * random_int_matrix(rng, d, 1);
  return out;
}

Candidate gen_v0(Rng& rng, const Simplex<R>& s, BasisFlavor flavor) {
  const int n = s.dim();
  std::vector<int> all;
  for (int j = 1; j <= n; ++j) all.push_back(j);
  Vec<R> into = centroid(s) - s.vertex(0);
  int k = n == 3 && rng.coin() ? 2 : 1;
  Mat<R> directions(n, k);
  directions.col(0) = into;
  if (k == 2) {
    for (int attempt = 0;; ++attempt) {
      directions.col(1) = random_int_matrix(rng, n, 1);
      if (rank_of<R>(directions, R(0)) == 2) break;
      if (attempt > 32) throw Error("v0 direction sampling stalled");
    }
  }
  Mat<R> basis;
  if (pick_meeting(rng, flavor)) {
    basis = basis_containing(rng, strictly_inside(rng, s, all), k >= 2 && rng.coin() ? 2 : 1);
  } else if (n == 3 && k == 2 && rng.coin()) {
    basis = basis_avoiding(rng, s, all);
  } else {
    basis = basis_containing(rng, two_sign_vector(rng, s, 1, 2), 1);
  }
  Candidate cand;
  cand.vertices = s.vertices();
  cand.parts = make_system(rng, s.vertex(0), directions, basis);
  return cand;
}

Candidate gen_dim0(Rng& rng, const Simplex<R>& s, BasisFlavor flavor) {
  const int n = s.dim();
  Vec<R> point;
  std::vector<int> tangent_rows;  // indices over all facets, 0 included
  std::vector<int> cone_rows;     // indices over {1..n}
  if (n == 2 || rng.coin()) {
    int k = static_cast<int>(rng.int_in(1, n));
    point = s.vertex(k);
    tangent_rows = others(n, {k});
    cone_rows = tangent_rows;
    cone_rows.erase(std::find(cone_rows.begin(), cone_rows.end(), 0));
  } else {
    // interior point of an edge through v0 (the obstruction-capable spot)
    int j = static_cast<int>(rng.int_in(1, n));
    point = edge_point(s, 0, j, rng.rat_open01());
    tangent_rows = others(n, {0, j});
    cone_rows = tangent_rows;
  }
  Mat<R> directions;
  if (n == 3 && tangent_rows.size() == 3 && rng.coin()) {
    // a plane touching S at a vertex only
    directions = basis_avoiding(rng, s, tangent_rows);
  } else {
    directions = Mat<R>(n, 1);
    directions.col(0) = two_sign_vector(rng, s, tangent_rows[0], tangent_rows[1]);
  }
  const int k = static_cast<int>(directions.cols());
  Mat<R> basis;
  if (pick_meeting(rng, flavor) || cone_rows.size() < 2) {
    int d = std::min<int>(k, rng.coin() ? 2 : 1);
    basis = basis_containing(rng, strictly_inside(rng, s, cone_rows), d);
  } else {
    basis = basis_containing(rng, two_sign_vector(rng, s, cone_rows[0], cone_rows[1]), 1);
  }
  Candidate cand;
  cand.vertices = s.vertices();
  cand.parts = make_system(rng, point, directions, basis);
  return cand;
}

// random strictly interior point of the facet opposite vertex c
Vec<R> facet_point(Rng& rng, const Simplex<R>& s, int c) {
  const int n = s.dim();
  Vec<R> x = Vec<R>::Zero(n);
  R total(0);
  std::vector<R> w;
  for (int i = 0; i <= n; ++i) {
    if (i == c) continue;
    R wi = R(rng.int_in(1, 8));
    w.push_back(wi);
    total += wi;
  }
  int idx = 0;
  for (int i = 0; i <= n; ++i) {
    if (i == c) continue;
    x += (w[static_cast<std::size_t>(idx++)] / total) * s.vertex(i);
  }
  return x;
}

Candidate gen_d1b1(Rng& rng, const Simplex<R>& s, BasisFlavor flavor) {
  const int n = s.dim();
  bool want_obstructible = !pick_meeting(rng, flavor);
  Vec<R> x1, x2;
  std::vector<int> cone_rows;
  if (n == 2) {
    // chord between interiors of two distinct edges
    std::array<std::pair<int, int>, 3> edges{{{0, 1}, {0, 2}, {1, 2}}};
    int e1 = want_obstructible ? 0 : static_cast<int>(rng.int_in(0, 2));
    int e2 = want_obstructible ? 1 : (e1 + 1 + static_cast<int>(rng.int_in(0, 1))) % 3;
    x1 = edge_point(s, edges[static_cast<std::size_t>(e1)].first,
                    edges[static_cast<std::size_t>(e1)].second, rng.rat_open01());
    x2 = edge_point(s, edges[static_cast<std::size_t>(e2)].first,
                    edges[static_cast<std::size_t>(e2)].second, rng.rat_open01());
  } else {
    // chord between interiors of two distinct facets
    int c1 = want_obstructible ? static_cast<int>(rng.int_in(1, n)) : static_cast<int>(rng.int_in(0, n));
    int c2 = c1;
    while (c2 == c1) c2 = want_obstructible ? static_cast<int>(rng.int_in(1, n)) : static_cast<int>(rng.int_in(0, n));
    x1 = facet_point(rng, s, c1);
    x2 = facet_point(rng, s, c2);
  }
  auto simplex_cone = [&](const Vec<R>& x) {
    auto cone = s.tangent_cone(x, kExact);
    for (int j : cone.constraints)
      if (std::find(cone_rows.begin(), cone_rows.end(), j) == cone_rows.end()) cone_rows.push_back(j);
  };
  simplex_cone(x1);
  simplex_cone(x2);
  Mat<R> directions(n, 1);
  directions.col(0) = x2 - x1;
  Mat<R> basis;
  if (!want_obstructible || cone_rows.size() < 2) {
    basis = basis_containing(rng, strictly_inside(rng, s, cone_rows), 1);
  } else {
    basis = basis_containing(rng, two_sign_vector(rng, s, cone_rows[0], cone_rows[1]), 1);
  }
  Candidate cand;
  cand.vertices = s.vertices();
  cand.parts = make_system(rng, x1, directions, basis);
  return cand;
}

Candidate gen_d1b2(Rng& rng, const Simplex<R>& s, BasisFlavor flavor) {
  // G must be a full non-exit edge: a plane meeting the simplex in a
  // 1-dimensional set supports it along that edge
  int i = static_cast<int>(rng.int_in(1, 2));
  int j = static_cast<int>(rng.int_in(i + 1, 3));
  auto rest = others(3, {i, j});
  Vec<R> tilt = two_sign_vector(rng, s, rest[0], rest[1]);
  Mat<R> directions = span_of(s.vertex(j) - s.vertex(i), tilt);
  Mat<R> basis;
  if (flavor == BasisFlavor::ConeAvoiding) {
    basis = basis_avoiding(rng, s, {1, 2, 3});
  } else if (flavor == BasisFlavor::ConeMeeting) {
    basis = basis_containing(rng, strictly_inside(rng, s, {1, 2, 3}), 2);
  } else {
    Vec<R> m = random_int_matrix(rng, 3, 1);
    for (int attempt = 0;; ++attempt) {
      Mat<R> mt(1, 3);
      mt.row(0) = m.transpose();
      basis = kernel_of<R>(mt, R(0));
      if (basis.cols() == 2) break;
      m = random_int_matrix(rng, 3, 1);
      if (attempt > 32) throw Error("d1b2 basis sampling stalled");
    }
  }
  Candidate cand;
  cand.vertices = s.vertices();
  cand.parts = make_system(rng, s.vertex(i), directions, basis);
  return cand;
}

// plane sections of a 3-simplex, by target shape
struct PlaneSection {
  Vec<R> p0;
  Mat<R> directions;
  std::vector<int> cone_rows;
};

PlaneSection sym_tri_section(Rng& rng, const Simplex<R>& s) {
  PlaneSection sec;
  std::array<Vec<R>, 3> pts;
  for (int i = 1; i <= 3; ++i) {
    R t = rng.int_in(0, 9) == 0 ? R(1) : rng.rat_open01();  // occasionally o_i = v_i
    pts[static_cast<std::size_t>(i - 1)] = edge_point(s, 0, i, t);
  }
  sec.p0 = pts[0];
  sec.directions = span_of(pts[1] - pts[0], pts[2] - pts[0]);
  sec.cone_rows = {1, 2, 3};
  return sec;
}

PlaneSection edge_tri_section(Rng& rng, const Simplex<R>& s) {
  PlaneSection sec;
  int k = static_cast<int>(rng.int_in(1, 3));
  auto rest = others(3, {k});
  std::array<Vec<R>, 3> pts;
  for (std::size_t idx = 0; idx < 3; ++idx)
    pts[idx] = edge_point(s, k, rest[idx], rng.rat_open01());
  sec.p0 = pts[0];
  sec.directions = span_of(pts[1] - pts[0], pts[2] - pts[0]);
  for (int j = 1; j <= 3; ++j)
    if (j != k) sec.cone_rows.push_back(j);
  return sec;
}

PlaneSection vertex_tri_section(Rng& rng, const Simplex<R>& s) {
  PlaneSection sec;
  int hit = static_cast<int>(rng.int_in(1, 3));
  auto rest = others(3, {0, hit});
  int sep = rest[static_cast<std::size_t>(rng.int_in(0, 1))];
  int third = rest[0] == sep ? rest[1] : rest[0];
  Vec<R> x2 = edge_point(s, 0, sep, rng.rat_open01());
  Vec<R> x3 = edge_point(s, sep, third, rng.rat_open01());
  sec.p0 = s.vertex(hit);
  sec.directions = span_of(x2 - sec.p0, x3 - sec.p0);
  sec.cone_rows = {1, 2, 3};
  return sec;
}

PlaneSection quad_section(Rng& rng, const Simplex<R>& s) {
  for (int attempt = 0; attempt < 128; ++attempt) {
    int p = static_cast<int>(rng.int_in(1, 3));
    auto rest = others(3, {0, p});
    int q = rest[0], r = rest[1];
    Vec<R> x1 = edge_point(s, 0, q, rng.rat_open01());
    Vec<R> x2 = edge_point(s, 0, r, rng.rat_open01());
    Vec<R> x3 = edge_point(s, p, q, rng.rat_open01());
    auto [normal, offset] = plane_through(x1, x2, x3);
    R den = normal.dot(s.vertex(r) - s.vertex(p));
    if (den == R(0)) continue;
    R t = (offset - normal.dot(s.vertex(p))) / den;
    if (t <= R(1, 16) || t >= R(15, 16)) continue;
    PlaneSection sec;
    sec.p0 = x1;
    sec.directions = span_of(x2 - x1, x3 - x1);
    sec.cone_rows = {1, 2, 3};
    return sec;
  }
  throw Error("quadrilateral section sampling stalled");
}

Candidate from_section(Rng& rng, const Simplex<R>& s, const PlaneSection& sec, int input_dim,
                       BasisFlavor flavor) {
  Mat<R> basis;
  if (input_dim == 1) {
    if (pick_meeting(rng, flavor) || sec.cone_rows.size() < 2)
      basis = basis_containing(rng, strictly_inside(rng, s, sec.cone_rows), 1);
    else
      basis = basis_containing(rng, two_sign_vector(rng, s, sec.cone_rows[0], sec.cone_rows[1]), 1);
  } else {
    if (sec.cone_rows.size() == 3 && !pick_meeting(rng, flavor))
      basis = basis_avoiding(rng, s, sec.cone_rows);
    else
      basis = basis_containing(rng, strictly_inside(rng, s, sec.cone_rows), 2);
  }
  Candidate cand;
  cand.vertices = s.vertices();
  cand.parts = make_system(rng, sec.p0, sec.directions, basis);
  return cand;
}

Candidate gen_for_tag(Rng& rng, CaseTag target, int n, BasisFlavor flavor) {
  auto verts = random_simplex_vertices(rng, n);
  auto s = Simplex<R>::from_vertices(verts, kExact);
  switch (target) {
    case CaseTag::DimN:
      return gen_dimn(rng, s, flavor);
    case CaseTag::V0InG:
      return gen_v0(rng, s, flavor);
    case CaseTag::Dim0:
      return gen_dim0(rng, s, flavor);
    case CaseTag::N2D1B1:
    case CaseTag::N3D1B1:
      return gen_d1b1(rng, s, flavor);
    case CaseTag::N3D1B2:
      return gen_d1b2(rng, s, flavor);
    case CaseTag::N3D2B1: {
      auto sec = rng.coin() ? sym_tri_section(rng, s) : quad_section(rng, s);
      return from_section(rng, s, sec, 1, flavor);
    }
    case CaseTag::N3D2B2SymTri:
      return from_section(rng, s, sym_tri_section(rng, s), 2, flavor);
    case CaseTag::N3D2B2EdgeTri:
      return from_section(rng, s, edge_tri_section(rng, s), 2, flavor);
    case CaseTag::N3D2B2VertexTri:
      return from_section(rng, s, vertex_tri_section(rng, s), 2, flavor);
    case CaseTag::N3D2B2Quad:
      return from_section(rng, s, quad_section(rng, s), 2, flavor);
    case CaseTag::Unsupported:
      break;
  }
  throw Error("cannot generate instances for this tag");
}

}  // namespace

InstanceData generate_instance(const GenOptions& opts) {
  const bool any_n = opts.target == CaseTag::Dim0 || opts.target == CaseTag::V0InG ||
                     opts.target == CaseTag::DimN;
  const int required_n = opts.target == CaseTag::N2D1B1 ? 2 : 3;
  if (opts.n < 2 || opts.n > 3 || (!any_n && opts.n != required_n))
    throw Error(std::string("case ") + case_name(opts.target) + " is not defined for n = " +
                std::to_string(opts.n));
  for (int attempt = 0; attempt < 256; ++attempt) {
    Rng rng(derive_seed(opts.seed, static_cast<std::uint64_t>(attempt)));
    Candidate cand;
    try {
      cand = gen_for_tag(rng, opts.target, opts.n, opts.flavor);
    } catch (const Error&) {
      continue;
    }
    // exact validation: the candidate must classify to the requested tag
    try {
      auto simplex = Simplex<R>::from_vertices(cand.vertices, kExact);
      auto sys = ControlSystem<R>::make(cand.parts.A, cand.parts.B, cand.parts.a, kExact);
      auto g = restriction_polytope<R>(sys, simplex, kExact);
      if (!g) continue;
      auto label = classify<R>(*g, simplex, sys.input_dim(), kExact);
      if (label.tag != opts.target) continue;
      InstanceData inst;
      inst.n = opts.n;
      inst.vertices = cand.vertices;
      inst.A = cand.parts.A;
      inst.B = cand.parts.B;
      inst.a = cand.parts.a;
      inst.seed = opts.seed;
      inst.name = std::string("gen-") + case_name(opts.target) + "-n" + std::to_string(opts.n) +
                  "-seed" + std::to_string(opts.seed);
      return inst;
    } catch (const Error&) {
      continue;
    }
  }
  throw Error(std::string("generation failed to hit case ") + case_name(opts.target));
}

}  // namespace rcp

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rcp/errors.hpp"
#include "rcp/feasibility.hpp"
#include "rcp/geometry.hpp"
#include "rcp/law.hpp"
#include "rcp/system.hpp"
#include "rcp/verify.hpp"

namespace rcp {

enum class Verdict { Feasible, Obstructed, Vacuous };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Feasible: return "feasible";
    case Verdict::Obstructed: return "obstructed";
    case Verdict::Vacuous: return "vacuous";
  }
  return "?";
}

enum class LawConstruction { None, Constant, SegmentInterpolation, TriangleThroughVertex, QuadrilateralScaled };

inline const char* construction_name(LawConstruction c) {
  switch (c) {
    case LawConstruction::None: return "none";
    case LawConstruction::Constant: return "constant";
    case LawConstruction::SegmentInterpolation: return "segment-interpolation";
    case LawConstruction::TriangleThroughVertex: return "triangle-through-vertex";
    case LawConstruction::QuadrilateralScaled: return "quadrilateral-scaled";
  }
  return "?";
}

template <class S>
struct ConstructionTrace {
  LawConstruction construction = LawConstruction::None;
  std::optional<Vec<S>> b1, b2;     // independent pair, final canonical frame
  std::optional<S> epsilon;         // quadrilateral scaling
  std::optional<S> repair_c;        // coefficient of the b1' = b1 - c b2 repair
  std::optional<Vec<S>> alpha;      // o4 = alpha . (o1, o2, o3), final frame
  std::optional<S> quad_margin;     // f(o4) . h2, final frame; strictly negative
  bool frame_swapped = false;       // canonical indices 2 and 3 exchanged
  std::vector<std::string> notes;
};

template <class S>
struct SynthesisResult {
  Verdict verdict = Verdict::Vacuous;
  CaseLabel label;
  std::optional<RestrictionPolytope<S>> polytope;
  std::optional<HalfspaceCone<S>> cone;  // cone(G)
  std::optional<AffineLaw<S>> law;
  std::optional<InputLaw<S>> input;
  std::optional<ConeWitness<S>> witness;
  std::optional<ConeSearchCertificate<S>> obstruction;
  std::string vacuous_reason;
  ConstructionTrace<S> trace;
  CertificateReport checker;
};

struct SynthesisOptions {
  // Try the constant selector before a bespoke construction in the
  // guaranteed-feasible arms (cheaper, and the certificate is stronger).
  bool try_constant_first = true;
};

// Per-vertex inputs solving B u_i = f(o_i) - A o_i - a (least-norm), plus
// the affine interpolation u(x) = K x + k on the affine hull of G.
template <class S>
InputLaw<S> recover_input(const ControlSystem<S>& sys, const AffineLaw<S>& law,
                          const RestrictionPolytope<S>& g, const Tolerances<S>& tol) {
  const int r = g.count();
  InputLaw<S> input;
  input.vertex_inputs.resize(r, sys.B.cols());
  for (int i = 0; i < r; ++i) {
    Vec<S> target = law.values.row(i).transpose() - sys.A * g.vertex(i) - sys.a;
    Vec<S> u = sys.input_for(target, tol);
    S scale = std::max<S>(S(1), inf_norm<S>(target));
    if (inf_norm<S>(Vec<S>(sys.B * u - target)) > tol.solve * scale)
      throw ResidualTooLarge("closed-loop residual at vertex " + std::to_string(i + 1));
    input.vertex_inputs.row(i) = u.transpose();
  }
  if (r == 1) {
    input.K = Mat<S>::Zero(sys.B.cols(), sys.dim());
    input.k = input.vertex_inputs.row(0).transpose();
  } else {
    auto [K, k] = detail::affine_through<S>(g.vertices, input.vertex_inputs, tol);
    input.K = std::move(K);
    input.k = std::move(k);
  }
  return input;
}

namespace detail {

template <class S>
void attach_global_form(AffineLaw<S>& law, const RestrictionPolytope<S>& g,
                        const Tolerances<S>& tol) {
  if (g.count() != g.dim + 1) return;
  if (g.count() == 1) {
    law.F = Mat<S>::Zero(law.values.cols(), g.vertices.cols());
    law.g = law.values.row(0).transpose();
    return;
  }
  auto [F, c] = affine_through<S>(g.vertices, law.values, tol);
  law.F = std::move(F);
  law.g = std::move(c);
}

template <class S>
Mat<S> scatter_canonical(const Mat<S>& canonical_values, const std::vector<int>& order) {
  Mat<S> out(canonical_values.rows(), canonical_values.cols());
  for (std::size_t pos = 0; pos < order.size(); ++pos)
    out.row(order[pos]) = canonical_values.row(static_cast<Eigen::Index>(pos));
  return out;
}

template <class S>
void require_in_cone(const HalfspaceCone<S>& cone, const Vec<S>& b, const Tolerances<S>& tol,
                     const char* what) {
  S slack = tol.feas * std::max<S>(S(1), inf_norm<S>(cone.normals)) * std::max<S>(S(1), inf_norm<S>(b));
  if (!cone.contains(b, slack)) throw PreconditionViolated(std::string(what) + " is not in its vertex cone");
}

// Affine weights of o4 with respect to (o1, o2, o3); sums to one.
template <class S>
Vec<S> quad_affine_weights(const Mat<S>& ordered, const Tolerances<S>& tol) {
  const Eigen::Index n = ordered.cols();
  Mat<S> eq(n + 1, 3);
  Vec<S> rhs(n + 1);
  for (int c = 0; c < 3; ++c) {
    eq.col(c).head(n) = ordered.row(c).transpose();
    eq(n, c) = S(1);
  }
  rhs.head(n) = ordered.row(3).transpose();
  rhs(n) = S(1);
  auto alpha = solve_consistent<S>(eq, rhs, tol);
  if (!alpha) throw InternalInvariantBroken("quadrilateral vertex is not in the affine hull of the others");
  return *alpha;
}

}  // namespace detail

// Interpolated law for a triangle through a simplex vertex, canonical order
// (o1 = v1, o2 on [v0, v2], o3 on [v2, v3]): values (b1, b2, b2). Injective
// since b1, b2 are independent, and C(o2) is contained in C(o3), so the o3
// assignment inherits its cone condition.
template <class S>
AffineLaw<S> triangle_through_vertex_construction(const RestrictionPolytope<S>& g,
                                                  const CaseLabel& label,
                                                  const Simplex<S>& simplex, const Vec<S>& b1,
                                                  const Vec<S>& b2, const Tolerances<S>& tol) {
  const auto& ord = label.polytope_order;
  auto cone1 = simplex.tangent_cone(g.vertex(ord[0]), tol);
  auto cone2 = simplex.tangent_cone(g.vertex(ord[1]), tol);
  auto cone3 = simplex.tangent_cone(g.vertex(ord[2]), tol);
  detail::require_in_cone<S>(cone1, b1, tol, "b1");
  detail::require_in_cone<S>(cone2, b2, tol, "b2");
  if (!cone_includes(cone2, cone3))
    throw PreconditionViolated("C(o2) must be contained in C(o3) in canonical position");
  Mat<S> canonical(3, simplex.dim());
  canonical.row(0) = b1.transpose();
  canonical.row(1) = b2.transpose();
  canonical.row(2) = b2.transpose();
  AffineLaw<S> law{detail::scatter_canonical<S>(canonical, ord), std::nullopt, std::nullopt};
  detail::attach_global_form<S>(law, g, tol);
  return law;
}

// Quadrilateral construction. Branch 1 scales the pair so the derived value
// at o4 lands strictly inside its halfspace; branch 2 first repairs b1 (or
// b2) along the other vector so a strictly negative product exists, then
// reenters branch 1. When the strict product sits on the h3 side, canonical
// indices 2 and 3 are exchanged (the configuration is symmetric under that
// swap) so the invariant is always f(o4) . h2 < 0 in the final frame.
template <class S>
AffineLaw<S> quadrilateral_construction(const RestrictionPolytope<S>& g, CaseLabel& label,
                                        const Simplex<S>& simplex, Vec<S> b1, Vec<S> b2,
                                        const Tolerances<S>& tol, ConstructionTrace<S>& trace) {
  auto h = [&](int canonical_index) {
    return simplex.normal(label.vertex_relabel[static_cast<std::size_t>(canonical_index)]);
  };
  auto strict_slack = [&](const Vec<S>& normal) {
    return tol.strict * std::max<S>(S(1), inf_norm<S>(normal));
  };
  auto swap_frame = [&]() {
    std::swap(label.vertex_relabel[2], label.vertex_relabel[3]);
    label.polytope_order = {label.polytope_order[1], label.polytope_order[0],
                            label.polytope_order[3], label.polytope_order[2]};
    std::swap(b1, b2);
    trace.frame_swapped = !trace.frame_swapped;
  };

  {
    auto cone1 = simplex.tangent_cone(g.vertex(label.polytope_order[0]), tol);
    auto cone2 = simplex.tangent_cone(g.vertex(label.polytope_order[1]), tol);
    detail::require_in_cone<S>(cone1, b1, tol, "b1");
    detail::require_in_cone<S>(cone2, b2, tol, "b2");
  }

  S s2 = b2.dot(h(2));
  S s3 = b1.dot(h(3));
  if (s2 >= -strict_slack(h(2))) {
    if (s3 < -strict_slack(h(3))) {
      swap_frame();
    } else {
      // both products vanish; repair per the sign of the h1 products
      S t1 = b1.dot(h(1));
      S t2 = b2.dot(h(1));
      S slack1 = strict_slack(h(1));
      if (b1.dot(h(2)) <= strict_slack(h(2)) || b2.dot(h(3)) <= strict_slack(h(3)))
        throw PreconditionViolated(
            "a constant selector already exists; the quadrilateral construction expects "
            "cone(G) /\\ B = {0}");
      if (t1 < -slack1) {
        S c = t2 < -slack1 ? t1 / (S(2) * t2) : S(1);
        trace.repair_c = c;
        b1 -= c * b2;  // now b1 . h3 < 0
        swap_frame();
      } else if (t2 < -slack1) {
        S c = S(1);  // b1 . h1 vanishes, so the ratio guard value applies
        trace.repair_c = c;
        b2 -= c * b1;  // now b2 . h2 < 0
      } else {
        b1 -= b2;  // both h1 products vanish; now b1 . h3 < 0
        swap_frame();
      }
    }
  }

  const auto& ord = label.polytope_order;
  Mat<S> ordered(4, simplex.dim());
  for (int i = 0; i < 4; ++i) ordered.row(i) = g.vertices.row(ord[static_cast<std::size_t>(i)]);
  Vec<S> alpha = detail::quad_affine_weights<S>(ordered, tol);
  if (!(alpha(1) > S(0)))
    throw InternalInvariantBroken("the o2 weight in the o4 expansion must be positive");

  Vec<S> h2 = h(2);
  s2 = b2.dot(h2);
  if (s2 >= -strict_slack(h2))
    throw InternalInvariantBroken("entered the scaling branch without a strict product");
  S den = (alpha(0) + alpha(2)) * b1.dot(h2);
  S eps;
  if ((den < S(0) ? S(-den) : den) <= strict_slack(h2))
    eps = S(1);
  else
    eps = -alpha(1) * s2 / (S(2) * (den < S(0) ? S(-den) : den));

  Mat<S> canonical(4, simplex.dim());
  canonical.row(0) = (eps * b1).transpose();
  canonical.row(1) = b2.transpose();
  canonical.row(2) = (eps * b1).transpose();
  canonical.row(3) = (eps * (alpha(0) + alpha(2)) * b1 + alpha(1) * b2).transpose();

  S margin = canonical.row(3).dot(h2);
  if (margin >= S(0) || margin > alpha(1) / S(2) * s2 + strict_slack(h2))
    throw InternalInvariantBroken("derived o4 value missed its halfspace");

  trace.b1 = b1;
  trace.b2 = b2;
  trace.epsilon = eps;
  trace.alpha = alpha;
  trace.quad_margin = margin;

  AffineLaw<S> law{detail::scatter_canonical<S>(canonical, ord), std::nullopt, std::nullopt};
  return law;
}

// Full pipeline: equilibrium subspace, restriction polytope, classification,
// then the case-dispatched selector synthesis. Every feasible result is
// gated by the independent certificate checker before it is returned.
template <class S>
SynthesisResult<S> synthesize(const ControlSystem<S>& sys, const Simplex<S>& simplex,
                              const SynthesisOptions& opts, const Tolerances<S>& tol) {
  const int n = simplex.dim();
  if (n < 2 || n > 3)
    throw AssumptionViolated("synthesis supports n = 2 and n = 3 only");

  SynthesisResult<S> result;
  auto subspace = equilibrium_subspace<S>(sys, tol);
  if (!subspace) {
    result.verdict = Verdict::Vacuous;
    result.vacuous_reason =
        "no equilibria possible: A x + a never lies in Im(B); no selector is required";
    return result;
  }
  auto g = restriction_polytope<S>(sys, simplex, tol);
  if (!g) {
    result.verdict = Verdict::Vacuous;
    result.vacuous_reason =
        "equilibrium subspace misses the simplex; no selector is required";
    return result;
  }
  result.polytope = std::move(*g);
  const auto& polytope = *result.polytope;
  result.label = classify<S>(polytope, simplex, sys.input_dim(), tol);
  if (result.label.tag == CaseTag::Unsupported)
    throw AssumptionViolated("instance dimension is outside the supported taxonomy");
  result.cone = simplex.polytope_cone(polytope.vertices, tol);

  auto constant_law = [&]() -> bool {
    ConeSearchCertificate<S> cert;
    auto witness = nontrivial_cone_subspace_element<S>(*result.cone, sys.input_basis, tol, &cert);
    if (!witness) {
      result.obstruction = std::move(cert);
      return false;
    }
    Mat<S> values(polytope.count(), n);
    for (int i = 0; i < polytope.count(); ++i) values.row(i) = witness->b.transpose();
    result.law = AffineLaw<S>{std::move(values), std::nullopt, std::nullopt};
    detail::attach_global_form<S>(*result.law, polytope, tol);
    result.witness = std::move(witness);
    result.trace.construction = LawConstruction::Constant;
    return true;
  };

  auto lemma_pair = [&](int pos1, int pos2) {
    auto cone1 = simplex.tangent_cone(polytope.vertex(result.label.polytope_order[static_cast<std::size_t>(pos1)]), tol);
    auto cone2 = simplex.tangent_cone(polytope.vertex(result.label.polytope_order[static_cast<std::size_t>(pos2)]), tol);
    return independent_cone_vectors<S>(cone1, cone2, sys.input_basis, sys.annihilator, tol);
  };

  auto constant_from = [&](const Vec<S>& b) {
    Mat<S> values(polytope.count(), n);
    for (int i = 0; i < polytope.count(); ++i) values.row(i) = b.transpose();
    result.law = AffineLaw<S>{std::move(values), std::nullopt, std::nullopt};
    detail::attach_global_form<S>(*result.law, polytope, tol);
    result.trace.construction = LawConstruction::Constant;
    result.obstruction.reset();
  };

  auto in_polytope_cone = [&](const Vec<S>& b) {
    S slack = tol.feas * std::max<S>(S(1), inf_norm<S>(result.cone->normals)) *
              std::max<S>(S(1), inf_norm<S>(b));
    return result.cone->contains(b, slack);
  };

  bool feasible = false;
  switch (result.label.tag) {
    case CaseTag::Dim0:
    case CaseTag::V0InG:
    case CaseTag::DimN:
    case CaseTag::N2D1B1:
    case CaseTag::N3D1B1:
    case CaseTag::N3D2B1:
    case CaseTag::N3D2B2SymTri:
    case CaseTag::N3D2B2EdgeTri: {
      // arms where the cone condition is necessary and sufficient
      feasible = constant_law();
      if (!feasible) {
        result.verdict = Verdict::Obstructed;
        return result;
      }
      break;
    }
    case CaseTag::N3D1B2: {
      if (opts.try_constant_first && constant_law()) {
        feasible = true;
        break;
      }
      auto [b1, b2] = lemma_pair(0, 1);
      Mat<S> canonical(2, n);
      canonical.row(0) = b1.transpose();
      canonical.row(1) = b2.transpose();
      result.law = AffineLaw<S>{
          detail::scatter_canonical<S>(canonical, result.label.polytope_order), std::nullopt,
          std::nullopt};
      detail::attach_global_form<S>(*result.law, polytope, tol);
      result.trace.construction = LawConstruction::SegmentInterpolation;
      result.trace.b1 = b1;
      result.trace.b2 = b2;
      result.obstruction.reset();
      feasible = true;
      break;
    }
    case CaseTag::N3D2B2VertexTri: {
      if (opts.try_constant_first && constant_law()) {
        feasible = true;
        break;
      }
      auto [b1, b2] = lemma_pair(0, 1);
      result.law = triangle_through_vertex_construction<S>(polytope, result.label, simplex, b1, b2, tol);
      result.trace.construction = LawConstruction::TriangleThroughVertex;
      result.trace.b1 = b1;
      result.trace.b2 = b2;
      result.obstruction.reset();
      feasible = true;
      break;
    }
    case CaseTag::N3D2B2Quad: {
      if (opts.try_constant_first && constant_law()) {
        feasible = true;
        break;
      }
      auto [b1, b2] = lemma_pair(0, 1);
      // degenerate entry: one of the pair already satisfies every cone(G)
      // constraint, which short-circuits the scaled construction
      if (in_polytope_cone(b1) || in_polytope_cone(b2)) {
        constant_from(in_polytope_cone(b1) ? b1 : b2);
        result.trace.notes.push_back("independent pair contained a cone(G) element");
        feasible = true;
        break;
      }
      result.law = quadrilateral_construction<S>(polytope, result.label, simplex, b1, b2, tol,
                                                 result.trace);
      result.trace.construction = LawConstruction::QuadrilateralScaled;
      result.obstruction.reset();
      feasible = true;
      break;
    }
    case CaseTag::Unsupported:
      throw AssumptionViolated("unsupported case");
  }

  if (!feasible) throw InternalInvariantBroken("dispatch fell through without a verdict");
  result.checker = check_certificate<S>(simplex, sys, *result.law, polytope, tol);
  if (!result.checker.pass) {
    std::string detail = "synthesized law failed the certificate checker:";
    for (const auto& note : result.checker.notes) detail += " " + note + ";";
    throw InternalInvariantBroken(detail);
  }
  result.input = recover_input<S>(sys, *result.law, polytope, tol);
  result.verdict = Verdict::Feasible;
  return result;
}

}  // namespace rcp

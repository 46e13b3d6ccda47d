#pragma once

#include <string>

#include "json.hpp"
#include "rcp/synthesis.hpp"
#include "rcp/verify.hpp"

namespace rcp {

// JSON serialization of pipeline results. Every scalar is written as a
// string (rationals as "p/q", doubles in round-trip form) so reports are
// lossless and byte-stable under a fixed seed.

namespace report_detail {

template <class S>
nlohmann::ordered_json num(const S& x) {
  return ScalarTraits<S>::str(x);
}

template <class S>
nlohmann::ordered_json vec(const Vec<S>& v) {
  auto arr = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(num<S>(v(i)));
  return arr;
}

template <class S>
nlohmann::ordered_json mat(const Mat<S>& m) {
  auto rows = nlohmann::ordered_json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) rows.push_back(vec<S>(Vec<S>(m.row(r).transpose())));
  return rows;
}

inline nlohmann::ordered_json ints(const std::vector<int>& v) {
  auto arr = nlohmann::ordered_json::array();
  for (int x : v) arr.push_back(x);
  return arr;
}

}  // namespace report_detail

template <class S>
nlohmann::ordered_json tolerances_to_json(const Tolerances<S>& tol) {
  using report_detail::num;
  nlohmann::ordered_json j;
  j["rank"] = num<S>(tol.rank);
  j["bary"] = num<S>(tol.bary);
  j["solve"] = num<S>(tol.solve);
  j["feas"] = num<S>(tol.feas);
  j["geo"] = num<S>(tol.geo);
  j["strict"] = num<S>(tol.strict);
  j["indep"] = num<S>(tol.indep);
  j["nonzero"] = num<S>(tol.nonzero);
  return j;
}

inline nlohmann::ordered_json checker_to_json(const CertificateReport& report) {
  nlohmann::ordered_json j;
  j["membership"] = report.membership;
  j["cone_conditions"] = report.cone_conditions;
  j["nonvanishing"] = report.nonvanishing;
  j["affine_consistency"] = report.affine_consistency;
  j["pass"] = report.pass;
  j["notes"] = report.notes;
  return j;
}

inline nlohmann::ordered_json sample_to_json(const SampleReport& report) {
  nlohmann::ordered_json j;
  j["checked"] = report.checked;
  j["cone_violations"] = report.cone_violations;
  j["vanish_violations"] = report.vanish_violations;
  j["vacuous_warning"] = report.vacuous_warning;
  j["pass"] = report.pass;
  return j;
}

template <class S>
nlohmann::ordered_json polytope_to_json(const RestrictionPolytope<S>& g) {
  using namespace report_detail;
  nlohmann::ordered_json j;
  j["vertices"] = mat<S>(g.vertices);
  j["dim"] = g.dim;
  j["shape"] = shape_name(g.shape);
  auto sets = nlohmann::ordered_json::array();
  bool near = false;
  for (const auto& is : g.active_sets) {
    sets.push_back(ints(is.indices));
    near = near || is.near_degenerate;
  }
  j["active_sets"] = std::move(sets);
  j["near_degenerate"] = near;
  return j;
}

inline nlohmann::ordered_json label_to_json(const CaseLabel& label) {
  using report_detail::ints;
  nlohmann::ordered_json j;
  j["case"] = case_name(label.tag);
  j["permutation"] = ints(label.vertex_relabel);
  j["vertex_order"] = ints(label.polytope_order);
  j["ambiguous"] = label.ambiguous;
  auto also = nlohmann::ordered_json::array();
  for (auto t : label.also_fits) also.push_back(case_name(t));
  j["also_fits"] = std::move(also);
  return j;
}

template <class S>
nlohmann::ordered_json result_to_json(const SynthesisResult<S>& result) {
  using namespace report_detail;
  nlohmann::ordered_json j;
  j["verdict"] = verdict_name(result.verdict);
  if (result.verdict == Verdict::Vacuous) {
    j["vacuous_reason"] = result.vacuous_reason;
    return j;
  }
  j["classification"] = label_to_json(result.label);
  j["restriction_polytope"] = polytope_to_json<S>(*result.polytope);
  j["cone"] = {{"constraints", ints(result.cone->constraints)}};
  if (result.witness) {
    nlohmann::ordered_json w;
    w["b"] = vec<S>(result.witness->b);
    w["basis_coords"] = vec<S>(result.witness->coords);
    w["active"] = ints(result.witness->active);
    j["witness"] = std::move(w);
  }
  if (result.law) {
    nlohmann::ordered_json law;
    law["vertex_values"] = mat<S>(result.law->values);
    if (result.law->F) {
      law["F"] = mat<S>(*result.law->F);
      law["g"] = vec<S>(*result.law->g);
    }
    j["law"] = std::move(law);
  }
  if (result.input) {
    nlohmann::ordered_json input;
    input["vertex_inputs"] = mat<S>(result.input->vertex_inputs);
    input["K"] = mat<S>(result.input->K);
    input["k"] = vec<S>(result.input->k);
    j["input_law"] = std::move(input);
  }
  {
    nlohmann::ordered_json c;
    c["kind"] = construction_name(result.trace.construction);
    if (result.trace.b1) c["b1"] = vec<S>(*result.trace.b1);
    if (result.trace.b2) c["b2"] = vec<S>(*result.trace.b2);
    if (result.trace.epsilon) c["epsilon"] = num<S>(*result.trace.epsilon);
    if (result.trace.repair_c) c["repair_c"] = num<S>(*result.trace.repair_c);
    if (result.trace.alpha) c["alpha"] = vec<S>(*result.trace.alpha);
    if (result.trace.quad_margin) c["quad_margin"] = num<S>(*result.trace.quad_margin);
    c["frame_swapped"] = result.trace.frame_swapped;
    c["notes"] = result.trace.notes;
    j["construction"] = std::move(c);
  }
  if (result.obstruction) {
    nlohmann::ordered_json o;
    auto optima = nlohmann::ordered_json::array();
    for (const auto& [constraint, value] : result.obstruction->stage1_optima) {
      nlohmann::ordered_json item;
      item["constraint"] = constraint;
      item["optimum"] = num<S>(value);
      optima.push_back(std::move(item));
    }
    o["stage1_optima"] = std::move(optima);
    o["lineality_dim"] = result.obstruction->lineality_dim;
    j["obstruction"] = std::move(o);
  }
  if (result.verdict == Verdict::Feasible) j["checker"] = checker_to_json(result.checker);
  return j;
}

}  // namespace rcp

#include "rcp/pipeline.hpp"

#include <chrono>

#include "rcp/errors.hpp"
#include "rcp/report.hpp"
#include "rcp/verify.hpp"

namespace rcp {

namespace {

bool necessity_tag(CaseTag tag) {
  switch (tag) {
    case CaseTag::Dim0:
    case CaseTag::V0InG:
    case CaseTag::DimN:
    case CaseTag::N2D1B1:
    case CaseTag::N3D1B1:
    case CaseTag::N3D2B1:
    case CaseTag::N3D2B2SymTri:
    case CaseTag::N3D2B2EdgeTri:
      return true;
    default:
      return false;
  }
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

template <class S>
struct Loaded {
  Simplex<S> simplex;
  ControlSystem<S> sys;
  Tolerances<S> tol;
};

template <class S>
Loaded<S> load(const InstanceData& inst, const RunOptions& opts) {
  auto tol = opts.tols.template resolve<S>();
  auto simplex = Simplex<S>::from_vertices(to_backend<S>(inst.vertices), tol);
  auto sys = ControlSystem<S>::make(to_backend<S>(inst.A), to_backend<S>(inst.B),
                                    to_backend<S>(inst.a), tol);
  return Loaded<S>{std::move(simplex), std::move(sys), tol};
}

nlohmann::ordered_json report_head(const char* command, const InstanceData& inst,
                                   const RunOptions& opts) {
  nlohmann::ordered_json j;
  j["schema"] = "rcpcone-report-v1";
  j["command"] = command;
  j["instance"] = inst.name.empty() ? "(unnamed)" : inst.name;
  j["n"] = inst.n;
  j["mode"] = backend_name(opts.backend);
  return j;
}

template <class S>
nlohmann::ordered_json analyze_impl(const InstanceData& inst, const RunOptions& opts) {
  auto start = std::chrono::steady_clock::now();
  auto loaded = load<S>(inst, opts);
  auto j = report_head("analyze", inst, opts);
  j["tolerances"] = tolerances_to_json<S>(loaded.tol);

  auto subspace = equilibrium_subspace<S>(loaded.sys, loaded.tol);
  std::optional<RestrictionPolytope<S>> g;
  if (subspace) g = restriction_polytope<S>(loaded.sys, loaded.simplex, loaded.tol);
  if (!subspace || !g) {
    j["verdict"] = "vacuous";
    j["vacuous_reason"] = !subspace ? "no equilibria possible: A x + a never lies in Im(B)"
                                    : "equilibrium subspace misses the simplex";
    if (opts.timing) j["runtime_ms"] = elapsed_ms(start);
    return j;
  }
  auto label = classify<S>(*g, loaded.simplex, loaded.sys.input_dim(), loaded.tol);
  auto cone = loaded.simplex.polytope_cone(g->vertices, loaded.tol);
  ConeSearchCertificate<S> cert;
  auto witness =
      nontrivial_cone_subspace_element<S>(cone, loaded.sys.input_basis, loaded.tol, &cert);

  j["classification"] = label_to_json(label);
  j["restriction_polytope"] = polytope_to_json<S>(*g);
  j["cone"] = {{"constraints", report_detail::ints(cone.constraints)}};
  nlohmann::ordered_json cc;
  cc["holds"] = witness.has_value();
  if (witness) {
    cc["witness"] = {{"b", report_detail::vec<S>(witness->b)},
                     {"basis_coords", report_detail::vec<S>(witness->coords)},
                     {"active", report_detail::ints(witness->active)}};
  } else {
    auto optima = nlohmann::ordered_json::array();
    for (const auto& [constraint, value] : cert.stage1_optima)
      optima.push_back({{"constraint", constraint}, {"optimum", report_detail::num<S>(value)}});
    cc["obstruction"] = {{"stage1_optima", std::move(optima)},
                         {"lineality_dim", cert.lineality_dim}};
  }
  j["cone_condition"] = std::move(cc);
  if (witness) {
    j["verdict"] = "feasible";
  } else if (necessity_tag(label.tag)) {
    j["verdict"] = "obstructed";
  } else {
    j["verdict"] = "feasible";
    j["note"] = "no constant selector, but this case always admits a constructed law";
  }
  if (opts.timing) j["runtime_ms"] = elapsed_ms(start);
  return j;
}

template <class S>
nlohmann::ordered_json synthesize_impl(const InstanceData& inst, const RunOptions& opts) {
  auto start = std::chrono::steady_clock::now();
  auto loaded = load<S>(inst, opts);
  auto j = report_head("synthesize", inst, opts);
  j["tolerances"] = tolerances_to_json<S>(loaded.tol);
  auto result = synthesize<S>(loaded.sys, loaded.simplex, opts.synth, loaded.tol);
  auto body = result_to_json<S>(result);
  j.update(body);
  if (opts.sample_count > 0 && result.verdict == Verdict::Feasible) {
    auto sample = sample_check<S>(loaded.simplex, loaded.sys, *result.law, *result.polytope,
                                  opts.sample_count, opts.sample_seed, loaded.tol);
    j["sample_check"] = sample_to_json(sample);
  }
  if (opts.timing) j["runtime_ms"] = elapsed_ms(start);
  return j;
}

template <class S>
nlohmann::ordered_json verify_impl(const InstanceData& inst, const nlohmann::json& law_json,
                                   const RunOptions& opts) {
  auto start = std::chrono::steady_clock::now();
  auto loaded = load<S>(inst, opts);
  auto j = report_head("verify", inst, opts);
  j["tolerances"] = tolerances_to_json<S>(loaded.tol);

  const nlohmann::json* values_json = nullptr;
  if (law_json.contains("vertex_values")) {
    values_json = &law_json["vertex_values"];
  } else if (law_json.contains("law") && law_json["law"].contains("vertex_values")) {
    values_json = &law_json["law"]["vertex_values"];
  } else {
    throw SchemaError("law.vertex_values: required");
  }

  auto subspace = equilibrium_subspace<S>(loaded.sys, loaded.tol);
  std::optional<RestrictionPolytope<S>> g;
  if (subspace) g = restriction_polytope<S>(loaded.sys, loaded.simplex, loaded.tol);
  if (!subspace || !g) {
    j["verdict"] = "vacuous";
    j["vacuous_reason"] = "the instance has no restriction polytope to verify against";
    if (opts.timing) j["runtime_ms"] = elapsed_ms(start);
    return j;
  }

  if (!values_json->is_array() || static_cast<int>(values_json->size()) != g->count())
    throw SchemaError("law.vertex_values: expected " + std::to_string(g->count()) + " rows");
  Mat<S> values(g->count(), inst.n);
  for (int r = 0; r < g->count(); ++r) {
    const auto& row = (*values_json)[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != inst.n)
      throw SchemaError("law.vertex_values[" + std::to_string(r) + "]: expected " +
                        std::to_string(inst.n) + " entries");
    for (int c = 0; c < inst.n; ++c) {
      const auto& cell = row[static_cast<std::size_t>(c)];
      std::string field =
          "law.vertex_values[" + std::to_string(r) + "][" + std::to_string(c) + "]";
      if (cell.is_number()) {
        values(r, c) = ScalarTraits<S>::from_rational(Rational(cell.get<double>()));
      } else if (cell.is_string()) {
        auto parsed = ScalarTraits<Rational>::parse(cell.get<std::string>());
        if (!parsed) throw SchemaError(field + ": unparsable number literal");
        values(r, c) = ScalarTraits<S>::from_rational(*parsed);
      } else {
        throw SchemaError(field + ": expected a number or numeric string");
      }
    }
  }

  AffineLaw<S> law{std::move(values), std::nullopt, std::nullopt};
  auto checker = check_certificate<S>(loaded.simplex, loaded.sys, law, *g, loaded.tol);
  j["restriction_polytope"] = polytope_to_json<S>(*g);
  j["checker"] = checker_to_json(checker);
  if (opts.sample_count > 0 && checker.pass) {
    auto sample = sample_check<S>(loaded.simplex, loaded.sys, law, *g, opts.sample_count,
                                  opts.sample_seed, loaded.tol);
    j["sample_check"] = sample_to_json(sample);
  }
  j["verdict"] = checker.pass ? "pass" : "fail";
  if (opts.timing) j["runtime_ms"] = elapsed_ms(start);
  return j;
}

}  // namespace

nlohmann::ordered_json run_analyze(const InstanceData& inst, const RunOptions& opts) {
  return opts.backend == Backend::Exact ? analyze_impl<Rational>(inst, opts)
                                        : analyze_impl<double>(inst, opts);
}

nlohmann::ordered_json run_synthesize(const InstanceData& inst, const RunOptions& opts) {
  return opts.backend == Backend::Exact ? synthesize_impl<Rational>(inst, opts)
                                        : synthesize_impl<double>(inst, opts);
}

nlohmann::ordered_json run_verify(const InstanceData& inst, const nlohmann::json& law_json,
                                  const RunOptions& opts) {
  return opts.backend == Backend::Exact ? verify_impl<Rational>(inst, law_json, opts)
                                        : verify_impl<double>(inst, law_json, opts);
}

int exit_code_for(const nlohmann::json& report) {
  const std::string verdict = report.value("verdict", "");
  if (verdict == "feasible" || verdict == "pass") return 0;
  if (verdict == "obstructed" || verdict == "fail") return 2;
  if (verdict == "vacuous") return 3;
  return 1;
}

}  // namespace rcp

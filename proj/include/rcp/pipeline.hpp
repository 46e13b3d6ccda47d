#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"
#include "rcp/instance.hpp"
#include "rcp/synthesis.hpp"

namespace rcp {

enum class Backend { Exact, Float };

inline const char* backend_name(Backend b) { return b == Backend::Exact ? "exact" : "float"; }

// Optional per-run tolerance overrides (float backend only; the exact
// backend keeps every tolerance at zero by construction).
struct ToleranceOverrides {
  std::optional<double> rank, bary, solve, feas, geo, strict, indep, nonzero;

  template <class S>
  Tolerances<S> resolve() const {
    auto tol = Tolerances<S>::defaults();
    if constexpr (!ScalarTraits<S>::exact) {
      if (rank) tol.rank = *rank;
      if (bary) tol.bary = *bary;
      if (solve) tol.solve = *solve;
      if (feas) tol.feas = *feas;
      if (geo) tol.geo = *geo;
      if (strict) tol.strict = *strict;
      if (indep) tol.indep = *indep;
      if (nonzero) tol.nonzero = *nonzero;
    }
    return tol;
  }
};

struct RunOptions {
  Backend backend = Backend::Exact;
  SynthesisOptions synth;
  ToleranceOverrides tols;
  int sample_count = 0;           // interior samples added to synthesize reports
  std::uint64_t sample_seed = 0;
  bool timing = true;             // emit runtime_ms (off for byte-comparison tests)
};

// classification + cone(G) + cone-condition check, no law synthesis
nlohmann::ordered_json run_analyze(const InstanceData& inst, const RunOptions& opts);
// the full pipeline
nlohmann::ordered_json run_synthesize(const InstanceData& inst, const RunOptions& opts);
// checker only: validates an externally supplied law against the instance
nlohmann::ordered_json run_verify(const InstanceData& inst, const nlohmann::json& law_json,
                                  const RunOptions& opts);

// 0 feasible/pass, 2 obstructed/fail, 3 vacuous (1 is reserved for errors)
int exit_code_for(const nlohmann::json& report);

}  // namespace rcp

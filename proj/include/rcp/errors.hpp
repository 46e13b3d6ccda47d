#pragma once

#include <stdexcept>
#include <string>

namespace rcp {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The vertex matrix is rank deficient; no facet normals exist.
struct DegenerateSimplex : Error {
  using Error::Error;
};

// A point handed to an operation that requires membership in the simplex
// has a barycentric coordinate below -tau_bary.
struct PointOutsideSimplex : Error {
  using Error::Error;
};

// The float backend's simplex method gave up (iteration cap or a witness
// that failed re-verification). The exact backend never raises this.
struct LpNumericalFailure : Error {
  using Error::Error;
};

// An operation was called outside the regime in which the underlying
// result guarantees anything (e.g. an independent-pair request with
// dim B != 2).
struct AssumptionViolated : Error {
  using Error::Error;
};

struct PreconditionViolated : Error {
  using Error::Error;
};

// A derived quantity contradicts a property that is proven to hold;
// indicates a classification or tolerance failure upstream.
struct InternalInvariantBroken : Error {
  using Error::Error;
};

// recover_input could not reproduce a law value through B within
// tolerance, i.e. the value is numerically outside Im(B).
struct ResidualTooLarge : Error {
  using Error::Error;
};

// Malformed instance/report file; message names the offending field.
struct SchemaError : Error {
  using Error::Error;
};

}  // namespace rcp

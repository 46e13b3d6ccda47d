#pragma once

#include <cstdint>

#include "rcp/instance.hpp"
#include "rcp/system.hpp"

namespace rcp {

// How to place the input subspace relative to cone(G). Any picks per-seed;
// ConeMeeting plants a cone element inside Im(B); ConeAvoiding makes
// cone(G) /\ Im(B) = {0} (where the geometry admits it), which forces the
// constructive synthesis arms.
enum class BasisFlavor { Any, ConeMeeting, ConeAvoiding };

struct GenOptions {
  int n = 3;
  CaseTag target = CaseTag::N3D2B2Quad;
  std::uint64_t seed = 0;
  BasisFlavor flavor = BasisFlavor::Any;
};

// Rejection-sampled random instance whose exact classification hits the
// requested tag. Construction is seeded per tag (the equilibrium set is
// placed first, then a system realizing it is solved for), so rejection
// rates stay near zero. Deterministic: the same options give a
// byte-identical instance.
InstanceData generate_instance(const GenOptions& opts);

}  // namespace rcp

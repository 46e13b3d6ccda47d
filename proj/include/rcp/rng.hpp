#pragma once

#include <cstdint>
#include <random>

#include "rcp/scalar.hpp"

namespace rcp {

// Deterministic random helpers over the standardized mt19937_64 stream.
// Distributions are hand-rolled so sequences do not depend on the standard
// library implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }

  // uniform in [lo, hi], inclusive
  long int_in(long lo, long hi) {
    return lo + static_cast<long>(bits() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  bool coin() { return (bits() & 1u) != 0; }

  double real01() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

  // rational on the grid k/den, k in [lo*den, hi*den]
  Rational rat_in(long lo, long hi, long den = 64) {
    return Rational(int_in(lo * den, hi * den), den);
  }

  // strictly interior rational in (0, 1)
  Rational rat_open01(long den = 64) { return Rational(int_in(1, den - 1), den); }

  template <class S>
  S scalar_in(long lo, long hi, long den = 64) {
    if constexpr (ScalarTraits<S>::exact)
      return rat_in(lo, hi, den);
    else
      return static_cast<double>(int_in(lo * den, hi * den)) / static_cast<double>(den);
  }

 private:
  std::mt19937_64 engine_;
};

// splitmix-style derivation of independent substream seeds
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace rcp

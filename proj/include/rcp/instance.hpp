#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"
#include "rcp/scalar.hpp"

namespace rcp {

// On-disk instance: dimension, simplex vertices and the system triple.
// Values are held exactly; the float pipeline rounds at its boundary.
// Accepted number forms: JSON numbers, decimal strings, "p/q" strings.
struct InstanceData {
  int n = 0;
  Mat<Rational> vertices;  // (n+1) x n
  Mat<Rational> A;         // n x n
  Mat<Rational> B;         // n x m
  Vec<Rational> a;         // n
  std::string name;
  std::optional<std::uint64_t> seed;
};

InstanceData instance_from_json(const nlohmann::json& j);
nlohmann::ordered_json instance_to_json(const InstanceData& inst);
InstanceData load_instance(const std::string& path);
void save_instance(const InstanceData& inst, const std::string& path);

template <class S>
Mat<S> to_backend(const Mat<Rational>& m) {
  Mat<S> out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      out(i, j) = ScalarTraits<S>::from_rational(m(i, j));
  return out;
}

template <class S>
Vec<S> to_backend(const Vec<Rational>& v) {
  Vec<S> out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = ScalarTraits<S>::from_rational(v(i));
  return out;
}

}  // namespace rcp

#include "rcp/instance.hpp"

#include <fstream>

#include "rcp/errors.hpp"

namespace rcp {

namespace {

Rational parse_number(const nlohmann::json& j, const std::string& field) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number_float()) return Rational(j.get<double>());
  if (j.is_string()) {
    auto parsed = ScalarTraits<Rational>::parse(j.get<std::string>());
    if (parsed) return *parsed;
    throw SchemaError(field + ": unparsable number literal \"" + j.get<std::string>() + "\"");
  }
  throw SchemaError(field + ": expected a number or a numeric string");
}

Mat<Rational> parse_matrix(const nlohmann::json& j, int rows, int cols, const std::string& field) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows)
    throw SchemaError(field + ": expected " + std::to_string(rows) + " rows");
  Mat<Rational> m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      throw SchemaError(field + "[" + std::to_string(r) + "]: expected " + std::to_string(cols) +
                        " entries");
    for (int c = 0; c < cols; ++c)
      m(r, c) = parse_number(row[static_cast<std::size_t>(c)],
                             field + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
  }
  return m;
}

Vec<Rational> parse_vector(const nlohmann::json& j, int size, const std::string& field) {
  if (!j.is_array() || static_cast<int>(j.size()) != size)
    throw SchemaError(field + ": expected " + std::to_string(size) + " entries");
  Vec<Rational> v(size);
  for (int i = 0; i < size; ++i)
    v(i) = parse_number(j[static_cast<std::size_t>(i)], field + "[" + std::to_string(i) + "]");
  return v;
}

nlohmann::ordered_json matrix_to_json(const Mat<Rational>& m) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(ScalarTraits<Rational>::str(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

InstanceData instance_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw SchemaError("instance: expected a JSON object");
  if (!j.contains("n") || !j["n"].is_number_integer())
    throw SchemaError("n: required integer dimension");
  InstanceData inst;
  inst.n = j["n"].get<int>();
  if (inst.n < 1 || inst.n > 8) throw SchemaError("n: dimension out of range [1, 8]");
  if (!j.contains("simplex") || !j["simplex"].is_object() || !j["simplex"].contains("vertices"))
    throw SchemaError("simplex.vertices: required");
  inst.vertices = parse_matrix(j["simplex"]["vertices"], inst.n + 1, inst.n, "simplex.vertices");
  if (!j.contains("system") || !j["system"].is_object())
    throw SchemaError("system: required object with A, B, a");
  const auto& sys = j["system"];
  for (const char* key : {"A", "B", "a"})
    if (!sys.contains(key)) throw SchemaError(std::string("system.") + key + ": required");
  inst.A = parse_matrix(sys["A"], inst.n, inst.n, "system.A");
  if (!sys["B"].is_array() || sys["B"].empty() || !sys["B"][0].is_array() || sys["B"][0].empty())
    throw SchemaError("system.B: expected a nonempty matrix");
  const int m = static_cast<int>(sys["B"][0].size());
  inst.B = parse_matrix(sys["B"], inst.n, m, "system.B");
  inst.a = parse_vector(sys["a"], inst.n, "system.a");
  if (j.contains("metadata") && j["metadata"].is_object()) {
    const auto& meta = j["metadata"];
    if (meta.contains("name") && meta["name"].is_string()) inst.name = meta["name"].get<std::string>();
    if (meta.contains("seed") && meta["seed"].is_number_unsigned())
      inst.seed = meta["seed"].get<std::uint64_t>();
  }
  return inst;
}

nlohmann::ordered_json instance_to_json(const InstanceData& inst) {
  nlohmann::ordered_json j;
  j["n"] = inst.n;
  j["simplex"] = {{"vertices", matrix_to_json(inst.vertices)}};
  nlohmann::ordered_json sys;
  sys["A"] = matrix_to_json(inst.A);
  sys["B"] = matrix_to_json(inst.B);
  nlohmann::ordered_json a = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < inst.a.size(); ++i)
    a.push_back(ScalarTraits<Rational>::str(inst.a(i)));
  sys["a"] = std::move(a);
  j["system"] = std::move(sys);
  if (!inst.name.empty() || inst.seed) {
    nlohmann::ordered_json meta;
    if (!inst.name.empty()) meta["name"] = inst.name;
    if (inst.seed) meta["seed"] = *inst.seed;
    j["metadata"] = std::move(meta);
  }
  return j;
}

InstanceData load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open instance file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(path + ": " + e.what());
  }
  return instance_from_json(j);
}

void save_instance(const InstanceData& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open output file: " + path);
  out << instance_to_json(inst).dump(2) << "\n";
}

}  // namespace rcp

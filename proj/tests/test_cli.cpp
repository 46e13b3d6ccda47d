#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "json.hpp"
#include "rcp/gen.hpp"
#include "rcp/instance.hpp"
#include "rcp/pipeline.hpp"
#include "rcp/svg.hpp"

using namespace rcp;

namespace {

nlohmann::json demo_2d_json() {
  return nlohmann::json::parse(R"({
    "n": 2,
    "simplex": {"vertices": [["0","0"],["1","0"],["0","1"]]},
    "system": {"A": [["1","0"],["0","1"]], "B": [["1"],["0"]], "a": ["0","-1/4"]},
    "metadata": {"name": "demo-2d"}
  })");
}

}  // namespace

TEST_CASE("instances round-trip through JSON") {
  auto inst = instance_from_json(demo_2d_json());
  CHECK(inst.n == 2);
  CHECK(inst.a(1) == Rational(-1, 4));
  auto again = instance_from_json(instance_to_json(inst));
  CHECK(again.vertices == inst.vertices);
  CHECK(again.A == inst.A);
  CHECK(again.B == inst.B);
  CHECK(again.a == inst.a);
  CHECK(again.name == inst.name);
}

TEST_CASE("number literals accept rationals, decimals and exponents") {
  auto j = demo_2d_json();
  j["system"]["a"][1] = "-0.25";
  CHECK(instance_from_json(j).a(1) == Rational(-1, 4));
  j["system"]["a"][1] = "-25e-2";
  CHECK(instance_from_json(j).a(1) == Rational(-1, 4));
  j["system"]["a"][1] = -0.25;  // exact binary double
  CHECK(instance_from_json(j).a(1) == Rational(-1, 4));
}

TEST_CASE("schema errors name the offending field") {
  auto missing = demo_2d_json();
  missing["system"].erase("a");
  CHECK_THROWS_WITH_AS(instance_from_json(missing), doctest::Contains("system.a"), SchemaError);

  auto bad_cell = demo_2d_json();
  bad_cell["simplex"]["vertices"][2][1] = "one";
  CHECK_THROWS_WITH_AS(instance_from_json(bad_cell),
                       doctest::Contains("simplex.vertices[2][1]"), SchemaError);

  auto bad_shape = demo_2d_json();
  bad_shape["system"]["A"] = nlohmann::json::array({nlohmann::json::array({"1", "0"})});
  CHECK_THROWS_WITH_AS(instance_from_json(bad_shape), doctest::Contains("system.A"), SchemaError);
}

TEST_CASE("generation is deterministic per seed and varies across seeds") {
  GenOptions opts{3, CaseTag::N3D2B2Quad, 7, BasisFlavor::Any};
  auto a = instance_to_json(generate_instance(opts)).dump();
  auto b = instance_to_json(generate_instance(opts)).dump();
  CHECK(a == b);
  opts.seed = 8;
  auto c = instance_to_json(generate_instance(opts)).dump();
  CHECK(a != c);
}

TEST_CASE("synthesize pipeline reports and exit codes") {
  auto inst = instance_from_json(demo_2d_json());
  RunOptions opts;
  opts.timing = false;
  auto report = run_synthesize(inst, opts);
  CHECK(report["verdict"] == "feasible");
  CHECK(report["classification"]["case"] == "N2_D1B1");
  CHECK(exit_code_for(report) == 0);
  // float backend agrees on this instance
  opts.backend = Backend::Float;
  auto freport = run_synthesize(inst, opts);
  CHECK(freport["verdict"] == "feasible");
  CHECK(freport["mode"] == "float");
}

TEST_CASE("analyze reports the cone condition") {
  auto inst = instance_from_json(demo_2d_json());
  RunOptions opts;
  opts.timing = false;
  auto report = run_analyze(inst, opts);
  CHECK(report["cone_condition"]["holds"] == true);
  CHECK(report["cone"]["constraints"] == nlohmann::json::array({1}));
  CHECK(exit_code_for(report) == 0);
}

TEST_CASE("verify accepts good laws and flags corrupted ones") {
  auto inst = instance_from_json(demo_2d_json());
  RunOptions opts;
  opts.timing = false;
  auto report = run_synthesize(inst, opts);
  auto verified = run_verify(inst, report, opts);
  CHECK(verified["verdict"] == "pass");
  CHECK(exit_code_for(verified) == 0);

  auto corrupted = nlohmann::json::parse(R"({"vertex_values": [["1","0"],["-1","0"]]})");
  auto failed = run_verify(inst, corrupted, opts);
  CHECK(failed["verdict"] == "fail");
  CHECK(exit_code_for(failed) == 2);
  CHECK(failed["checker"]["nonvanishing"] == false);
}

TEST_CASE("vacuous instances exit with the vacuous code") {
  auto j = demo_2d_json();
  j["system"]["A"] = nlohmann::json::parse(R"([["0","0"],["0","0"]])");
  j["system"]["a"] = nlohmann::json::parse(R"(["0","1"])");
  auto inst = instance_from_json(j);
  RunOptions opts;
  opts.timing = false;
  auto report = run_synthesize(inst, opts);
  CHECK(report["verdict"] == "vacuous");
  CHECK(exit_code_for(report) == 3);
}

TEST_CASE("reports are byte-stable without timing") {
  auto inst = generate_instance({3, CaseTag::N3D2B2VertexTri, 3, BasisFlavor::Any});
  RunOptions opts;
  opts.timing = false;
  opts.sample_count = 64;
  opts.sample_seed = 5;
  auto a = run_synthesize(inst, opts).dump();
  auto b = run_synthesize(inst, opts).dump();
  CHECK(a == b);
}

TEST_CASE("float tolerance overrides only touch the float backend") {
  auto inst = instance_from_json(demo_2d_json());
  RunOptions opts;
  opts.timing = false;
  opts.tols.feas = 1e-6;
  auto exact_report = run_synthesize(inst, opts);
  CHECK(exact_report["tolerances"]["feas"] == "0");
  opts.backend = Backend::Float;
  auto float_report = run_synthesize(inst, opts);
  CHECK(float_report["tolerances"]["feas"] == "1e-06");
}

TEST_CASE("plots render one panel per projection") {
  auto inst = instance_from_json(demo_2d_json());
  RunOptions opts;
  opts.timing = false;
  auto report = run_synthesize(inst, opts);
  auto svg = render_svg(inst, report);
  CHECK(svg.find("<svg") == 0);
  CHECK(svg.find("polygon") != std::string::npos);

  auto inst3 = generate_instance({3, CaseTag::N3D2B2Quad, 2, BasisFlavor::Any});
  auto report3 = run_synthesize(inst3, opts);
  auto svg3 = render_svg(inst3, report3);
  CHECK(svg3.find("x2 / x3") != std::string::npos);
}

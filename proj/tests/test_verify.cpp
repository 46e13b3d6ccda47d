#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rcp/gen.hpp"
#include "rcp/instance.hpp"
#include "rcp/synthesis.hpp"
#include "rcp/verify.hpp"
#include "support/oracles.hpp"

using namespace rcp;
using rcp::testing::unit_simplex;

TYPE_TO_STRING(rcp::Rational);

namespace {

template <class S>
struct Fixture {
  Simplex<S> simplex;
  ControlSystem<S> sys;
  RestrictionPolytope<S> g;
};

// the running example: G is the segment (0, 1/4) -- (3/4, 1/4)
template <class S>
Fixture<S> segment_fixture(const Tolerances<S>& tol) {
  auto simplex = unit_simplex<S>(2);
  Mat<S> B(2, 1);
  B << S(1), S(0);
  Vec<S> a(2);
  a << S(0), S(-1) / S(4);
  auto sys = ControlSystem<S>::make(Mat<S>::Identity(2, 2), B, a, tol);
  auto g = restriction_polytope<S>(sys, simplex, tol);
  return Fixture<S>{std::move(simplex), std::move(sys), std::move(*g)};
}

template <class S>
Fixture<S> instance_fixture(const InstanceData& inst, const Tolerances<S>& tol) {
  auto simplex = Simplex<S>::from_vertices(to_backend<S>(inst.vertices), tol);
  auto sys = ControlSystem<S>::make(to_backend<S>(inst.A), to_backend<S>(inst.B),
                                    to_backend<S>(inst.a), tol);
  auto g = restriction_polytope<S>(sys, simplex, tol);
  return Fixture<S>{std::move(simplex), std::move(sys), std::move(*g)};
}

}  // namespace

TEST_CASE_TEMPLATE("constant cone witness certifies", S, double, Rational) {
  auto tol = Tolerances<S>::defaults();
  auto fx = segment_fixture<S>(tol);
  AffineLaw<S> law{Mat<S>(2, 2), std::nullopt, std::nullopt};
  law.values << S(1), S(0), S(1), S(0);
  auto report = check_certificate<S>(fx.simplex, fx.sys, law, fx.g, tol);
  CHECK(report.membership);
  CHECK(report.cone_conditions);
  CHECK(report.nonvanishing);
  CHECK(report.pass);
}

TEST_CASE_TEMPLATE("opposite endpoint values fail the hull condition", S, double, Rational) {
  auto tol = Tolerances<S>::defaults();
  auto fx = segment_fixture<S>(tol);
  AffineLaw<S> law{Mat<S>(2, 2), std::nullopt, std::nullopt};
  law.values << S(1), S(0), S(-1), S(0);
  auto report = check_certificate<S>(fx.simplex, fx.sys, law, fx.g, tol);
  CHECK(report.membership);
  CHECK_FALSE(report.nonvanishing);  // the midpoint value is zero
  CHECK_FALSE(report.pass);
}

TEST_CASE("off-subspace and off-cone laws are reported per condition") {
  auto tol = Tolerances<Rational>::defaults();
  auto fx = segment_fixture<Rational>(tol);
  AffineLaw<Rational> law{Mat<Rational>(2, 2), std::nullopt, std::nullopt};
  law.values << 0, 1, 0, 1;  // not in Im(B), and violates the co{v0,v2} cone? no: check
  auto report = check_certificate<Rational>(fx.simplex, fx.sys, law, fx.g, tol);
  CHECK_FALSE(report.membership);
  law.values << -1, 0, -1, 0;  // in Im(B) but pointing out through facet 1
  report = check_certificate<Rational>(fx.simplex, fx.sys, law, fx.g, tol);
  CHECK(report.membership);
  CHECK_FALSE(report.cone_conditions);
}

TEST_CASE("synthesized quadrilateral laws pass the independent checker") {
  auto tol = Tolerances<Rational>::defaults();
  SynthesisOptions no_constant;
  no_constant.try_constant_first = false;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto inst = generate_instance({3, CaseTag::N3D2B2Quad, seed, BasisFlavor::ConeAvoiding});
    auto fx = instance_fixture<Rational>(inst, tol);
    auto res = synthesize<Rational>(fx.sys, fx.simplex, no_constant, tol);
    REQUIRE(res.verdict == Verdict::Feasible);
    auto report = check_certificate<Rational>(fx.simplex, fx.sys, *res.law, fx.g, tol);
    CHECK(report.pass);
    CHECK(report.affine_consistency);
  }
}

TEST_CASE("quadrilateral consistency is enforced by the checker") {
  auto tol = Tolerances<Rational>::defaults();
  auto inst = generate_instance({3, CaseTag::N3D2B2Quad, 4, BasisFlavor::ConeAvoiding});
  auto fx = instance_fixture<Rational>(inst, tol);
  SynthesisOptions no_constant;
  no_constant.try_constant_first = false;
  auto res = synthesize<Rational>(fx.sys, fx.simplex, no_constant, tol);
  REQUIRE(res.verdict == Verdict::Feasible);
  AffineLaw<Rational> broken = *res.law;
  broken.values.row(3) *= Rational(2);  // breaks the single-affine-map property
  auto report = check_certificate<Rational>(fx.simplex, fx.sys, broken, fx.g, tol);
  CHECK_FALSE(report.affine_consistency);
  CHECK_FALSE(report.pass);
}

TEST_CASE_TEMPLATE("sampling confirms passing certificates", S, double, Rational) {
  auto tol = Tolerances<S>::defaults();
  auto fx = segment_fixture<S>(tol);
  AffineLaw<S> law{Mat<S>(2, 2), std::nullopt, std::nullopt};
  law.values << S(1), S(0), S(1), S(0);
  auto report = sample_check<S>(fx.simplex, fx.sys, law, fx.g, 1000, 2024, tol);
  CHECK(report.checked == 1000);
  CHECK(report.cone_violations == 0);
  CHECK(report.vanish_violations == 0);
  CHECK(report.pass);
}

TEST_CASE("corrupted vertex values violate samples near that vertex") {
  // G here is a boundary edge, so interior samples keep two facet
  // constraints and feel a corrupted endpoint value
  auto tol = Tolerances<double>::defaults();
  auto inst = generate_instance({3, CaseTag::N3D1B2, 2, BasisFlavor::ConeAvoiding});
  auto fx = instance_fixture<double>(inst, tol);
  SynthesisOptions no_constant;
  no_constant.try_constant_first = false;
  auto res = synthesize<double>(fx.sys, fx.simplex, no_constant, tol);
  REQUIRE(res.verdict == Verdict::Feasible);
  auto good = sample_check<double>(fx.simplex, fx.sys, *res.law, fx.g, 1000, 2024, tol);
  CHECK(good.pass);
  AffineLaw<double> corrupted = *res.law;
  // violate a constraint that interior points carry as well
  Vec<double> mid = (fx.g.vertex(0) + fx.g.vertex(1)) / 2.0;
  auto mid_cone = fx.simplex.tangent_cone(mid, tol);
  REQUIRE(mid_cone.normals.rows() > 0);
  corrupted.values.row(0) = mid_cone.normals.row(0);  // points strictly outward
  auto report = sample_check<double>(fx.simplex, fx.sys, corrupted, fx.g, 1000, 2024, tol);
  CHECK(report.cone_violations > 0);
  CHECK_FALSE(report.pass);
}

TEST_CASE("zero samples is a vacuous pass with a warning") {
  auto tol = Tolerances<double>::defaults();
  auto fx = segment_fixture<double>(tol);
  AffineLaw<double> law{Mat<double>(2, 2), std::nullopt, std::nullopt};
  law.values << 1, 0, 1, 0;
  auto report = sample_check<double>(fx.simplex, fx.sys, law, fx.g, 0, 1, tol);
  CHECK(report.vacuous_warning);
  CHECK(report.pass);
  CHECK(report.checked == 0);
}

TEST_CASE("random search finds laws on feasible instances") {
  auto tol = Tolerances<double>::defaults();
  auto fx = segment_fixture<double>(tol);
  auto found = falsify_by_search<double>(fx.simplex, fx.sys, fx.g, fx.sys.input_basis, 5000, 7, tol);
  REQUIRE(found.has_value());
  CHECK(check_certificate<double>(fx.simplex, fx.sys, *found, fx.g, tol).pass);
}

TEST_CASE("random search respects a zero budget") {
  auto tol = Tolerances<double>::defaults();
  auto fx = segment_fixture<double>(tol);
  CHECK_FALSE(falsify_by_search<double>(fx.simplex, fx.sys, fx.g, fx.sys.input_basis, 0, 7, tol)
                  .has_value());
}

TEST_CASE("random search never beats an obstruction certificate") {
  auto tol = Tolerances<Rational>::defaults();
  auto dtol = Tolerances<double>::defaults();
  int obstructed = 0;
  for (std::uint64_t seed = 0; seed < 8 && obstructed < 3; ++seed) {
    auto inst = generate_instance({3, CaseTag::N3D2B2SymTri, seed, BasisFlavor::ConeAvoiding});
    auto fx = instance_fixture<Rational>(inst, tol);
    auto res = synthesize<Rational>(fx.sys, fx.simplex, {}, tol);
    if (res.verdict != Verdict::Obstructed) continue;
    ++obstructed;
    auto fd = instance_fixture<double>(inst, dtol);
    CHECK_FALSE(
        falsify_by_search<double>(fd.simplex, fd.sys, fd.g, fd.sys.input_basis, 20000, 99, dtol)
            .has_value());
  }
  CHECK(obstructed == 3);
}

TEST_CASE("a found law from search always re-passes the checker") {
  auto tol = Tolerances<double>::defaults();
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    auto inst = generate_instance({3, CaseTag::N3D2B2VertexTri, seed, BasisFlavor::Any});
    auto fx = instance_fixture<double>(inst, tol);
    auto found =
        falsify_by_search<double>(fx.simplex, fx.sys, fx.g, fx.sys.input_basis, 20000, 5, tol);
    if (found)
      CHECK(check_certificate<double>(fx.simplex, fx.sys, *found, fx.g, tol).pass);
  }
}

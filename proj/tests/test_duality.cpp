#include <gtest/gtest.h>

#include "support/oracles.hpp"

using namespace schurweyl;

namespace {

struct Case {
  Family family;
  int n, r, s;
  DualityDims dims;
  bool faithful;
};

VerifyOptions modular() {
  VerifyOptions o;
  o.mode = Mode::modular;
  return o;
}

}  // namespace

TEST(Duality, SmallInstancesExact) {
  const std::vector<Case> cases{
      {Family::glA, 2, 2, 0, {10, 2, 10, 2}, true},   {Family::glA, 2, 3, 0, {20, 5, 20, 5}, false},
      {Family::glA, 3, 2, 0, {45, 2, 45, 2}, true},   {Family::o, 3, 2, 0, {35, 3, 35, 3}, true},
      {Family::o, 3, 3, 0, {84, 15, 84, 15}, true},   {Family::sp, 2, 2, 0, {10, 2, 10, 2}, false},
      {Family::sp, 2, 3, 0, {20, 5, 20, 5}, false},   {Family::sp, 4, 2, 0, {126, 3, 126, 3}, true},
      {Family::walled, 2, 1, 1, {10, 2, 10, 2}, true}, {Family::walled, 2, 2, 1, {20, 5, 20, 5}, false},
      {Family::walled, 3, 1, 1, {65, 2, 65, 2}, true},
  };
  for (const auto& c : cases) {
    const auto rep = verify_duality(c.family, c.n, c.r, c.s);
    SCOPED_TRACE(rep.to_json().dump());
    EXPECT_EQ(rep.dims.group_image, c.dims.group_image);
    EXPECT_EQ(rep.dims.diagram_image, c.dims.diagram_image);
    EXPECT_EQ(rep.dims.commutant_of_diagram, c.dims.commutant_of_diagram);
    EXPECT_EQ(rep.dims.commutant_of_group, c.dims.commutant_of_group);
    EXPECT_TRUE(rep.verified());
    EXPECT_TRUE(rep.containment);
    EXPECT_EQ(rep.faithful, c.faithful);
    EXPECT_EQ(rep.method, "exact");
  }
}

TEST(Duality, GroupImageMatchesDenseClosureOracle) {
  const auto inst = build_instance(Family::o, 2, 2, 0);
  EXPECT_EQ(closure_dimension(RationalField{}, inst.group_generators, inst.d),
            oracle::dense_closure_dimension(inst.group_generators, inst.d));
  EXPECT_EQ(commutant_dimension(RationalField{}, inst.diagram_images, inst.d),
            oracle::dense_commutant_dimension(inst.diagram_images, inst.d));
}

TEST(Duality, SpecialOrthogonalCommutantIsLarger) {
  const auto rep = verify_duality(Family::so_direct, 2, 1);
  EXPECT_EQ(rep.dims.diagram_image, 1u);
  EXPECT_EQ(rep.dims.commutant_of_group, 2u);
  EXPECT_GT(rep.dims.commutant_of_group, verify_duality(Family::o, 2, 1).dims.commutant_of_group);
  EXPECT_TRUE(rep.proper_subalgebra());
  EXPECT_FALSE(rep.equal_b);
  EXPECT_TRUE(rep.to_json().contains("proper_subalgebra"));
  EXPECT_FALSE(verify_duality(Family::o, 2, 1).to_json().contains("proper_subalgebra"));
}

TEST(Duality, ModularModeConfirmsExactCounts) {
  for (auto [f, n, r, s] : std::vector<std::tuple<Family, int, int, int>>{
           {Family::glA, 2, 3, 0}, {Family::o, 3, 2, 0}, {Family::sp, 2, 2, 0}, {Family::walled, 2, 2, 1}}) {
    const auto exact = verify_duality(f, n, r, s);
    const auto mod = verify_duality(f, n, r, s, modular());
    EXPECT_EQ(mod.method, "mod-p-confirmed-exact");
    EXPECT_EQ(mod.dims.group_image, exact.dims.group_image);
    EXPECT_EQ(mod.dims.commutant_of_diagram, exact.dims.commutant_of_diagram);
    EXPECT_EQ(mod.dims.commutant_of_group, exact.dims.commutant_of_group);
    EXPECT_EQ(mod.verified(), exact.verified());
  }
}

TEST(Duality, UnconfirmedModularRunNamesBothPrimes) {
  // so-direct has a strict gap on one side, so the bounds cannot meet.
  const auto rep = verify_duality(Family::so_direct, 2, 1, 0, modular());
  EXPECT_EQ(rep.method, "mod-p(" + std::to_string(kDefaultPrimeA) + "," + std::to_string(kDefaultPrimeB) + ")");
}

TEST(Duality, DerangedSmallestCase) {
  const auto rep = verify_duality(Family::deranged, 2, 1);
  EXPECT_EQ(rep.dims.diagram_image, 1u);
  EXPECT_EQ(rep.abstract_dimension, 1u);
  EXPECT_TRUE(rep.verified());
  const auto rep3 = verify_duality(Family::deranged, 3, 1);
  EXPECT_TRUE(rep3.verified());
}

TEST(Duality, DerangedFourTwoModular) {
  const auto rep = verify_duality(Family::deranged, 4, 2, 0, modular());
  EXPECT_EQ(rep.dims.diagram_image, 9u);
  EXPECT_EQ(rep.abstract_dimension, 9u);
  EXPECT_TRUE(rep.verified());
  EXPECT_TRUE(rep.faithful);
  EXPECT_EQ(rep.method, "mod-p-confirmed-exact");
}

TEST(Duality, ReportJsonShapeAndDeterminism) {
  VerifyOptions one, four;
  four.threads = 4;
  const auto a = verify_duality(Family::o, 3, 3, 0, one).to_json();
  const auto b = verify_duality(Family::o, 3, 3, 0, four).to_json();
  EXPECT_EQ(a.dump(), b.dump());
  EXPECT_EQ(a.dump(),
            R"({"family":"o","n":3,"r":3,"s":0,"dims":{"group_image":84,"diagram_image":15,"commutant_of_diagram":84,)"
            R"("commutant_of_group":15},"equal_a":true,"equal_b":true,"faithful":true,"method":"exact",)"
            R"("abstract_dimension":15,"containment":true})");
  EXPECT_TRUE(verify_duality(Family::glA, 2, 2).to_json(true).contains("elapsed_ms"));
}

TEST(Duality, RejectsBadArguments) {
  EXPECT_THROW(verify_duality(Family::sp, 3, 2), InvalidArgument);
  EXPECT_THROW(verify_duality(Family::glA, 2, 2, 1), InvalidArgument);
  EXPECT_THROW(verify_duality(Family::glA, 1, 2), InvalidArgument);
  EXPECT_THROW(parse_family("gl"), InvalidArgument);
  EXPECT_EQ(parse_family("so-direct"), Family::so_direct);
  EXPECT_THROW(verify_duality(Family::glA, 4, 5), CapExceeded);
  EXPECT_THROW(verify_duality(Family::deranged, 6, 3, 0, modular()), CapExceeded);
}

#include <gtest/gtest.h>

#include "qdr/error.hpp"
#include "qdr/model.hpp"

using namespace qdr;

namespace {

PolyMatrix twisted_frame(const GroupModel& g, bool constant_bracket) {
  // theta_1 = d/dx, theta_2 = x^2 d/dx + d/dy  (or x d/dx + d/dy)
  auto r = g.ring;
  PolyMatrix t(r, 2, 2);
  auto x = LaurentPoly::variable(r, 0);
  t.at(0, 0) = LaurentPoly::constant(r, Rational(1));
  t.at(1, 0) = constant_bracket ? x : x * x;
  t.at(1, 1) = LaurentPoly::constant(r, Rational(1));
  return t;
}

void expect_valid(const ModelPtr& m, int n_max) {
  auto rep = validate_structure(*m, n_max);
  for (const auto& v : rep.violations) ADD_FAILURE() << m->name() << ": " << v.identity << " n=" << v.n << " " << v.witness;
  EXPECT_FALSE(rep.checked.empty());
}

}  // namespace

TEST(GroupModel, ValidatesAxioms) {
  EXPECT_NO_THROW(GroupModel::torus(2).validate());
  EXPECT_NO_THROW(GroupModel::additive(2).validate());
  EXPECT_NO_THROW(GroupModel::product(1, 1).validate());
  EXPECT_NO_THROW(GroupModel::cyclic(3).validate());
}

TEST(GroupModel, RejectsNonAction) {
  auto g = GroupModel::cyclic(3);
  auto x = SpaceModel::make(0, 1);
  // t -> t^-1 has order 2, not a Z/3 action
  EXPECT_THROW(build_finite_model(g, x, ActionModel::finite_monomial(g, x, {{-1}}, {1})), ModelError);
}

TEST(Models, AnchorOfWeightOneActions) {
  EXPECT_EQ(models::a1_gm()->level(0).anchor[0].at(0, 0).to_string(), "x");
  EXPECT_EQ(models::gm_gm()->level(0).anchor[0].at(0, 0).to_string(), "t");
  EXPECT_EQ(models::bgm()->level(0).anchor[0].cols(), 0);
}

TEST(Models, SegmentTransportOfGmOnItself) {
  auto m = models::gm_gm();
  auto psi = m->segment_psi(1, 0, 1);
  EXPECT_EQ(psi[0].at(0, 0).to_string(), "g1");
  EXPECT_TRUE(m->segment_psi(1, 1, 1)[0].is_identity());
}

TEST(Models, FaceZeroTransportsFrame) {
  auto m = models::a1_gm();
  EXPECT_EQ(m->face(0, 0).frame[0].at(0, 0).to_string(), "g1");
  EXPECT_TRUE(m->face(0, 1).frame_is_identity);
}

TEST(Models, FiniteComponents) {
  auto m = models::gm_z2();
  EXPECT_EQ(m->level(2).comps, 4);
  const auto& f = m->face(1, 1);  // (h1,h2) -> h1+h2
  EXPECT_EQ(f.comp_target, (std::vector<int>{0, 1, 1, 0}));
  EXPECT_EQ(m->provider().component_label(2, 2), "(1,0)");
}

TEST(Models, AbelianConnectionVanishes) {
  for (const auto& m : models::bundled()) {
    const auto& c = m->connection();
    EXPECT_TRUE(c.gamma_zero) << m->name();
    EXPECT_TRUE(c.psi_zero) << m->name();
  }
}

TEST(Models, StructureIdentitiesHold) {
  for (const auto& m : models::bundled()) expect_valid(m, 4);
  auto g = GroupModel::product(1, 1);
  auto x = SpaceModel::make(1, 1);
  expect_valid(build_transformation_model(g, x, ActionModel::torus_weights(g, x, {{2}, {-1}})), 3);
  expect_valid(build_vector_bundle_model(SpaceModel::make(2, 0), 2), 3);
  auto c3 = GroupModel::cyclic(3);
  auto t2 = SpaceModel::make(0, 2);
  expect_valid(build_finite_model(c3, t2, ActionModel::finite_monomial(c3, t2, {{0, 1}, {-1, -1}}, {1, 1})), 3);
}

TEST(Flatness, TwistedTrivializationRejected) {
  auto g = GroupModel::additive(2, {"x", "y"});
  auto m = build_pair_model(g, twisted_frame(g, false));
  auto f = check_flatness(*m);
  EXPECT_FALSE(f.flat);
  EXPECT_NE(f.witness.find("not in E_1"), std::string::npos);
  EXPECT_THROW(derived_connection(*m), ModelError);
  EXPECT_FALSE(validate_structure(*m, 2).ok());
}

TEST(Flatness, ConstantBracketAccepted) {
  auto g = GroupModel::additive(2, {"x", "y"});
  auto m = build_pair_model(g, twisted_frame(g, true));
  EXPECT_TRUE(check_flatness(*m).flat);
  auto c = derived_connection(*m);
  EXPECT_FALSE(c.gamma_zero);
  for (const auto& row : connection_curvature(*m, c))
    for (const auto& r : row) EXPECT_TRUE(r.is_zero());
  expect_valid(m, 3);
}

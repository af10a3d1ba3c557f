#include <gtest/gtest.h>

#include "qdr/engine.hpp"
#include "qdr/error.hpp"
#include "qdr/identities.hpp"
#include "qdr/naturality.hpp"

using namespace qdr;

namespace {

using Dims = std::vector<int>;

ModelPtr line_manifold() {
  auto g = GroupModel::trivial();
  auto x = SpaceModel::make(1, 0);
  return build_transformation_model(g, x, ActionModel::trivial(g, x), "A1");
}

int page_dim(const std::vector<PageEntry>& es, int m, int n) {
  for (const auto& e : es)
    if (e.m == m && e.n == n) return e.dim;
  return 0;
}

// Graded dims of E_infinity summed along m + n.
Dims abutment(const std::vector<PageEntry>& es, int D) {
  Dims out(static_cast<size_t>(D + 1), 0);
  for (const auto& e : es)
    if (e.m + e.n <= D) out[static_cast<size_t>(e.m + e.n)] += e.dim;
  return out;
}

}  // namespace

TEST(LinearAlgebra, CohomologyOfSmallComplex) {
  // Q -> Q^2 -> Q, d0 = (1,1)^T, d1 = (1,-1)
  GradedComplex c;
  c.top = 2;
  c.dims = {1, 2, 1};
  c.filtration = {{0}, {0, 1}, {1}};
  SparseMatrix d0(2, 1), d1(1, 2);
  d0.add(0, 0, Rational(1));
  d0.add(1, 0, Rational(1));
  d1.add(0, 0, Rational(1));
  d1.add(0, 1, Rational(-1));
  c.d = {d0, d1};
  EXPECT_EQ(complex_cohomology(c, 1), Dims({0, 0}));
  EXPECT_TRUE(filtered_pages(c, 1, 3).pages[0].empty());
  // x alone in filtration 0: E_1 = (0,0) and (1,0), joined by d_1
  c.filtration = {{0}, {1, 1}, {1}};
  auto p = filtered_pages(c, 1, 2);
  EXPECT_EQ(page_dim(p.pages[0], 0, 0), 1);
  EXPECT_EQ(page_dim(p.pages[0], 1, 0), 1);
  EXPECT_EQ(p.pages[0][0].d_rank, 1);
  EXPECT_TRUE(p.pages[1].empty());
  // x -> e1 and e0 -> f inside the graded pieces
  c.filtration = {{0}, {1, 0}, {1}};
  EXPECT_TRUE(filtered_pages(c, 1, 2).pages[0].empty());
}

TEST(LinearAlgebra, DetectsBrokenComplex) {
  GradedComplex c;
  c.top = 2;
  c.dims = {1, 1, 1};
  c.filtration = {{0}, {0}, {0}};
  SparseMatrix d(1, 1);
  d.add(0, 0, Rational(1));
  c.d = {d, d};
  EXPECT_THROW(complex_cohomology(c, 1), ComplexViolation);
}

TEST(Assemble, BGmSmallDegrees) {
  auto m = models::bgm();
  Grading g(m);
  auto secs = g.sectors({});
  ASSERT_EQ(secs.size(), 1u);
  auto tc = assemble_sector(m, 2, secs[0], {});
  bool has_ups = false;
  for (size_t i = 0; i < tc.basis[2].size(); ++i)
    if (tc.grade[2][i] == std::array<int, 3>{1, 1, 0}) has_ups = true;
  EXPECT_TRUE(has_ups);
  auto t0 = assemble_sector(m, 0, secs[0], {});
  EXPECT_EQ(t0.complex.dims[0], 1);
  EXPECT_TRUE(t0.complex.d[0].is_zero());
}

TEST(Assemble, FiniteGroupComponents) {
  auto m = models::gm_z2();
  EXPECT_EQ(m->level(2).comps, 4);
  Grading g(m);
  auto tc = assemble_sector(m, 2, g.sectors({})[1], {});
  int level2 = 0;
  for (size_t i = 0; i < tc.basis[2].size(); ++i)
    if (tc.grade[2][i][2] == 2) ++level2;
  EXPECT_GT(level2, 0);
}

TEST(Cohomology, BGm) {
  EXPECT_EQ(total_cohomology(models::bgm(), 6).dims, Dims({1, 0, 1, 0, 1, 0, 1}));
  EXPECT_EQ(cartan_total(models::bgm(), 6).dims, Dims({1, 0, 1, 0, 1, 0, 1}));
}

TEST(Cohomology, A1ModGmMatchesBGm) {
  auto r = total_cohomology(models::a1_gm(), 5);
  EXPECT_EQ(r.dims, Dims({1, 0, 1, 0, 1, 0}));
  EXPECT_TRUE(r.stabilized);
  EXPECT_EQ(cartan_total(models::a1_gm(), 4).dims, Dims({1, 0, 1, 0, 1}));
}

TEST(Cohomology, PointLikeModels) {
  EXPECT_EQ(total_cohomology(models::gm_gm(), 3).dims, Dims({1, 0, 0, 0}));
  EXPECT_EQ(total_cohomology(models::gm_z2(), 2).dims, Dims({1, 0, 0}));
  EXPECT_EQ(total_cohomology(models::pair_gm(), 3).dims, Dims({1, 0, 0, 0}));
  EXPECT_EQ(total_cohomology(models::line_bundle_a1(), 3).dims, Dims({1, 0, 0, 0}));
}

TEST(Cohomology, OracleAgrees) {
  for (const auto& m : models::bundled()) {
    auto a = total_cohomology(m, 3);
    auto b = oracle_total(m, 3);
    EXPECT_EQ(a.dims, b.dims) << m->name();
    EXPECT_TRUE(a.stabilized && b.stabilized) << m->name();
  }
  EXPECT_EQ(oracle_total(line_manifold(), 3).dims, Dims({1, 0, 0, 0}));
}

TEST(Cohomology, CartanRefusesNonReductive) {
  EXPECT_THROW(cartan_total(models::pair_gm(), 2), ModelError);
  EXPECT_THROW(cartan_total(models::line_bundle_a1(), 2), ModelError);
  EXPECT_EQ(cartan_total(models::gm_z2(), 2).dims, Dims({1, 0, 0}));
}

TEST(Cohomology, ParallelSectorsDeterministic) {
  EngineOptions serial, par;
  par.jobs = 4;
  auto a = total_cohomology(models::gm_gm(), 3, serial);
  auto b = total_cohomology(models::gm_gm(), 3, par);
  ASSERT_EQ(a.sectors.size(), b.sectors.size());
  for (size_t i = 0; i < a.sectors.size(); ++i) {
    EXPECT_EQ(a.sectors[i].sector.key, b.sectors[i].sector.key);
    EXPECT_EQ(a.sectors[i].dims, b.sectors[i].dims);
  }
  EXPECT_EQ(a.notes, b.notes);
}

TEST(Pages, BGmConcentratedOnBottomRow) {
  auto r = spectral_pages(models::bgm(), 6, 3);
  for (const auto& e : r.pages.pages[0]) {
    EXPECT_EQ(e.n, 0);
    EXPECT_EQ(e.m % 2, 0);
    EXPECT_EQ(e.dim, 1);
    EXPECT_EQ(e.d_rank, 0);
  }
  EXPECT_EQ(r.pages.pages[0].size(), 4u);
  for (int m = 0; m <= 6; ++m) EXPECT_EQ(page_dim(r.pages.pages[1], m, 0), page_dim(r.pages.pages[0], m, 0));
  EXPECT_EQ(abutment(r.pages.e_infinity, 6), Dims({1, 0, 1, 0, 1, 0, 1}));
}

TEST(Pages, FiniteQuotient) {
  auto m = models::gm_z2();
  Grading g(m);
  auto secs = g.sectors({});
  auto find = [&](int k) {
    for (const auto& s : secs)
      if (s.key == std::vector<int>{k}) return s;
    throw std::runtime_error("missing sector");
  };
  // dt/t is anti-invariant
  auto p = filtered_pages(assemble_sector(m, 2, find(0), {}).complex, 2, 2);
  EXPECT_EQ(page_dim(p.pages[0], 0, 0), 1);
  EXPECT_EQ(page_dim(p.pages[0], 1, 0), 0);
  // other orbits: t^a + t^-a and (t^a - t^-a) dt/t cancel under d_1
  auto q = filtered_pages(assemble_sector(m, 2, find(-1), {}).complex, 2, 2);
  EXPECT_EQ(page_dim(q.pages[0], 0, 0), 1);
  EXPECT_EQ(page_dim(q.pages[0], 1, 0), 1);
  EXPECT_TRUE(q.pages[1].empty());
  EXPECT_EQ(abutment(spectral_pages(m, 2, 2).pages.e_infinity, 2), Dims({1, 0, 0}));
}

TEST(Pages, ManifoldCollapsesToHodge) {
  auto r = spectral_pages(line_manifold(), 3, 2);
  for (const auto& e : r.pages.pages[0]) EXPECT_EQ(e.n, 0);
  EXPECT_GT(page_dim(r.pages.pages[0], 1, 0), 0);
  EXPECT_EQ(abutment(r.pages.pages[1], 3), Dims({1, 0, 0, 0}));
  EXPECT_EQ(abutment(r.pages.e_infinity, 3), Dims({1, 0, 0, 0}));
}

TEST(Pages, FixedP) {
  auto p0 = fixed_p_pages(models::bgm(), 4, 0, 2);
  EXPECT_EQ(abutment(p0.pages.e_infinity, 4), Dims({1, 0, 0, 0, 0}));
  auto p1 = fixed_p_pages(models::bgm(), 4, 1, 2);
  for (const auto& e : p1.pages.pages[0]) EXPECT_EQ(e.m, 1);
  EXPECT_EQ(abutment(p1.pages.e_infinity, 4), Dims({0, 1, 0, 0, 0}));
  auto f0 = fixed_p_pages(models::gm_z2(), 2, 0, 2);
  for (const auto& e : f0.pages.e_infinity) EXPECT_EQ(e.m + e.n, 0);
}

TEST(Naturality, OriginInclusion) {
  auto r = check_naturality(morphisms::origin_inclusion(), 4);
  for (const auto& v : r.violations) ADD_FAILURE() << v.identity << ": " << v.witness;
  EXPECT_GT(r.checked, 0);
  EXPECT_TRUE(r.iso);
  EXPECT_EQ(r.induced_rank, Dims({1, 0, 1, 0, 1}));
}

TEST(Naturality, PowerMapScalesTransgressionClass) {
  auto m = models::bgm();
  auto f = morphisms::power_map(2, m);
  KElement u(m, 1, 1, 0);
  u.add(0, {}, {0}, LaurentPoly::constant(m->level(0).ring, Rational(1)));
  EXPECT_EQ(pullback_along(f, u), u.scaled(Rational(2)));
  auto r = check_naturality(f, 4);
  EXPECT_TRUE(r.ok());
  EXPECT_TRUE(r.iso);
}

TEST(Naturality, ContravariantComposition) {
  auto m = models::bgm();
  auto f = morphisms::power_map(2, m), g = morphisms::power_map(3, m);
  EXPECT_TRUE(check_contravariance(g, f, 4, {2, 1}).empty());
  auto gf = compose(g, f);
  KElement x(m, 0, 0, 1);
  x.add(0, {}, {}, LaurentPoly::monomial(m->level(1).ring, {1}));
  EXPECT_EQ(pullback_along(gf, x).terms().begin()->second.terms().front().first, Exponent({6}));
}

TEST(Naturality, IdentityAndInvalidData) {
  auto a = models::a1_gm();
  auto id = identity_morphism(a);
  Grading g(a);
  for (const auto& s : g.sectors({}))
    for (const auto& b : g.basis(1, 0, 1, s, {})) {
      KElement x = basis_element(a, {1, 0, 1}, b);
      EXPECT_EQ(pullback_along(id, x), x);
    }
  auto s = models::bgm();
  const auto& gs = *s->provider().group();
  RingHom h(a->provider().group()->ring, gs.ring, {LaurentPoly::variable(gs.ring, 0)});
  RingHom bad(a->provider().base()->ring, s->provider().base()->ring,
              {LaurentPoly::constant(s->provider().base()->ring, Rational(1))});
  EXPECT_THROW(make_morphism(s, a, h, bad), ModelError);
  RingHom sq(a->provider().group()->ring, gs.ring, {LaurentPoly::variable(gs.ring, 0) * Rational(2)});
  EXPECT_THROW(make_morphism(s, a, sq, RingHom(a->provider().base()->ring, s->provider().base()->ring, {LaurentPoly(s->provider().base()->ring)})), ModelError);
}

TEST(IdentitySuite, BundledModelsDegreeThree) {
  SuiteOptions o;
  o.max_degree = 3;
  o.cup_triples = 40;
  o.cup_pairs = 20;
  for (const auto& m : models::bundled()) {
    auto r = run_identity_suite(m, o);
    for (const auto& x : r.results) {
      EXPECT_GT(x.checked, 0) << m->name() << " " << x.name;
      EXPECT_EQ(x.failures, 0) << m->name() << " " << x.witness;
    }
  }
}

TEST(IdentitySuite, TwistedPairModel) {
  // theta_1 = d/dx, theta_2 = x d/dx + d/dy: nonzero derived connection
  auto g = GroupModel::additive(2);
  PolyMatrix t(g.ring, 2, 2);
  t.at(0, 0) = LaurentPoly::constant(g.ring, Rational(1));
  t.at(1, 0) = LaurentPoly::variable(g.ring, 0);
  t.at(1, 1) = LaurentPoly::constant(g.ring, Rational(1));
  auto m = build_pair_model(g, t, "aff");
  ASSERT_FALSE(m->connection().gamma_zero);
  for (int n = 0; n <= 1; ++n) {
    const auto& r = m->level(n).ring;
    for (int p = 0; p <= 2; ++p)
      for (int k = 0; k <= p && p - k <= 2; ++k) {
        KElement x(m, p, k, n);
        Exponent e(static_cast<size_t>(r->size()), 0);
        e[0] = 2;
        e.back() = 1;
        std::vector<int> w;
        for (int i = 0; i < p - k; ++i) w.push_back(i);
        x.add(0, w, std::vector<int>(static_cast<size_t>(k), 1), LaurentPoly::monomial(r, e));
        EXPECT_TRUE(derham(derham(x)).is_zero()) << x.to_string();
        EXPECT_TRUE((phi(derham(x)) + derham(phi(x)) - lie(x)).is_zero()) << x.to_string();
        EXPECT_TRUE((cech(derham(x)) + derham(cech(x))).is_zero()) << x.to_string();
        if (n == 1) EXPECT_TRUE((derham(contraction(x)) + contraction(derham(x))).is_zero()) << x.to_string();
      }
  }
}

TEST(IdentitySuite, EverySignFlipIsDetected) {
  SuiteOptions o;
  o.max_degree = 3;
  o.cup_triples = 20;
  o.cup_pairs = 20;
  for (const auto& mo : mutation_sensitivity(o)) {
    EXPECT_TRUE(mo.detected) << mo.flag;
    EXPECT_FALSE(mo.witness.empty()) << mo.flag;
  }
}

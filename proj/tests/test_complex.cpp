#include <gtest/gtest.h>

#include "qdr/complex.hpp"
#include "qdr/error.hpp"

using namespace qdr;

namespace {

LaurentPoly mono(const RingPtr& r, Exponent e, long c = 1) { return LaurentPoly::monomial(r, std::move(e), Rational(c)); }

KElement elem(const ModelPtr& m, int p, int k, int n, std::vector<int> w, std::vector<int> s, const LaurentPoly& c,
              int comp = 0) {
  KElement x(m, p, k, n);
  x.add(comp, std::move(w), std::move(s), c);
  return x;
}

// g1^a * u0^k on B G_m at level 1
KElement bgm_arrow(const ModelPtr& m, int a, int k) {
  return elem(m, k, k, 1, {}, std::vector<int>(static_cast<size_t>(k), 0), mono(m->level(1).ring, {a}));
}

KElement ups(const ModelPtr& m, int k, long c = 1) {
  return elem(m, k, k, 0, {}, std::vector<int>(static_cast<size_t>(k), 0), LaurentPoly::constant(m->level(0).ring, Rational(c)));
}

}  // namespace

TEST(Element, SortsWedgeWithSign) {
  auto g = GroupModel::additive(2);
  auto aff = build_pair_model(g);
  KElement x(aff, 2, 0, 0);
  x.add(0, {1, 0}, {}, LaurentPoly::constant(aff->level(0).ring, Rational(1)));
  KElement y(aff, 2, 0, 0);
  y.add(0, {0, 1}, {}, LaurentPoly::constant(aff->level(0).ring, Rational(-1)));
  EXPECT_EQ(x, y);
  KElement z(aff, 2, 0, 0);
  z.add(0, {1, 1}, {}, LaurentPoly::constant(aff->level(0).ring, Rational(1)));
  EXPECT_TRUE(z.is_zero());
}

TEST(Element, RejectsBadIndices) {
  auto m = models::a1_gm();
  KElement x(m, 1, 0, 0);
  EXPECT_THROW(x.add(0, {3}, {}, LaurentPoly::constant(m->level(0).ring, Rational(1))), StructuralError);
  EXPECT_THROW(x.add(0, {0, 0}, {}, LaurentPoly::constant(m->level(0).ring, Rational(1))), StructuralError);
  EXPECT_THROW(KElement(m, 0, 0, -1), StructuralError);
}

TEST(Simplicial, BarFacesOnBGm) {
  auto m = models::bgm();
  auto r2 = m->level(2).ring;
  KElement f = bgm_arrow(m, 3, 1);
  EXPECT_EQ(face_pullback(f, 1), elem(m, 1, 1, 2, {}, {0}, mono(r2, {3, 3})));
  EXPECT_EQ(face_pullback(f, 2), elem(m, 1, 1, 2, {}, {0}, mono(r2, {3, 0})));
  EXPECT_EQ(face_pullback(f, 0), elem(m, 1, 1, 2, {}, {0}, mono(r2, {0, 3})));
}

TEST(Simplicial, ActionFaceOnA1Gm) {
  auto m = models::a1_gm();
  auto r1 = m->level(1).ring;
  KElement x2 = elem(m, 0, 0, 0, {}, {}, mono(m->level(0).ring, {2}));
  // vars of level 1: g1, x
  EXPECT_EQ(face_pullback(x2, 0), elem(m, 0, 0, 1, {}, {}, mono(r1, {2, 2})));
  EXPECT_EQ(face_pullback(x2, 1), elem(m, 0, 0, 1, {}, {}, mono(r1, {0, 2})));
}

TEST(Simplicial, DegeneracySetsBlockToUnit) {
  auto m = models::bgm();
  KElement x = elem(m, 1, 1, 2, {}, {0}, mono(m->level(2).ring, {2, -1}));
  EXPECT_EQ(degeneracy_pullback(x, 0), elem(m, 1, 1, 1, {}, {0}, mono(m->level(1).ring, {-1})));
  EXPECT_EQ(degeneracy_pullback(bgm_arrow(m, 4, 1), 0), ups(m, 1));
}

TEST(Simplicial, SectionIdentities) {
  for (const auto& m : models::bundled()) {
    const Level& l = m->level(1);
    KElement x(m, 0, 0, 1);
    Exponent e(static_cast<size_t>(l.ring->size()), 1);
    x.add(0, {}, {}, LaurentPoly::monomial(l.ring, e));
    for (int q = 0; q <= 0; ++q) {
      EXPECT_EQ(degeneracy_pullback(face_pullback(x, q), q), x) << m->name();
      EXPECT_EQ(degeneracy_pullback(face_pullback(x, q + 1), q), x) << m->name();
    }
  }
}

TEST(Simplicial, CupSupportBlocks) {
  auto m = models::bgm();
  auto cs = cup_support(*m, 1, 1);
  KElement f = bgm_arrow(m, 5, 0);
  EXPECT_EQ(pullback(f, *cs.s), elem(m, 0, 0, 2, {}, {}, mono(m->level(2).ring, {5, 0})));
  EXPECT_EQ(pullback(f, *cs.t), elem(m, 0, 0, 2, {}, {}, mono(m->level(2).ring, {0, 5})));
  auto c0 = cup_support(*m, 0, 0);
  EXPECT_EQ(c0.s->objects, std::vector<int>({0}));
  EXPECT_EQ(c0.t->objects, std::vector<int>({0}));
}

TEST(Differentials, CechIsBarDifferential) {
  auto m = models::bgm();
  auto r2 = m->level(2).ring;
  KElement f = bgm_arrow(m, 2, 0);
  KElement expect = elem(m, 0, 0, 2, {}, {}, mono(r2, {0, 2}));
  expect -= elem(m, 0, 0, 2, {}, {}, mono(r2, {2, 2}));
  expect += elem(m, 0, 0, 2, {}, {}, mono(r2, {2, 0}));
  EXPECT_EQ(cech(f), expect);
  EXPECT_TRUE(cech(ups(m, 0)).is_zero());
  EXPECT_TRUE(cech(ups(m, 1)).is_zero());
}

TEST(Differentials, DeRhamOnA1Gm) {
  auto m = models::a1_gm();
  KElement x2 = elem(m, 0, 0, 0, {}, {}, mono(m->level(0).ring, {2}));
  EXPECT_EQ(derham(x2), elem(m, 1, 0, 0, {0}, {}, mono(m->level(0).ring, {1}, 2)));
  // level sign at n = 1
  KElement x = elem(m, 0, 0, 1, {}, {}, mono(m->level(1).ring, {0, 1}));
  EXPECT_EQ(derham(x), elem(m, 1, 0, 1, {0}, {}, LaurentPoly::constant(m->level(1).ring, Rational(-1))));
  EXPECT_TRUE(derham(bgm_arrow(models::bgm(), 3, 0)).is_zero());
}

TEST(Differentials, PhiOnGmGm) {
  auto m = models::gm_gm();
  auto r0 = m->level(0).ring;
  KElement eps = elem(m, 1, 0, 0, {0}, {}, LaurentPoly::constant(r0, Rational(1)));
  EXPECT_EQ(phi(eps), elem(m, 1, 1, 0, {}, {0}, mono(r0, {1})));
  EXPECT_TRUE(phi(elem(m, 2, 2, 0, {}, {0, 0}, mono(r0, {3}))).is_zero());
}

TEST(Differentials, SymmetricDerivativeOnBGm) {
  auto m = models::bgm();
  for (int a : {-2, 1, 3}) {
    KElement x = bgm_arrow(m, a, 0);
    EXPECT_EQ(symmetric_derivative(x, 1), bgm_arrow(m, a, 1).scaled(Rational(a)));
  }
  EXPECT_TRUE(symmetric_derivative(bgm_arrow(m, 0, 2), 1).is_zero());
}

TEST(Differentials, ContractionOnBGm) {
  auto m = models::bgm();
  for (int a : {-1, 2, 5})
    for (int k : {0, 1, 2}) EXPECT_EQ(contraction(bgm_arrow(m, a, k)), ups(m, k + 1, -a)) << a << " " << k;
  EXPECT_TRUE(contraction(bgm_arrow(m, 0, 3)).is_zero());
  EXPECT_TRUE(contraction(ups(m, 2)).is_zero());
}

TEST(Differentials, TotalDifferentialOfArrowCharacter) {
  auto m = models::bgm();
  auto td = total_differential(bgm_arrow(m, 3, 0));
  EXPECT_TRUE(td.phi.is_zero());
  EXPECT_TRUE(td.derham.is_zero());
  EXPECT_EQ(td.contraction, ups(m, 1, -3));
  EXPECT_EQ(td.cech.n(), 2);
  auto tu = total_differential(ups(m, 1));
  EXPECT_TRUE(tu.phi.is_zero() && tu.cech.is_zero() && tu.derham.is_zero() && tu.contraction.is_zero());
}

TEST(Normalize, SubtractsDegenerateParts) {
  auto m = models::bgm();
  KElement g = bgm_arrow(m, 4, 0);
  EXPECT_EQ(normalize(g), g - bgm_arrow(m, 0, 0));
  EXPECT_TRUE(normalize(bgm_arrow(m, 0, 1)).is_zero());
  EXPECT_EQ(normalize(ups(m, 2)), ups(m, 2));
}

TEST(Cup, SymmetricProductAndUnit) {
  auto m = models::bgm();
  EXPECT_EQ(cup(ups(m, 2), ups(m, 3)), ups(m, 5));
  KElement f = bgm_arrow(m, 2, 1);
  EXPECT_EQ(cup(ups(m, 0), f), f);
  EXPECT_EQ(cup(f, ups(m, 0)), f);
  KElement g = bgm_arrow(m, -1, 0);
  EXPECT_EQ(cup(cup(ups(m, 1), ups(m, 1)), g), cup(ups(m, 1), cup(ups(m, 1), g)));
}

TEST(Cup, SignOnOddForms) {
  auto m = models::a1_gm();
  KElement eps = elem(m, 1, 0, 0, {0}, {}, LaurentPoly::constant(m->level(0).ring, Rational(1)));
  KElement g = elem(m, 0, 0, 1, {}, {}, mono(m->level(1).ring, {1, 0}));
  // (-1)^{m(p-k)} with m = 1, p - k = 1
  KElement c = cup(eps, g);
  ASSERT_EQ(c.terms().size(), 1u);
  EXPECT_EQ(c.terms().begin()->second.terms().front().second, Rational(-1));
}

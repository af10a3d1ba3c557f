#include <gtest/gtest.h>

#include <random>

#include "qdr/error.hpp"
#include "qdr/laurent.hpp"
#include "qdr/sparse.hpp"

using namespace qdr;

namespace {

RingPtr ring_g() { return make_ring({{"g", VarKind::laurent}}); }
RingPtr ring_gg() { return make_ring({{"g1", VarKind::laurent}, {"g2", VarKind::laurent}}); }
RingPtr ring_x() { return make_ring({{"x", VarKind::poly}}); }

LaurentPoly mono(const RingPtr& r, Exponent e, long c = 1) { return LaurentPoly::monomial(r, std::move(e), Rational(c)); }

}  // namespace

TEST(Rational, CanonicalForm) {
  Rational a(6, -4);
  EXPECT_EQ(a.to_string(), "-3/2");
  EXPECT_EQ(Rational(0, 5).to_string(), "0");
  EXPECT_EQ(Rational::parse("10/4"), Rational(5, 2));
  EXPECT_THROW(Rational(1, 0), StructuralError);
  EXPECT_THROW(Rational::parse("abc"), StructuralError);
}

TEST(Rational, ExactRoundTrip) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> dist(-1000000, 1000000);
  for (int i = 0; i < 200; ++i) {
    Rational a(dist(rng), dist(rng) | 1), b(dist(rng), dist(rng) | 1);
    EXPECT_EQ((a + b) - b, a);
    if (!b.is_zero()) EXPECT_EQ((a * b) / b, a);
  }
}

TEST(Laurent, Cancellation) {
  auto r = ring_g();
  auto p = mono(r, {2}) + mono(r, {-1});
  auto q = p + (-mono(r, {-1}));
  EXPECT_EQ(q, mono(r, {2}));
}

TEST(Laurent, PowerRule) {
  auto r = ring_g();
  EXPECT_EQ(mono(r, {3}).partial(0), mono(r, {2}, 3));
  EXPECT_EQ(mono(r, {-2}).euler(0), mono(r, {-2}, -2));
}

TEST(Laurent, Product) {
  auto r = ring_x();
  auto x = LaurentPoly::variable(r, 0);
  auto one = LaurentPoly::constant(r, Rational(1));
  EXPECT_EQ((x + one) * (x - one), mono(r, {2}) - one);
}

TEST(Laurent, Rendering) {
  auto r = ring_gg();
  auto p = mono(r, {2, -1}, 3) + LaurentPoly::constant(r, Rational(1, 2));
  EXPECT_EQ(p.to_string(), "3*g1^2*g2^-1 + 1/2");
  EXPECT_EQ((-mono(r, {1, 0}) + mono(r, {0, 1}, -2)).to_string(), "-g1 - 2*g2");
  EXPECT_EQ(LaurentPoly(r).to_string(), "0");
}

TEST(Laurent, Errors) {
  EXPECT_THROW(LaurentPoly::monomial(ring_x(), {-1}), StructuralError);
  EXPECT_THROW(mono(ring_g(), {1}) + mono(ring_x(), {1}), StructuralError);
  EXPECT_THROW(mono(ring_g(), {std::numeric_limits<int>::max()}) * mono(ring_g(), {1}), StructuralError);
  EXPECT_THROW(LaurentPoly::variable(ring_x(), 0).inverse_monomial(), StructuralError);
}

TEST(RingHomTest, MonomialSubstitution) {
  auto g = ring_g(), gg = ring_gg();
  RingHom h(g, gg, {mono(gg, {1, 1})});
  EXPECT_EQ(h.apply(mono(g, {3})), mono(gg, {3, 3}));
}

TEST(RingHomTest, EvaluationAtUnit) {
  auto g = ring_g();
  auto pt = make_ring({});
  RingHom h(g, pt, {LaurentPoly::constant(pt, Rational(1))});
  EXPECT_TRUE(h.apply(mono(g, {2}) - LaurentPoly::constant(g, Rational(1))).is_zero());
}

TEST(RingHomTest, Binomial) {
  auto a = make_ring({{"g", VarKind::poly}});
  auto aa = make_ring({{"g1", VarKind::poly}, {"g2", VarKind::poly}});
  RingHom h(a, aa, {mono(aa, {1, 0}) + mono(aa, {0, 1})});
  EXPECT_EQ(h.apply(mono(a, {2})), mono(aa, {2, 0}) + mono(aa, {1, 1}, 2) + mono(aa, {0, 2}));
}

TEST(RingHomTest, RejectsNonUnitImageOfUnit) {
  auto g = ring_g();
  auto aa = make_ring({{"x", VarKind::poly}});
  EXPECT_THROW(RingHom(g, aa, {LaurentPoly::variable(aa, 0)}), StructuralError);
}

TEST(RingHomTest, HomomorphismLaw) {
  auto src = make_ring({{"a", VarKind::laurent}, {"b", VarKind::poly}});
  auto tgt = make_ring({{"u", VarKind::laurent}, {"v", VarKind::poly}, {"w", VarKind::poly}});
  RingHom h(src, tgt, {mono(tgt, {2, 0, 0}, -3), mono(tgt, {0, 1, 0}) + mono(tgt, {-1, 0, 2}, 2)});
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> e(-2, 2), c(-3, 3), en(0, 2);
  auto random_poly = [&]() {
    std::vector<LaurentPoly::Term> t;
    for (int i = 0; i < 3; ++i) t.push_back({{e(rng), en(rng)}, Rational(c(rng))});
    return LaurentPoly::from_terms(src, t);
  };
  for (int i = 0; i < 50; ++i) {
    auto p = random_poly(), q = random_poly();
    EXPECT_EQ(h.apply(p * q), h.apply(p) * h.apply(q));
    EXPECT_EQ(h.apply(p + q), h.apply(p) + h.apply(q));
  }
}

TEST(Sparse, KernelExamples) {
  SparseMatrix m(2, 2);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) m.add(r, c, Rational(1));
  auto ki = kernel_and_image(m);
  EXPECT_EQ(ki.rank, 1);
  ASSERT_EQ(ki.kernel.size(), 1u);
  EXPECT_EQ(ki.kernel[0], (SparseVector{{0, Rational(1)}, {1, Rational(-1)}}));

  auto z = kernel_and_image(SparseMatrix(2, 3));
  EXPECT_EQ(z.rank, 0);
  EXPECT_EQ(z.kernel.size(), 3u);

  SparseMatrix id(3, 3);
  for (int i = 0; i < 3; ++i) id.add(i, i, Rational(1));
  auto ii = kernel_and_image(id);
  EXPECT_EQ(ii.rank, 3);
  EXPECT_TRUE(ii.kernel.empty());
}

TEST(Sparse, KernelProperty) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> val(-2, 2), dim(1, 9);
  for (int t = 0; t < 100; ++t) {
    int rows = dim(rng), cols = dim(rng);
    SparseMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c)
        if (rng() % 3 == 0) m.add(r, c, Rational(val(rng), 1 + static_cast<long>(rng() % 3)));
    auto ki = kernel_and_image(m);
    EXPECT_EQ(ki.rank + static_cast<int>(ki.kernel.size()), cols);
    EXPECT_EQ(ki.rank, rank(m));
    for (const auto& k : ki.kernel) EXPECT_TRUE(m.apply(k).empty());
    EXPECT_EQ(span_rank(ki.kernel, cols), static_cast<int>(ki.kernel.size()));
  }
}

TEST(Sparse, SubquotientExamples) {
  EXPECT_EQ(subquotient_dim(SparseMatrix(3, 1), SparseMatrix(1, 3)), 3);
  SparseMatrix id(3, 3);
  for (int i = 0; i < 3; ++i) id.add(i, i, Rational(1));
  EXPECT_EQ(subquotient_dim(SparseMatrix(3, 1), id), 0);
  EXPECT_THROW(subquotient_dim(id, id), ComplexViolation);
}

// Independent brute-force bar complex of a cyclic group with trivial
// coefficients: C^n = functions on G^n.
TEST(Sparse, BarComplexOfZ2) {
  const int order = 2;
  auto index = [&](const std::vector<int>& gs) {
    int i = 0;
    for (int g : gs) i = i * order + g;
    return i;
  };
  auto bar = [&](int n) {
    int src = 1, tgt = 1;
    for (int i = 0; i < n; ++i) src *= order;
    tgt = src * order;
    SparseMatrix d(tgt, src);
    for (int t = 0; t < tgt; ++t) {
      std::vector<int> gs(static_cast<size_t>(n + 1));
      int x = t;
      for (int i = n; i >= 0; --i) {
        gs[static_cast<size_t>(i)] = x % order;
        x /= order;
      }
      for (int q = 0; q <= n + 1; ++q) {
        std::vector<int> face;
        if (q == 0) {
          face.assign(gs.begin() + 1, gs.end());
        } else if (q == n + 1) {
          face.assign(gs.begin(), gs.end() - 1);
        } else {
          for (int i = 0; i <= n; ++i) {
            if (i == q - 1) {
              face.push_back((gs[static_cast<size_t>(i)] + gs[static_cast<size_t>(i + 1)]) % order);
              ++i;
            } else {
              face.push_back(gs[static_cast<size_t>(i)]);
            }
          }
        }
        d.add(t, index(face), Rational(q % 2 == 0 ? 1 : -1));
      }
    }
    return d;
  };
  EXPECT_EQ(subquotient_dim(bar(0), bar(1)), 0);
  EXPECT_EQ(subquotient_dim(SparseMatrix(1, 0), bar(0)), 1);
  EXPECT_EQ(subquotient_dim(bar(1), bar(2)), 0);
}

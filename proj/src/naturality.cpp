#include "qdr/naturality.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <unordered_map>

#include "qdr/error.hpp"
#include "qdr/simplicial_util.hpp"

namespace qdr {

namespace {

const GroupModel& group_of(const ModelPtr& m) {
  if (m->kind() != ModelKind::transformation) throw ModelError("morphisms are supported between transformation models");
  return *m->provider().group();
}

const SpaceModel& base_of(const ModelPtr& m) { return *m->provider().base(); }

std::vector<LaurentPoly> variables(const RingPtr& r, int offset, int count) {
  std::vector<LaurentPoly> v;
  for (int i = 0; i < count; ++i) v.push_back(LaurentPoly::variable(r, offset + i));
  return v;
}

// (group_hom x base_hom) on the ring of G x X.
RingHom product_hom(const ModelMorphism& f) {
  const auto& gs = group_of(f.source);
  const auto& act_s = f.source->provider().action()->act;
  const auto& act_t = f.target->provider().action()->act;
  const RingPtr& rs = act_s.target();
  RingHom gin(gs.ring, rs, variables(rs, 0, gs.dim()));
  RingHom xin(base_of(f.source).ring, rs, variables(rs, gs.dim(), base_of(f.source).dim()));
  std::vector<LaurentPoly> imgs;
  for (const auto& p : f.group_hom.images()) imgs.push_back(gin.apply(p));
  for (const auto& p : f.base_hom.images()) imgs.push_back(xin.apply(p));
  return RingHom(act_t.target(), rs, imgs);
}

struct LevelData {
  RingHom hom;       // O(target_n) -> O(source_n)
  PolyMatrix frame;  // e_src x e_tgt
  std::vector<std::vector<Rational>> gens;  // nu_src x nu_tgt
};

LevelData level_data(const ModelMorphism& f, int n) {
  const auto& gs = group_of(f.source);
  const int nus = gs.dim(), es = base_of(f.source).dim();
  auto rs = f.source->level(n).ring;
  auto rt = f.target->level(n).ring;
  std::vector<LaurentPoly> imgs;
  for (int j = 1; j <= n; ++j) {
    RingHom block(gs.ring, rs, variables(rs, (j - 1) * nus, nus));
    for (const auto& p : f.group_hom.images()) imgs.push_back(block.apply(p));
  }
  RingHom base(base_of(f.source).ring, rs, variables(rs, n * nus, es));
  for (const auto& p : f.base_hom.images()) imgs.push_back(base.apply(p));
  LevelData d{RingHom(rt, rs, imgs), {}, {}};
  PolyMatrix j = coframe_jacobian(f.base_hom, base_of(f.source).coframe, base_of(f.target).coframe);
  d.frame = j.map(base);
  PolyMatrix l = coframe_jacobian(f.group_hom, gs.coframe, group_of(f.target).coframe);
  std::vector<Rational> at_unit;
  for (const auto& u : gs.unit.images()) at_unit.push_back(u.constant_term());
  d.gens.assign(static_cast<size_t>(l.rows()), std::vector<Rational>(static_cast<size_t>(l.cols())));
  for (int b = 0; b < l.rows(); ++b)
    for (int a = 0; a < l.cols(); ++a) d.gens[static_cast<size_t>(b)][static_cast<size_t>(a)] = l.at(b, a).evaluate(at_unit);
  return d;
}

std::string morphism_label(const ModelMorphism& f) {
  return f.name.empty() ? f.source->name() + " -> " + f.target->name() : f.name;
}

}  // namespace

ModelMorphism make_morphism(ModelPtr source, ModelPtr target, RingHom group_hom, RingHom base_hom, std::string name) {
  const auto& gs = group_of(source);
  const auto& gt = group_of(target);
  if (gs.additive_rank || gt.additive_rank) throw ModelError("morphisms are supported for torus groups only");
  if (!same_ring(group_hom.source(), gt.ring) || !same_ring(group_hom.target(), gs.ring))
    throw ModelError("group homomorphism has the wrong rings");
  if (!same_ring(base_hom.source(), base_of(target).ring) || !same_ring(base_hom.target(), base_of(source).ring))
    throw ModelError("base map has the wrong rings");
  for (const auto& p : group_hom.images())
    if (!p.is_zero() && !p.is_unit_monomial()) throw ModelError("group homomorphism must send characters to characters");
  ModelMorphism f{std::move(source), std::move(target), std::move(group_hom), std::move(base_hom), std::move(name)};
  // multiplicativity
  const RingHom& ms = gs.multiplication;
  const RingHom& mt = gt.multiplication;
  const RingPtr& gg = ms.target();
  std::vector<LaurentPoly> pair_imgs;
  for (int half = 0; half < 2; ++half) {
    RingHom in(gs.ring, gg, variables(gg, half * gs.dim(), gs.dim()));
    for (const auto& p : f.group_hom.images()) pair_imgs.push_back(in.apply(p));
  }
  RingHom hh(mt.target(), gg, pair_imgs);
  if (!(mt.then(hh) == f.group_hom.then(ms))) throw ModelError("group map is not a homomorphism");
  // equivariance: act^* then (h x b)^* equals b^* then act'^*
  RingHom lhs = f.target->provider().action()->act.then(product_hom(f));
  RingHom rhs = f.base_hom.then(f.source->provider().action()->act);
  if (!(lhs == rhs)) throw ModelError("base map is not equivariant");
  return f;
}

ModelMorphism compose(const ModelMorphism& g, const ModelMorphism& f) {
  if (g.source.get() != f.target.get()) throw StructuralError("morphisms do not compose");
  return make_morphism(f.source, g.target, g.group_hom.then(f.group_hom), g.base_hom.then(f.base_hom),
                       morphism_label(g) + " o " + morphism_label(f));
}

ModelMorphism identity_morphism(const ModelPtr& m) {
  return make_morphism(m, m, RingHom::identity(group_of(m).ring), RingHom::identity(base_of(m).ring), "id");
}

KElement pullback_along(const ModelMorphism& f, const KElement& x) {
  if (x.model().get() != f.target.get()) throw StructuralError("element does not live on the target model");
  LevelData d = level_data(f, x.n());
  KElement out(f.source, x.p(), x.k(), x.n());
  if (!out.admissible()) return out;
  struct Partial {
    std::vector<int> wedge, sym;
    LaurentPoly c;
  };
  for (const auto& [key, coef] : x.terms()) {
    LaurentPoly c0 = d.hom.apply(coef);
    if (c0.is_zero()) continue;
    std::vector<Partial> cur{{{}, {}, c0}};
    for (int w : key.wedge) {
      std::vector<Partial> next;
      for (const auto& pt : cur)
        for (int k = 0; k < d.frame.rows(); ++k) {
          const LaurentPoly& v = d.frame.at(k, w);
          if (v.is_zero() || std::find(pt.wedge.begin(), pt.wedge.end(), k) != pt.wedge.end()) continue;
          Partial np{pt.wedge, {}, pt.c * v};
          np.wedge.push_back(k);
          next.push_back(std::move(np));
        }
      cur = std::move(next);
    }
    for (int a : key.sym) {
      std::vector<Partial> next;
      for (const auto& pt : cur)
        for (size_t b = 0; b < d.gens.size(); ++b) {
          const Rational& v = d.gens[b][static_cast<size_t>(a)];
          if (v.is_zero()) continue;
          Partial np{pt.wedge, pt.sym, pt.c * v};
          np.sym.push_back(static_cast<int>(b));
          next.push_back(std::move(np));
        }
      cur = std::move(next);
    }
    for (auto& pt : cur) out.add(0, std::move(pt.wedge), std::move(pt.sym), pt.c);
  }
  return out;
}

namespace {

using BasisList = std::vector<std::pair<std::array<int, 3>, BasisElement>>;

BasisList target_basis(const ModelPtr& m, int D, const TruncationPolicy& pol) {
  Grading g(m);
  BasisList out;
  for (const auto& s : g.sectors(pol))
    for (int t = 0; t <= D; ++t)
      for (int n = 0; n <= t; ++n)
        for (int k = 0; 2 * k <= t - n; ++k)
          for (auto& b : g.basis(t - n - k, k, n, s, pol)) out.push_back({{t - n - k, k, n}, std::move(b)});
  return out;
}

std::string grade_string(const KElement& x) {
  return "(" + std::to_string(x.p()) + "," + std::to_string(x.k()) + "," + std::to_string(x.n()) + ")";
}

struct SourceIndex {
  std::vector<int> key;
  TruncatedComplex tc;
  std::map<std::tuple<int, int, int, TermKey, Exponent>, int> index;  // per degree via grade
  int offset = 0;
};

}  // namespace

NaturalityReport check_naturality(const ModelMorphism& f, int D, const EngineOptions& opt, int cup_samples,
                                  unsigned seed) {
  if (D < 0) throw StructuralError("degree bound must be nonnegative");
  NaturalityReport rep;
  const std::string label = morphism_label(f);
  using Op = KElement (*)(const KElement&);
  const std::vector<std::pair<std::string, Op>> ops = {
      {"phi", [](const KElement& x) { return phi(x); }},
      {"cech", [](const KElement& x) { return cech(x); }},
      {"d", [](const KElement& x) { return derham(x); }},
      {"iota", [](const KElement& x) { return contraction(x); }}};
  BasisList basis = target_basis(f.target, D, opt.policy);
  for (const auto& [grade, b] : basis) {
    KElement x = basis_element(f.target, grade, b);
    KElement fx = pullback_along(f, x);
    ++rep.checked;
    for (const auto& [name, op] : ops) {
      KElement lhs = pullback_along(f, op(x));
      KElement rhs = op(fx);
      KElement diff = rhs - lhs;
      if (!diff.is_zero())
        rep.violations.push_back({"f^* " + name + " = " + name + " f^*", x.n(),
                                  label + " on " + x.to_string() + " at " + grade_string(x) + ": difference " +
                                      diff.to_string()});
    }
  }
  if (!basis.empty() && cup_samples > 0) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<size_t> pick(0, basis.size() - 1);
    for (int i = 0; i < cup_samples; ++i) {
      const auto& [ga, ba] = basis[pick(rng)];
      const auto& [gb, bb] = basis[pick(rng)];
      KElement a = basis_element(f.target, ga, ba), b = basis_element(f.target, gb, bb);
      KElement lhs = pullback_along(f, cup(a, b));
      KElement rhs = cup(pullback_along(f, a), pullback_along(f, b));
      if (!(lhs - rhs).is_zero())
        rep.violations.push_back({"f^*(a cup b) = f^*a cup f^*b", a.n() + b.n(),
                                  label + " on a = " + a.to_string() + ", b = " + b.to_string() + ": difference " +
                                      (lhs - rhs).to_string()});
    }
  }
  if (!rep.violations.empty()) return rep;

  // induced map on cohomology
  Grading gt(f.target), gs(f.source);
  auto tsecs = gt.sectors(opt.policy);
  std::vector<TruncatedComplex> tcs;
  for (const auto& s : tsecs) tcs.push_back(assemble_sector(f.target, D, s, opt.policy));
  std::map<std::vector<int>, SourceIndex> sources;
  auto add_source = [&](const SectorKey& s) {
    if (sources.count(s.key)) return;
    SourceIndex si;
    si.key = s.key;
    si.tc = assemble_sector(f.source, D, s, opt.policy);
    for (size_t t = 0; t < si.tc.basis.size(); ++t)
      for (size_t i = 0; i < si.tc.basis[t].size(); ++i) {
        const auto& g = si.tc.grade[t][i];
        si.index[{g[0], g[1], g[2], si.tc.basis[t][i].term, si.tc.basis[t][i].exp}] = static_cast<int>(i);
      }
    sources.emplace(s.key, std::move(si));
  };
  for (const auto& s : gs.sectors(opt.policy)) add_source(s);
  // images may fall in further source sectors
  for (const auto& tc : tcs)
    for (size_t t = 0; t <= static_cast<size_t>(D); ++t)
      for (size_t i = 0; i < tc.basis[t].size(); ++i) {
        KElement y = pullback_along(f, basis_element(f.target, tc.grade[t][i], tc.basis[t][i]));
        for (const auto& [key, poly] : y.terms())
          for (const auto& [ex, c] : poly.terms()) add_source(gs.sector_of(y.n(), key, ex, false));
      }
  CohomologyReport ct = total_cohomology(f.target, D, opt);
  rep.target_dims = ct.dims;
  rep.stabilized = ct.stabilized;
  std::vector<int> sdims(static_cast<size_t>(D + 1), 0);
  for (auto& [k, si] : sources) {
    auto h = complex_cohomology(si.tc.complex, D);
    for (int t = 0; t <= D; ++t) sdims[static_cast<size_t>(t)] += h[static_cast<size_t>(t)];
    bool nonzero = std::any_of(h.begin(), h.end(), [](int v) { return v != 0; });
    if (si.tc.sector.boundary && nonzero) rep.stabilized = false;
  }
  rep.source_dims = sdims;
  for (int t = 0; t <= D; ++t) {
    const auto ts = static_cast<size_t>(t);
    int total = 0;
    for (auto& [k, si] : sources) {
      si.offset = total;
      total += si.tc.complex.dims[ts];
    }
    std::vector<SparseVector> boundaries;
    for (auto& [k, si] : sources) {
      if (t == 0) break;
      const auto& d = si.tc.complex.d[ts - 1];
      for (int c = 0; c < d.cols(); ++c) {
        SparseVector v;
        for (const auto& [r, a] : d.column(c)) v.emplace_back(r + si.offset, a);
        if (!v.empty()) boundaries.push_back(std::move(v));
      }
    }
    std::vector<SparseVector> images;
    for (const auto& tc : tcs) {
      auto ki = kernel_and_image(tc.complex.d[ts]);
      for (const auto& z : ki.kernel) {
        std::map<int, Rational> acc;
        for (const auto& [i, a] : z) {
          KElement img = pullback_along(f, basis_element(f.target, tc.grade[ts][static_cast<size_t>(i)],
                                                         tc.basis[ts][static_cast<size_t>(i)]));
          for (const auto& [key, poly] : img.terms())
            for (const auto& [ex, c] : poly.terms()) {
              auto sk = gs.sector_of(img.n(), key, ex, false);
              auto& si = sources.at(sk.key);
              auto it = si.index.find({img.p(), img.k(), img.n(), key, ex});
              if (it == si.index.end())
                throw SectorLeak("pullback image " + img.to_string() + " outside the source sector basis");
              acc[it->second + si.offset] += c * a;
            }
        }
        SparseVector v;
        for (const auto& [i, a] : acc)
          if (!a.is_zero()) v.emplace_back(i, a);
        images.push_back(std::move(v));
      }
    }
    int rb = span_rank(boundaries, total);
    std::vector<SparseVector> all = boundaries;
    all.insert(all.end(), images.begin(), images.end());
    rep.induced_rank.push_back(span_rank(all, total) - rb);
  }
  rep.iso = true;
  for (int t = 0; t <= D; ++t) {
    const auto ts = static_cast<size_t>(t);
    if (rep.induced_rank[ts] != rep.target_dims[ts] || rep.induced_rank[ts] != rep.source_dims[ts]) rep.iso = false;
  }
  return rep;
}

std::vector<Violation> check_contravariance(const ModelMorphism& g, const ModelMorphism& f, int D,
                                            const TruncationPolicy& pol) {
  ModelMorphism gf = compose(g, f);
  std::vector<Violation> out;
  for (const auto& [grade, b] : target_basis(g.target, D, pol)) {
    KElement x = basis_element(g.target, grade, b);
    KElement lhs = pullback_along(gf, x);
    KElement rhs = pullback_along(f, pullback_along(g, x));
    if (!(lhs - rhs).is_zero())
      out.push_back({"(g o f)^* = f^* g^*", x.n(), "on " + x.to_string() + ": difference " + (lhs - rhs).to_string()});
  }
  return out;
}

namespace morphisms {

ModelMorphism origin_inclusion() {
  auto s = models::bgm();
  auto t = models::a1_gm();
  const auto& gs = *s->provider().group();
  RingHom h(t->provider().group()->ring, gs.ring, {LaurentPoly::variable(gs.ring, 0)});
  RingHom b(t->provider().base()->ring, s->provider().base()->ring, {LaurentPoly(s->provider().base()->ring)});
  return make_morphism(s, t, h, b, "origin: BGm -> [A1/Gm]");
}

ModelMorphism power_map(int c, ModelPtr m) {
  if (!m) m = models::bgm();
  const auto& g = *m->provider().group();
  Exponent e{c};
  RingHom h(g.ring, g.ring, {LaurentPoly::monomial(g.ring, e)});
  RingHom b = RingHom::identity(m->provider().base()->ring);
  return make_morphism(m, m, h, b, "g -> g^" + std::to_string(c));
}

}  // namespace morphisms

}  // namespace qdr

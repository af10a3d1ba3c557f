#include <mutex>

#include "qdr/error.hpp"
#include "qdr/model.hpp"
#include "qdr/simplicial_util.hpp"

namespace qdr {

std::string to_string(ModelKind k) {
  switch (k) {
    case ModelKind::transformation: return "transformation";
    case ModelKind::pair: return "pair";
    case ModelKind::vector_bundle: return "vector_bundle";
    case ModelKind::finite: return "finite";
  }
  return "?";
}

std::string LevelProvider::component_label(int, int comp) const { return std::to_string(comp); }

namespace {

LaurentPoly one(const RingPtr& r) { return LaurentPoly::constant(r, Rational(1)); }

CompMatrix single(PolyMatrix m) { return CompMatrix{std::move(m)}; }

// Transformation groupoid G x X => X of an abelian group with coordinates.
class TransformationProvider : public LevelProvider {
 public:
  TransformationProvider(GroupModel g, SpaceModel x, ActionModel a, ModelKind kind)
      : g_(std::move(g)), x_(std::move(x)), a_(std::move(a)), kind_(kind) {
    std::vector<Variable> vars = g_.ring->vars();
    vars.insert(vars.end(), x_.ring->vars().begin(), x_.ring->vars().end());
    gx_ = make_ring(vars);
    // anchor: derivative of the orbit map at the unit, in the base coframe
    std::vector<CoframeKind> gx_cof = g_.coframe;
    gx_cof.insert(gx_cof.end(), x_.coframe.begin(), x_.coframe.end());
    PolyMatrix j = coframe_jacobian(a_.act, gx_cof, x_.coframe);
    std::vector<LaurentPoly> at_unit;
    for (const auto& u : g_.unit.images()) at_unit.push_back(LaurentPoly::constant(ring(0), u.constant_term()));
    for (int i = 0; i < x_.dim(); ++i) at_unit.push_back(LaurentPoly::variable(ring(0), i));
    RingHom unit_eval(gx_, ring(0), at_unit);
    anchor_ = PolyMatrix(ring(0), nu(), e());
    for (int c = 0; c < nu(); ++c)
      for (int i = 0; i < e(); ++i) anchor_.at(c, i) = unit_eval.apply(j.at(c, i));
  }

  ModelKind kind() const override { return kind_; }
  int e() const override { return x_.dim(); }
  int nu() const override { return g_.dim(); }
  int components(int) const override { return 1; }
  const GroupModel* group() const override { return &g_; }
  const SpaceModel* base() const override { return &x_; }
  const ActionModel* action() const override { return &a_; }

  RingPtr ring(int n) const override {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = rings_.find(n);
    if (it != rings_.end()) return it->second;
    std::vector<Variable> vars;
    for (int j = 1; j <= n; ++j)
      for (const auto& v : g_.ring->vars()) vars.push_back({v.name + std::to_string(j), v.kind});
    vars.insert(vars.end(), x_.ring->vars().begin(), x_.ring->vars().end());
    auto r = make_ring(vars);
    rings_[n] = r;
    return r;
  }

  std::vector<CoframeKind> coframe(int n) const override {
    std::vector<CoframeKind> out;
    for (int j = 1; j <= n; ++j) out.insert(out.end(), g_.coframe.begin(), g_.coframe.end());
    out.insert(out.end(), x_.coframe.begin(), x_.coframe.end());
    return out;
  }

  void map(int src, const std::vector<int>& objects, std::vector<int>& comp_target,
           std::vector<RingHom>& homs) const override {
    const int tgt = static_cast<int>(objects.size()) - 1;
    auto rs = ring(src), rt = ring(tgt);
    std::vector<LaurentPoly> imgs;
    for (int j = 1; j <= tgt; ++j) {
      auto h = composite(rs, objects[static_cast<size_t>(j - 1)], objects[static_cast<size_t>(j)]);
      imgs.insert(imgs.end(), h.begin(), h.end());
    }
    // base object theta(0) = (g_theta(0) ... g_1) . x_0
    auto h = composite(rs, 0, objects[0]);
    std::vector<LaurentPoly> act_imgs = h;
    for (int i = 0; i < e(); ++i) act_imgs.push_back(LaurentPoly::variable(rs, src * nu() + i));
    RingHom place(gx_, rs, act_imgs);
    for (const auto& img : a_.act.images()) imgs.push_back(place.apply(img));
    comp_target = {0};
    homs = {RingHom(rt, rs, imgs)};
  }

  CompMatrix delta(int n) const override {
    auto r = ring(n);
    PolyMatrix d(r, e(), n * nu() + e());
    for (int k = 0; k < e(); ++k) d.at(k, n * nu() + k) = one(r);
    return single(d);
  }

  CompMatrix rho(int n, int q, const SignConventions& s) const override {
    auto r = ring(n);
    PolyMatrix m(r, nu(), n * nu() + e());
    if (q == 0) {
      if (n >= 1)
        for (int c = 0; c < nu(); ++c) m.at(c, c) = -one(r);
      RingHom embed = base_embedding(n);
      for (int c = 0; c < nu(); ++c)
        for (int i = 0; i < e(); ++i) m.at(c, n * nu() + i) = embed.apply(anchor_.at(c, i));
      return single(m);
    }
    Rational sign = s.rho_orientation ? Rational(1) : Rational(-1);
    for (int c = 0; c < nu(); ++c) {
      m.at(c, (q - 1) * nu() + c) = LaurentPoly::constant(r, sign);
      if (q < n) m.at(c, q * nu() + c) = LaurentPoly::constant(r, -sign);
    }
    return single(m);
  }

  CompMatrix omega(int n, int q, int r, const SignConventions& s) const override {
    auto rg = ring(n);
    PolyMatrix m(rg, nu(), n * nu() + e());
    // lambda_q - lambda_r, lambda_j = sum_{l <= j} mu^(l)
    Rational sign = s.omega_sign ? Rational(1) : Rational(-1);
    int lo = std::min(q, r), hi = std::max(q, r);
    Rational coef = (q < r) ? -sign : sign;
    for (int j = lo + 1; j <= hi; ++j)
      for (int c = 0; c < nu(); ++c) m.at(c, (j - 1) * nu() + c) = LaurentPoly::constant(rg, coef);
    return single(m);
  }

  CompMatrix anchor0() const override { return single(anchor_); }

 private:
  // Group element g_k ... g_{i+1} (arrow from object i to object k) in ring rs.
  std::vector<LaurentPoly> composite(const RingPtr& rs, int i, int k) const {
    std::vector<LaurentPoly> h;
    if (i == k) {
      for (const auto& u : g_.unit.images()) h.push_back(LaurentPoly::constant(rs, u.constant_term()));
      return h;
    }
    auto block = [&](int j) {
      std::vector<LaurentPoly> b;
      for (int c = 0; c < nu(); ++c) b.push_back(LaurentPoly::variable(rs, (j - 1) * nu() + c));
      return b;
    };
    h = block(i + 1);
    for (int j = i + 2; j <= k; ++j) {
      auto b = block(j);
      b.insert(b.end(), h.begin(), h.end());
      RingHom m(g_.multiplication.target(), rs, b);
      std::vector<LaurentPoly> next;
      for (const auto& img : g_.multiplication.images()) next.push_back(m.apply(img));
      h = std::move(next);
    }
    return h;
  }

  RingHom base_embedding(int n) const {
    auto r0 = ring(0), rn = ring(n);
    std::vector<LaurentPoly> imgs;
    for (int i = 0; i < e(); ++i) imgs.push_back(LaurentPoly::variable(rn, n * nu() + i));
    return RingHom(r0, rn, imgs);
  }

  GroupModel g_;
  SpaceModel x_;
  ActionModel a_;
  ModelKind kind_;
  RingPtr gx_;
  PolyMatrix anchor_;
  mutable std::mutex mu_;
  mutable std::map<int, RingPtr> rings_;
};

// Pair groupoid X x X => X, X the underlying space of a group, tangent bundle
// trivialized by theta (rows, in the coordinate coframe-dual basis).
class PairProvider : public LevelProvider {
 public:
  PairProvider(GroupModel g, PolyMatrix theta) : g_(std::move(g)), theta_(std::move(theta)) {
    if (theta_.rows() != g_.dim() || theta_.cols() != g_.dim()) throw ModelError("trivialization must be dim x dim");
    coinv_ = theta_.transpose().inverse();
  }

  ModelKind kind() const override { return ModelKind::pair; }
  int e() const override { return g_.dim(); }
  int nu() const override { return g_.dim(); }
  int components(int) const override { return 1; }
  const GroupModel* group() const override { return &g_; }

  RingPtr ring(int n) const override {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = rings_.find(n);
    if (it != rings_.end()) return it->second;
    std::vector<Variable> vars;
    for (int j = 0; j <= n; ++j)
      for (const auto& v : g_.ring->vars()) vars.push_back({v.name + std::to_string(j), v.kind});
    auto r = make_ring(vars);
    rings_[n] = r;
    return r;
  }

  std::vector<CoframeKind> coframe(int n) const override {
    std::vector<CoframeKind> out;
    for (int j = 0; j <= n; ++j) out.insert(out.end(), g_.coframe.begin(), g_.coframe.end());
    return out;
  }

  void map(int src, const std::vector<int>& objects, std::vector<int>& comp_target,
           std::vector<RingHom>& homs) const override {
    const int tgt = static_cast<int>(objects.size()) - 1;
    auto rs = ring(src);
    std::vector<LaurentPoly> imgs;
    for (int j = 0; j <= tgt; ++j)
      for (int c = 0; c < e(); ++c)
        imgs.push_back(LaurentPoly::variable(rs, objects[static_cast<size_t>(j)] * e() + c));
    comp_target = {0};
    homs = {RingHom(ring(tgt), rs, imgs)};
  }

  CompMatrix delta(int n) const override {
    auto r = ring(n);
    PolyMatrix d(r, e(), (n + 1) * e());
    RingHom b0 = block(n, 0);
    for (int j = 0; j <= n; ++j) {
      RingHom bj = block(n, j);
      for (int k = 0; k < e(); ++k)
        for (int i = 0; i < e(); ++i) {
          LaurentPoly s(r);
          for (int c = 0; c < e(); ++c) s += b0.apply(coinv_.at(c, k)) * bj.apply(theta_.at(c, i));
          d.at(k, j * e() + i) = s;
        }
    }
    return single(d);
  }

  CompMatrix rho(int n, int q, const SignConventions& s) const override {
    auto r = ring(n);
    PolyMatrix m(r, nu(), (n + 1) * e());
    RingHom bq = block(n, q);
    Rational sign = (q == 0 || s.rho_orientation) ? Rational(1) : Rational(-1);
    for (int a = 0; a < nu(); ++a)
      for (int i = 0; i < e(); ++i) m.at(a, q * e() + i) = bq.apply(theta_.at(a, i)) * sign;
    return single(m);
  }

  CompMatrix omega(int n, int q, int r, const SignConventions& s) const override {
    auto rg = ring(n);
    PolyMatrix m(rg, nu(), (n + 1) * e());
    Rational sign = s.omega_sign ? Rational(1) : Rational(-1);
    RingHom bq = block(n, q), br = block(n, r);
    for (int a = 0; a < nu(); ++a)
      for (int i = 0; i < e(); ++i) {
        m.at(a, q * e() + i) += bq.apply(coinv_.at(a, i)) * sign;
        m.at(a, r * e() + i) -= br.apply(coinv_.at(a, i)) * sign;
      }
    return single(m);
  }

  CompMatrix anchor0() const override {
    RingHom b0 = block(0, 0);
    return single(theta_.map(b0));
  }

 private:
  RingHom block(int n, int j) const {
    auto rn = ring(n);
    std::vector<LaurentPoly> imgs;
    for (int c = 0; c < e(); ++c) imgs.push_back(LaurentPoly::variable(rn, j * e() + c));
    return RingHom(g_.ring, rn, imgs);
  }

  GroupModel g_;
  PolyMatrix theta_, coinv_;
  mutable std::mutex mu_;
  mutable std::map<int, RingPtr> rings_;
};

// Finite group acting on X: X_n is |G|^n copies of X.
class FiniteProvider : public LevelProvider {
 public:
  FiniteProvider(GroupModel g, SpaceModel x, ActionModel a)
      : g_(std::move(g)), x_(std::move(x)), a_(std::move(a)) {
    powers_.push_back(RingHom::identity(x_.ring));
    for (int k = 1; k < g_.order; ++k) powers_.push_back(powers_.back().then(a_.act));
  }

  ModelKind kind() const override { return ModelKind::finite; }
  int e() const override { return x_.dim(); }
  int nu() const override { return 0; }
  int components(int n) const override {
    int c = 1;
    for (int i = 0; i < n; ++i) c *= g_.order;
    return c;
  }
  const GroupModel* group() const override { return &g_; }
  const SpaceModel* base() const override { return &x_; }
  const ActionModel* action() const override { return &a_; }
  RingPtr ring(int) const override { return x_.ring; }
  std::vector<CoframeKind> coframe(int) const override { return x_.coframe; }

  std::vector<int> tuple(int n, int comp) const {
    std::vector<int> t(static_cast<size_t>(n));
    for (int j = n - 1; j >= 0; --j) {
      t[static_cast<size_t>(j)] = comp % g_.order;
      comp /= g_.order;
    }
    return t;
  }

  int index(const std::vector<int>& t) const {
    int c = 0;
    for (int h : t) c = c * g_.order + h;
    return c;
  }

  std::string component_label(int n, int comp) const override {
    auto t = tuple(n, comp);
    std::string s = "(";
    for (size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
    return s + ")";
  }

  void map(int src, const std::vector<int>& objects, std::vector<int>& comp_target,
           std::vector<RingHom>& homs) const override {
    const int tgt = static_cast<int>(objects.size()) - 1;
    comp_target.clear();
    homs.clear();
    for (int c = 0; c < components(src); ++c) {
      auto t = tuple(src, c);
      std::vector<int> u;
      for (int j = 1; j <= tgt; ++j) {
        int h = 0;
        for (int l = objects[static_cast<size_t>(j - 1)] + 1; l <= objects[static_cast<size_t>(j)]; ++l)
          h += t[static_cast<size_t>(l - 1)];
        u.push_back(h % g_.order);
      }
      int h0 = 0;
      for (int l = 1; l <= objects[0]; ++l) h0 += t[static_cast<size_t>(l - 1)];
      comp_target.push_back(index(u));
      homs.push_back(powers_[static_cast<size_t>(h0 % g_.order)]);
    }
  }

  CompMatrix delta(int n) const override {
    return CompMatrix(static_cast<size_t>(components(n)), PolyMatrix::identity(x_.ring, e()));
  }
  CompMatrix rho(int n, int, const SignConventions&) const override {
    return CompMatrix(static_cast<size_t>(components(n)), PolyMatrix(x_.ring, 0, e()));
  }
  CompMatrix omega(int n, int, int, const SignConventions&) const override {
    return CompMatrix(static_cast<size_t>(components(n)), PolyMatrix(x_.ring, 0, e()));
  }
  CompMatrix anchor0() const override { return single(PolyMatrix(x_.ring, 0, e())); }

 private:
  GroupModel g_;
  SpaceModel x_;
  ActionModel a_;
  std::vector<RingHom> powers_;
};

}  // namespace

ModelPtr build_transformation_model(const GroupModel& g, const SpaceModel& x, const ActionModel& a,
                                    const std::string& name, SignConventions signs) {
  if (g.kind == GroupModel::Kind::finite) return build_finite_model(g, x, a, name, signs);
  g.validate();
  a.validate(g, x);
  auto p = std::make_shared<TransformationProvider>(g, x, a, ModelKind::transformation);
  return std::make_shared<FlatGroupoidModel>(name.empty() ? "[" + std::string("X/") + g.name + "]" : name,
                                             ModelKind::transformation, p, signs);
}

ModelPtr build_finite_model(const GroupModel& g, const SpaceModel& x, const ActionModel& a, const std::string& name,
                            SignConventions signs) {
  if (g.kind != GroupModel::Kind::finite) throw ModelError("finite model needs a finite group");
  a.validate(g, x);
  auto p = std::make_shared<FiniteProvider>(g, x, a);
  return std::make_shared<FlatGroupoidModel>(name.empty() ? "[X/" + g.name + "]" : name, ModelKind::finite, p, signs);
}

ModelPtr build_pair_model(const GroupModel& g, const std::optional<PolyMatrix>& twist, const std::string& name,
                          SignConventions signs) {
  if (g.kind != GroupModel::Kind::continuous) throw ModelError("pair model needs a continuous group");
  g.validate();
  PolyMatrix theta = twist ? *twist : PolyMatrix::identity(g.ring, g.dim());
  if (!same_ring(theta.ring(), g.ring)) throw ModelError("trivialization must be over the group coordinate ring");
  auto p = std::make_shared<PairProvider>(g, theta);
  return std::make_shared<FlatGroupoidModel>(name.empty() ? "pair(" + g.name + ")" : name, ModelKind::pair, p, signs);
}

ModelPtr build_vector_bundle_model(const SpaceModel& x, int rank, const std::string& name, SignConventions signs) {
  if (rank < 1) throw ModelError("vector bundle rank must be positive");
  std::vector<std::string> names;
  const std::vector<std::string> pool = {"a", "b", "c", "d"};
  if (rank > 4) throw ModelError("rank too large");
  names.assign(pool.begin(), pool.begin() + rank);
  GroupModel g = GroupModel::additive(rank, names);
  ActionModel a = ActionModel::trivial(g, x);
  g.validate();
  a.validate(g, x);
  auto p = std::make_shared<TransformationProvider>(g, x, a, ModelKind::vector_bundle);
  return std::make_shared<FlatGroupoidModel>(name.empty() ? "bundle(" + std::to_string(rank) + ")" : name,
                                             ModelKind::vector_bundle, p, signs);
}

namespace models {

ModelPtr bgm(SignConventions s) {
  auto g = GroupModel::torus(1);
  auto x = SpaceModel::make(0, 0);
  return build_transformation_model(g, x, ActionModel::trivial(g, x), "BGm", s);
}

ModelPtr a1_gm(SignConventions s) {
  auto g = GroupModel::torus(1);
  auto x = SpaceModel::make(1, 0);
  return build_transformation_model(g, x, ActionModel::torus_weights(g, x, {{1}}), "[A1/Gm]", s);
}

ModelPtr gm_gm(SignConventions s) {
  auto g = GroupModel::torus(1);
  auto x = SpaceModel::make(0, 1);
  return build_transformation_model(g, x, ActionModel::torus_weights(g, x, {{1}}), "[Gm/Gm]", s);
}

ModelPtr gm_z2(SignConventions s) {
  auto g = GroupModel::cyclic(2);
  auto x = SpaceModel::make(0, 1);
  return build_finite_model(g, x, ActionModel::finite_monomial(g, x, {{-1}}, {1}), "[Gm/Z2]", s);
}

ModelPtr pair_gm(SignConventions s) { return build_pair_model(GroupModel::torus(1), std::nullopt, "pair(Gm)", s); }

ModelPtr line_bundle_a1(SignConventions s) {
  return build_vector_bundle_model(SpaceModel::make(1, 0), 1, "bundle(A1,1)", s);
}

std::vector<ModelPtr> bundled(SignConventions s) {
  return {bgm(s), a1_gm(s), gm_gm(s), gm_z2(s), pair_gm(s), line_bundle_a1(s)};
}

}  // namespace models

}  // namespace qdr

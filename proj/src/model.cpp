#include "qdr/model.hpp"

#include "qdr/error.hpp"
#include "qdr/simplicial_util.hpp"

namespace qdr {

FlatGroupoidModel::FlatGroupoidModel(std::string name, ModelKind kind, std::shared_ptr<const LevelProvider> provider,
                                     SignConventions signs)
    : name_(std::move(name)), kind_(kind), provider_(std::move(provider)), signs_(signs) {
  e_ = provider_->e();
  nu_ = provider_->nu();
}

SimplicialMap FlatGroupoidModel::build_map(int src, const std::vector<int>& objects, bool with_frame) const {
  if (src < 0 || objects.empty()) throw StructuralError("invalid simplicial map");
  for (size_t i = 0; i < objects.size(); ++i) {
    if (objects[i] < 0 || objects[i] > src) throw StructuralError("simplicial map object out of range");
    if (i && objects[i] < objects[i - 1]) throw StructuralError("simplicial map must be monotone");
  }
  SimplicialMap m;
  m.src = src;
  m.tgt = static_cast<int>(objects.size()) - 1;
  m.objects = objects;
  provider_->map(src, objects, m.comp_target, m.homs);
  m.preimages.assign(static_cast<size_t>(provider_->components(m.tgt)), {});
  for (size_t c = 0; c < m.comp_target.size(); ++c)
    m.preimages.at(static_cast<size_t>(m.comp_target[c])).push_back(static_cast<int>(c));
  auto cs = provider_->coframe(src), ct = provider_->coframe(m.tgt);
  for (const auto& h : m.homs) m.jacobian.push_back(coframe_jacobian(h, cs, ct));
  if (!with_frame) return m;
  const Level& ls = level(src);
  const Level& lt = level(m.tgt);
  for (size_t c = 0; c < m.homs.size(); ++c) {
    PolyMatrix f;
    if (!signs_.face0_transport && objects[0] != 0) {
      f = PolyMatrix::identity(ls.ring, e_);
    } else {
      const PolyMatrix& eta0 = lt.eta[0][static_cast<size_t>(m.comp_target[c])];
      f = ls.delta[c] * m.jacobian[c] * eta0.map(m.homs[c]);
    }
    if (!f.is_identity()) m.frame_is_identity = false;
    m.frame.push_back(std::move(f));
  }
  return m;
}

std::unique_ptr<Level> FlatGroupoidModel::build_level(int n) const {
  if (n < 0) throw StructuralError("negative level");
  auto l = std::make_unique<Level>();
  l->n = n;
  l->ring = provider_->ring(n);
  l->comps = provider_->components(n);
  l->coframe = provider_->coframe(n);
  l->delta = provider_->delta(n);
  for (int q = 0; q <= n; ++q) l->rho.push_back(provider_->rho(n, q, signs_));
  // anchor pulled back along pi_0
  SimplicialMap p0 = build_map(n, {0}, false);
  CompMatrix a0 = provider_->anchor0();
  for (int c = 0; c < l->comps; ++c)
    l->anchor.push_back(a0[static_cast<size_t>(p0.comp_target[static_cast<size_t>(c)])].map(p0.homs[static_cast<size_t>(c)]));
  for (int q = 0; q <= n; ++q) {
    SimplicialMap pq = build_map(n, {q}, false);
    CompMatrix eta;
    for (int c = 0; c < l->comps; ++c) {
      const PolyMatrix& j = pq.jacobian[static_cast<size_t>(c)];
      PolyMatrix m = l->delta[static_cast<size_t>(c)] * j;
      eta.push_back(j * m.inverse());
    }
    l->eta.push_back(std::move(eta));
  }
  // connection 1-form of nabla^0 = pi_0^* nabla
  const int amb = l->amb();
  const ConnectionData& conn = connection();
  for (int c = 0; c < l->comps; ++c) {
    PolyMatrix g(l->ring, nu_ * nu_, amb);
    if (!conn.gamma_zero) {
      const auto& h = p0.homs[static_cast<size_t>(c)];
      const auto& j = p0.jacobian[static_cast<size_t>(c)];
      for (int a = 0; a < nu_; ++a)
        for (int b = 0; b < nu_; ++b)
          for (int cc = 0; cc < e_; ++cc) {
            LaurentPoly coef = h.apply(conn.gamma[static_cast<size_t>(cc)][static_cast<size_t>(a)][static_cast<size_t>(b)]);
            if (coef.is_zero()) continue;
            for (int x = 0; x < amb; ++x)
              if (!j.at(x, cc).is_zero()) g.at(a * nu_ + b, x) += coef * j.at(x, cc);
          }
    }
    if (!g.is_zero()) l->flat_frame = false;
    l->gamma.push_back(std::move(g));
  }
  return l;
}

const Level& FlatGroupoidModel::level(int n) const {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto it = levels_.find(n);
  if (it != levels_.end()) return *it->second;
  auto l = build_level(n);
  auto& ref = *l;
  levels_.emplace(n, std::move(l));
  return ref;
}

const SimplicialMap& FlatGroupoidModel::map(int src, const std::vector<int>& objects) const {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto key = std::make_pair(src, objects);
  auto it = maps_.find(key);
  if (it != maps_.end()) return *it->second;
  auto m = std::make_unique<SimplicialMap>(build_map(src, objects, true));
  auto& ref = *m;
  maps_.emplace(key, std::move(m));
  return ref;
}

const SimplicialMap& FlatGroupoidModel::face(int n, int q) const {
  if (n < 0 || q < 0 || q > n + 1) throw StructuralError("face index out of range");
  std::vector<int> objects;
  for (int j = 0; j <= n; ++j) objects.push_back(j < q ? j : j + 1);
  return map(n + 1, objects);
}

const SimplicialMap& FlatGroupoidModel::degeneracy(int n, int q) const {
  if (n < 1 || q < 0 || q > n - 1) throw StructuralError("degeneracy index out of range");
  std::vector<int> objects;
  for (int j = 0; j <= n; ++j) objects.push_back(j <= q ? j : j - 1);
  return map(n - 1, objects);
}

const CompMatrix& FlatGroupoidModel::omega(int n, int q, int r) const {
  if (q == r || q < 0 || r < 0 || q > n || r > n) throw StructuralError("omega index out of range");
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto key = std::make_tuple(n, q, r);
  auto it = omegas_.find(key);
  if (it != omegas_.end()) return *it->second;
  auto m = std::make_unique<CompMatrix>(provider_->omega(n, q, r, signs_));
  auto& ref = *m;
  omegas_.emplace(key, std::move(m));
  return ref;
}

CompMatrix FlatGroupoidModel::segment_psi(int n, int q, int r) const {
  if (q < 0 || r < 0 || q > n || r > n) throw StructuralError("segment index out of range");
  const Level& l = level(n);
  SimplicialMap pq = build_map(n, {q}, false), pr = build_map(n, {r}, false);
  CompMatrix out;
  for (int c = 0; c < l.comps; ++c) {
    PolyMatrix mq = l.delta[static_cast<size_t>(c)] * pq.jacobian[static_cast<size_t>(c)];
    PolyMatrix mr = l.delta[static_cast<size_t>(c)] * pr.jacobian[static_cast<size_t>(c)];
    out.push_back(mq.inverse() * mr);
  }
  return out;
}

CompMatrix FlatGroupoidModel::segment_a(int n, int q, int r) const {
  if (q < 0 || r < 0 || q > n || r > n) throw StructuralError("segment index out of range");
  const Level& l = level(n);
  return CompMatrix(static_cast<size_t>(l.comps), PolyMatrix::identity(l.ring, nu_));
}

const ConnectionData& FlatGroupoidModel::connection() const {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  if (!connection_) {
    auto flat = check_flatness(*this);
    if (!flat.flat) {
      connection_ = std::make_unique<ConnectionData>();
      connection_->descent_note = "not flat: " + flat.witness;
    } else {
      connection_ = std::make_unique<ConnectionData>(derived_connection(*this));
    }
  }
  return *connection_;
}

FlatnessResult check_flatness(const FlatGroupoidModel& m) {
  FlatnessResult res;
  if (m.nu() == 0 || m.e() < 2) return res;
  const auto& p = m.provider();
  auto kinds = p.coframe(1);
  CompMatrix delta = p.delta(1);
  CompMatrix w = p.omega(1, 0, 1, m.signs());
  for (size_t c = 0; c < delta.size(); ++c) {
    const PolyMatrix& d = delta[c];
    auto row = [&](int k) {
      std::vector<LaurentPoly> v;
      for (int x = 0; x < d.cols(); ++x) v.push_back(d.at(k, x));
      return v;
    };
    for (int k = 0; k < m.e(); ++k)
      for (int l = k + 1; l < m.e(); ++l) {
        auto br = bracket(row(k), row(l), kinds);
        for (int a = 0; a < m.nu(); ++a) {
          LaurentPoly comp(d.ring());
          for (int x = 0; x < d.cols(); ++x) comp += w[c].at(a, x) * br[static_cast<size_t>(x)];
          if (!comp.is_zero()) {
            res.flat = false;
            res.witness = "[e_" + std::to_string(k) + ", e_" + std::to_string(l) + "] has omega_01 component " +
                          std::to_string(a) + " = " + comp.to_string() + " (not in E_1)";
            return res;
          }
        }
      }
  }
  return res;
}

ConnectionData derived_connection(const FlatGroupoidModel& m) {
  ConnectionData out;
  const int e = m.e(), nu = m.nu();
  out.gamma.assign(static_cast<size_t>(e),
                   std::vector<std::vector<LaurentPoly>>(static_cast<size_t>(nu),
                                                         std::vector<LaurentPoly>(static_cast<size_t>(nu))));
  const auto& p = m.provider();
  if (nu == 0) return out;
  auto flat = check_flatness(m);
  if (!flat.flat) throw ModelError("derived connection needs a flat model (see check_flatness): " + flat.witness);
  auto kinds = p.coframe(1);
  PolyMatrix delta = p.delta(1)[0], rho0 = p.rho(1, 0, m.signs())[0], rho1 = p.rho(1, 1, m.signs())[0];
  PolyMatrix w = p.omega(1, 0, 1, m.signs())[0];
  auto r0 = p.ring(0);
  // iota_0 : X_0 -> X_1 evaluates arrows at the unit
  std::vector<int> ct;
  std::vector<RingHom> hs;
  p.map(0, {0, 0}, ct, hs);
  const RingHom unit_eval = hs[0];
  auto row = [](const PolyMatrix& a, int k) {
    std::vector<LaurentPoly> v;
    for (int x = 0; x < a.cols(); ++x) v.push_back(a.at(k, x));
    return v;
  };
  // nabla_{b_c} nu_a = omega_01 [ e_c , v_0^a ]
  for (int c = 0; c < e; ++c)
    for (int a = 0; a < nu; ++a) {
      auto br = bracket(row(delta, c), row(rho0, a), kinds);
      for (int b = 0; b < nu; ++b) {
        LaurentPoly s(delta.ring());
        for (int x = 0; x < delta.cols(); ++x) s += w.at(b, x) * br[static_cast<size_t>(x)];
        LaurentPoly g = unit_eval.apply(s);
        if (!g.is_zero()) out.gamma_zero = false;
        out.gamma[static_cast<size_t>(c)][static_cast<size_t>(a)][static_cast<size_t>(b)] = g;
      }
    }
  // Psi: (nabla^0 - nabla^1) evaluated on v_0^a, nabla^q = pi_q^* nabla in the
  // common frame (A = identity).
  auto r1 = p.ring(1);
  auto cof0 = p.coframe(0);
  std::vector<PolyMatrix> forms;  // per q: (nu*nu) x amb1
  for (int q = 0; q <= 1; ++q) {
    p.map(1, {q}, ct, hs);
    PolyMatrix j = coframe_jacobian(hs[0], kinds, cof0);
    PolyMatrix f(r1, nu * nu, delta.cols());
    for (int a = 0; a < nu; ++a)
      for (int b = 0; b < nu; ++b)
        for (int c = 0; c < e; ++c) {
          LaurentPoly coef = hs[0].apply(out.gamma[static_cast<size_t>(c)][static_cast<size_t>(a)][static_cast<size_t>(b)]);
          if (coef.is_zero()) continue;
          for (int x = 0; x < delta.cols(); ++x) f.at(a * nu + b, x) += coef * j.at(x, c);
        }
    forms.push_back(std::move(f));
  }
  PolyMatrix diff = forms[0] - forms[1];
  for (int a = 0; a < nu; ++a) {
    PolyMatrix ps(r1, nu, nu);
    for (int b = 0; b < nu; ++b)
      for (int d = 0; d < nu; ++d)
        for (int x = 0; x < delta.cols(); ++x) ps.at(b, d) += diff.at(b * nu + d, x) * rho0.at(a, x);
    if (!ps.is_zero()) out.psi_zero = false;
    out.psi.push_back(std::move(ps));
  }
  (void)rho1;
  // descent: Psi is pulled back from X_0 along s = pi_0
  p.map(1, {0}, ct, hs);
  for (const auto& ps : out.psi) {
    PolyMatrix down = ps.map(unit_eval).map(hs[0]);
    if (!(down == ps)) out.psi_descends = false;
  }
  out.descent_note = out.psi_zero ? "Psi = 0, descends trivially"
                                  : (out.psi_descends ? "Psi is pulled back from X_0" : "Psi does not descend along s");
  return out;
}

std::vector<std::vector<PolyMatrix>> connection_curvature(const FlatGroupoidModel& m, const ConnectionData& c) {
  const int e = m.e(), nu = m.nu();
  auto r0 = m.provider().ring(0);
  auto kinds = m.provider().coframe(0);
  auto gmat = [&](int cc) {
    PolyMatrix g(r0, nu, nu);
    for (int a = 0; a < nu; ++a)
      for (int b = 0; b < nu; ++b) g.at(a, b) = c.gamma[static_cast<size_t>(cc)][static_cast<size_t>(a)][static_cast<size_t>(b)];
    return g;
  };
  auto deriv = [&](const PolyMatrix& g, int var) {
    PolyMatrix d(r0, nu, nu);
    for (int a = 0; a < nu; ++a)
      for (int b = 0; b < nu; ++b) d.at(a, b) = frame_derivative(g.at(a, b), var, kinds[static_cast<size_t>(var)]);
    return d;
  };
  std::vector<std::vector<PolyMatrix>> out(static_cast<size_t>(e));
  for (int i = 0; i < e; ++i)
    for (int j = 0; j < e; ++j) {
      PolyMatrix gi = gmat(i), gj = gmat(j);
      // R(b_i, b_j) = b_i(G_j) - b_j(G_i) + G_j G_i - G_i G_j (frame fields commute)
      out[static_cast<size_t>(i)].push_back(deriv(gj, i) - deriv(gi, j) + gj * gi - gi * gj);
    }
  return out;
}

}  // namespace qdr

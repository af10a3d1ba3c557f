#include "qdr/complex.hpp"

#include <algorithm>

#include "qdr/error.hpp"
#include "qdr/simplicial_util.hpp"

namespace qdr {

int sort_with_sign(std::vector<int>& v) {
  int sign = 1;
  for (size_t i = 1; i < v.size(); ++i)
    for (size_t j = i; j > 0 && v[j - 1] >= v[j]; --j) {
      if (v[j - 1] == v[j]) return 0;
      std::swap(v[j - 1], v[j]);
      sign = -sign;
    }
  return sign;
}

template <bool A>
GradedElement<A>::GradedElement(ModelPtr model, int p, int k, int n) : model_(std::move(model)), p_(p), k_(k), n_(n) {
  if (!model_) throw StructuralError("element without a model");
  if (n < 0 || k < 0) throw StructuralError("invalid trigrade");
  cov_ = A ? model_->level(n_).amb() : model_->e();
}

template <bool A>
const RingPtr& GradedElement<A>::ring(int) const {
  return model_->level(n_).ring;
}

template <bool A>
void GradedElement<A>::add_sorted(const TermKey& key, const LaurentPoly& coef) {
  if (coef.is_zero()) return;
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, coef);
    return;
  }
  it->second += coef;
  if (it->second.is_zero()) terms_.erase(it);
}

template <bool A>
void GradedElement<A>::add(int comp, std::vector<int> wedge, std::vector<int> sym, const LaurentPoly& coef) {
  if (coef.is_zero()) return;
  if (static_cast<int>(wedge.size()) != p_ - k_ || static_cast<int>(sym.size()) != k_)
    throw StructuralError("term does not match the trigrade");
  for (int w : wedge)
    if (w < 0 || w >= cov_) throw StructuralError("covector index out of range");
  for (int a : sym)
    if (a < 0 || a >= model_->nu()) throw StructuralError("generator index out of range");
  int s = sort_with_sign(wedge);
  if (s == 0) return;
  std::sort(sym.begin(), sym.end());
  add_sorted(TermKey{comp, std::move(wedge), std::move(sym)}, s > 0 ? coef : -coef);
}

template <bool A>
void GradedElement<A>::check_same(const GradedElement& o) const {
  if (model_.get() != o.model_.get() || p_ != o.p_ || k_ != o.k_ || n_ != o.n_)
    throw StructuralError("elements of different trigrades or models");
}

template <bool A>
GradedElement<A>& GradedElement<A>::operator+=(const GradedElement& o) {
  check_same(o);
  for (const auto& [key, c] : o.terms_) add_sorted(key, c);
  return *this;
}

template <bool A>
GradedElement<A>& GradedElement<A>::operator-=(const GradedElement& o) {
  check_same(o);
  for (const auto& [key, c] : o.terms_) add_sorted(key, -c);
  return *this;
}

template <bool A>
GradedElement<A> GradedElement<A>::scaled(const Rational& s) const {
  GradedElement r(model_, p_, k_, n_);
  if (s.is_zero()) return r;
  for (const auto& [key, c] : terms_) r.terms_.emplace(key, c * s);
  return r;
}

template <bool A>
bool GradedElement<A>::operator==(const GradedElement& o) const {
  if (model_.get() != o.model_.get() || p_ != o.p_ || k_ != o.k_ || n_ != o.n_) return false;
  return terms_ == o.terms_;
}

template <bool A>
std::string GradedElement<A>::to_string() const {
  if (terms_.empty()) return "0";
  const int comps = model_->level(n_).comps;
  std::string out;
  for (const auto& [key, c] : terms_) {
    if (!out.empty()) out += " + ";
    if (comps > 1) out += "[" + model_->provider().component_label(n_, key.comp) + "] ";
    out += "(" + c.to_string() + ")";
    for (size_t i = 0; i < key.wedge.size(); ++i) out += (i ? "^" : " ") + std::string(A ? "b" : "e") + std::to_string(key.wedge[i]);
    for (size_t i = 0; i < key.sym.size();) {
      size_t j = i;
      while (j < key.sym.size() && key.sym[j] == key.sym[i]) ++j;
      out += " u" + std::to_string(key.sym[i]);
      if (j - i > 1) out += "^" + std::to_string(j - i);
      i = j;
    }
  }
  return out;
}

template class GradedElement<false>;
template class GradedElement<true>;

KElement zero_like(const ModelPtr& m, int p, int k, int n) { return KElement(m, p, k, n); }

namespace {

// Replaces each covector w of `wedge` by sum_k M[k][w] cov_k and expands.
template <class Out>
void substitute_wedge(Out& out, int comp, const std::vector<int>& wedge, const std::vector<int>& sym,
                      const LaurentPoly& coef, const PolyMatrix& m) {
  struct Partial {
    std::vector<int> idx;
    LaurentPoly c;
  };
  std::vector<Partial> cur{{{}, coef}};
  for (int w : wedge) {
    std::vector<Partial> next;
    for (const auto& pt : cur)
      for (int k = 0; k < m.rows(); ++k) {
        const LaurentPoly& v = m.at(k, w);
        if (v.is_zero()) continue;
        if (std::find(pt.idx.begin(), pt.idx.end(), k) != pt.idx.end()) continue;
        Partial np{pt.idx, pt.c * v};
        np.idx.push_back(k);
        next.push_back(std::move(np));
      }
    cur = std::move(next);
  }
  for (auto& pt : cur) out.add(comp, std::move(pt.idx), sym, pt.c);
}

// Derivation sending covector w to sum_a M[a][w] u_a.
template <class In>
KElement contract_into_sym(const In& x, const CompMatrix& m, int p, int k, int n, const Rational& sign) {
  KElement out(x.model(), p, k, n);
  for (const auto& [key, c] : x.terms()) {
    const PolyMatrix& mm = m[static_cast<size_t>(key.comp)];
    for (size_t i = 0; i < key.wedge.size(); ++i) {
      std::vector<int> w = key.wedge;
      int cov = w[i];
      w.erase(w.begin() + static_cast<long>(i));
      Rational s = (i % 2 == 0) ? sign : -sign;
      for (int a = 0; a < mm.rows(); ++a) {
        const LaurentPoly& v = mm.at(a, cov);
        if (v.is_zero()) continue;
        std::vector<int> sym = key.sym;
        sym.push_back(a);
        out.add(key.comp, w, std::move(sym), c * v * s);
      }
    }
  }
  return out;
}

AmbientElement contract_into_sym_ambient(const AmbientElement& x, const CompMatrix& m) {
  AmbientElement out(x.model(), x.p(), x.k() + 1, x.n());
  if (x.p() == x.k()) return out;
  for (const auto& [key, c] : x.terms()) {
    const PolyMatrix& mm = m[static_cast<size_t>(key.comp)];
    for (size_t i = 0; i < key.wedge.size(); ++i) {
      std::vector<int> w = key.wedge;
      int cov = w[i];
      w.erase(w.begin() + static_cast<long>(i));
      Rational s = (i % 2 == 0) ? Rational(1) : Rational(-1);
      for (int a = 0; a < mm.rows(); ++a) {
        const LaurentPoly& v = mm.at(a, cov);
        if (v.is_zero()) continue;
        std::vector<int> sym = key.sym;
        sym.push_back(a);
        out.add(key.comp, w, std::move(sym), c * v * s);
      }
    }
  }
  return out;
}

}  // namespace

KElement pullback(const KElement& x, const SimplicialMap& f) {
  if (x.n() != f.tgt) throw StructuralError("pullback: level mismatch");
  KElement out(x.model(), x.p(), x.k(), f.src);
  // group terms by component of the target level
  std::map<int, std::vector<const std::pair<const TermKey, LaurentPoly>*>> by_comp;
  for (const auto& t : x.terms()) by_comp[t.first.comp].push_back(&t);
  for (const auto& [ct, ts] : by_comp) {
    for (int c : f.preimages[static_cast<size_t>(ct)]) {
      const RingHom& h = f.homs[static_cast<size_t>(c)];
      for (const auto* t : ts) {
        LaurentPoly coef = h.apply(t->second);
        if (coef.is_zero()) continue;
        if (f.frame_is_identity || t->first.wedge.empty()) {
          out.add_sorted(TermKey{c, t->first.wedge, t->first.sym}, coef);
        } else {
          substitute_wedge(out, c, t->first.wedge, t->first.sym, coef, f.frame[static_cast<size_t>(c)]);
        }
      }
    }
  }
  return out;
}

KElement face_pullback(const KElement& x, int q) {
  if (q < 0 || q > x.n() + 1) throw StructuralError("face index out of range");
  return pullback(x, x.model()->face(x.n(), q));
}

KElement degeneracy_pullback(const KElement& x, int q) {
  if (x.n() < 1 || q < 0 || q > x.n() - 1) throw StructuralError("degeneracy index out of range");
  return pullback(x, x.model()->degeneracy(x.n(), q));
}

CupSupport cup_support(const FlatGroupoidModel& m, int n, int mm) {
  if (n < 0 || mm < 0) throw StructuralError("cup support: negative level");
  std::vector<int> s, t;
  for (int j = 0; j <= n; ++j) s.push_back(j);
  for (int j = 0; j <= mm; ++j) t.push_back(j + n);
  return {&m.map(n + mm, s), &m.map(n + mm, t)};
}

AmbientElement lift(const KElement& x, int q) {
  const Level& l = x.model()->level(x.n());
  if (q < 0 || q > x.n()) throw StructuralError("lift index out of range");
  AmbientElement out(x.model(), x.p(), x.k(), x.n());
  for (const auto& [key, c] : x.terms()) {
    substitute_wedge(out, key.comp, key.wedge, key.sym, c, l.eta[static_cast<size_t>(q)][static_cast<size_t>(key.comp)]);
  }
  return out;
}

KElement project(const AmbientElement& a) {
  const Level& l = a.model()->level(a.n());
  KElement out(a.model(), a.p(), a.k(), a.n());
  for (const auto& [key, c] : a.terms())
    substitute_wedge(out, key.comp, key.wedge, key.sym, c, l.delta[static_cast<size_t>(key.comp)]);
  return out;
}

AmbientElement covariant_derivative(const AmbientElement& a) {
  const Level& l = a.model()->level(a.n());
  const int amb = l.amb(), nu = a.model()->nu();
  AmbientElement out(a.model(), a.p() + 1, a.k(), a.n());
  if (a.p() - a.k() + 1 > amb) return out;
  for (const auto& [key, c] : a.terms()) {
    for (int x = 0; x < amb; ++x) {
      LaurentPoly dc = frame_derivative(c, x, l.coframe[static_cast<size_t>(x)]);
      if (dc.is_zero()) continue;
      std::vector<int> w{x};
      w.insert(w.end(), key.wedge.begin(), key.wedge.end());
      out.add(key.comp, std::move(w), key.sym, dc);
    }
    if (l.flat_frame || key.sym.empty()) continue;
    // (-1)^{|I|} c beta_I ^ nabla(u^S),  nabla u_b = - sum_a Gamma_ab u_a
    const PolyMatrix& g = l.gamma[static_cast<size_t>(key.comp)];
    Rational sign = (key.wedge.size() % 2 == 0) ? Rational(-1) : Rational(1);
    for (size_t j = 0; j < key.sym.size(); ++j) {
      int b = key.sym[j];
      for (int aa = 0; aa < nu; ++aa)
        for (int x = 0; x < amb; ++x) {
          const LaurentPoly& gv = g.at(aa * nu + b, x);
          if (gv.is_zero()) continue;
          std::vector<int> w = key.wedge;
          w.push_back(x);
          std::vector<int> sym = key.sym;
          sym[j] = aa;
          out.add(key.comp, std::move(w), std::move(sym), c * gv * sign);
        }
    }
  }
  return out;
}

AmbientElement rho(const AmbientElement& a, int q) {
  const Level& l = a.model()->level(a.n());
  if (q < 0 || q > a.n()) throw StructuralError("rho index out of range");
  return contract_into_sym_ambient(a, l.rho[static_cast<size_t>(q)]);
}

KElement phi(const KElement& x) {
  const Level& l = x.model()->level(x.n());
  if (x.p() == x.k()) return KElement(x.model(), x.p(), x.k() + 1, x.n());
  Rational sign = (x.model()->signs().phi_level_sign && x.n() % 2) ? Rational(-1) : Rational(1);
  return contract_into_sym(x, l.anchor, x.p(), x.k() + 1, x.n(), sign);
}

KElement cech(const KElement& x) {
  KElement out(x.model(), x.p(), x.k(), x.n() + 1);
  const bool alt = x.model()->signs().cech_alternating;
  for (int q = 0; q <= x.n() + 1; ++q) {
    KElement f = face_pullback(x, q);
    if (alt && q % 2) out -= f;
    else out += f;
  }
  return out;
}

KElement derham(const KElement& x, int lift_index) {
  KElement out(x.model(), x.p() + 1, x.k(), x.n());
  if (x.p() - x.k() + 1 > x.model()->e()) return out;
  out = project(covariant_derivative(lift(x, lift_index)));
  if (x.model()->signs().derham_level_sign && x.n() % 2) out = -out;
  return out;
}

KElement symmetric_derivative(const KElement& x, int q, int lift_index) {
  AmbientElement a = lift(x, lift_index);
  AmbientElement r = rho(covariant_derivative(a), q);
  if (x.p() > x.k()) r += covariant_derivative(rho(a, q));
  return project(r);
}

KElement lie(const KElement& x) {
  KElement out(x.model(), x.p() + 1, x.k() + 1, x.n());
  for (int q = 0; q <= x.n(); ++q) out += symmetric_derivative(x, q);
  return out;
}

KElement lie_ambient(const AmbientElement& a) {
  AmbientElement d = covariant_derivative(a);
  KElement out(a.model(), a.p() + 1, a.k() + 1, a.n());
  for (int q = 0; q <= a.n(); ++q) {
    AmbientElement r = rho(d, q);
    if (a.p() > a.k()) r += covariant_derivative(rho(a, q));
    out += project(r);
  }
  return out;
}

KElement contraction(const KElement& x) {
  if (x.n() == 0) {
    // the target level would be -1; represent the zero map at level 0
    return KElement(x.model(), x.p() + 1, x.k() + 1, 0);
  }
  KElement out(x.model(), x.p() + 1, x.k() + 1, x.n() - 1);
  for (int j = 1; j <= x.n(); ++j) {
    KElement lj = symmetric_derivative(x, j);
    if (lj.is_zero()) continue;
    for (int i = 0; i < j; ++i) {
      KElement t = degeneracy_pullback(lj, i);
      if (i % 2) out -= t;
      else out += t;
    }
  }
  return x.model()->signs().contraction_negated ? -out : out;
}

KElement alternating_degeneracy(const KElement& x) {
  if (x.n() == 0) throw StructuralError("no degeneracies at level 0");
  KElement out(x.model(), x.p(), x.k(), x.n() - 1);
  for (int i = 0; i < x.n(); ++i) {
    KElement t = degeneracy_pullback(x, i);
    if (i % 2) out -= t;
    else out += t;
  }
  return out;
}

KElement cup(const KElement& x, const KElement& y) {
  if (x.model().get() != y.model().get()) throw StructuralError("cup of elements of different models");
  const int n = x.n(), mm = y.n();
  const int p = x.p() + y.p(), k = x.k() + y.k();
  KElement out(x.model(), p, k, n + mm);
  if (p - k > x.model()->e()) return out;
  CupSupport cs = cup_support(*x.model(), n, mm);
  KElement sx = pullback(x, *cs.s);
  KElement ty = pullback(y, *cs.t);
  bool neg = x.model()->signs().cup_sign && (mm * (x.p() - x.k())) % 2;
  for (const auto& [kx, cx] : sx.terms())
    for (const auto& [ky, cy] : ty.terms()) {
      if (kx.comp != ky.comp) continue;
      std::vector<int> w = kx.wedge;
      w.insert(w.end(), ky.wedge.begin(), ky.wedge.end());
      std::vector<int> sym = kx.sym;
      sym.insert(sym.end(), ky.sym.begin(), ky.sym.end());
      LaurentPoly c = cx * cy;
      out.add(kx.comp, std::move(w), std::move(sym), neg ? -c : c);
    }
  return out;
}

KElement normalize(const KElement& x) {
  KElement cur = x;
  for (int j = 0; j < x.n(); ++j) cur -= face_pullback(degeneracy_pullback(cur, j), j + 1);
  return cur;
}

AmbientElement ambient_pullback(const AmbientElement& a, const SimplicialMap& f) {
  if (a.n() != f.tgt) throw StructuralError("pullback: level mismatch");
  if (a.k() != 0) throw StructuralError("ambient pullback is defined on forms only");
  AmbientElement out(a.model(), a.p(), 0, f.src);
  for (const auto& [key, c] : a.terms())
    for (int comp : f.preimages[static_cast<size_t>(key.comp)]) {
      LaurentPoly coef = f.homs[static_cast<size_t>(comp)].apply(c);
      if (coef.is_zero()) continue;
      substitute_wedge(out, comp, key.wedge, key.sym, coef, f.jacobian[static_cast<size_t>(comp)]);
    }
  return out;
}

AmbientElement ambient_cech(const AmbientElement& a) {
  AmbientElement out(a.model(), a.p(), 0, a.n() + 1);
  for (int q = 0; q <= a.n() + 1; ++q) {
    AmbientElement f = ambient_pullback(a, a.model()->face(a.n(), q));
    if (q % 2) out -= f;
    else out += f;
  }
  return out;
}

AmbientElement exterior_derivative(const AmbientElement& a) {
  if (a.k() != 0) throw StructuralError("exterior derivative is defined on forms only");
  return covariant_derivative(a);
}

TotalDifferential total_differential(const KElement& x) {
  return {phi(x), cech(x), derham(x), contraction(x)};
}

}  // namespace qdr

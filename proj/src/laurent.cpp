#include "qdr/laurent.hpp"

#include <algorithm>
#include <climits>
#include <sstream>

#include "qdr/error.hpp"

namespace qdr {

int Ring::index_of(const std::string& name) const {
  for (int i = 0; i < size(); ++i)
    if (vars_[static_cast<size_t>(i)].name == name) return i;
  return -1;
}

RingPtr make_ring(std::vector<Variable> vars) { return std::make_shared<const Ring>(std::move(vars)); }

bool same_ring(const RingPtr& a, const RingPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

int checked_add(int a, int b) {
  int r;
  if (__builtin_add_overflow(a, b, &r)) throw StructuralError("exponent overflow");
  return r;
}

int checked_mul(int a, int b) {
  int r;
  if (__builtin_mul_overflow(a, b, &r)) throw StructuralError("exponent overflow");
  return r;
}

namespace {

void validate_exponent(const Ring& ring, const Exponent& e) {
  if (static_cast<int>(e.size()) != ring.size())
    throw StructuralError("exponent length does not match ring");
  for (int i = 0; i < ring.size(); ++i)
    if (e[static_cast<size_t>(i)] < 0 && ring.var(i).kind == VarKind::poly)
      throw StructuralError("negative exponent on polynomial variable " + ring.var(i).name);
}

Exponent add_exp(const Exponent& a, const Exponent& b) {
  Exponent r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = checked_add(a[i], b[i]);
  return r;
}

std::vector<LaurentPoly::Term> flatten(std::map<Exponent, Rational>& acc) {
  std::vector<LaurentPoly::Term> out;
  out.reserve(acc.size());
  for (auto& [e, c] : acc)
    if (!c.is_zero()) out.emplace_back(e, std::move(c));
  return out;
}

}  // namespace

LaurentPoly LaurentPoly::constant(RingPtr ring, const Rational& c) {
  LaurentPoly p(ring);
  if (!c.is_zero()) p.terms_.emplace_back(Exponent(static_cast<size_t>(ring->size()), 0), c);
  return p;
}

LaurentPoly LaurentPoly::variable(RingPtr ring, int i) {
  Exponent e(static_cast<size_t>(ring->size()), 0);
  e.at(static_cast<size_t>(i)) = 1;
  return monomial(std::move(ring), std::move(e));
}

LaurentPoly LaurentPoly::monomial(RingPtr ring, Exponent e, const Rational& c) {
  validate_exponent(*ring, e);
  LaurentPoly p(ring);
  if (!c.is_zero()) p.terms_.emplace_back(std::move(e), c);
  return p;
}

LaurentPoly LaurentPoly::from_terms(RingPtr ring, std::vector<Term> terms) {
  std::map<Exponent, Rational> acc;
  for (auto& [e, c] : terms) {
    validate_exponent(*ring, e);
    acc[e] += c;
  }
  LaurentPoly p(ring);
  p.terms_ = flatten(acc);
  return p;
}

bool LaurentPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() != 1) return false;
  return std::all_of(terms_[0].first.begin(), terms_[0].first.end(), [](int x) { return x == 0; });
}

Rational LaurentPoly::constant_term() const {
  for (const auto& [e, c] : terms_)
    if (std::all_of(e.begin(), e.end(), [](int x) { return x == 0; })) return c;
  return Rational(0);
}

bool LaurentPoly::is_unit_monomial() const {
  if (terms_.size() != 1) return false;
  const auto& e = terms_[0].first;
  for (int i = 0; i < ring_->size(); ++i)
    if (e[static_cast<size_t>(i)] != 0 && ring_->var(i).kind != VarKind::laurent) return false;
  return true;
}

LaurentPoly LaurentPoly::inverse_monomial() const {
  if (!is_unit_monomial()) throw StructuralError("inverse of non-unit " + to_string());
  Exponent e = terms_[0].first;
  for (auto& x : e) x = checked_mul(x, -1);
  return monomial(ring_, std::move(e), terms_[0].second.inverse());
}

void LaurentPoly::check_ring(const LaurentPoly& o) const {
  if (!same_ring(ring_, o.ring_)) throw StructuralError("variable-list mismatch");
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  if (o.terms_.empty()) {
    if (!ring_) ring_ = o.ring_;
    return *this;
  }
  if (!ring_) ring_ = o.ring_;
  check_ring(o);
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && terms_[i].first < o.terms_[j].first)) {
      out.push_back(std::move(terms_[i++]));
    } else if (i == terms_.size() || o.terms_[j].first < terms_[i].first) {
      out.push_back(o.terms_[j++]);
    } else {
      Rational c = terms_[i].second + o.terms_[j].second;
      if (!c.is_zero()) out.emplace_back(std::move(terms_[i].first), std::move(c));
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) { return *this += -o; }

LaurentPoly& LaurentPoly::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  return *this;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.terms_.empty() || b.terms_.empty()) {
    LaurentPoly z(a.ring_ ? a.ring_ : b.ring_);
    return z;
  }
  a.check_ring(b);
  LaurentPoly r(a.ring_);
  if (a.terms_.size() == 1 || b.terms_.size() == 1) {
    const auto& m = a.terms_.size() == 1 ? a : b;
    const auto& p = a.terms_.size() == 1 ? b : a;
    const auto& [me, mc] = m.terms_[0];
    r.terms_.reserve(p.terms_.size());
    for (const auto& [e, c] : p.terms_) r.terms_.emplace_back(add_exp(e, me), c * mc);
    for (const auto& t : r.terms_) validate_exponent(*r.ring_, t.first);
    return r;
  }
  std::map<Exponent, Rational> acc;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) acc[add_exp(ea, eb)] += ca * cb;
  r.terms_ = flatten(acc);
  for (const auto& t : r.terms_) validate_exponent(*r.ring_, t.first);
  return r;
}

LaurentPoly LaurentPoly::pow(int e) const {
  if (e < 0) return inverse_monomial().pow(-e);
  LaurentPoly result = constant(ring_, Rational(1));
  LaurentPoly base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

LaurentPoly LaurentPoly::partial(int i) const {
  LaurentPoly r(ring_);
  for (const auto& [e, c] : terms_) {
    int k = e.at(static_cast<size_t>(i));
    if (k == 0) continue;
    Exponent f = e;
    f[static_cast<size_t>(i)] = checked_add(k, -1);
    r.terms_.emplace_back(std::move(f), c * Rational(k));
  }
  // Lowering one coordinate by one keeps lexicographic order.
  for (const auto& t : r.terms_) validate_exponent(*ring_, t.first);
  return r;
}

LaurentPoly LaurentPoly::euler(int i) const {
  LaurentPoly r(ring_);
  for (const auto& [e, c] : terms_) {
    int k = e.at(static_cast<size_t>(i));
    if (k != 0) r.terms_.emplace_back(e, c * Rational(k));
  }
  return r;
}

LaurentPoly LaurentPoly::evaluate_at_one(const std::vector<int>& vars) const {
  std::map<Exponent, Rational> acc;
  for (const auto& [e, c] : terms_) {
    Exponent f = e;
    for (int v : vars) f.at(static_cast<size_t>(v)) = 0;
    acc[f] += c;
  }
  LaurentPoly r(ring_);
  r.terms_ = flatten(acc);
  return r;
}

Rational LaurentPoly::evaluate(const std::vector<Rational>& point) const {
  if (static_cast<int>(point.size()) != ring_->size()) throw StructuralError("evaluation point size");
  Rational sum(0);
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) t *= point[i].pow(e[i]);
    sum += t;
  }
  return sum;
}

bool LaurentPoly::operator==(const LaurentPoly& o) const {
  if (terms_.empty() && o.terms_.empty()) return true;
  if (!same_ring(ring_, o.ring_)) return false;
  return terms_ == o.terms_;
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    std::string mono;
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += ring_->var(static_cast<int>(i)).name;
      if (e[i] != 1) mono += "^" + std::to_string(e[i]);
    }
    Rational a = c.sign() < 0 ? -c : c;
    if (first) {
      if (c.sign() < 0) out << "-";
    } else {
      out << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    if (mono.empty()) {
      out << a.to_string();
    } else if (a.is_one()) {
      out << mono;
    } else {
      out << a.to_string() << "*" << mono;
    }
  }
  return out.str();
}

RingHom::RingHom(RingPtr src, RingPtr tgt, std::vector<LaurentPoly> images)
    : src_(std::move(src)), tgt_(std::move(tgt)), images_(std::move(images)) {
  if (static_cast<int>(images_.size()) != src_->size())
    throw StructuralError("ring hom: wrong number of images");
  monomial_images_ = true;
  for (int i = 0; i < src_->size(); ++i) {
    auto& img = images_[static_cast<size_t>(i)];
    if (img.is_zero()) img = LaurentPoly(tgt_);
    if (!same_ring(img.ring(), tgt_)) throw StructuralError("ring hom: image in wrong ring");
    if (src_->var(i).kind == VarKind::laurent && !img.is_unit_monomial())
      throw StructuralError("ring hom: image of unit " + src_->var(i).name + " is not a unit monomial");
    if (!img.is_monomial()) monomial_images_ = false;
  }
}

RingHom RingHom::identity(RingPtr ring) {
  std::vector<LaurentPoly> imgs;
  for (int i = 0; i < ring->size(); ++i) imgs.push_back(LaurentPoly::variable(ring, i));
  return RingHom(ring, ring, std::move(imgs));
}

LaurentPoly RingHom::apply(const LaurentPoly& p) const {
  if (p.is_zero()) return LaurentPoly(tgt_);
  if (!same_ring(p.ring(), src_)) throw StructuralError("ring hom applied to element of wrong ring");
  if (monomial_images_) {
    std::vector<LaurentPoly::Term> out;
    out.reserve(p.terms().size());
    const size_t tn = static_cast<size_t>(tgt_->size());
    for (const auto& [e, c] : p.terms()) {
      Exponent f(tn, 0);
      Rational coef = c;
      for (size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        const auto& [ie, ic] = images_[i].terms()[0];
        for (size_t j = 0; j < tn; ++j)
          if (ie[j] != 0) f[j] = checked_add(f[j], checked_mul(ie[j], e[i]));
        if (!ic.is_one()) coef *= ic.pow(e[i]);
      }
      out.emplace_back(std::move(f), std::move(coef));
    }
    return LaurentPoly::from_terms(tgt_, std::move(out));
  }
  std::map<std::pair<size_t, int>, LaurentPoly> powers;
  LaurentPoly result(tgt_);
  for (const auto& [e, c] : p.terms()) {
    LaurentPoly t = LaurentPoly::constant(tgt_, c);
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      auto key = std::make_pair(i, e[i]);
      auto it = powers.find(key);
      if (it == powers.end()) it = powers.emplace(key, images_[i].pow(e[i])).first;
      t = t * it->second;
    }
    result += t;
  }
  return result;
}

RingHom RingHom::then(const RingHom& after) const {
  if (!same_ring(tgt_, after.src_)) throw StructuralError("ring hom composition: ring mismatch");
  std::vector<LaurentPoly> imgs;
  imgs.reserve(images_.size());
  for (const auto& img : images_) imgs.push_back(after.apply(img));
  return RingHom(src_, after.tgt_, std::move(imgs));
}

bool RingHom::operator==(const RingHom& o) const {
  return same_ring(src_, o.src_) && same_ring(tgt_, o.tgt_) && images_ == o.images_;
}

}  // namespace qdr

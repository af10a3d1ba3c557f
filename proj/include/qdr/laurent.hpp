#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "qdr/rational.hpp"

namespace qdr {

enum class VarKind { poly, laurent };

struct Variable {
  std::string name;
  VarKind kind = VarKind::poly;
  bool operator==(const Variable&) const = default;
};

// An ordered list of variables. Polynomial variables may not carry negative
// exponents; Laurent variables are units.
class Ring {
 public:
  explicit Ring(std::vector<Variable> vars) : vars_(std::move(vars)) {}
  int size() const { return static_cast<int>(vars_.size()); }
  const Variable& var(int i) const { return vars_.at(static_cast<size_t>(i)); }
  const std::vector<Variable>& vars() const { return vars_; }
  int index_of(const std::string& name) const;
  bool operator==(const Ring& o) const { return vars_ == o.vars_; }

 private:
  std::vector<Variable> vars_;
};

using RingPtr = std::shared_ptr<const Ring>;
RingPtr make_ring(std::vector<Variable> vars);
bool same_ring(const RingPtr& a, const RingPtr& b);

using Exponent = std::vector<int>;

int checked_add(int a, int b);
int checked_mul(int a, int b);

class LaurentPoly {
 public:
  using Term = std::pair<Exponent, Rational>;

  LaurentPoly() = default;
  explicit LaurentPoly(RingPtr ring) : ring_(std::move(ring)) {}

  static LaurentPoly constant(RingPtr ring, const Rational& c);
  static LaurentPoly variable(RingPtr ring, int i);
  static LaurentPoly monomial(RingPtr ring, Exponent e, const Rational& c = Rational(1));
  static LaurentPoly from_terms(RingPtr ring, std::vector<Term> terms);

  const RingPtr& ring() const { return ring_; }
  // Terms in ascending lexicographic order of exponent.
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  bool is_monomial() const { return terms_.size() == 1; }
  // A monomial whose variables are all Laurent, hence invertible.
  bool is_unit_monomial() const;
  LaurentPoly inverse_monomial() const;

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const Rational& c);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(LaurentPoly a, const Rational& c) { return a *= c; }
  friend LaurentPoly operator*(const Rational& c, LaurentPoly a) { return a *= c; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  LaurentPoly operator-() const;

  LaurentPoly pow(int e) const;
  // d/dx_i
  LaurentPoly partial(int i) const;
  // x_i d/dx_i
  LaurentPoly euler(int i) const;
  // Value at x = 1 for every variable listed in `vars`, others kept.
  LaurentPoly evaluate_at_one(const std::vector<int>& vars) const;
  // Value at the given constants for every variable.
  Rational evaluate(const std::vector<Rational>& point) const;

  bool operator==(const LaurentPoly& o) const;
  std::string to_string() const;

 private:
  void check_ring(const LaurentPoly& o) const;
  RingPtr ring_;
  std::vector<Term> terms_;
};

// Ring homomorphism src -> tgt given by the images of the source variables.
class RingHom {
 public:
  RingHom() = default;
  RingHom(RingPtr src, RingPtr tgt, std::vector<LaurentPoly> images);

  static RingHom identity(RingPtr ring);

  const RingPtr& source() const { return src_; }
  const RingPtr& target() const { return tgt_; }
  const std::vector<LaurentPoly>& images() const { return images_; }

  LaurentPoly apply(const LaurentPoly& p) const;
  // (*this) then `after`: x -> after(this(x)).
  RingHom then(const RingHom& after) const;
  bool operator==(const RingHom& o) const;

 private:
  RingPtr src_, tgt_;
  std::vector<LaurentPoly> images_;
  bool monomial_images_ = false;
};

}  // namespace qdr

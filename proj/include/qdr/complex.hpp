#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "qdr/model.hpp"

namespace qdr {

struct TermKey {
  int comp = 0;
  std::vector<int> wedge;  // strictly increasing covector indices
  std::vector<int> sym;    // weakly increasing generator indices
  auto operator<=>(const TermKey&) const = default;
};

// Section of Omega^{p-k} (x) S^k Upsilon over X_n. With Ambient = false the
// covectors are the frame eps_0..eps_{e-1} of the pi_0-pulled-back base
// coframe; with Ambient = true they range over the whole coframe of X_n.
template <bool Ambient>
class GradedElement {
 public:
  GradedElement() = default;
  GradedElement(ModelPtr model, int p, int k, int n);

  const ModelPtr& model() const { return model_; }
  int p() const { return p_; }
  int k() const { return k_; }
  int n() const { return n_; }
  int total_degree() const { return p_ + k_ + n_; }
  int covectors() const { return cov_; }  // e, or the ambient coframe size
  // False when p < k or p - k exceeds the covectors: the space is zero.
  bool admissible() const { return p_ >= k_ && p_ - k_ <= cov_; }
  const std::map<TermKey, LaurentPoly>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // Adds coef at key, after sorting; the wedge sign is applied, repeated
  // covectors give zero.
  void add(int comp, std::vector<int> wedge, std::vector<int> sym, const LaurentPoly& coef);
  void add_sorted(const TermKey& key, const LaurentPoly& coef);

  GradedElement& operator+=(const GradedElement& o);
  GradedElement& operator-=(const GradedElement& o);
  GradedElement operator+(const GradedElement& o) const { GradedElement r = *this; return r += o; }
  GradedElement operator-(const GradedElement& o) const { GradedElement r = *this; return r -= o; }
  GradedElement scaled(const Rational& s) const;
  GradedElement operator-() const { return scaled(Rational(-1)); }
  bool operator==(const GradedElement& o) const;

  // Deterministic rendering, e.g. "(2*x) e0 u0^2"; "0" when empty.
  std::string to_string() const;

  const RingPtr& ring(int comp = 0) const;

 private:
  void check_same(const GradedElement& o) const;
  ModelPtr model_;
  int p_ = 0, k_ = 0, n_ = 0, cov_ = 0;
  std::map<TermKey, LaurentPoly> terms_;
};

using KElement = GradedElement<false>;
using AmbientElement = GradedElement<true>;

// Sign of the permutation sorting `v`; 0 if it has a repeated entry. Sorts v.
int sort_with_sign(std::vector<int>& v);

// Simplicial structure on K.
KElement pullback(const KElement& x, const SimplicialMap& f);
KElement face_pullback(const KElement& x, int q);        // pi-hat_q^*: level n -> n+1
KElement degeneracy_pullback(const KElement& x, int q);  // iota_q^*: level n -> n-1
struct CupSupport {
  const SimplicialMap* s;
  const SimplicialMap* t;
};
CupSupport cup_support(const FlatGroupoidModel& m, int n, int mm);

// Ambient lifts and operators.
AmbientElement lift(const KElement& x, int q = 0);  // along eta_q
KElement project(const AmbientElement& a);          // along delta
AmbientElement covariant_derivative(const AmbientElement& a);
AmbientElement rho(const AmbientElement& a, int q);

// The four differentials.
KElement phi(const KElement& x);
KElement cech(const KElement& x);
KElement derham(const KElement& x, int lift_index = 0);
KElement contraction(const KElement& x);

KElement symmetric_derivative(const KElement& x, int q, int lift_index = 0);  // L_q
KElement lie(const KElement& x);                                              // L = sum_q L_q
// delta (sum_q [rho_q, D]) on an ambient element.
KElement lie_ambient(const AmbientElement& a);

KElement cup(const KElement& x, const KElement& y);
KElement normalize(const KElement& x);
// I = sum_i (-1)^i iota_i^*, level n -> n-1.
KElement alternating_degeneracy(const KElement& x);

struct TotalDifferential {
  KElement phi, cech, derham, contraction;
};
TotalDifferential total_differential(const KElement& x);

// Ambient forms (k = 0) for the simplicial de Rham double complex.
AmbientElement ambient_pullback(const AmbientElement& a, const SimplicialMap& f);
AmbientElement ambient_cech(const AmbientElement& a);
AmbientElement exterior_derivative(const AmbientElement& a);

// Zero element of the given trigrade.
KElement zero_like(const ModelPtr& m, int p, int k, int n);

}  // namespace qdr

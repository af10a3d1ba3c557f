#pragma once

#include <string>
#include <vector>

#include "qdr/complex.hpp"

namespace qdr {

struct TruncationPolicy {
  int window = 2;     // |key entries| <= window when a model has infinitely many sectors
  int torus_box = 0;  // extra torus exponents per arrow block: |a| <= torus_box
};

struct SectorKey {
  std::vector<int> key;
  bool boundary = false;  // on the edge of the window
  std::string label() const;
  bool operator==(const SectorKey& o) const { return key == o.key; }
  bool operator<(const SectorKey& o) const { return key < o.key; }
};

// A monomial basis element: coefficient 1 times the monomial with exponent exp.
struct BasisElement {
  TermKey term;
  Exponent exp;
};

// Weights making all four differentials homogeneous, plus the finite sets of
// monomials used per sector.
//   transformation / vector bundle: base multidegree (frames count as their
//     coordinate), then the additive-group degree (arrow coordinates,
//     their differentials and the matching generators each count 1);
//     torus arrow exponents per block lie in {0, chi(m)} + box.
//   pair: multidegree in the group coordinates summed over all objects;
//     exponent vectors with L1 norm <= |key|_1 + box.
//   finite: orbit of the base multidegree under the generator.
class Grading {
 public:
  explicit Grading(ModelPtr model);

  const ModelPtr& model() const { return model_; }
  int key_dim() const { return key_dim_; }
  // All sectors inside the window.
  std::vector<SectorKey> sectors(const TruncationPolicy& pol) const;
  // True when the model has finitely many sectors.
  bool finite_sectors() const;
  // True when the torus box truncation can change the basis.
  bool box_sensitive() const;
  // Torus character of a transformation-model sector is zero.
  bool weight_zero(const SectorKey& s) const;

  std::vector<BasisElement> basis(int p, int k, int n, const SectorKey& s, const TruncationPolicy& pol) const;
  // Ambient forms of degree q on X_n (no generators), for the oracle complex.
  std::vector<BasisElement> ambient_basis(int q, int n, const SectorKey& s, const TruncationPolicy& pol) const;

  // Weight of a term; the sector key is its canonical form.
  std::vector<int> weight(int n, const TermKey& t, const Exponent& e, bool ambient) const;
  SectorKey sector_of(int n, const TermKey& t, const Exponent& e, bool ambient) const;

 private:
  std::vector<int> canonical(const std::vector<int>& w) const;
  std::vector<int> var_weight(int n, int var) const;
  std::vector<int> cov_weight(int n, int cov, bool ambient) const;
  std::vector<int> gen_weight(int a) const;
  std::vector<Exponent> monomials(int n, const std::vector<int>& key, const std::vector<int>& residual,
                                  const TruncationPolicy& pol) const;
  std::vector<BasisElement> enumerate(int p, int k, int n, const SectorKey& s, const TruncationPolicy& pol,
                                      bool ambient) const;

  ModelPtr model_;
  ModelKind kind_;
  int key_dim_ = 0;
  int e_ = 0, nu_ = 0;
  int torus_ = 0, additive_ = 0;   // group ranks (transformation, pair)
  std::vector<bool> base_laurent_;  // per base (or group, for pair) coordinate
  std::vector<bool> exact_;         // pair: coordinate has exact coframe
  std::vector<std::vector<int>> weights_;  // transformation: torus weight of base coordinate i
  std::vector<std::vector<int>> gen_matrix_;  // finite: generator exponent matrix
  int order_ = 1;
};

}  // namespace qdr

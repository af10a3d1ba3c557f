#pragma once

#include <string>
#include <vector>

#include "qdr/engine.hpp"

namespace qdr {

// Morphism of transformation groupoids source -> target: a group
// homomorphism and an equivariant base map, both given by pullbacks.
struct ModelMorphism {
  ModelPtr source, target;
  RingHom group_hom;  // O(G_target) -> O(G_source)
  RingHom base_hom;   // O(X_target) -> O(X_source)
  std::string name;
};

// Checks the data (kinds, rings, equivariance); throws ModelError.
ModelMorphism make_morphism(ModelPtr source, ModelPtr target, RingHom group_hom, RingHom base_hom,
                            std::string name = "");
// g after f.
ModelMorphism compose(const ModelMorphism& g, const ModelMorphism& f);
ModelMorphism identity_morphism(const ModelPtr& m);

// Induced map K(target) -> K(source).
KElement pullback_along(const ModelMorphism& f, const KElement& x);

struct NaturalityReport {
  int checked = 0;  // basis elements tested
  std::vector<Violation> violations;
  std::vector<int> target_dims, source_dims, induced_rank;  // per degree 0..D
  bool iso = false;
  bool stabilized = true;
  std::vector<std::string> notes;
  bool ok() const { return violations.empty(); }
};

// Commutation with phi, cech, d, iota on target sector bases of total degree
// <= D, cup compatibility on `cup_samples` random pairs, and the induced map
// on cohomology through degree D.
NaturalityReport check_naturality(const ModelMorphism& f, int D, const EngineOptions& opt = {},
                                  int cup_samples = 50, unsigned seed = 7);
// map(g o f) = map(f) o map(g) on target sector bases.
std::vector<Violation> check_contravariance(const ModelMorphism& g, const ModelMorphism& f, int D,
                                            const TruncationPolicy& pol = {});

namespace morphisms {
// B G_m -> [A^1/G_m], the origin.
ModelMorphism origin_inclusion();
// B G_m -> B G_m, g -> g^c; `m` must be a B G_m model when given.
ModelMorphism power_map(int c, ModelPtr m = nullptr);
}  // namespace morphisms

}  // namespace qdr

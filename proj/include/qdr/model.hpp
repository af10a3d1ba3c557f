#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "qdr/laurent.hpp"
#include "qdr/poly_matrix.hpp"

namespace qdr {

enum class CoframeKind { exact, log };  // dx or dx/x

// Sign and orientation conventions. Only mutation tests change these.
struct SignConventions {
  bool phi_level_sign = true;       // phi carries (-1)^n
  bool derham_level_sign = true;    // d carries (-1)^n
  bool cech_alternating = true;     // sum of (-1)^q face pullbacks
  bool contraction_negated = true;  // -iota = sum (-1)^i deg_i^* L_j
  bool cup_sign = true;             // (-1)^{m(p-k)}
  bool rho_orientation = true;      // orientation of rho_q for q >= 1
  bool omega_sign = true;           // omega_qr(rho_q) = +id
  bool face0_transport = true;      // frame transport on faces moving vertex 0

  static std::vector<std::string> names();
  bool* flag(const std::string& name);
  bool all_default() const;
};

struct GroupModel {
  enum class Kind { trivial, continuous, finite };
  Kind kind = Kind::trivial;
  std::string name;

  // continuous: coordinates, torus factors first (Laurent, log coframe), then
  // additive factors (polynomial, exact coframe)
  int torus_rank = 0;
  int additive_rank = 0;
  RingPtr ring;                        // O_G
  std::vector<CoframeKind> coframe;
  RingHom multiplication;              // O_G -> O_{GxG}, first factor then second
  RingHom inverse;                     // O_G -> O_G
  RingHom unit;                        // O_G -> Q
  PolyMatrix maurer_cartan;            // invariant coframe in coordinate coframe
  PolyMatrix adjoint;                  // Ad on the Lie algebra frame

  // finite: cyclic group of the given order, elements 0..order-1
  int order = 1;

  int dim() const { return torus_rank + additive_rank; }
  bool abelian() const { return true; }

  static GroupModel trivial();
  static GroupModel torus(int rank, const std::vector<std::string>& names = {});
  static GroupModel additive(int rank, const std::vector<std::string>& names = {});
  static GroupModel product(int torus_rank, int additive_rank, const std::vector<std::string>& names = {});
  static GroupModel cyclic(int order);

  // Group axioms as RingHom identities; throws ModelError naming the failure.
  void validate() const;
};

struct SpaceModel {
  RingPtr ring;                        // free (Laurent) polynomial ring
  std::vector<CoframeKind> coframe;    // one per coordinate

  int dim() const { return ring ? ring->size() : 0; }
  // n affine coordinates then m torus coordinates, all with exact coframe.
  static SpaceModel make(int affine, int torus, const std::vector<std::string>& names = {});
};

// A monomial action of a torus (weights), trivial action of additive factors,
// or the action of a cyclic group generator by a monomial map.
struct ActionModel {
  RingHom act;                         // O_X -> O_{G x X} (continuous) or O_X -> O_X (finite generator)
  std::vector<std::vector<int>> weights;  // continuous torus: weights[i][c]

  static ActionModel trivial(const GroupModel& g, const SpaceModel& x);
  static ActionModel torus_weights(const GroupModel& g, const SpaceModel& x, std::vector<std::vector<int>> weights);
  // Generator acts by x_i -> signs[i] * prod_j x_j^{matrix[i][j]}.
  static ActionModel finite_monomial(const GroupModel& g, const SpaceModel& x, std::vector<std::vector<int>> matrix,
                                     std::vector<long> signs);

  void validate(const GroupModel& g, const SpaceModel& x) const;
};

// Map X_src -> X_tgt determined by which object of X_src each object of X_tgt is.
struct SimplicialMap {
  int src = 0, tgt = 0;
  std::vector<int> objects;             // size tgt+1
  std::vector<int> comp_target;         // per source component
  std::vector<RingHom> homs;            // per source component: O(X_tgt) -> O(X_src)
  std::vector<std::vector<int>> preimages;  // per target component
  CompMatrix jacobian;                  // amb_src x amb_tgt: f^* beta_y = sum_x J[x][y] beta_x
  CompMatrix frame;                     // e x e: f^* eps_i = sum_k F[k][i] eps_k
  bool frame_is_identity = true;
};

struct Level {
  int n = 0;
  RingPtr ring;
  int comps = 1;
  std::vector<CoframeKind> coframe;
  CompMatrix delta;                 // e x amb
  std::vector<CompMatrix> rho;      // q = 0..n, nu x amb
  std::vector<CompMatrix> eta;      // q = 0..n, amb x e
  CompMatrix anchor;                // nu x e: phi(eps_i) = sum_a A[a][i] ups_a
  CompMatrix gamma;                 // (nu*nu) x amb: connection 1-form, row a*nu+b
  bool flat_frame = true;           // gamma == 0

  int amb() const { return static_cast<int>(coframe.size()); }
};

class LevelProvider;

enum class ModelKind { transformation, pair, vector_bundle, finite };
std::string to_string(ModelKind k);

struct FlatnessResult {
  bool flat = true;
  std::string witness;
};

struct ConnectionData {
  // Gamma[c][a][b]: nabla_{b_c} nu_a = sum_b Gamma[c][a][b] nu_b, functions on X_0
  std::vector<std::vector<std::vector<LaurentPoly>>> gamma;
  // Psi[a] (nu x nu over O_{X_1}): (nabla^0 - nabla^1)(v_0^a)
  std::vector<PolyMatrix> psi;
  bool gamma_zero = true;
  bool psi_zero = true;
  bool psi_descends = true;
  std::string descent_note;
};

class FlatGroupoidModel {
 public:
  FlatGroupoidModel(std::string name, ModelKind kind, std::shared_ptr<const LevelProvider> provider,
                    SignConventions signs);

  const std::string& name() const { return name_; }
  ModelKind kind() const { return kind_; }
  int e() const { return e_; }
  int nu() const { return nu_; }
  const SignConventions& signs() const { return signs_; }
  const LevelProvider& provider() const { return *provider_; }

  const Level& level(int n) const;
  // pi-hat_q : X_{n+1} -> X_n, q = 0..n+1
  const SimplicialMap& face(int n, int q) const;
  // iota_q : X_{n-1} -> X_n, q = 0..n-1
  const SimplicialMap& degeneracy(int n, int q) const;
  const SimplicialMap& map(int src, const std::vector<int>& objects) const;
  // omega_qr on X_n (nu x amb), q != r
  const CompMatrix& omega(int n, int q, int r) const;
  // psi_qr: expresses pi_r-frames of Omega_n in pi_q-frames (e x e); A_qr likewise for Upsilon
  CompMatrix segment_psi(int n, int q, int r) const;
  CompMatrix segment_a(int n, int q, int r) const;

  const ConnectionData& connection() const;

 private:
  SimplicialMap build_map(int src, const std::vector<int>& objects, bool with_frame) const;
  std::unique_ptr<Level> build_level(int n) const;

  std::string name_;
  ModelKind kind_;
  std::shared_ptr<const LevelProvider> provider_;
  SignConventions signs_;
  int e_ = 0, nu_ = 0;

  mutable std::recursive_mutex mu_;
  mutable std::map<int, std::unique_ptr<Level>> levels_;
  mutable std::map<std::pair<int, std::vector<int>>, std::unique_ptr<SimplicialMap>> maps_;
  mutable std::map<std::tuple<int, int, int>, std::unique_ptr<CompMatrix>> omegas_;
  mutable std::unique_ptr<ConnectionData> connection_;
};

using ModelPtr = std::shared_ptr<const FlatGroupoidModel>;

// Source of the per-level data specific to each family of groupoids.
class LevelProvider {
 public:
  virtual ~LevelProvider() = default;
  virtual ModelKind kind() const = 0;
  virtual int e() const = 0;
  virtual int nu() const = 0;
  virtual int components(int n) const = 0;
  virtual RingPtr ring(int n) const = 0;
  virtual std::vector<CoframeKind> coframe(int n) const = 0;
  virtual void map(int src, const std::vector<int>& objects, std::vector<int>& comp_target,
                   std::vector<RingHom>& homs) const = 0;
  virtual CompMatrix delta(int n) const = 0;
  virtual CompMatrix rho(int n, int q, const SignConventions& s) const = 0;
  virtual CompMatrix omega(int n, int q, int r, const SignConventions& s) const = 0;
  virtual CompMatrix anchor0() const = 0;

  virtual const GroupModel* group() const { return nullptr; }
  virtual const SpaceModel* base() const { return nullptr; }
  virtual const ActionModel* action() const { return nullptr; }
  // Component label for reports, e.g. "(1,0)" for a finite group.
  virtual std::string component_label(int n, int comp) const;
};

ModelPtr build_transformation_model(const GroupModel& g, const SpaceModel& x, const ActionModel& a,
                                    const std::string& name = "", SignConventions signs = {});
ModelPtr build_finite_model(const GroupModel& g, const SpaceModel& x, const ActionModel& a,
                            const std::string& name = "", SignConventions signs = {});
// Pair groupoid of the underlying space of g. `twist` (dim x dim over O_G,
// row a = coefficients of theta_a in the coordinate frame) replaces the
// invariant trivialization when given.
ModelPtr build_pair_model(const GroupModel& g, const std::optional<PolyMatrix>& twist = std::nullopt,
                          const std::string& name = "", SignConventions signs = {});
ModelPtr build_vector_bundle_model(const SpaceModel& x, int rank, const std::string& name = "",
                                   SignConventions signs = {});

FlatnessResult check_flatness(const FlatGroupoidModel& m);
ConnectionData derived_connection(const FlatGroupoidModel& m);
// Curvature of the derived connection; zero matrices if flat.
std::vector<std::vector<PolyMatrix>> connection_curvature(const FlatGroupoidModel& m, const ConnectionData& c);

struct Violation {
  std::string identity;
  int n = 0;
  std::string witness;
};

struct ValidationReport {
  std::vector<std::string> checked;
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate_structure(const FlatGroupoidModel& m, int n_max);

// The six models used throughout the tests and acceptance suite.
namespace models {
ModelPtr bgm(SignConventions s = {});
ModelPtr a1_gm(SignConventions s = {});
ModelPtr gm_gm(SignConventions s = {});
ModelPtr gm_z2(SignConventions s = {});
ModelPtr pair_gm(SignConventions s = {});
ModelPtr line_bundle_a1(SignConventions s = {});
std::vector<ModelPtr> bundled(SignConventions s = {});
}  // namespace models

}  // namespace qdr

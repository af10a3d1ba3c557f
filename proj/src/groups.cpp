#include <algorithm>

#include "qdr/error.hpp"
#include "qdr/model.hpp"

namespace qdr {

std::vector<std::string> SignConventions::names() {
  return {"phi_level_sign", "derham_level_sign", "cech_alternating", "contraction_negated",
          "cup_sign",       "rho_orientation",   "omega_sign",       "face0_transport"};
}

bool* SignConventions::flag(const std::string& name) {
  if (name == "phi_level_sign") return &phi_level_sign;
  if (name == "derham_level_sign") return &derham_level_sign;
  if (name == "cech_alternating") return &cech_alternating;
  if (name == "contraction_negated") return &contraction_negated;
  if (name == "cup_sign") return &cup_sign;
  if (name == "rho_orientation") return &rho_orientation;
  if (name == "omega_sign") return &omega_sign;
  if (name == "face0_transport") return &face0_transport;
  return nullptr;
}

bool SignConventions::all_default() const {
  return phi_level_sign && derham_level_sign && cech_alternating && contraction_negated && cup_sign &&
         rho_orientation && omega_sign && face0_transport;
}

namespace {

const std::vector<std::string> kGroupNames = {"g", "h", "k", "l", "m"};

std::vector<std::string> default_names(int count, const std::vector<std::string>& given,
                                       const std::vector<std::string>& pool) {
  if (!given.empty()) {
    if (static_cast<int>(given.size()) != count) throw ModelError("wrong number of coordinate names");
    return given;
  }
  if (count > static_cast<int>(pool.size())) throw ModelError("too many coordinates for default names");
  return std::vector<std::string>(pool.begin(), pool.begin() + count);
}

RingPtr suffixed_ring(const Ring& base, const std::vector<std::string>& suffixes) {
  std::vector<Variable> vars;
  for (const auto& s : suffixes)
    for (const auto& v : base.vars()) vars.push_back({v.name + s, v.kind});
  return make_ring(std::move(vars));
}

// Images of the coordinates of block `block` (of `blocks` copies of `base`).
std::vector<LaurentPoly> block_vars(const RingPtr& ring, int block, int dim) {
  std::vector<LaurentPoly> out;
  for (int c = 0; c < dim; ++c) out.push_back(LaurentPoly::variable(ring, block * dim + c));
  return out;
}

// Substitute `first` and `second` into the multiplication law.
std::vector<LaurentPoly> multiply(const GroupModel& g, const RingPtr& tgt, const std::vector<LaurentPoly>& first,
                                  const std::vector<LaurentPoly>& second) {
  std::vector<LaurentPoly> imgs = first;
  imgs.insert(imgs.end(), second.begin(), second.end());
  RingHom h(g.multiplication.target(), tgt, imgs);
  std::vector<LaurentPoly> out;
  for (const auto& m : g.multiplication.images()) out.push_back(h.apply(m));
  return out;
}

}  // namespace

GroupModel GroupModel::trivial() {
  GroupModel g;
  g.kind = Kind::trivial;
  g.name = "1";
  g.ring = make_ring({});
  auto gg = make_ring({});
  g.multiplication = RingHom(g.ring, gg, {});
  g.inverse = RingHom::identity(g.ring);
  g.unit = RingHom(g.ring, make_ring({}), {});
  g.maurer_cartan = PolyMatrix(g.ring, 0, 0);
  g.adjoint = PolyMatrix(g.ring, 0, 0);
  return g;
}

GroupModel GroupModel::product(int torus_rank, int additive_rank, const std::vector<std::string>& names) {
  if (torus_rank < 0 || additive_rank < 0) throw ModelError("negative group rank");
  if (torus_rank + additive_rank == 0) return trivial();
  GroupModel g;
  g.kind = Kind::continuous;
  g.torus_rank = torus_rank;
  g.additive_rank = additive_rank;
  auto nm = default_names(torus_rank + additive_rank, names, kGroupNames);
  std::vector<Variable> vars;
  for (int i = 0; i < g.dim(); ++i) {
    bool torus = i < torus_rank;
    vars.push_back({nm[static_cast<size_t>(i)], torus ? VarKind::laurent : VarKind::poly});
    g.coframe.push_back(torus ? CoframeKind::log : CoframeKind::exact);
  }
  g.ring = make_ring(vars);
  g.name = (torus_rank ? "Gm^" + std::to_string(torus_rank) : "") +
           (torus_rank && additive_rank ? "xGa^" : (additive_rank ? "Ga^" : "")) +
           (additive_rank ? std::to_string(additive_rank) : "");
  auto gg = suffixed_ring(*g.ring, {"'", "''"});
  std::vector<LaurentPoly> mult, inv;
  std::vector<LaurentPoly> unit;
  auto pt = make_ring({});
  for (int i = 0; i < g.dim(); ++i) {
    auto a = LaurentPoly::variable(gg, i), b = LaurentPoly::variable(gg, g.dim() + i);
    auto x = LaurentPoly::variable(g.ring, i);
    if (i < torus_rank) {
      mult.push_back(a * b);
      inv.push_back(x.inverse_monomial());
      unit.push_back(LaurentPoly::constant(pt, Rational(1)));
    } else {
      mult.push_back(a + b);
      inv.push_back(-x);
      unit.push_back(LaurentPoly(pt));
    }
  }
  g.multiplication = RingHom(g.ring, gg, mult);
  g.inverse = RingHom(g.ring, g.ring, inv);
  g.unit = RingHom(g.ring, pt, unit);
  g.maurer_cartan = PolyMatrix::identity(g.ring, g.dim());
  g.adjoint = PolyMatrix::identity(g.ring, g.dim());
  return g;
}

GroupModel GroupModel::torus(int rank, const std::vector<std::string>& names) { return product(rank, 0, names); }
GroupModel GroupModel::additive(int rank, const std::vector<std::string>& names) { return product(0, rank, names); }

GroupModel GroupModel::cyclic(int order) {
  if (order < 1) throw ModelError("cyclic group order must be positive");
  GroupModel g;
  g.kind = Kind::finite;
  g.order = order;
  g.name = "Z" + std::to_string(order);
  g.ring = make_ring({});
  return g;
}

void GroupModel::validate() const {
  if (kind != Kind::continuous) return;
  const int d = dim();
  auto g3 = suffixed_ring(*ring, {"1", "2", "3"});
  auto b1 = block_vars(g3, 0, d), b2 = block_vars(g3, 1, d), b3 = block_vars(g3, 2, d);
  auto left = multiply(*this, g3, multiply(*this, g3, b1, b2), b3);
  auto right = multiply(*this, g3, b1, multiply(*this, g3, b2, b3));
  for (int i = 0; i < d; ++i)
    if (!(left[static_cast<size_t>(i)] == right[static_cast<size_t>(i)]))
      throw ModelError("group associativity fails for coordinate " + ring->var(i).name);
  std::vector<LaurentPoly> x = block_vars(ring, 0, d), e;
  for (const auto& u : unit.images()) e.push_back(LaurentPoly::constant(ring, u.constant_term()));
  auto xe = multiply(*this, ring, x, e), ex = multiply(*this, ring, e, x);
  std::vector<LaurentPoly> xinv;
  for (int i = 0; i < d; ++i) xinv.push_back(inverse.apply(x[static_cast<size_t>(i)]));
  auto xi = multiply(*this, ring, x, xinv);
  for (int i = 0; i < d; ++i) {
    const auto& name = ring->var(i).name;
    if (!(xe[static_cast<size_t>(i)] == x[static_cast<size_t>(i)]) ||
        !(ex[static_cast<size_t>(i)] == x[static_cast<size_t>(i)]))
      throw ModelError("group unit law fails for coordinate " + name);
    if (!(xi[static_cast<size_t>(i)] == e[static_cast<size_t>(i)]))
      throw ModelError("group inverse law fails for coordinate " + name);
  }
  if (!adjoint.is_identity()) throw ModelError("only abelian groups are supported");
}

SpaceModel SpaceModel::make(int affine, int torus, const std::vector<std::string>& names) {
  if (affine < 0 || torus < 0) throw ModelError("negative space dimension");
  std::vector<std::string> nm;
  if (!names.empty()) {
    if (static_cast<int>(names.size()) != affine + torus) throw ModelError("wrong number of coordinate names");
    nm = names;
  } else {
    const std::vector<std::string> aff = {"x", "y", "z", "w"}, tor = {"t", "s", "u", "v"};
    if (affine > 4 || torus > 4) throw ModelError("too many coordinates for default names");
    nm.assign(aff.begin(), aff.begin() + affine);
    nm.insert(nm.end(), tor.begin(), tor.begin() + torus);
  }
  SpaceModel s;
  std::vector<Variable> vars;
  for (int i = 0; i < affine + torus; ++i) {
    vars.push_back({nm[static_cast<size_t>(i)], i < affine ? VarKind::poly : VarKind::laurent});
    s.coframe.push_back(CoframeKind::exact);
  }
  s.ring = make_ring(vars);
  return s;
}

namespace {

RingPtr group_times_space(const GroupModel& g, const SpaceModel& x) {
  std::vector<Variable> vars = g.ring->vars();
  vars.insert(vars.end(), x.ring->vars().begin(), x.ring->vars().end());
  return make_ring(vars);
}

}  // namespace

ActionModel ActionModel::trivial(const GroupModel& g, const SpaceModel& x) {
  ActionModel a;
  if (g.kind == GroupModel::Kind::finite) {
    a.act = RingHom::identity(x.ring);
    return a;
  }
  auto gx = group_times_space(g, x);
  std::vector<LaurentPoly> imgs;
  for (int i = 0; i < x.dim(); ++i) imgs.push_back(LaurentPoly::variable(gx, g.dim() + i));
  a.act = RingHom(x.ring, gx, imgs);
  a.weights.assign(static_cast<size_t>(x.dim()), std::vector<int>(static_cast<size_t>(g.torus_rank), 0));
  return a;
}

ActionModel ActionModel::torus_weights(const GroupModel& g, const SpaceModel& x, std::vector<std::vector<int>> weights) {
  if (g.kind != GroupModel::Kind::continuous && g.kind != GroupModel::Kind::trivial)
    throw ModelError("weight actions need a continuous group");
  if (static_cast<int>(weights.size()) != x.dim()) throw ModelError("one weight vector per base coordinate required");
  auto gx = group_times_space(g, x);
  std::vector<LaurentPoly> imgs;
  for (int i = 0; i < x.dim(); ++i) {
    const auto& w = weights[static_cast<size_t>(i)];
    if (static_cast<int>(w.size()) != g.torus_rank) throw ModelError("weight vector length must equal torus rank");
    Exponent e(static_cast<size_t>(gx->size()), 0);
    for (int c = 0; c < g.torus_rank; ++c) e[static_cast<size_t>(c)] = w[static_cast<size_t>(c)];
    e[static_cast<size_t>(g.dim() + i)] = 1;
    imgs.push_back(LaurentPoly::monomial(gx, e));
  }
  ActionModel a;
  a.act = RingHom(x.ring, gx, imgs);
  a.weights = std::move(weights);
  return a;
}

ActionModel ActionModel::finite_monomial(const GroupModel& g, const SpaceModel& x,
                                         std::vector<std::vector<int>> matrix, std::vector<long> signs) {
  if (g.kind != GroupModel::Kind::finite) throw ModelError("monomial generator action needs a finite group");
  if (static_cast<int>(matrix.size()) != x.dim() || static_cast<int>(signs.size()) != x.dim())
    throw ModelError("generator matrix and signs must have one row per base coordinate");
  std::vector<LaurentPoly> imgs;
  for (int i = 0; i < x.dim(); ++i) {
    const auto& row = matrix[static_cast<size_t>(i)];
    if (static_cast<int>(row.size()) != x.dim()) throw ModelError("generator matrix must be square");
    long s = signs[static_cast<size_t>(i)];
    if (s != 1 && s != -1) throw ModelError("generator signs must be +1 or -1");
    imgs.push_back(LaurentPoly::monomial(x.ring, Exponent(row.begin(), row.end()), Rational(s)));
  }
  ActionModel a;
  a.act = RingHom(x.ring, x.ring, imgs);
  return a;
}

void ActionModel::validate(const GroupModel& g, const SpaceModel& x) const {
  if (g.kind == GroupModel::Kind::finite) {
    RingHom p = RingHom::identity(x.ring);
    for (int i = 0; i < g.order; ++i) p = p.then(act);
    if (!(p == RingHom::identity(x.ring)))
      throw ModelError("action axiom fails: generator^" + std::to_string(g.order) + " is not the identity");
    return;
  }
  const int d = g.dim();
  auto gx = group_times_space(g, x);
  // unit: act then g -> e
  std::vector<LaurentPoly> unit_imgs;
  for (const auto& u : g.unit.images()) unit_imgs.push_back(LaurentPoly::constant(x.ring, u.constant_term()));
  for (int i = 0; i < x.dim(); ++i) unit_imgs.push_back(LaurentPoly::variable(x.ring, i));
  if (!(act.then(RingHom(gx, x.ring, unit_imgs)) == RingHom::identity(x.ring)))
    throw ModelError("action axiom fails: unit does not act trivially");
  // associativity: g.(h.x) = (gh).x on G x G x X
  std::vector<Variable> vars;
  for (const auto& v : g.ring->vars()) vars.push_back({v.name + "1", v.kind});
  for (const auto& v : g.ring->vars()) vars.push_back({v.name + "2", v.kind});
  vars.insert(vars.end(), x.ring->vars().begin(), x.ring->vars().end());
  auto ggx = make_ring(vars);
  auto g1 = block_vars(ggx, 0, d), g2 = block_vars(ggx, 1, d);
  std::vector<LaurentPoly> xs;
  for (int i = 0; i < x.dim(); ++i) xs.push_back(LaurentPoly::variable(ggx, 2 * d + i));
  // inner: x -> h.x with h = g2
  std::vector<LaurentPoly> inner_imgs = g2;
  inner_imgs.insert(inner_imgs.end(), xs.begin(), xs.end());
  RingHom inner = act.then(RingHom(gx, ggx, inner_imgs));
  // outer: then apply g1
  std::vector<LaurentPoly> outer_imgs = g1;
  for (int i = 0; i < x.dim(); ++i) outer_imgs.push_back(inner.images()[static_cast<size_t>(i)]);
  RingHom lhs = act.then(RingHom(gx, ggx, outer_imgs));
  std::vector<LaurentPoly> prod_imgs = multiply(g, ggx, g1, g2);
  prod_imgs.insert(prod_imgs.end(), xs.begin(), xs.end());
  RingHom rhs = act.then(RingHom(gx, ggx, prod_imgs));
  if (!(lhs == rhs)) throw ModelError("action axiom fails: g.(h.x) != (gh).x");
}

}  // namespace qdr

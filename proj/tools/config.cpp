#include "config.hpp"

#include <cstdio>
#include <fstream>
#include <map>

#include "qdr/error.hpp"

namespace qdr::cli {

using nlohmann::json;

namespace {

int get_int(const json& j, const char* key, int dflt) {
  if (!j.contains(key)) return dflt;
  const json& v = j.at(key);
  if (!v.is_number_integer()) throw ConfigError(std::string("'") + key + "' must be an integer");
  return v.get<int>();
}

std::vector<std::vector<int>> int_matrix(const json& j, const char* what) {
  if (!j.is_array()) throw ConfigError(std::string(what) + " must be a list of integer rows");
  std::vector<std::vector<int>> out;
  for (const auto& row : j) {
    if (!row.is_array()) throw ConfigError(std::string(what) + " must be a list of integer rows");
    std::vector<int> r;
    for (const auto& v : row) {
      if (!v.is_number_integer()) throw ConfigError(std::string(what) + " entries must be integers");
      r.push_back(v.get<int>());
    }
    out.push_back(std::move(r));
  }
  return out;
}

Rational parse_rational(const json& v) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_string()) {
    mpq_class q;
    if (q.set_str(v.get<std::string>(), 10) != 0) throw ConfigError("bad rational '" + v.get<std::string>() + "'");
    if (q.get_den() == 0) throw ConfigError("zero denominator in '" + v.get<std::string>() + "'");
    return Rational(q);
  }
  throw ConfigError("coefficients must be integers or strings like \"3/4\"");
}

// A polynomial is a list of terms {"c": coefficient, "e": [exponents]}, or a bare integer.
LaurentPoly parse_poly(const RingPtr& ring, const json& j) {
  if (j.is_number_integer() || j.is_string()) return LaurentPoly::constant(ring, parse_rational(j));
  if (!j.is_array()) throw ConfigError("polynomial must be a constant or a list of terms");
  LaurentPoly p(ring);
  for (const auto& t : j) {
    if (!t.is_object() || !t.contains("e")) throw ConfigError("polynomial term needs \"e\"");
    auto e = t.at("e");
    if (!e.is_array() || static_cast<int>(e.size()) != ring->size())
      throw ConfigError("term exponent must have " + std::to_string(ring->size()) + " entries");
    Exponent ex;
    for (const auto& v : e) {
      if (!v.is_number_integer()) throw ConfigError("exponents must be integers");
      ex.push_back(v.get<int>());
    }
    Rational c = t.contains("c") ? parse_rational(t.at("c")) : Rational(1);
    try {
      p += LaurentPoly::monomial(ring, ex, c);
    } catch (const StructuralError& err) {
      throw ConfigError(std::string("bad term: ") + err.what());
    }
  }
  return p;
}

GroupModel parse_group(const json& g) {
  std::string kind = g.value("kind", "");
  if (kind == "torus") return GroupModel::torus(get_int(g, "rank", 1));
  if (kind == "additive") return GroupModel::additive(get_int(g, "rank", 1));
  if (kind == "product") return GroupModel::product(get_int(g, "torus", 0), get_int(g, "additive", 0));
  if (kind == "finite") {
    int order = get_int(g, "order", 0);
    if (order < 1) throw ConfigError("finite group needs order >= 1");
    return GroupModel::cyclic(order);
  }
  if (kind == "none") return GroupModel::trivial();
  throw ConfigError("unknown group kind '" + kind + "'");
}

SpaceModel parse_base(const json& cfg) {
  json b = cfg.value("base", json::object());
  int a = get_int(b, "affine", 0), t = get_int(b, "torus", 0);
  if (a < 0 || t < 0) throw ConfigError("base dimensions must be >= 0");
  return SpaceModel::make(a, t);
}

const std::map<std::string, ModelPtr (*)(SignConventions)>& bundled_table() {
  static const std::map<std::string, ModelPtr (*)(SignConventions)> t = {
      {"bgm", models::bgm},         {"a1_gm", models::a1_gm},     {"gm_gm", models::gm_gm},
      {"gm_z2", models::gm_z2},     {"pair_gm", models::pair_gm}, {"line_bundle_a1", models::line_bundle_a1},
  };
  return t;
}

}  // namespace

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("'" + path + "': " + e.what());
  }
}

std::string fingerprint(const json& j) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : j.dump()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ModelPtr build_model(const json& cfg, const SignConventions& signs) {
  if (!cfg.is_object()) throw ConfigError("model config must be an object");
  if (cfg.contains("bundled")) {
    auto name = cfg.at("bundled").get<std::string>();
    auto it = bundled_table().find(name);
    if (it == bundled_table().end()) throw ConfigError("unknown bundled model '" + name + "'");
    return it->second(signs);
  }
  std::string kind = cfg.value("kind", "transformation");
  std::string name = cfg.value("name", "");
  try {
    if (kind == "vector_bundle") {
      int rank = get_int(cfg, "bundle_rank", 1);
      if (rank < 0) throw ConfigError("bundle_rank must be >= 0");
      return build_vector_bundle_model(parse_base(cfg), rank, name, signs);
    }
    if (!cfg.contains("group")) throw ConfigError("'" + kind + "' model needs a group");
    GroupModel g = parse_group(cfg.at("group"));
    if (kind == "pair") {
      std::optional<PolyMatrix> twist;
      if (cfg.contains("twist")) {
        const json& t = cfg.at("twist");
        int d = g.dim();
        if (!t.is_array() || static_cast<int>(t.size()) != d) throw ConfigError("twist must be dim x dim");
        PolyMatrix m(g.ring, d, d);
        for (int a = 0; a < d; ++a) {
          if (!t[a].is_array() || static_cast<int>(t[a].size()) != d) throw ConfigError("twist must be dim x dim");
          for (int b = 0; b < d; ++b) m.at(a, b) = parse_poly(g.ring, t[a][b]);
        }
        twist = std::move(m);
      }
      return build_pair_model(g, twist, name, signs);
    }
    SpaceModel x = parse_base(cfg);
    json act = cfg.value("action", json::object());
    if (kind == "transformation") {
      if (g.kind == GroupModel::Kind::finite) throw ConfigError("finite groups use kind \"finite\"");
      ActionModel a = act.contains("weights") ? ActionModel::torus_weights(g, x, int_matrix(act.at("weights"), "weights"))
                                              : ActionModel::trivial(g, x);
      return build_transformation_model(g, x, a, name, signs);
    }
    if (kind == "finite") {
      if (g.kind != GroupModel::Kind::finite) throw ConfigError("kind \"finite\" needs a finite group");
      if (!act.contains("matrix")) throw ConfigError("finite action needs \"matrix\"");
      auto mat = int_matrix(act.at("matrix"), "matrix");
      std::vector<long> signs_v(mat.size(), 1);
      if (act.contains("signs")) {
        auto s = act.at("signs");
        if (!s.is_array() || s.size() != mat.size()) throw ConfigError("signs must match the matrix rows");
        for (size_t i = 0; i < s.size(); ++i) {
          if (!s[i].is_number_integer() || (s[i] != 1 && s[i] != -1)) throw ConfigError("signs must be +1 or -1");
          signs_v[i] = s[i].get<long>();
        }
      }
      return build_finite_model(g, x, ActionModel::finite_monomial(g, x, mat, signs_v), name, signs);
    }
  } catch (const ModelError& e) {
    throw ConfigError(e.what());
  } catch (const StructuralError& e) {
    throw ConfigError(e.what());
  } catch (const json::exception& e) {
    throw ConfigError(e.what());
  }
  throw ConfigError("unknown model kind '" + kind + "'");
}

RunOptions read_options(const json& cfg) {
  RunOptions o;
  json opt = cfg.is_object() ? cfg.value("options", json::object()) : json::object();
  o.max_degree = get_int(opt, "max_degree", o.max_degree);
  o.r_max = get_int(opt, "r_max", o.r_max);
  o.p = get_int(opt, "p", o.p);
  o.engine.policy.window = get_int(opt, "window", o.engine.policy.window);
  o.engine.policy.torus_box = get_int(opt, "torus_box", o.engine.policy.torus_box);
  if (opt.contains("format")) o.format = opt.at("format").get<std::string>();
  return o;
}

ModelMorphism build_morphism(const json& cfg, const SignConventions& signs) {
  if (!cfg.contains("morphism")) throw ConfigError("config has no \"morphism\"");
  const json& mc = cfg.at("morphism");
  if (!mc.contains("source") || !mc.contains("target")) throw ConfigError("morphism needs source and target");
  ModelPtr s = build_model(mc.at("source"), signs), t = build_model(mc.at("target"), signs);
  const GroupModel* gs = s->provider().group();
  const GroupModel* gt = t->provider().group();
  const SpaceModel* xs = s->provider().base();
  const SpaceModel* xt = t->provider().base();
  if (s->kind() != ModelKind::transformation || t->kind() != ModelKind::transformation || !gs || !gt || !xs || !xt)
    throw ConfigError("morphisms are supported between transformation models only");
  try {
    // group_map[i][j]: exponent of source coordinate j in the image of target coordinate i
    auto gm = int_matrix(mc.value("group_map", json::array()), "group_map");
    if (static_cast<int>(gm.size()) != gt->ring->size()) throw ConfigError("group_map needs one row per target coordinate");
    std::vector<LaurentPoly> gi;
    for (const auto& row : gm) {
      if (static_cast<int>(row.size()) != gs->ring->size()) throw ConfigError("group_map rows must match the source group");
      gi.push_back(LaurentPoly::monomial(gs->ring, Exponent(row.begin(), row.end())));
    }
    json bm = mc.value("base_map", json::array());
    if (!bm.is_array() || static_cast<int>(bm.size()) != xt->ring->size())
      throw ConfigError("base_map needs one polynomial per target base coordinate");
    std::vector<LaurentPoly> bi;
    for (const auto& p : bm) bi.push_back(parse_poly(xs->ring, p));
    return make_morphism(s, t, RingHom(gt->ring, gs->ring, gi), RingHom(xt->ring, xs->ring, bi),
                         mc.value("name", ""));
  } catch (const ModelError& e) {
    throw ConfigError(e.what());
  } catch (const StructuralError& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace qdr::cli

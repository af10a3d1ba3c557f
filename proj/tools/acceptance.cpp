// Acceptance run: one PASS/FAIL line per criterion.
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <thread>

#include "qdr/error.hpp"
#include "qdr/identities.hpp"
#include "qdr/naturality.hpp"

using namespace qdr;

namespace {

// All comparisons are exact over Q; the only numeric tolerance is wall time.
constexpr double kSuiteSeconds = 300.0;
constexpr int kIdentityDegree = 4;
constexpr int kOracleDegree = 4;
constexpr int kCupTriples = 200;
constexpr int kCupPairs = 100;
constexpr int kMutationDegree = 3;

int jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

std::string str(const std::vector<int>& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const std::function<Outcome()>& f) {
  Outcome o;
  try {
    o = f();
  } catch (const ComplexViolation& e) {
    o = {false, std::string(e.what()) + ": " + e.witness()};
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::printf("%s %2d  %s  [%s]\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), o.detail.c_str());
  std::fflush(stdout);
}

Outcome dims_match(const ModelPtr& m, int D, const std::vector<int>& expect, bool with_cartan) {
  EngineOptions eo;
  eo.jobs = jobs();
  auto tot = total_cohomology(m, D, eo);
  std::string d = m->name() + " total " + str(tot.dims);
  bool ok = tot.dims == expect && tot.stabilized;
  if (with_cartan) {
    auto c = cartan_total(m, D, eo);
    d += ", cartan " + str(c.dims);
    ok = ok && c.dims == expect;
  }
  return {ok, d + ", expected " + str(expect)};
}

SuiteOptions suite_options(int degree) {
  SuiteOptions so;
  so.max_degree = degree;
  so.cup_triples = kCupTriples;
  so.cup_pairs = kCupPairs;
  so.jobs = jobs();
  return so;
}

}  // namespace

int main() {
  report(1, "identity suite, all six models, total degree <= 4", [] {
    auto t0 = std::chrono::steady_clock::now();
    long checked = 0;
    std::string bad;
    for (const auto& m : models::bundled()) {
      SuiteOptions so = suite_options(kIdentityDegree);
      SuiteReport r = run_differential_identities(m, so);
      ValidationReport v = validate_structure(*m, 3);
      for (const auto& x : r.results) checked += x.checked;
      checked += static_cast<long>(v.checked.size());
      if (bad.empty() && r.first_failure()) bad = m->name() + ": " + r.first_failure()->witness;
      if (bad.empty() && !v.ok()) bad = m->name() + ": " + v.violations[0].identity;
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream d;
    d << checked << " checks, " << static_cast<int>(secs * 10) / 10.0 << "s (limit " << kSuiteSeconds << "s)";
    if (!bad.empty()) d << ", " << bad;
    return Outcome{bad.empty() && secs < kSuiteSeconds, d.str()};
  });

  report(2, "total cohomology equals the simplicial de Rham oracle, degree <= 4", [] {
    EngineOptions eo;
    eo.jobs = jobs();
    std::string d;
    bool ok = true;
    for (const auto& m : models::bundled()) {
      auto a = total_cohomology(m, kOracleDegree, eo);
      auto b = oracle_total(m, kOracleDegree, eo);
      ok = ok && a.dims == b.dims && a.stabilized && b.stabilized;
      d += (d.empty() ? "" : "; ") + m->name() + " " + str(a.dims) + (a.dims == b.dims ? "" : " vs " + str(b.dims));
    }
    return Outcome{ok, d};
  });

  report(3, "BGm dims 0..6 equal (1,0,1,0,1,0,1) and the Cartan model",
         [] { return dims_match(models::bgm(), 6, {1, 0, 1, 0, 1, 0, 1}, true); });
  report(4, "[A1/Gm] dims 0..6 equal those of BGm",
         [] { return dims_match(models::a1_gm(), 6, {1, 0, 1, 0, 1, 0, 1}, true); });
  report(5, "[Gm/Gm] dims 0..3 equal (1,0,0,0)", [] { return dims_match(models::gm_gm(), 3, {1, 0, 0, 0}, true); });
  report(6, "[Gm/Z2] dims 0..2 equal (1,0,0)", [] { return dims_match(models::gm_z2(), 2, {1, 0, 0}, true); });

  report(7, "BGm pages: E1 at (2k,0) of dim 1, d1 = 0, stable from r = 1, Einf matches", [] {
    EngineOptions eo;
    eo.jobs = jobs();
    const int D = 6;
    auto pr = spectral_pages(models::bgm(), D, 3, eo);
    const auto& pages = pr.pages.pages;
    bool ok = pr.stabilized && pages.size() == 3;
    std::string d;
    const auto& e1 = pages[0];
    for (const auto& e : e1) {
      if (e.n != 0 || e.m % 2 != 0 || e.dim != 1 || e.d_rank != 0) {
        ok = false;
        d += "unexpected E1 entry (" + std::to_string(e.m) + "," + std::to_string(e.n) + ") dim " +
             std::to_string(e.dim) + "; ";
      }
    }
    ok = ok && static_cast<int>(e1.size()) == D / 2 + 1;
    auto same = [](const std::vector<PageEntry>& a, const std::vector<PageEntry>& b) {
      if (a.size() != b.size()) return false;
      for (size_t i = 0; i < a.size(); ++i)
        if (a[i].m != b[i].m || a[i].n != b[i].n || a[i].dim != b[i].dim) return false;
      return true;
    };
    for (size_t r = 1; r < pages.size(); ++r) ok = ok && same(pages[r], e1);
    ok = ok && same(pr.pages.e_infinity, e1);
    std::vector<int> einf(D + 1, 0);
    for (const auto& e : pr.pages.e_infinity)
      if (e.m + e.n <= D) einf[static_cast<size_t>(e.m + e.n)] += e.dim;
    ok = ok && einf == std::vector<int>({1, 0, 1, 0, 1, 0, 1});
    d += "E1 has " + std::to_string(e1.size()) + " entries, Einf by degree " + str(einf);
    return Outcome{ok, d};
  });

  report(8, "cup laws: 200 triples, 100 pairs per model", [] {
    std::string d, bad;
    bool ok = true;
    for (const auto& m : models::bundled()) {
      SuiteReport r = run_cup_laws(m, suite_options(2));
      for (const auto& x : r.results) {
        int need = x.name.rfind("cup", 0) == 0 ? kCupTriples : kCupPairs;
        if (x.checked < need) {
          ok = false;
          if (bad.empty()) bad = m->name() + ": " + x.name + " only " + std::to_string(x.checked) + " samples";
        }
        if (x.failures) {
          ok = false;
          if (bad.empty()) bad = m->name() + ": " + x.witness;
        }
      }
      if (d.empty()) d = std::to_string(r.results.size()) + " laws per model";
    }
    return Outcome{ok, bad.empty() ? d : bad};
  });

  report(9, "restriction BGm -> [A1/Gm] commutes with the differentials and is an iso through degree 4", [] {
    EngineOptions eo;
    eo.jobs = jobs();
    auto n = check_naturality(morphisms::origin_inclusion(), 4, eo);
    std::string d = std::to_string(n.checked) + " basis elements, induced rank " + str(n.induced_rank);
    if (!n.ok()) d += ", " + n.violations[0].identity + ": " + n.violations[0].witness;
    return Outcome{n.ok() && n.iso && n.stabilized, d};
  });

  report(10, "flatness: transformation models and constant bracket accepted, x^2 bracket rejected", [] {
    std::vector<ModelPtr> accepted = {models::bgm(), models::a1_gm(), models::gm_gm(), models::gm_z2()};
    {
      auto g = GroupModel::torus(2);
      auto x = SpaceModel::make(2, 1);
      accepted.push_back(build_transformation_model(g, x, ActionModel::torus_weights(g, x, {{1, 0}, {2, -1}, {0, 1}})));
      auto ga = GroupModel::product(1, 1);
      auto xa = SpaceModel::make(1, 0);
      accepted.push_back(build_transformation_model(ga, xa, ActionModel::torus_weights(ga, xa, {{3}})));
    }
    auto g = GroupModel::additive(2, {"x", "y"});
    auto frame = [&](bool constant) {
      PolyMatrix t(g.ring, 2, 2);
      auto x = LaurentPoly::variable(g.ring, 0);
      t.at(0, 0) = LaurentPoly::constant(g.ring, Rational(1));
      t.at(1, 0) = constant ? x : x * x;
      t.at(1, 1) = LaurentPoly::constant(g.ring, Rational(1));
      return t;
    };
    accepted.push_back(build_pair_model(g, frame(true), "pair(A2), [e0,e1] = e0"));
    bool ok = true;
    std::string d;
    for (const auto& m : accepted) {
      auto f = check_flatness(*m);
      if (!f.flat) {
        ok = false;
        d += m->name() + " rejected: " + f.witness + "; ";
      }
    }
    auto bad = build_pair_model(g, frame(false), "pair(A2), x^2 twist");
    auto f = check_flatness(*bad);
    ok = ok && !f.flat && !f.witness.empty();
    d += std::to_string(accepted.size()) + " accepted; rejected with: " + f.witness;
    return Outcome{ok, d};
  });

  report(11, "every single sign flip is detected with a witness", [] {
    SuiteOptions so = suite_options(kMutationDegree);
    so.cup_triples = 50;
    so.cup_pairs = 50;
    auto out = mutation_sensitivity(so);
    bool ok = !out.empty();
    std::string d;
    for (const auto& o : out) {
      ok = ok && o.detected && !o.witness.empty();
      d += (d.empty() ? "" : "; ") + o.flag + (o.detected ? " -> " + o.identity + " on " + o.model : " UNDETECTED");
    }
    return Outcome{ok, d};
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}

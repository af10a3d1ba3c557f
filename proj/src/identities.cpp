#include "qdr/identities.hpp"

#include <atomic>
#include <functional>
#include <map>
#include <random>
#include <thread>

#include "qdr/error.hpp"

namespace qdr {

bool SuiteReport::ok() const { return first_failure() == nullptr; }

const IdentityResult* SuiteReport::first_failure() const {
  for (const auto& r : results)
    if (r.failures) return &r;
  return nullptr;
}

namespace {

using Grade = std::array<int, 3>;
using GradedBasis = std::map<Grade, std::vector<BasisElement>>;

std::string grade_string(int p, int k, int n) {
  return "(" + std::to_string(p) + "," + std::to_string(k) + "," + std::to_string(n) + ")";
}

// Sum of elements of possibly different grades; zero summands are dropped.
class Sum {
 public:
  Sum& add(const KElement& x, int sign = 1) {
    if (x.is_zero()) return *this;
    Grade g{x.p(), x.k(), x.n()};
    auto it = parts_.find(g);
    if (it == parts_.end()) {
      parts_.emplace(g, sign > 0 ? x : -x);
    } else if (sign > 0) {
      it->second += x;
    } else {
      it->second -= x;
    }
    return *this;
  }
  bool zero() const {
    for (const auto& [g, x] : parts_)
      if (!x.is_zero()) return false;
    return true;
  }
  std::string to_string() const {
    std::string s;
    for (const auto& [g, x] : parts_) {
      if (x.is_zero()) continue;
      if (!s.empty()) s += " + ";
      s += grade_string(g[0], g[1], g[2]) + " " + x.to_string();
    }
    return s.empty() ? "0" : s;
  }

 private:
  std::map<Grade, KElement> parts_;
};

GradedBasis collect_basis(const ModelPtr& m, int D, const TruncationPolicy& pol) {
  Grading g(m);
  GradedBasis out;
  for (const auto& s : g.sectors(pol))
    for (int t = 0; t <= D; ++t)
      for (int n = 0; n <= t; ++n)
        for (int k = 0; 2 * k <= t - n; ++k) {
          auto b = g.basis(t - n - k, k, n, s, pol);
          auto& v = out[{t - n - k, k, n}];
          v.insert(v.end(), b.begin(), b.end());
        }
  for (auto it = out.begin(); it != out.end();)
    it = it->second.empty() ? out.erase(it) : std::next(it);
  return out;
}

// One named check on one input: returns the residual sum (zero when it holds).
using Check = std::function<Sum(const KElement&)>;

struct NamedCheck {
  std::string name;
  Check check;
};

std::vector<NamedCheck> differential_checks() {
  std::vector<NamedCheck> c;
  c.push_back({"phi^2 = 0", [](const KElement& x) { return Sum().add(phi(phi(x))); }});
  c.push_back({"cech^2 = 0", [](const KElement& x) { return Sum().add(cech(cech(x))); }});
  c.push_back({"d^2 = 0", [](const KElement& x) { return Sum().add(derham(derham(x))); }});
  c.push_back({"iota^2 = 0", [](const KElement& x) {
                 Sum s;
                 if (x.n() >= 2) s.add(contraction(contraction(x)));
                 return s;
               }});
  c.push_back({"[phi,cech] = 0", [](const KElement& x) { return Sum().add(phi(cech(x))).add(cech(phi(x))); }});
  c.push_back({"[phi,iota] = 0", [](const KElement& x) {
                 Sum s;
                 if (x.n() >= 1) s.add(phi(contraction(x))).add(contraction(phi(x)));
                 return s;
               }});
  c.push_back({"[cech,d] = 0", [](const KElement& x) { return Sum().add(cech(derham(x))).add(derham(cech(x))); }});
  c.push_back({"[d,iota] = 0", [](const KElement& x) {
                 Sum s;
                 if (x.n() >= 1) s.add(derham(contraction(x))).add(contraction(derham(x)));
                 return s;
               }});
  c.push_back({"[cech,iota] = -L", [](const KElement& x) {
                 Sum s;
                 s.add(contraction(cech(x)));
                 if (x.n() >= 1) s.add(cech(contraction(x)));
                 return s.add(lie(x));
               }});
  c.push_back({"[phi,d] + [cech,iota] = 0", [](const KElement& x) {
                 Sum s;
                 s.add(phi(derham(x))).add(derham(phi(x))).add(contraction(cech(x)));
                 if (x.n() >= 1) s.add(cech(contraction(x)));
                 return s;
               }});
  c.push_back({"(phi+cech+d+iota)^2 = 0", [](const KElement& x) {
                 Sum s;
                 auto apply_all = [&](const KElement& y) {
                   s.add(phi(y)).add(cech(y)).add(derham(y));
                   if (y.n() >= 1) s.add(contraction(y));
                 };
                 apply_all(phi(x));
                 apply_all(cech(x));
                 apply_all(derham(x));
                 if (x.n() >= 1) apply_all(contraction(x));
                 return s;
               }});
  c.push_back({"delta L = (phi d + d phi) delta", [](const KElement& x) {
                 Sum s;
                 for (int q = 0; q <= x.n(); ++q) {
                   AmbientElement a = lift(x, q);
                   KElement px = project(a);
                   s.add(lie_ambient(a)).add(phi(derham(px)), -1).add(derham(phi(px)), -1);
                 }
                 return s;
               }});
  c.push_back({"L_q deg_j^* exchange", [](const KElement& x) {
                 Sum s;
                 for (int j = 0; j < x.n(); ++j) {
                   KElement y = degeneracy_pullback(x, j);
                   for (int q = 0; q < x.n(); ++q) {
                     s.add(symmetric_derivative(y, q));
                     KElement r = q < j ? symmetric_derivative(x, q)
                                  : q == j ? symmetric_derivative(x, q) + symmetric_derivative(x, q + 1)
                                           : symmetric_derivative(x, q + 1);
                     s.add(degeneracy_pullback(r, j), -1);
                   }
                 }
                 return s;
               }});
  c.push_back({"L_j face_q^* exchange", [](const KElement& x) {
                 Sum s;
                 for (int q = 0; q <= x.n() + 1; ++q) {
                   KElement y = face_pullback(x, q);
                   for (int j = 0; j <= x.n() + 1; ++j) {
                     s.add(symmetric_derivative(y, j));
                     if (j < q) s.add(face_pullback(symmetric_derivative(x, j), q), -1);
                     if (j > q) s.add(face_pullback(symmetric_derivative(x, j - 1), q), -1);
                   }
                 }
                 return s;
               }});
  c.push_back({"d and L_q independent of the lift", [](const KElement& x) {
                 Sum s;
                 for (int r = 1; r <= x.n(); ++r) {
                   s.add(derham(x, r)).add(derham(x, 0), -1);
                   for (int q = 0; q <= x.n(); ++q) s.add(symmetric_derivative(x, q, r)).add(symmetric_derivative(x, q, 0), -1);
                 }
                 return s;
               }});
  c.push_back({"normalize kills degeneracies", [](const KElement& x) {
                 Sum s;
                 KElement y = normalize(x);
                 for (int j = 0; j < x.n(); ++j) s.add(degeneracy_pullback(y, j));
                 return s;
               }});
  return c;
}

void record(IdentityResult& r, bool ok, const std::function<std::string()>& witness) {
  ++r.checked;
  if (ok) return;
  if (r.failures++ == 0) r.witness = witness();
}

KElement random_element(const ModelPtr& m, const GradedBasis& basis, std::mt19937& rng, int max_degree) {
  std::vector<const std::pair<const Grade, std::vector<BasisElement>>*> grades;
  for (const auto& e : basis)
    if (e.first[0] + e.first[1] + e.first[2] <= max_degree) grades.push_back(&e);
  const auto& [g, elems] = *grades[std::uniform_int_distribution<size_t>(0, grades.size() - 1)(rng)];
  KElement x(m, g[0], g[1], g[2]);
  int terms = std::uniform_int_distribution<int>(1, 3)(rng);
  std::uniform_int_distribution<size_t> pick(0, elems.size() - 1);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int i = 0; i < terms; ++i) {
    int c = coef(rng);
    if (c == 0) c = 1;
    x += basis_element(m, g, elems[pick(rng)]).scaled(Rational(c));
  }
  return x;
}

int deg(const KElement& x) { return x.total_degree(); }

}  // namespace

SuiteReport run_differential_identities(const ModelPtr& m, const SuiteOptions& opt) {
  SuiteReport rep;
  rep.model = m->name();
  auto checks = differential_checks();
  GradedBasis basis = collect_basis(m, opt.max_degree, opt.policy);
  std::vector<std::pair<Grade, const BasisElement*>> items;
  for (const auto& [g, v] : basis)
    for (const auto& b : v) items.push_back({g, &b});
  // per item, per check: empty string when the identity holds
  std::vector<std::vector<std::string>> outcome(items.size(), std::vector<std::string>(checks.size()));
  std::vector<std::exception_ptr> errors(items.size());
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (size_t i = next++; i < items.size(); i = next++) {
      try {
        KElement x = basis_element(m, items[i].first, *items[i].second);
        for (size_t c = 0; c < checks.size(); ++c) {
          Sum s = checks[c].check(x);
          if (!s.zero())
            outcome[i][c] = checks[c].name + " violated at n=" + std::to_string(x.n()) + " on " + x.to_string() +
                            " at " + grade_string(x.p(), x.k(), x.n()) + ": residual " + s.to_string();
        }
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  int nt = std::max(1, std::min<int>(opt.jobs, static_cast<int>(items.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < nt; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  for (size_t c = 0; c < checks.size(); ++c) {
    IdentityResult r;
    r.name = checks[c].name;
    for (size_t i = 0; i < items.size(); ++i) record(r, outcome[i][c].empty(), [&] { return outcome[i][c]; });
    rep.results.push_back(std::move(r));
  }
  return rep;
}

SuiteReport run_cup_laws(const ModelPtr& m, const SuiteOptions& opt) {
  SuiteReport rep;
  rep.model = m->name();
  GradedBasis basis = collect_basis(m, 2, opt.policy);
  std::mt19937 rng(opt.seed);
  IdentityResult assoc{"cup associative", 0, 0, ""}, unit{"cup unit", 0, 0, ""};
  IdentityResult dphi{"phi derivation", 0, 0, ""}, dcech{"cech derivation", 0, 0, ""}, dd{"d derivation", 0, 0, ""};
  IdentityResult err{"iota error formula", 0, 0, ""}, norm{"iota derivation on normalized", 0, 0, ""};
  KElement one(m, 0, 0, 0);
  one.add(0, {}, {}, LaurentPoly::constant(m->level(0).ring, Rational(1)));
  for (int c = 1; c < m->level(0).comps; ++c) one.add(c, {}, {}, LaurentPoly::constant(m->level(0).ring, Rational(1)));
  auto show = [](const KElement& x) { return x.to_string() + " at " + grade_string(x.p(), x.k(), x.n()); };
  for (int i = 0; i < opt.cup_triples; ++i) {
    KElement a = random_element(m, basis, rng, 2), b = random_element(m, basis, rng, 2),
             c = random_element(m, basis, rng, 2);
    KElement lhs = cup(cup(a, b), c), rhs = cup(a, cup(b, c));
    record(assoc, lhs == rhs, [&] {
      return "(a cup b) cup c != a cup (b cup c) for a = " + show(a) + ", b = " + show(b) + ", c = " + show(c) +
             ": difference " + (lhs - rhs).to_string();
    });
    record(unit, cup(one, a) == a && cup(a, one) == a, [&] { return "1 cup a != a cup 1 != a for a = " + show(a); });
  }
  auto derivation = [&](IdentityResult& r, const std::string& name, KElement (*op)(const KElement&), const KElement& a,
                        const KElement& b) {
    Sum s;
    s.add(op(cup(a, b))).add(cup(op(a), b), -1).add(cup(a, op(b)), deg(a) % 2 ? 1 : -1);
    record(r, s.zero(), [&] {
      return name + "(a cup b) != " + name + "a cup b + (-1)^|a| a cup " + name + "b for a = " + show(a) +
             ", b = " + show(b) + ": residual " + s.to_string();
    });
  };
  for (int i = 0; i < opt.cup_pairs; ++i) {
    KElement a = random_element(m, basis, rng, 2), b = random_element(m, basis, rng, 2);
    derivation(dphi, "phi", [](const KElement& x) { return phi(x); }, a, b);
    derivation(dcech, "cech", [](const KElement& x) { return cech(x); }, a, b);
    derivation(dd, "d", [](const KElement& x) { return derham(x); }, a, b);
    // iota(a b) = iota a b + (-1)^|a| a iota b - I(a) L b
    Sum s;
    if (a.n() + b.n() >= 1) s.add(contraction(cup(a, b)));
    if (a.n() >= 1) {
      s.add(cup(contraction(a), b), -1);
      s.add(cup(alternating_degeneracy(a), lie(b)));
    }
    if (b.n() >= 1) s.add(cup(a, contraction(b)), deg(a) % 2 ? 1 : -1);
    record(err, s.zero(), [&] {
      return "iota error formula fails for a = " + show(a) + ", b = " + show(b) + ": residual " + s.to_string();
    });
    KElement na = normalize(a), nb = normalize(b);
    Sum t;
    if (na.n() + nb.n() >= 1) t.add(contraction(cup(na, nb)));
    if (na.n() >= 1) t.add(cup(contraction(na), nb), -1);
    if (nb.n() >= 1) t.add(cup(na, contraction(nb)), deg(na) % 2 ? 1 : -1);
    record(norm, t.zero(), [&] {
      return "iota is not a derivation on normalized a = " + show(na) + ", b = " + show(nb) + ": residual " +
             t.to_string();
    });
  }
  rep.results = {assoc, unit, dphi, dcech, dd, err, norm};
  return rep;
}

SuiteReport run_identity_suite(const ModelPtr& m, const SuiteOptions& opt) {
  SuiteReport rep = run_differential_identities(m, opt);
  SuiteReport cups = run_cup_laws(m, opt);
  rep.results.insert(rep.results.end(), cups.results.begin(), cups.results.end());
  if (opt.structure_levels >= 0) {
    ValidationReport v = validate_structure(*m, opt.structure_levels);
    IdentityResult r{"structure", static_cast<int>(v.checked.size()), static_cast<int>(v.violations.size()), ""};
    if (!v.violations.empty())
      r.witness = v.violations[0].identity + " violated at n=" + std::to_string(v.violations[0].n) + ": " +
                  v.violations[0].witness;
    rep.results.push_back(r);
  }
  return rep;
}

std::vector<MutationOutcome> mutation_sensitivity(const SuiteOptions& opt) {
  std::vector<MutationOutcome> out;
  for (const auto& flag : SignConventions::names()) {
    SignConventions s;
    *s.flag(flag) = !*s.flag(flag);
    MutationOutcome mo;
    mo.flag = flag;
    for (const auto& m : models::bundled(s)) {
      SuiteReport r;
      try {
        r = run_identity_suite(m, opt);
      } catch (const std::exception& e) {
        mo.detected = true;
        mo.model = m->name();
        mo.identity = "construction";
        mo.witness = e.what();
        break;
      }
      if (const auto* f = r.first_failure()) {
        mo.detected = true;
        mo.model = m->name();
        mo.identity = f->name;
        mo.witness = f->witness;
        break;
      }
    }
    out.push_back(std::move(mo));
  }
  return out;
}

}  // namespace qdr

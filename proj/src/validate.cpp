#include "qdr/error.hpp"
#include "qdr/model.hpp"
#include "qdr/simplicial_util.hpp"

namespace qdr {

namespace {

struct Checker {
  ValidationReport& rep;

  void note(const std::string& id) {
    for (const auto& c : rep.checked)
      if (c == id) return;
    rep.checked.push_back(id);
  }

  void expect(const std::string& id, int n, const PolyMatrix& got, const PolyMatrix& want, const std::string& where) {
    note(id);
    if (got.rows() != want.rows() || got.cols() != want.cols()) {
      rep.violations.push_back({id, n, where + ": shape mismatch"});
      return;
    }
    if (!(got == want)) rep.violations.push_back({id, n, where + ": " + got.first_difference(want)});
  }

  void expect(const std::string& id, int n, bool ok, const std::string& witness) {
    note(id);
    if (!ok) rep.violations.push_back({id, n, witness});
  }
};

std::string at(int c, int q) { return "component " + std::to_string(c) + " q=" + std::to_string(q); }

// Connection 1-form pi_q^* nabla on X_n, rows a*nu+b.
PolyMatrix connection_form(const FlatGroupoidModel& m, int n, int q, int comp) {
  const Level& l = m.level(n);
  const auto& conn = m.connection();
  const SimplicialMap& p = m.map(n, {q});
  const int nu = m.nu();
  PolyMatrix g(l.ring, nu * nu, l.amb());
  if (conn.gamma.empty()) return g;
  const auto& h = p.homs[static_cast<size_t>(comp)];
  const auto& j = p.jacobian[static_cast<size_t>(comp)];
  for (int a = 0; a < nu; ++a)
    for (int b = 0; b < nu; ++b)
      for (int c = 0; c < m.e(); ++c) {
        LaurentPoly coef = h.apply(conn.gamma[static_cast<size_t>(c)][static_cast<size_t>(a)][static_cast<size_t>(b)]);
        if (coef.is_zero()) continue;
        for (int x = 0; x < l.amb(); ++x)
          if (!j.at(x, c).is_zero()) g.at(a * nu + b, x) += coef * j.at(x, c);
      }
  return g;
}

// Checks that the map with object list theta_f composed after theta_g agrees
// with the direct map, on ring homomorphisms and on frame transports.
void check_composition(Checker& ck, const FlatGroupoidModel& m, int n, const SimplicialMap& f, const SimplicialMap& g,
                       const std::string& label) {
  std::vector<int> objects;
  for (int o : g.objects) objects.push_back(f.objects[static_cast<size_t>(o)]);
  const SimplicialMap& gf = m.map(f.src, objects);
  for (size_t c = 0; c < f.homs.size(); ++c) {
    int mid = f.comp_target[c];
    ck.expect("simplicial identities", n, gf.comp_target[c] == g.comp_target[static_cast<size_t>(mid)],
              label + " component " + std::to_string(c) + ": target component differs");
    RingHom comp = g.homs[static_cast<size_t>(mid)].then(f.homs[c]);
    ck.expect("simplicial identities", n, comp == gf.homs[c],
              label + " component " + std::to_string(c) + ": ring maps differ");
    PolyMatrix frame = f.frame[c] * g.frame[static_cast<size_t>(mid)].map(f.homs[c]);
    ck.expect("frame transport cocycle", n, frame, gf.frame[c], label + " component " + std::to_string(c));
  }
}

}  // namespace

ValidationReport validate_structure(const FlatGroupoidModel& m, int n_max) {
  ValidationReport rep;
  Checker ck{rep};
  const int e = m.e(), nu = m.nu();

  auto flat = check_flatness(m);
  ck.expect("flatness", 1, flat.flat, flat.witness);
  if (!flat.flat) return rep;
  const auto& conn = m.connection();
  auto curv = connection_curvature(m, conn);
  for (int i = 0; i < e; ++i)
    for (int j = 0; j < e; ++j)
      ck.expect("curvature", 0, curv[static_cast<size_t>(i)][static_cast<size_t>(j)].is_zero(),
                "R(" + std::to_string(i) + "," + std::to_string(j) + ") is nonzero");

  const Level& l0 = m.level(0);
  for (int c = 0; c < l0.comps; ++c)
    ck.expect("delta at level 0", 0, l0.delta[static_cast<size_t>(c)], PolyMatrix::identity(l0.ring, e),
              "component " + std::to_string(c));

  for (int n = 0; n <= n_max; ++n) {
    const Level& l = m.level(n);
    for (int c = 0; c < l.comps; ++c) {
      const auto cs = static_cast<size_t>(c);
      const PolyMatrix& d = l.delta[cs];
      PolyMatrix sum(l.ring, nu, l.amb());
      for (int q = 0; q <= n; ++q) {
        const auto qs = static_cast<size_t>(q);
        ck.expect("delta eta_q = 1", n, d * l.eta[qs][cs], PolyMatrix::identity(l.ring, e), at(c, q));
        sum = sum + l.rho[qs][cs];
        for (int r = 0; r <= n; ++r) {
          PolyMatrix want = q == r ? l.anchor[cs] : PolyMatrix(l.ring, nu, e);
          ck.expect("rho_q eta_r = delta_qr anchor", n, l.rho[qs][cs] * l.eta[static_cast<size_t>(r)][cs], want,
                    at(c, q) + " r=" + std::to_string(r));
        }
      }
      ck.expect("sum rho_q = anchor delta", n, sum, l.anchor[cs] * d, "component " + std::to_string(c));
      for (int q = 0; q <= n; ++q)
        for (int r = 0; r <= n; ++r) {
          if (q == r) continue;
          const PolyMatrix& w = m.omega(n, q, r)[cs];
          ck.expect("omega_qr delta^T = 0", n, w * d.transpose(), PolyMatrix(l.ring, nu, e),
                    at(c, q) + " r=" + std::to_string(r));
          for (int j = 0; j <= n; ++j) {
            PolyMatrix want = PolyMatrix::identity(l.ring, nu).scaled(Rational((j == q) - (j == r)));
            ck.expect("omega_qr rho_j^T", n, w * l.rho[static_cast<size_t>(j)][cs].transpose(), want,
                      at(c, q) + " r=" + std::to_string(r) + " j=" + std::to_string(j));
          }
        }
      // psi coherence
      for (int q = 0; q <= n; ++q)
        for (int r = 0; r <= n; ++r)
          for (int s = 0; s <= n; ++s) {
            if (n > 3 && (q + r + s) % 2) continue;
            PolyMatrix lhs = m.segment_psi(n, q, r)[cs] * m.segment_psi(n, r, s)[cs];
            ck.expect("psi coherence", n, lhs, m.segment_psi(n, q, s)[cs],
                      at(c, q) + " r=" + std::to_string(r) + " s=" + std::to_string(s));
          }
      // nabla^q - nabla^r = omega_qr(Psi)
      if (nu > 0 && n >= 1)
        for (int q = 0; q <= n; ++q)
          for (int r = q + 1; r <= n; ++r) {
            PolyMatrix diff = connection_form(m, n, q, c) - connection_form(m, n, r, c);
            const SimplicialMap& pqr = m.map(n, {q, r});
            const PolyMatrix& w = m.omega(n, q, r)[cs];
            PolyMatrix want(l.ring, nu * nu, l.amb());
            if (!conn.psi.empty()) {
              const auto& h = pqr.homs[cs];
              for (int a = 0; a < nu; ++a) {
                PolyMatrix ps = conn.psi[static_cast<size_t>(a)].map(h);
                for (int b = 0; b < nu; ++b)
                  for (int dd = 0; dd < nu; ++dd)
                    for (int x = 0; x < l.amb(); ++x)
                      if (!w.at(a, x).is_zero()) want.at(b * nu + dd, x) += ps.at(b, dd) * w.at(a, x);
              }
            }
            ck.expect("connection difference = omega(Psi)", n, diff, want, at(c, q) + " r=" + std::to_string(r));
          }
    }
    // face transports for q >= 1 are trivial; face/degeneracy identities
    for (int q = 1; q <= n + 1; ++q) {
      const SimplicialMap& f = m.face(n, q);
      ck.expect("face transport for q >= 1 is trivial", n, f.frame_is_identity, "face " + std::to_string(q));
    }
    if (n < n_max)
      for (int i = 0; i <= n + 2; ++i)
        for (int j = 0; j <= n + 1; ++j)
          check_composition(ck, m, n, m.face(n + 1, i), m.face(n, j),
                            "face " + std::to_string(j) + " after face " + std::to_string(i));
    for (int i = 0; i <= n; ++i)
      for (int q = 0; q <= n + 1; ++q)
        check_composition(ck, m, n, m.degeneracy(n + 1, i), m.face(n, q),
                            "face " + std::to_string(q) + " after degeneracy " + std::to_string(i));
  }
  return rep;
}

}  // namespace qdr

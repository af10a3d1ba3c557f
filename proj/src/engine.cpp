#include "qdr/engine.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <map>
#include <thread>
#include <unordered_map>

#include "qdr/error.hpp"

namespace qdr {

std::vector<int> complex_cohomology(const GradedComplex& c, int up_to) {
  if (up_to >= c.top) throw StructuralError("cohomology needs the next degree to be materialized");
  std::vector<int> out;
  for (int t = 0; t <= up_to; ++t) {
    const auto ts = static_cast<size_t>(t);
    SparseMatrix d_in = t > 0 ? c.d[ts - 1] : SparseMatrix(c.dims[0], 0);
    out.push_back(subquotient_dim(d_in, c.d[ts]));
  }
  return out;
}

namespace {

class PageSolver {
 public:
  PageSolver(const GradedComplex& c) : c_(c) {}

  // Z_r^s in degree t: x in F^s with dx in F^{s+r}.
  const std::vector<SparseVector>& z(int r, int s, int t) {
    auto key = std::make_tuple(r, s, t);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    std::vector<SparseVector> out;
    const auto& f = c_.filtration[static_cast<size_t>(t)];
    std::vector<int> cols;
    for (int i = 0; i < static_cast<int>(f.size()); ++i)
      if (f[static_cast<size_t>(i)] >= s) cols.push_back(i);
    std::vector<int> rows;
    if (t < c_.top) {
      const auto& g = c_.filtration[static_cast<size_t>(t + 1)];
      for (int j = 0; j < static_cast<int>(g.size()); ++j)
        if (g[static_cast<size_t>(j)] < s + r) rows.push_back(j);
    }
    if (rows.empty()) {
      for (int i : cols) out.push_back({{i, Rational(1)}});
    } else if (!cols.empty()) {
      auto ki = kernel_and_image(c_.d[static_cast<size_t>(t)].select(rows, cols));
      for (const auto& v : ki.kernel) {
        SparseVector w;
        for (const auto& [i, a] : v) w.emplace_back(cols[static_cast<size_t>(i)], a);
        out.push_back(std::move(w));
      }
    }
    return memo_.emplace(key, std::move(out)).first->second;
  }

  // d applied to Z_r^s in degree t - 1.
  std::vector<SparseVector> dz(int r, int s, int t) {
    std::vector<SparseVector> out;
    if (t <= 0) return out;
    for (const auto& v : z(r, s, t - 1)) {
      auto w = c_.d[static_cast<size_t>(t - 1)].apply(v);
      if (!w.empty()) out.push_back(std::move(w));
    }
    return out;
  }

  int dim_of(const std::vector<std::vector<SparseVector>>& parts, int t) {
    std::vector<SparseVector> all;
    for (const auto& p : parts) all.insert(all.end(), p.begin(), p.end());
    return span_rank(all, c_.dims[static_cast<size_t>(t)]);
  }

  int e_dim(int r, int s, int t) {
    int zr = static_cast<int>(z(r, s, t).size());
    return zr - dim_of({z(r - 1, s + 1, t), dz(r - 1, s - r + 1, t)}, t);
  }

  int d_rank(int r, int s, int t) {
    if (t >= c_.top) return 0;
    int zr = static_cast<int>(z(r, s, t).size());
    return zr - dim_of({z(r + 1, s, t), z(r - 1, s + 1, t), dz(r - 1, s - r + 1, t)}, t);
  }

 private:
  const GradedComplex& c_;
  std::map<std::tuple<int, int, int>, std::vector<SparseVector>> memo_;
};

}  // namespace

SpectralPages filtered_pages(const GradedComplex& c, int up_to, int r_max) {
  if (r_max < 1) throw StructuralError("pages start at r = 1");
  if (up_to >= c.top) throw StructuralError("pages need the next degree to be materialized");
  int lo = 0, hi = 0;
  bool any = false;
  for (int t = 0; t <= c.top; ++t)
    for (int f : c.filtration[static_cast<size_t>(t)]) {
      lo = any ? std::min(lo, f) : f;
      hi = any ? std::max(hi, f) : f;
      any = true;
    }
  PageSolver ps(c);
  SpectralPages out;
  out.r_infinity = hi - lo + 2;
  auto page = [&](int r) {
    std::vector<PageEntry> entries;
    for (int t = 0; t <= up_to; ++t) {
      std::vector<int> fs = c.filtration[static_cast<size_t>(t)];
      std::sort(fs.begin(), fs.end());
      fs.erase(std::unique(fs.begin(), fs.end()), fs.end());
      for (int s : fs) {
        PageEntry e{s, t - s, ps.e_dim(r, s, t), ps.d_rank(r, s, t)};
        if (e.dim || e.d_rank) entries.push_back(e);
      }
    }
    return entries;
  };
  for (int r = 1; r <= r_max; ++r) out.pages.push_back(page(r));
  out.e_infinity = page(out.r_infinity);
  for (auto& e : out.e_infinity) e.d_rank = 0;
  return out;
}

namespace {

struct Cell {
  std::array<int, 3> grade;
  std::vector<BasisElement> elems;
};

struct VecHash {
  size_t operator()(const std::vector<int>& v) const {
    size_t h = 1469598103934665603ull;
    for (int x : v) {
      h ^= static_cast<size_t>(static_cast<unsigned>(x));
      h *= 1099511628211ull;
    }
    return h;
  }
};

std::vector<int> flat_key(const std::array<int, 3>& g, const TermKey& t, const Exponent& e) {
  std::vector<int> k{g[0], g[1], g[2], t.comp};
  k.insert(k.end(), t.wedge.begin(), t.wedge.end());
  k.push_back(-1);
  k.insert(k.end(), t.sym.begin(), t.sym.end());
  k.push_back(-1);
  k.insert(k.end(), e.begin(), e.end());
  return k;
}

template <bool A>
GradedElement<A> make_element(const ModelPtr& m, const std::array<int, 3>& g, const BasisElement& b) {
  GradedElement<A> x(m, g[0], g[1], g[2]);
  x.add_sorted(b.term, LaurentPoly::monomial(m->level(g[2]).ring, b.exp));
  return x;
}

std::string term_string(const TermKey& t, const Exponent& e) {
  std::string s = "comp " + std::to_string(t.comp) + " wedge(";
  for (size_t i = 0; i < t.wedge.size(); ++i) s += (i ? "," : "") + std::to_string(t.wedge[i]);
  s += ") sym(";
  for (size_t i = 0; i < t.sym.size(); ++i) s += (i ? "," : "") + std::to_string(t.sym[i]);
  s += ") exp(";
  for (size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
  return s + ")";
}

// Builds bases and differential matrices; `apply` returns the images of a
// basis element, `filt` the filtration index of a grade.
template <bool A>
GradedComplex build_complex(const ModelPtr& m, const std::vector<std::vector<Cell>>& cells,
                            const std::function<std::vector<GradedElement<A>>(const GradedElement<A>&)>& apply,
                            const std::function<int(const std::array<int, 3>&)>& filt, const std::string& label,
                            std::vector<std::vector<std::array<int, 3>>>* grades = nullptr,
                            std::vector<std::vector<BasisElement>>* bases = nullptr) {
  GradedComplex gc;
  gc.top = static_cast<int>(cells.size()) - 1;
  std::vector<std::unordered_map<std::vector<int>, int, VecHash>> index(cells.size());
  for (size_t t = 0; t < cells.size(); ++t) {
    std::vector<int> f;
    std::vector<std::array<int, 3>> gr;
    std::vector<BasisElement> bs;
    int pos = 0;
    for (const auto& cell : cells[t])
      for (const auto& b : cell.elems) {
        index[t].emplace(flat_key(cell.grade, b.term, b.exp), pos++);
        f.push_back(filt(cell.grade));
        gr.push_back(cell.grade);
        bs.push_back(b);
      }
    gc.dims.push_back(pos);
    gc.filtration.push_back(std::move(f));
    if (grades) grades->push_back(std::move(gr));
    if (bases) bases->push_back(std::move(bs));
  }
  for (size_t t = 0; t + 1 < cells.size(); ++t) {
    SparseMatrix d(gc.dims[t + 1], gc.dims[t]);
    int col = 0;
    for (const auto& cell : cells[t])
      for (const auto& b : cell.elems) {
        auto x = make_element<A>(m, cell.grade, b);
        std::vector<std::pair<int, Rational>> entries;
        for (const auto& y : apply(x)) {
          std::array<int, 3> g{y.p(), y.k(), y.n()};
          for (const auto& [key, poly] : y.terms())
            for (const auto& [ex, coef] : poly.terms()) {
              auto it = index[t + 1].find(flat_key(g, key, ex));
              if (it == index[t + 1].end())
                throw SectorLeak("sector " + label + ": image of " + x.to_string() + " at (" +
                                 std::to_string(cell.grade[0]) + "," + std::to_string(cell.grade[1]) + "," +
                                 std::to_string(cell.grade[2]) + ") has term " + term_string(key, ex) + " at (" +
                                 std::to_string(g[0]) + "," + std::to_string(g[1]) + "," + std::to_string(g[2]) +
                                 ") outside the sector basis");
              entries.emplace_back(it->second, coef);
            }
        }
        d.set_column(col++, normalize_vector(std::move(entries)));
      }
    gc.d.push_back(std::move(d));
  }
  return gc;
}

// Cells of K^{p,k,n} with p + k + n = t, for t = 0..top.
std::vector<std::vector<Cell>> total_cells(const Grading& g, int top, const SectorKey& s, const TruncationPolicy& pol) {
  std::vector<std::vector<Cell>> cells(static_cast<size_t>(top + 1));
  for (int t = 0; t <= top; ++t)
    for (int n = 0; n <= t; ++n)
      for (int k = 0; 2 * k <= t - n; ++k) {
        int p = t - n - k;
        auto b = g.basis(p, k, n, s, pol);
        if (!b.empty()) cells[static_cast<size_t>(t)].push_back({{p, k, n}, std::move(b)});
      }
  return cells;
}

// Runs fn(i) for i in [0, count) on `jobs` threads; rethrows the first
// failure by index.
void parallel_for(size_t count, int jobs, const std::function<void(size_t)>& fn) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  int n = std::max(1, std::min<int>(jobs, static_cast<int>(count)));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

GradedComplex total_complex(const ModelPtr& m, const Grading& g, int D, const SectorKey& s,
                            const TruncationPolicy& pol, std::vector<std::vector<std::array<int, 3>>>* grades = nullptr,
                            std::vector<std::vector<BasisElement>>* bases = nullptr) {
  auto cells = total_cells(g, D + 1, s, pol);
  std::function<std::vector<KElement>(const KElement&)> apply = [](const KElement& x) {
    auto td = total_differential(x);
    return std::vector<KElement>{td.phi, td.cech, td.derham, td.contraction};
  };
  return build_complex<false>(m, cells, apply, [](const std::array<int, 3>& gr) { return gr[0] + gr[1]; },
                              s.label(), grades, bases);
}

GradedComplex fixed_p_complex(const ModelPtr& m, const Grading& g, int D, int p, const SectorKey& s,
                              const TruncationPolicy& pol) {
  std::vector<std::vector<Cell>> cells(static_cast<size_t>(D + 2));
  for (int t = 0; t <= D + 1; ++t)
    for (int k = 0; k <= std::min(t, p); ++k) {
      auto b = g.basis(p, k, t - k, s, pol);
      if (!b.empty()) cells[static_cast<size_t>(t)].push_back({{p, k, t - k}, std::move(b)});
    }
  std::function<std::vector<KElement>(const KElement&)> apply = [](const KElement& x) {
    return std::vector<KElement>{phi(x), cech(x)};
  };
  return build_complex<false>(m, cells, apply, [](const std::array<int, 3>& gr) { return gr[1]; }, s.label());
}

GradedComplex oracle_complex(const ModelPtr& m, const Grading& g, int D, const SectorKey& s,
                             const TruncationPolicy& pol) {
  std::vector<std::vector<Cell>> cells(static_cast<size_t>(D + 2));
  for (int t = 0; t <= D + 1; ++t)
    for (int n = 0; n <= t; ++n) {
      auto b = g.ambient_basis(t - n, n, s, pol);
      if (!b.empty()) cells[static_cast<size_t>(t)].push_back({{t - n, 0, n}, std::move(b)});
    }
  std::function<std::vector<AmbientElement>(const AmbientElement&)> apply = [](const AmbientElement& x) {
    AmbientElement dx = exterior_derivative(x);
    if (x.n() % 2) dx = -dx;
    return std::vector<AmbientElement>{ambient_cech(x), dx};
  };
  return build_complex<true>(m, cells, apply, [](const std::array<int, 3>&) { return 0; }, s.label());
}

GradedComplex cartan_complex(const ModelPtr& m, const Grading& g, int D, const SectorKey& s,
                             const TruncationPolicy& pol) {
  std::vector<std::vector<Cell>> cells(static_cast<size_t>(D + 2));
  for (int t = 0; t <= D + 1; ++t)
    for (int k = 0; 2 * k <= t; ++k) {
      auto b = g.basis(t - k, k, 0, s, pol);
      if (!b.empty()) cells[static_cast<size_t>(t)].push_back({{t - k, k, 0}, std::move(b)});
    }
  std::function<std::vector<KElement>(const KElement&)> apply = [](const KElement& x) {
    return std::vector<KElement>{phi(x), derham(x)};
  };
  return build_complex<false>(m, cells, apply, [](const std::array<int, 3>& gr) { return gr[0] + gr[1]; },
                              s.label());
}

std::vector<int> zero_dims(int D) { return std::vector<int>(static_cast<size_t>(D + 1), 0); }

void finish(CohomologyReport& rep, int D, const TruncationPolicy& pol, bool box_checked) {
  rep.dims = zero_dims(D);
  for (const auto& s : rep.sectors) {
    for (int t = 0; t <= D; ++t) rep.dims[static_cast<size_t>(t)] += s.dims[static_cast<size_t>(t)];
    bool nonzero = std::any_of(s.dims.begin(), s.dims.end(), [](int v) { return v != 0; });
    if (s.sector.boundary && nonzero) {
      rep.stabilized = false;
      rep.notes.push_back("edge sector " + s.sector.label() + " has nonzero cohomology; widen the window");
    }
    if (!s.box_stable) {
      rep.stabilized = false;
      rep.notes.push_back("sector " + s.sector.label() + " changes when the torus box grows");
    }
  }
  bool any_boundary = std::any_of(rep.sectors.begin(), rep.sectors.end(), [](const SectorResult& s) { return s.sector.boundary; });
  if (any_boundary)
    rep.notes.push_back("infinitely many sectors: window |key| <= " + std::to_string(pol.window) +
                        (rep.stabilized ? ", edge sectors contribute nothing" : ""));
  if (box_checked)
    rep.notes.push_back("torus box " + std::to_string(pol.torus_box) + " checked against " +
                        std::to_string(pol.torus_box + 1));
}

using SectorFn = std::function<std::vector<int>(const SectorKey&, const TruncationPolicy&)>;

CohomologyReport run_sectors(const ModelPtr& m, const Grading& g, const std::vector<SectorKey>& sectors, int D,
                             const EngineOptions& opt, const SectorFn& fn, const std::function<size_t(const SectorKey&)>& size_fn) {
  CohomologyReport rep;
  rep.sectors.resize(sectors.size());
  const bool box = opt.check_stability && g.box_sensitive();
  TruncationPolicy wider = opt.policy;
  wider.torus_box += 1;
  parallel_for(sectors.size(), opt.jobs, [&](size_t i) {
    SectorResult r;
    r.sector = sectors[i];
    r.dims = fn(sectors[i], opt.policy);
    if (box) r.box_stable = fn(sectors[i], wider) == r.dims;
    r.basis_size = size_fn(sectors[i]);
    rep.sectors[i] = std::move(r);
  });
  (void)m;
  finish(rep, D, opt.policy, box);
  return rep;
}

}  // namespace

KElement basis_element(const ModelPtr& m, const std::array<int, 3>& grade, const BasisElement& b) {
  return make_element<false>(m, grade, b);
}

TruncatedComplex assemble_sector(const ModelPtr& m, int D, const SectorKey& s, const TruncationPolicy& pol) {
  if (D < 0) throw StructuralError("degree bound must be nonnegative");
  Grading g(m);
  TruncatedComplex tc;
  tc.model = m;
  tc.D = D;
  tc.sector = s;
  tc.complex = total_complex(m, g, D, s, pol, &tc.grade, &tc.basis);
  return tc;
}

CohomologyReport total_cohomology(const ModelPtr& m, int D, const EngineOptions& opt) {
  if (D < 0) throw StructuralError("degree bound must be nonnegative");
  Grading g(m);
  auto sectors = g.sectors(opt.policy);
  return run_sectors(
      m, g, sectors, D, opt,
      [&](const SectorKey& s, const TruncationPolicy& pol) {
        return complex_cohomology(total_complex(m, g, D, s, pol), D);
      },
      [&](const SectorKey& s) {
        size_t n = 0;
        for (const auto& c : total_cells(g, D + 1, s, opt.policy))
          for (const auto& cell : c) n += cell.elems.size();
        return n;
      });
}

CohomologyReport oracle_total(const ModelPtr& m, int D, const EngineOptions& opt) {
  if (D < 0) throw StructuralError("degree bound must be nonnegative");
  Grading g(m);
  auto sectors = g.sectors(opt.policy);
  return run_sectors(
      m, g, sectors, D, opt,
      [&](const SectorKey& s, const TruncationPolicy& pol) {
        return complex_cohomology(oracle_complex(m, g, D, s, pol), D);
      },
      [](const SectorKey&) { return size_t{0}; });
}

CohomologyReport cartan_total(const ModelPtr& m, int D, const EngineOptions& opt) {
  if (D < 0) throw StructuralError("degree bound must be nonnegative");
  const auto& prov = m->provider();
  if (m->kind() == ModelKind::pair || m->kind() == ModelKind::vector_bundle ||
      (prov.group() && prov.group()->additive_rank > 0))
    throw ModelError("the Cartan comparison is only available for torus or finite group actions");
  Grading g(m);
  std::vector<SectorKey> sectors;
  for (const auto& s : g.sectors(opt.policy))
    if (g.weight_zero(s)) sectors.push_back(s);
  EngineOptions o = opt;
  o.check_stability = false;
  if (m->kind() != ModelKind::finite)
    return run_sectors(
        m, g, sectors, D, o,
        [&](const SectorKey& s, const TruncationPolicy& pol) {
          return complex_cohomology(cartan_complex(m, g, D, s, pol), D);
        },
        [](const SectorKey&) { return size_t{0}; });
  // finite group: invariant forms via the averaging projector
  const int order = prov.group()->order;
  return run_sectors(
      m, g, sectors, D, o,
      [&](const SectorKey& s, const TruncationPolicy& pol) {
        std::vector<std::vector<BasisElement>> bases;
        std::vector<std::unordered_map<std::vector<int>, int, VecHash>> index;
        for (int t = 0; t <= D + 1; ++t) {
          bases.push_back(g.basis(t, 0, 0, s, pol));
          index.emplace_back();
          for (size_t i = 0; i < bases.back().size(); ++i)
            index.back().emplace(flat_key({t, 0, 0}, bases.back()[i].term, bases.back()[i].exp), static_cast<int>(i));
        }
        auto to_vec = [&](const KElement& y, int t) {
          std::vector<std::pair<int, Rational>> v;
          for (const auto& [key, poly] : y.terms())
            for (const auto& [ex, c] : poly.terms()) {
              auto it = index[static_cast<size_t>(t)].find(flat_key({t, 0, 0}, key, ex));
              if (it == index[static_cast<size_t>(t)].end()) throw SectorLeak("averaging left the sector " + s.label());
              v.emplace_back(it->second, c);
            }
          return normalize_vector(std::move(v));
        };
        std::vector<SparseMatrix> P, dP;
        for (int t = 0; t <= D + 1; ++t) {
          const auto& b = bases[static_cast<size_t>(t)];
          SparseMatrix pm(static_cast<int>(b.size()), static_cast<int>(b.size()));
          SparseMatrix dpm(t + 1 <= D + 1 ? static_cast<int>(bases[static_cast<size_t>(std::min(t + 1, D + 1))].size()) : 0,
                           static_cast<int>(b.size()));
          for (size_t i = 0; i < b.size(); ++i) {
            KElement x = basis_element(m, {t, 0, 0}, b[i]);
            KElement f = face_pullback(x, 0);
            KElement avg(m, t, 0, 0);
            for (const auto& [key, c] : f.terms()) avg.add_sorted(TermKey{0, key.wedge, key.sym}, c);
            avg = avg.scaled(Rational(1, order));
            pm.set_column(static_cast<int>(i), to_vec(avg, t));
            if (t + 1 <= D + 1) dpm.set_column(static_cast<int>(i), to_vec(derham(avg), t + 1));
          }
          P.push_back(std::move(pm));
          dP.push_back(std::move(dpm));
        }
        std::vector<int> dims;
        for (int t = 0; t <= D; ++t)
          dims.push_back(rank(P[static_cast<size_t>(t)]) - rank(dP[static_cast<size_t>(t)]) -
                         (t > 0 ? rank(dP[static_cast<size_t>(t - 1)]) : 0));
        return dims;
      },
      [](const SectorKey&) { return size_t{0}; });
}

namespace {

PagesReport sum_pages(const std::vector<SpectralPages>& per, const std::vector<SectorKey>& sectors,
                      const std::vector<std::vector<int>>& coh, int r_max) {
  PagesReport rep;
  auto merge = [](std::map<std::pair<int, int>, PageEntry>& acc, const std::vector<PageEntry>& es) {
    for (const auto& e : es) {
      auto& a = acc[{e.m, e.n}];
      a.m = e.m;
      a.n = e.n;
      a.dim += e.dim;
      a.d_rank += e.d_rank;
    }
  };
  auto flatten = [](const std::map<std::pair<int, int>, PageEntry>& acc) {
    std::vector<PageEntry> out;
    for (const auto& [k, e] : acc) out.push_back(e);
    return out;
  };
  for (int r = 0; r < r_max; ++r) {
    std::map<std::pair<int, int>, PageEntry> acc;
    for (const auto& p : per) merge(acc, p.pages[static_cast<size_t>(r)]);
    rep.pages.pages.push_back(flatten(acc));
  }
  std::map<std::pair<int, int>, PageEntry> inf;
  for (const auto& p : per) {
    merge(inf, p.e_infinity);
    rep.pages.r_infinity = std::max(rep.pages.r_infinity, p.r_infinity);
  }
  rep.pages.e_infinity = flatten(inf);
  for (size_t i = 0; i < sectors.size(); ++i) {
    bool nonzero = std::any_of(coh[i].begin(), coh[i].end(), [](int v) { return v != 0; });
    if (sectors[i].boundary && nonzero) {
      rep.stabilized = false;
      rep.notes.push_back("edge sector " + sectors[i].label() + " has nonzero cohomology; widen the window");
    }
  }
  return rep;
}

}  // namespace

PagesReport spectral_pages(const ModelPtr& m, int D, int r_max, const EngineOptions& opt) {
  if (D < 0) throw StructuralError("degree bound must be nonnegative");
  Grading g(m);
  auto sectors = g.sectors(opt.policy);
  std::vector<SpectralPages> per(sectors.size());
  std::vector<std::vector<int>> coh(sectors.size());
  parallel_for(sectors.size(), opt.jobs, [&](size_t i) {
    auto c = total_complex(m, g, D, sectors[i], opt.policy);
    per[i] = filtered_pages(c, D, r_max);
    coh[i] = complex_cohomology(c, D);
  });
  return sum_pages(per, sectors, coh, r_max);
}

PagesReport fixed_p_pages(const ModelPtr& m, int D, int p, int r_max, const EngineOptions& opt) {
  if (D < 0 || p < 0) throw StructuralError("degree bound and p must be nonnegative");
  Grading g(m);
  auto sectors = g.sectors(opt.policy);
  std::vector<SpectralPages> per(sectors.size());
  std::vector<std::vector<int>> coh(sectors.size());
  parallel_for(sectors.size(), opt.jobs, [&](size_t i) {
    auto c = fixed_p_complex(m, g, D, p, sectors[i], opt.policy);
    per[i] = filtered_pages(c, D, r_max);
    coh[i] = complex_cohomology(c, D);
  });
  return sum_pages(per, sectors, coh, r_max);
}

}  // namespace qdr

#include "qdr/grading.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "qdr/error.hpp"

namespace qdr {

std::string SectorKey::label() const {
  std::string s = "[";
  for (size_t i = 0; i < key.size(); ++i) s += (i ? "," : "") + std::to_string(key[i]);
  return s + "]";
}

namespace {

std::vector<int> unit(int dim, int i) {
  std::vector<int> v(static_cast<size_t>(dim), 0);
  v[static_cast<size_t>(i)] = 1;
  return v;
}

void add_to(std::vector<int>& a, const std::vector<int>& b) {
  for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
}

void choose_wedges(int len, int cov, std::vector<std::vector<int>>& out) {
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == len) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < cov; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

void choose_syms(int len, int nu, std::vector<std::vector<int>>& out) {
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == len) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < nu; ++i) {
      cur.push_back(i);
      rec(i);
      cur.pop_back();
    }
  };
  rec(0);
}

// Nonnegative integer vectors of the given length and sum.
void compositions(int len, int total, std::vector<std::vector<int>>& out) {
  if (total < 0) return;
  std::vector<int> cur(static_cast<size_t>(len), 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == len - 1) {
      cur[static_cast<size_t>(i)] = left;
      out.push_back(cur);
      return;
    }
    for (int a = 0; a <= left; ++a) {
      cur[static_cast<size_t>(i)] = a;
      rec(i + 1, left - a);
    }
  };
  if (len == 0) {
    if (total == 0) out.push_back({});
    return;
  }
  rec(0, total);
}

}  // namespace

Grading::Grading(ModelPtr model) : model_(std::move(model)) {
  const auto& p = model_->provider();
  kind_ = model_->kind();
  e_ = model_->e();
  nu_ = model_->nu();
  switch (kind_) {
    case ModelKind::transformation:
    case ModelKind::vector_bundle: {
      const GroupModel* g = p.group();
      const SpaceModel* x = p.base();
      const ActionModel* a = p.action();
      torus_ = g->torus_rank;
      additive_ = g->additive_rank;
      for (int i = 0; i < e_; ++i) base_laurent_.push_back(x->ring->var(i).kind == VarKind::laurent);
      weights_ = a->weights;
      if (weights_.empty()) weights_.assign(static_cast<size_t>(e_), std::vector<int>(static_cast<size_t>(torus_), 0));
      key_dim_ = e_ + (additive_ > 0 ? 1 : 0);
      break;
    }
    case ModelKind::pair: {
      const GroupModel* g = p.group();
      torus_ = g->torus_rank;
      additive_ = g->additive_rank;
      if (!model_->level(0).anchor[0].is_identity())
        throw ModelError("no sector grading for a pair model with a non-invariant trivialization");
      for (int c = 0; c < g->dim(); ++c) {
        base_laurent_.push_back(g->ring->var(c).kind == VarKind::laurent);
        exact_.push_back(g->coframe[static_cast<size_t>(c)] == CoframeKind::exact);
      }
      key_dim_ = g->dim();
      break;
    }
    case ModelKind::finite: {
      const SpaceModel* x = p.base();
      const ActionModel* a = p.action();
      order_ = p.group()->order;
      for (int i = 0; i < e_; ++i) base_laurent_.push_back(x->ring->var(i).kind == VarKind::laurent);
      for (const auto& img : a->act.images()) {
        if (!img.is_monomial()) throw ModelError("no sector grading for a non-monomial finite action");
        gen_matrix_.emplace_back(img.terms()[0].first.begin(), img.terms()[0].first.end());
      }
      key_dim_ = e_;
      break;
    }
  }
}

bool Grading::finite_sectors() const { return key_dim_ == 0; }

bool Grading::box_sensitive() const {
  if (kind_ == ModelKind::pair)
    return std::find(base_laurent_.begin(), base_laurent_.end(), true) != base_laurent_.end();
  return (kind_ == ModelKind::transformation || kind_ == ModelKind::vector_bundle) && torus_ > 0;
}

bool Grading::weight_zero(const SectorKey& s) const {
  if (kind_ != ModelKind::transformation && kind_ != ModelKind::vector_bundle) return true;
  for (int c = 0; c < torus_; ++c) {
    int chi = 0;
    for (int i = 0; i < e_; ++i) chi += s.key[static_cast<size_t>(i)] * weights_[static_cast<size_t>(i)][static_cast<size_t>(c)];
    if (chi != 0) return false;
  }
  return true;
}

std::vector<int> Grading::var_weight(int n, int var) const {
  switch (kind_) {
    case ModelKind::transformation:
    case ModelKind::vector_bundle: {
      if (var >= n * nu_) return unit(key_dim_, var - n * nu_);
      int c = var % nu_;
      if (c < torus_) return std::vector<int>(static_cast<size_t>(key_dim_), 0);
      return unit(key_dim_, e_);
    }
    case ModelKind::pair:
      return unit(key_dim_, var % key_dim_);
    case ModelKind::finite:
      return unit(key_dim_, var);
  }
  return {};
}

std::vector<int> Grading::cov_weight(int n, int cov, bool ambient) const {
  switch (kind_) {
    case ModelKind::transformation:
    case ModelKind::vector_bundle:
      return ambient ? var_weight(n, cov) : unit(key_dim_, cov);
    case ModelKind::pair: {
      int c = cov % key_dim_;
      return exact_[static_cast<size_t>(c)] ? unit(key_dim_, c) : std::vector<int>(static_cast<size_t>(key_dim_), 0);
    }
    case ModelKind::finite:
      return unit(key_dim_, cov);
  }
  return {};
}

std::vector<int> Grading::gen_weight(int a) const {
  switch (kind_) {
    case ModelKind::transformation:
    case ModelKind::vector_bundle:
      return a < torus_ ? std::vector<int>(static_cast<size_t>(key_dim_), 0) : unit(key_dim_, e_);
    case ModelKind::pair:
      return exact_[static_cast<size_t>(a)] ? unit(key_dim_, a) : std::vector<int>(static_cast<size_t>(key_dim_), 0);
    case ModelKind::finite:
      throw StructuralError("finite models have no generators");
  }
  return {};
}

std::vector<int> Grading::canonical(const std::vector<int>& w) const {
  if (kind_ != ModelKind::finite) return w;
  std::vector<int> best = w, cur = w;
  for (int h = 1; h < order_; ++h) {
    std::vector<int> next(static_cast<size_t>(e_), 0);
    for (int i = 0; i < e_; ++i)
      for (int j = 0; j < e_; ++j) next[static_cast<size_t>(j)] += cur[static_cast<size_t>(i)] * gen_matrix_[static_cast<size_t>(i)][static_cast<size_t>(j)];
    cur = next;
    best = std::min(best, cur);
  }
  return best;
}

std::vector<int> Grading::weight(int n, const TermKey& t, const Exponent& e, bool ambient) const {
  std::vector<int> w(static_cast<size_t>(key_dim_), 0);
  for (size_t v = 0; v < e.size(); ++v)
    if (e[v] != 0) {
      auto vw = var_weight(n, static_cast<int>(v));
      for (size_t i = 0; i < w.size(); ++i) w[i] += vw[i] * e[v];
    }
  for (int c : t.wedge) add_to(w, cov_weight(n, c, ambient));
  for (int a : t.sym) add_to(w, gen_weight(a));
  return w;
}

SectorKey Grading::sector_of(int n, const TermKey& t, const Exponent& e, bool ambient) const {
  return SectorKey{canonical(weight(n, t, e, ambient)), false};
}

std::vector<SectorKey> Grading::sectors(const TruncationPolicy& pol) const {
  const int M = pol.window;
  std::vector<std::pair<int, int>> ranges;
  switch (kind_) {
    case ModelKind::transformation:
    case ModelKind::vector_bundle:
      for (int i = 0; i < e_; ++i) ranges.emplace_back(base_laurent_[static_cast<size_t>(i)] ? -M : 0, M);
      if (additive_ > 0) ranges.emplace_back(0, M);
      break;
    case ModelKind::pair:
      for (int c = 0; c < key_dim_; ++c) ranges.emplace_back(base_laurent_[static_cast<size_t>(c)] ? -M : 0, M);
      break;
    case ModelKind::finite:
      for (int i = 0; i < e_; ++i) ranges.emplace_back(base_laurent_[static_cast<size_t>(i)] ? -M : 0, M);
      break;
  }
  std::set<std::vector<int>> seen;
  std::vector<SectorKey> out;
  std::vector<int> cur(ranges.size());
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == ranges.size()) {
      auto c = canonical(cur);
      if (!seen.insert(c).second) return;
      bool boundary = false;
      for (size_t j = 0; j < c.size(); ++j)
        if (M > 0 && std::abs(c[j]) >= M) boundary = true;
      // a canonical representative outside the window still counts as edge
      for (int v : c)
        if (std::abs(v) > M) boundary = true;
      out.push_back(SectorKey{c, boundary});
      return;
    }
    for (int v = ranges[i].first; v <= ranges[i].second; ++v) {
      cur[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Exponent> Grading::monomials(int n, const std::vector<int>& key, const std::vector<int>& residual,
                                         const TruncationPolicy& pol) const {
  std::vector<Exponent> out;
  switch (kind_) {
    case ModelKind::transformation:
    case ModelKind::vector_bundle: {
      for (int i = 0; i < e_; ++i)
        if (!base_laurent_[static_cast<size_t>(i)] && residual[static_cast<size_t>(i)] < 0) return out;
      int w = additive_ > 0 ? residual[static_cast<size_t>(e_)] : 0;
      std::vector<std::vector<int>> adds;
      compositions(n * additive_, w, adds);
      if (adds.empty()) return out;
      // torus exponent choices per block
      std::set<std::vector<int>> s;
      s.insert(std::vector<int>(static_cast<size_t>(torus_), 0));
      std::vector<int> chi(static_cast<size_t>(torus_), 0);
      for (int i = 0; i < e_; ++i)
        for (int c = 0; c < torus_; ++c) chi[static_cast<size_t>(c)] += key[static_cast<size_t>(i)] * weights_[static_cast<size_t>(i)][static_cast<size_t>(c)];
      s.insert(chi);
      std::vector<int> cur(static_cast<size_t>(torus_), 0);
      std::function<void(int)> box = [&](int c) {
        if (c == torus_) {
          s.insert(cur);
          return;
        }
        for (int v = -pol.torus_box; v <= pol.torus_box; ++v) {
          cur[static_cast<size_t>(c)] = v;
          box(c + 1);
        }
      };
      if (torus_ > 0) box(0);
      std::vector<std::vector<int>> svals(s.begin(), s.end());
      if (torus_ == 0) svals = {{}};
      Exponent ex(static_cast<size_t>(n * nu_ + e_), 0);
      for (int i = 0; i < e_; ++i) ex[static_cast<size_t>(n * nu_ + i)] = residual[static_cast<size_t>(i)];
      std::function<void(int)> blocks = [&](int j) {
        if (j == n) {
          for (const auto& a : adds) {
            Exponent full = ex;
            for (int jj = 0; jj < n; ++jj)
              for (int c = 0; c < additive_; ++c)
                full[static_cast<size_t>(jj * nu_ + torus_ + c)] = a[static_cast<size_t>(jj * additive_ + c)];
            out.push_back(std::move(full));
          }
          return;
        }
        for (const auto& v : svals) {
          for (int c = 0; c < torus_; ++c) ex[static_cast<size_t>(j * nu_ + c)] = v[static_cast<size_t>(c)];
          blocks(j + 1);
        }
      };
      blocks(0);
      break;
    }
    case ModelKind::pair: {
      const int dim = key_dim_;
      int budget = pol.torus_box;
      for (int v : key) budget += std::abs(v);
      Exponent ex(static_cast<size_t>((n + 1) * dim), 0);
      // coordinate c, object j
      std::function<void(int, int, int, int)> rec = [&](int c, int j, int left, int used) {
        if (c == dim) {
          out.push_back(ex);
          return;
        }
        const bool laurent = base_laurent_[static_cast<size_t>(c)];
        if (j == n) {
          if (!laurent && left < 0) return;
          if (used + std::abs(left) > budget) return;
          ex[static_cast<size_t>(j * dim + c)] = left;
          int nl = c + 1 < dim ? residual[static_cast<size_t>(c + 1)] : 0;
          rec(c + 1, 0, nl, used + std::abs(left));
          return;
        }
        int lo = laurent ? -(budget - used) : 0;
        int hi = budget - used;
        for (int a = lo; a <= hi; ++a) {
          ex[static_cast<size_t>(j * dim + c)] = a;
          rec(c, j + 1, left - a, used + std::abs(a));
        }
      };
      if (dim == 0) {
        out.push_back(ex);
      } else {
        rec(0, 0, residual[0], 0);
      }
      break;
    }
    case ModelKind::finite: {
      for (int i = 0; i < e_; ++i)
        if (!base_laurent_[static_cast<size_t>(i)] && residual[static_cast<size_t>(i)] < 0) return out;
      out.emplace_back(residual.begin(), residual.end());
      break;
    }
  }
  return out;
}

std::vector<BasisElement> Grading::enumerate(int p, int k, int n, const SectorKey& s, const TruncationPolicy& pol,
                                             bool ambient) const {
  std::vector<BasisElement> out;
  const Level& l = model_->level(n);
  const int cov = ambient ? l.amb() : e_;
  if (p < k || p - k > cov || (k > 0 && nu_ == 0)) return out;
  std::vector<std::vector<int>> wedges, syms;
  choose_wedges(p - k, cov, wedges);
  choose_syms(k, nu_, syms);
  // target weights: the key, or its whole orbit for finite groups
  std::vector<std::vector<int>> targets{s.key};
  if (kind_ == ModelKind::finite) {
    std::set<std::vector<int>> orbit{s.key};
    std::vector<int> cur = s.key;
    for (int h = 1; h < order_; ++h) {
      std::vector<int> next(static_cast<size_t>(e_), 0);
      for (int i = 0; i < e_; ++i)
        for (int j = 0; j < e_; ++j) next[static_cast<size_t>(j)] += cur[static_cast<size_t>(i)] * gen_matrix_[static_cast<size_t>(i)][static_cast<size_t>(j)];
      cur = next;
      orbit.insert(cur);
    }
    targets.assign(orbit.begin(), orbit.end());
  }
  for (int comp = 0; comp < l.comps; ++comp)
    for (const auto& w : wedges)
      for (const auto& sy : syms) {
        std::vector<int> base(static_cast<size_t>(key_dim_), 0);
        for (int c : w) add_to(base, cov_weight(n, c, ambient));
        for (int a : sy) add_to(base, gen_weight(a));
        for (const auto& t : targets) {
          std::vector<int> residual = t;
          for (size_t i = 0; i < residual.size(); ++i) residual[i] -= base[i];
          for (auto& ex : monomials(n, s.key, residual, pol)) out.push_back({TermKey{comp, w, sy}, std::move(ex)});
        }
      }
  return out;
}

std::vector<BasisElement> Grading::basis(int p, int k, int n, const SectorKey& s, const TruncationPolicy& pol) const {
  return enumerate(p, k, n, s, pol, false);
}

std::vector<BasisElement> Grading::ambient_basis(int q, int n, const SectorKey& s, const TruncationPolicy& pol) const {
  return enumerate(q, 0, n, s, pol, true);
}

}  // namespace qdr

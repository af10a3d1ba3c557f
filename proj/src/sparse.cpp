#include "qdr/sparse.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "qdr/error.hpp"

namespace qdr {

SparseVector normalize_vector(std::vector<std::pair<int, Rational>> v) {
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVector out;
  for (auto& [i, c] : v) {
    if (!out.empty() && out.back().first == i) {
      out.back().second += c;
      if (out.back().second.is_zero()) out.pop_back();
    } else if (!c.is_zero()) {
      out.emplace_back(i, std::move(c));
    }
  }
  return out;
}

void SparseMatrix::set_column(int c, SparseVector v) {
  for (const auto& [r, x] : v)
    if (r < 0 || r >= rows_) throw StructuralError("matrix row index out of range");
  data_.at(static_cast<size_t>(c)) = normalize_vector(std::move(v));
}

void SparseMatrix::add(int r, int c, const Rational& v) {
  if (r < 0 || r >= rows_) throw StructuralError("matrix row index out of range");
  auto& col = data_.at(static_cast<size_t>(c));
  auto it = std::lower_bound(col.begin(), col.end(), r, [](const auto& e, int k) { return e.first < k; });
  if (it != col.end() && it->first == r) {
    it->second += v;
    if (it->second.is_zero()) col.erase(it);
  } else if (!v.is_zero()) {
    col.insert(it, {r, v});
  }
}

Rational SparseMatrix::at(int r, int c) const {
  const auto& col = data_.at(static_cast<size_t>(c));
  auto it = std::lower_bound(col.begin(), col.end(), r, [](const auto& e, int k) { return e.first < k; });
  if (it != col.end() && it->first == r) return it->second;
  return Rational(0);
}

bool SparseMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const auto& c) { return c.empty(); });
}

size_t SparseMatrix::nonzeros() const {
  size_t n = 0;
  for (const auto& c : data_) n += c.size();
  return n;
}

SparseVector SparseMatrix::apply(const SparseVector& v) const {
  std::map<int, Rational> acc;
  for (const auto& [c, x] : v) {
    if (c < 0 || c >= cols_) throw StructuralError("vector index out of range");
    for (const auto& [r, y] : data_[static_cast<size_t>(c)]) acc[r] += x * y;
  }
  SparseVector out;
  for (auto& [r, y] : acc)
    if (!y.is_zero()) out.emplace_back(r, std::move(y));
  return out;
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& o) const {
  if (cols_ != o.rows_) throw StructuralError("matrix product: dimension mismatch");
  SparseMatrix r(rows_, o.cols_);
  for (int c = 0; c < o.cols_; ++c) r.data_[static_cast<size_t>(c)] = apply(o.column(c));
  return r;
}

SparseMatrix SparseMatrix::operator+(const SparseMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw StructuralError("matrix sum: dimension mismatch");
  SparseMatrix r(rows_, cols_);
  for (int c = 0; c < cols_; ++c) {
    auto v = data_[static_cast<size_t>(c)];
    const auto& w = o.data_[static_cast<size_t>(c)];
    v.insert(v.end(), w.begin(), w.end());
    r.data_[static_cast<size_t>(c)] = normalize_vector(std::move(v));
  }
  return r;
}

SparseMatrix SparseMatrix::scaled(const Rational& s) const {
  SparseMatrix r(rows_, cols_);
  if (s.is_zero()) return r;
  r.data_ = data_;
  for (auto& col : r.data_)
    for (auto& e : col) e.second *= s;
  return r;
}

SparseMatrix SparseMatrix::operator-(const SparseMatrix& o) const { return *this + o.scaled(Rational(-1)); }

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(cols_, rows_);
  for (int c = 0; c < cols_; ++c)
    for (const auto& [r, x] : data_[static_cast<size_t>(c)]) t.data_[static_cast<size_t>(r)].emplace_back(c, x);
  return t;
}

SparseMatrix SparseMatrix::select(const std::vector<int>& rows, const std::vector<int>& cols) const {
  std::vector<int> row_map(static_cast<size_t>(rows_), -1);
  for (size_t i = 0; i < rows.size(); ++i) row_map.at(static_cast<size_t>(rows[i])) = static_cast<int>(i);
  SparseMatrix s(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j) {
    SparseVector v;
    for (const auto& [r, x] : column(cols[j]))
      if (row_map[static_cast<size_t>(r)] >= 0) v.emplace_back(row_map[static_cast<size_t>(r)], x);
    s.data_[j] = normalize_vector(std::move(v));
  }
  return s;
}

std::vector<SparseVector> SparseMatrix::rows_as_vectors() const { return transpose().data_; }

bool SparseMatrix::operator==(const SparseMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

namespace {

using IntRow = std::vector<std::pair<int, mpz_class>>;

IntRow to_integer_row(const SparseVector& v) {
  mpz_class l = 1;
  for (const auto& [i, x] : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.raw().get_den_mpz_t());
  IntRow r;
  r.reserve(v.size());
  for (const auto& [i, x] : v) r.emplace_back(i, mpz_class(x.raw().get_num() * (l / x.raw().get_den())));
  return r;
}

void make_primitive(IntRow& r) {
  if (r.empty()) return;
  mpz_class g = 0;
  for (const auto& [i, x] : r) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) break;
  }
  if (r.front().second < 0) g = -g;
  if (g != 1)
    for (auto& e : r) mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), g.get_mpz_t());
}

// a * x - b * y, dropping zeros.
IntRow combine(const mpz_class& a, const IntRow& x, const mpz_class& b, const IntRow& y) {
  IntRow out;
  out.reserve(x.size() + y.size());
  size_t i = 0, j = 0;
  mpz_class t;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      out.emplace_back(x[i].first, a * x[i].second);
      ++i;
    } else if (i == x.size() || y[j].first < x[i].first) {
      out.emplace_back(y[j].first, -b * y[j].second);
      ++j;
    } else {
      t = a * x[i].second - b * y[j].second;
      if (t != 0) out.emplace_back(x[i].first, t);
      ++i;
      ++j;
    }
  }
  return out;
}

const mpz_class* entry(const IntRow& r, int col) {
  auto it = std::lower_bound(r.begin(), r.end(), col, [](const auto& e, int k) { return e.first < k; });
  if (it != r.end() && it->first == col) return &it->second;
  return nullptr;
}

// Fraction-free row echelon form with content removal.
class Echelon {
 public:
  bool insert(IntRow row) {
    make_primitive(row);
    while (!row.empty()) {
      auto it = pivots_.find(row.front().first);
      if (it == pivots_.end()) break;
      const IntRow& p = it->second;
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), p.front().second.get_mpz_t(), row.front().second.get_mpz_t());
      mpz_class a = p.front().second / g, b = row.front().second / g;
      row = combine(a, row, b, p);
      make_primitive(row);
    }
    if (row.empty()) return false;
    int c = row.front().first;
    pivots_.emplace(c, std::move(row));
    return true;
  }

  int rank() const { return static_cast<int>(pivots_.size()); }

  // Clear entries above each pivot.
  void reduce_fully() {
    for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
      int pc = it->first;
      const IntRow& p = it->second;
      for (auto jt = pivots_.begin(); jt != pivots_.end() && jt->first < pc; ++jt) {
        const mpz_class* x = entry(jt->second, pc);
        if (!x) continue;
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), p.front().second.get_mpz_t(), x->get_mpz_t());
        mpz_class a = p.front().second / g, b = *x / g;
        jt->second = combine(a, jt->second, b, p);
        make_primitive(jt->second);
      }
    }
  }

  const std::map<int, IntRow>& pivots() const { return pivots_; }

 private:
  std::map<int, IntRow> pivots_;
};

}  // namespace

int span_rank(const std::vector<SparseVector>& vectors, int dim) {
  Echelon ech;
  for (const auto& v : vectors) {
    for (const auto& [i, x] : v)
      if (i < 0 || i >= dim) throw StructuralError("vector index out of range");
    ech.insert(to_integer_row(v));
  }
  return ech.rank();
}

int rank(const SparseMatrix& a) {
  std::vector<SparseVector> cols;
  cols.reserve(static_cast<size_t>(a.cols()));
  for (int c = 0; c < a.cols(); ++c) cols.push_back(a.column(c));
  return span_rank(cols, a.rows());
}

KernelImage kernel_and_image(const SparseMatrix& a) {
  Echelon ech;
  for (const auto& row : a.rows_as_vectors()) ech.insert(to_integer_row(row));
  ech.reduce_fully();
  KernelImage out;
  out.rank = ech.rank();
  const auto& piv = ech.pivots();
  // For each free column f: x_f = 1, x_p = -row_p[f] / row_p[p].
  std::map<int, std::vector<std::pair<int, Rational>>> by_free;
  for (const auto& [pc, row] : piv)
    for (size_t k = 1; k < row.size(); ++k)
      by_free[row[k].first].emplace_back(pc, -Rational(mpq_class(row[k].second, row.front().second)));
  for (int f = 0; f < a.cols(); ++f) {
    if (piv.count(f)) continue;
    std::vector<std::pair<int, Rational>> v;
    v.emplace_back(f, Rational(1));
    auto it = by_free.find(f);
    if (it != by_free.end()) v.insert(v.end(), it->second.begin(), it->second.end());
    IntRow r = to_integer_row(normalize_vector(std::move(v)));
    make_primitive(r);
    SparseVector sv;
    sv.reserve(r.size());
    for (auto& [i, x] : r) sv.emplace_back(i, Rational(x));
    out.kernel.push_back(std::move(sv));
  }
  return out;
}

int subquotient_dim(const SparseMatrix& d_in, const SparseMatrix& d_out) {
  if (d_out.cols() != d_in.rows()) throw StructuralError("subquotient: dimension mismatch");
  SparseMatrix prod = d_out * d_in;
  for (int c = 0; c < prod.cols(); ++c) {
    if (!prod.column(c).empty()) {
      const auto& [r, x] = prod.column(c).front();
      throw ComplexViolation("d_out * d_in != 0",
                             "column " + std::to_string(c) + " row " + std::to_string(r) + " value " + x.to_string());
    }
  }
  return (d_out.cols() - rank(d_out)) - rank(d_in);
}

std::string vector_to_string(const SparseVector& v) {
  std::ostringstream out;
  out << "[";
  for (size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << v[i].first << ":" << v[i].second.to_string();
  out << "]";
  return out.str();
}

}  // namespace qdr

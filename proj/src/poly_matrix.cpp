#include "qdr/poly_matrix.hpp"

#include "qdr/error.hpp"

namespace qdr {

PolyMatrix::PolyMatrix(RingPtr ring, int rows, int cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols),
      a_(static_cast<size_t>(rows * cols), LaurentPoly(ring_)) {}

PolyMatrix PolyMatrix::identity(RingPtr ring, int n) {
  PolyMatrix m(ring, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = LaurentPoly::constant(ring, Rational(1));
  return m;
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& o) const {
  if (cols_ != o.rows_) throw StructuralError("poly matrix product: dimension mismatch");
  PolyMatrix r(ring_, rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const auto& x = at(i, k);
      if (x.is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j) {
        const auto& y = o.at(k, j);
        if (!y.is_zero()) r.at(i, j) += x * y;
      }
    }
  return r;
}

PolyMatrix PolyMatrix::operator+(const PolyMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw StructuralError("poly matrix sum: dimension mismatch");
  PolyMatrix r = *this;
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
  return r;
}

PolyMatrix PolyMatrix::operator-(const PolyMatrix& o) const { return *this + o.scaled(Rational(-1)); }

PolyMatrix PolyMatrix::scaled(const Rational& s) const {
  PolyMatrix r = *this;
  for (auto& x : r.a_) x *= s;
  return r;
}

PolyMatrix PolyMatrix::transpose() const {
  PolyMatrix r(ring_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

PolyMatrix PolyMatrix::map(const RingHom& h) const {
  PolyMatrix r(h.target(), rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = h.apply(a_[i]);
  return r;
}

bool PolyMatrix::is_zero() const {
  for (const auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

bool PolyMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      const auto& x = at(i, j);
      if (i == j ? !(x.is_constant() && x.constant_term().is_one()) : !x.is_zero()) return false;
    }
  return true;
}

bool PolyMatrix::operator==(const PolyMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (size_t i = 0; i < a_.size(); ++i)
    if (!(a_[i] == o.a_[i])) return false;
  return true;
}

std::string PolyMatrix::first_difference(const PolyMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return "shape mismatch";
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (!(at(i, j) == o.at(i, j)))
        return "entry (" + std::to_string(i) + "," + std::to_string(j) + "): " + at(i, j).to_string() +
               " vs " + o.at(i, j).to_string();
  return "";
}

namespace {

PolyMatrix minor_of(const PolyMatrix& m, int row, int col) {
  PolyMatrix r(m.ring(), m.rows() - 1, m.cols() - 1);
  for (int i = 0, ri = 0; i < m.rows(); ++i) {
    if (i == row) continue;
    for (int j = 0, rj = 0; j < m.cols(); ++j) {
      if (j == col) continue;
      r.at(ri, rj++) = m.at(i, j);
    }
    ++ri;
  }
  return r;
}

}  // namespace

LaurentPoly PolyMatrix::determinant() const {
  if (rows_ != cols_) throw StructuralError("determinant of non-square matrix");
  if (rows_ == 0) return LaurentPoly::constant(ring_, Rational(1));
  if (rows_ == 1) return at(0, 0);
  LaurentPoly det(ring_);
  for (int j = 0; j < cols_; ++j) {
    if (at(0, j).is_zero()) continue;
    LaurentPoly term = at(0, j) * minor_of(*this, 0, j).determinant();
    if (j % 2) det -= term;
    else det += term;
  }
  return det;
}

PolyMatrix PolyMatrix::inverse() const {
  LaurentPoly det = determinant();
  if (!det.is_unit_monomial()) throw StructuralError("matrix not invertible over the ring: det = " + det.to_string());
  LaurentPoly inv_det = det.inverse_monomial();
  PolyMatrix r(ring_, rows_, cols_);
  if (rows_ == 1) {
    r.at(0, 0) = inv_det;
    return r;
  }
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      LaurentPoly c = minor_of(*this, j, i).determinant() * inv_det;
      r.at(i, j) = ((i + j) % 2) ? -c : c;
    }
  return r;
}

}  // namespace qdr

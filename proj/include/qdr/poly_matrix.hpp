#pragma once

#include <string>
#include <vector>

#include "qdr/laurent.hpp"

namespace qdr {

// Dense matrix of Laurent polynomials over one ring.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(RingPtr ring, int rows, int cols);
  static PolyMatrix identity(RingPtr ring, int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const RingPtr& ring() const { return ring_; }
  LaurentPoly& at(int r, int c) { return a_[static_cast<size_t>(r * cols_ + c)]; }
  const LaurentPoly& at(int r, int c) const { return a_[static_cast<size_t>(r * cols_ + c)]; }

  PolyMatrix operator*(const PolyMatrix& o) const;
  PolyMatrix operator+(const PolyMatrix& o) const;
  PolyMatrix operator-(const PolyMatrix& o) const;
  PolyMatrix scaled(const Rational& s) const;
  PolyMatrix transpose() const;
  PolyMatrix map(const RingHom& h) const;
  bool is_zero() const;
  bool is_identity() const;
  bool operator==(const PolyMatrix& o) const;

  LaurentPoly determinant() const;
  // Inverse over the ring; the determinant must be a unit monomial.
  PolyMatrix inverse() const;

  // First entry where *this and o differ, rendered for reports.
  std::string first_difference(const PolyMatrix& o) const;

 private:
  RingPtr ring_;
  int rows_ = 0, cols_ = 0;
  std::vector<LaurentPoly> a_;
};

// One matrix per connected component of a level.
using CompMatrix = std::vector<PolyMatrix>;

}  // namespace qdr

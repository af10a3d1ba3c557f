#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qdr/rational.hpp"

namespace qdr {

using SparseVector = std::vector<std::pair<int, Rational>>;  // sorted by index, no zeros

SparseVector normalize_vector(std::vector<std::pair<int, Rational>> v);

// Column-oriented sparse matrix over Q.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(cols)) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const SparseVector& column(int c) const { return data_.at(static_cast<size_t>(c)); }
  void set_column(int c, SparseVector v);
  void add(int r, int c, const Rational& v);
  Rational at(int r, int c) const;
  bool is_zero() const;
  size_t nonzeros() const;

  SparseMatrix operator*(const SparseMatrix& o) const;
  SparseMatrix operator+(const SparseMatrix& o) const;
  SparseMatrix operator-(const SparseMatrix& o) const;
  SparseMatrix scaled(const Rational& s) const;
  SparseVector apply(const SparseVector& v) const;
  SparseMatrix transpose() const;
  SparseMatrix select(const std::vector<int>& rows, const std::vector<int>& cols) const;

  std::vector<SparseVector> rows_as_vectors() const;
  bool operator==(const SparseMatrix& o) const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<SparseVector> data_;
};

struct KernelImage {
  int rank = 0;
  std::vector<SparseVector> kernel;  // basis of {x : A x = 0}, primitive integer vectors
};

// Rank of the span of the given vectors (all of length `dim`).
int span_rank(const std::vector<SparseVector>& vectors, int dim);
int rank(const SparseMatrix& a);
KernelImage kernel_and_image(const SparseMatrix& a);
// dim ker(d_out) - rank(d_in); throws ComplexViolation if d_out * d_in != 0.
int subquotient_dim(const SparseMatrix& d_in, const SparseMatrix& d_out);

std::string vector_to_string(const SparseVector& v);

}  // namespace qdr

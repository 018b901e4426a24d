#pragma once

// Exact integer / rational matrix kernel.
//
// Matrices are dense and row-major. Integer matrices are used for
// coefficient transforms (unimodular changes of basis, isomorphism
// certificates); rational matrices for Gram matrices and their Schur
// complements. Lattice generators are always columns, so the Hermite normal
// form here is the column-style (lower triangular) one.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "latiso/errors.hpp"

namespace latiso {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_)
        throw DimensionMismatch("ragged matrix initializer");
      for (const auto& v : row) data_.push_back(v);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<const T> entries() const { return data_; }

  std::vector<T> column(std::size_t c) const {
    std::vector<T> v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }
  std::vector<T> row(std::size_t r) const {
    return std::vector<T>(data_.begin() + r * cols_,
                          data_.begin() + (r + 1) * cols_);
  }
  void set_column(std::size_t c, std::span<const T> v) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  /// Columns [first, first + count).
  Matrix columns(std::size_t first, std::size_t count) const {
    Matrix m(rows_, count);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < count; ++c) m(r, c) = (*this)(r, first + c);
    return m;
  }

  /// Rows `rs` x columns `cs`.
  Matrix submatrix(std::span<const std::size_t> rs,
                   std::span<const std::size_t> cs) const {
    Matrix m(rs.size(), cs.size());
    for (std::size_t i = 0; i < rs.size(); ++i)
      for (std::size_t j = 0; j < cs.size(); ++j) m(i, j) = (*this)(rs[i], cs[j]);
    return m;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product");
    Matrix m(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) m(i, j) += aik * b(k, j);
      }
    return m;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMat = Matrix<Int>;
using RatMat = Matrix<Rat>;

RatMat to_rational(const IntMat& m);
/// Exact conversion; throws DimensionMismatch if an entry is not integral.
IntMat to_integer(const RatMat& m);
bool is_integral(const RatMat& m);

/// Column matrix from a list of equally sized vectors.
IntMat from_columns(std::span<const IntVec> cols, std::size_t dim);

IntVec mat_vec(const IntMat& m, std::span<const Int> v);
RatVec mat_vec(const RatMat& m, std::span<const Rat> v);
Int dot(std::span<const Int> a, std::span<const Int> b);
/// aᵀ·G·b for integer coefficient vectors.
Rat bilinear(const RatMat& g, std::span<const Int> a, std::span<const Int> b);
/// Mᵀ·G·M.
RatMat congruence(const RatMat& g, const IntMat& m);

bool is_symmetric(const RatMat& m);

/// Multiply each row by the lcm of its denominators; same kernel and rank.
IntMat clear_row_denominators(const RatMat& m);
/// Scale the whole matrix by the lcm of all denominators.
IntMat clear_denominators(const RatMat& m, Int* scale = nullptr);

struct HnfResult {
  IntMat h;          // h = m·u; first `rank` columns are the HNF basis
  IntMat u;          // unimodular
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_rows;  // pivot row of each basis column
};

/// Column-style Hermite normal form: nonzero columns lower triangular, pivot
/// entries positive, entries left of each pivot reduced into [0, pivot), zero
/// columns trailing.
HnfResult hnf(const IntMat& m);

/// Basis (as columns, in HNF) of { x in Z^cols : m·x = 0 }; 0 columns if the
/// kernel is trivial.
IntMat integer_kernel(const IntMat& m);
IntMat integer_kernel(const RatMat& m);

/// Nonzero HNF columns of m: canonical basis of its column lattice.
IntMat column_lattice_basis(const IntMat& m);

/// Integer coefficients y with basis·y = x if x lies in the column lattice of
/// an HNF basis (as returned by hnf / column_lattice_basis).
bool lattice_membership(const HnfResult& basis_hnf, std::span<const Int> x,
                        IntVec* coeffs = nullptr);

/// Smallest unimodular matrix completion: returns a unimodular n x n matrix
/// whose first k columns are exactly `primitive` (n x k). Throws
/// RankDeficient if the columns are dependent or do not span a saturated
/// sublattice.
IntMat complete_to_unimodular(const IntMat& primitive);

Rat det(const RatMat& m);
Int det(const IntMat& m);
RatMat inverse(const RatMat& m);
/// Inverse of a unimodular matrix; throws SingularMatrix if |det| != 1.
IntMat unimodular_inverse(const IntMat& m);
std::size_t rank(const RatMat& m);
std::size_t rank(const IntMat& m);

/// Basis of the right nullspace { x : m·x = 0 } over Q, as columns.
RatMat rational_nullspace(const RatMat& m);

/// G_CC - G_CS·G_SS⁻¹·G_SC with S = pivots and C the complement (in order).
RatMat schur_complement(const RatMat& g, std::span<const std::size_t> pivots);

/// All leading principal minors positive (via exact LDLᵀ pivots).
bool is_positive_definite(const RatMat& g);

/// Nearest integer, ties rounded up (floor(q + 1/2)).
Int round_nearest(const Rat& q);
Int floor_rat(const Rat& q);
Int ceil_rat(const Rat& q);
/// Largest integer r with r*r <= q (q >= 0).
Int floor_sqrt(const Rat& q);

std::string to_string(const Rat& q);
Rat parse_rational(const std::string& s);

}  // namespace latiso

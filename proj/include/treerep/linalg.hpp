#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "treerep/scalar.hpp"

namespace treerep {

/// Dense row-major matrix of exact scalars.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix transpose() const;
  Matrix conj_transpose() const;
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix&, const Matrix&) = default;

  bool is_square() const { return rows_ == cols_; }
  bool is_hermitian() const;
  bool is_zero() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

struct Signature {
  std::size_t pos = 0;
  std::size_t neg = 0;
  std::size_t zero = 0;

  std::size_t size() const { return pos + neg + zero; }
  friend bool operator==(const Signature&, const Signature&) = default;
};

std::string to_string(const Signature& s);

enum class PivotStrategy {
  first_nonzero,  // lowest remaining index with a nonzero diagonal
  largest,        // remaining diagonal of largest absolute value
  last_nonzero,   // highest remaining index with a nonzero diagonal
};

/// Exact inertia of a real symmetric matrix by congruence diagonalisation.
/// When every remaining diagonal vanishes, an off-diagonal pair (j, k) is
/// turned into the diagonal pair (2b, -2b) by e_j +- e_k.
/// Throws std::invalid_argument for non-square or non-symmetric input and
/// std::domain_error for non-real entries.
Signature signature(const Matrix& symmetric, PivotStrategy strategy = PivotStrategy::first_nonzero);

/// det of every leading k x k block, k = 1..n.
std::vector<Scalar> leading_minors(const Matrix& m);

Scalar determinant(Matrix m);

/// Row-reduced echelon form grown one equation at a time.
class IncrementalRref {
 public:
  explicit IncrementalRref(std::size_t unknowns) : unknowns_(unknowns) {}

  /// Adds the equation row . x = 0; returns whether it raised the rank.
  bool add(std::vector<Scalar> row);

  std::size_t unknowns() const { return unknowns_; }
  std::size_t rank() const { return rows_.size(); }
  /// A basis of the solution space, one vector per free unknown.
  std::vector<std::vector<Scalar>> nullspace() const;

 private:
  std::size_t unknowns_;
  std::vector<std::vector<Scalar>> rows_;
  std::vector<std::size_t> pivots_;
};

/// Nullspace basis of m (vectors x with m x = 0).
std::vector<std::vector<Scalar>> nullspace(const Matrix& m);
std::size_t rank(const Matrix& m);

}  // namespace treerep

#include "treerep/linalg.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace treerep {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t k = 0; k < n; ++k) m(k, k) = Scalar(1);
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

Matrix Matrix::conj_transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j).conj();
  }
  return t;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shapes do not match");
  Matrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) add_product(c(i, j), x, b(k, j));
    }
  }
  return c;
}

bool Matrix::is_hermitian() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = i; j < cols_; ++j) {
      if (!((*this)(i, j) == (*this)(j, i).conj())) return false;
    }
  }
  return true;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Scalar& x) { return x.is_zero(); });
}

std::string to_string(const Signature& s) {
  return "(" + std::to_string(s.pos) + "," + std::to_string(s.neg) + "," + std::to_string(s.zero) + ")";
}

namespace {

// Schur complement of the pivot p on the active indices.
void eliminate(Matrix& a, std::size_t p, const std::vector<bool>& done) {
  const std::size_t n = a.rows();
  const Scalar pivot = a(p, p);
  for (std::size_t j = 0; j < n; ++j) {
    if (done[j] || j == p || a(j, p).is_zero()) continue;
    const Scalar factor = a(j, p) / pivot;
    for (std::size_t k = 0; k < n; ++k) {
      if (done[k] || k == p || a(p, k).is_zero()) continue;
      a(j, k) -= factor * a(p, k);
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (j == p) continue;
    a(j, p) = Scalar();
    a(p, j) = Scalar();
  }
}

std::optional<std::size_t> choose_pivot(const Matrix& a, const std::vector<bool>& done, PivotStrategy strategy) {
  const std::size_t n = a.rows();
  std::optional<std::size_t> best;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = strategy == PivotStrategy::last_nonzero ? n - 1 - k : k;
    if (done[j] || a(j, j).is_zero()) continue;
    if (strategy != PivotStrategy::largest) return j;
    if (!best || abs(a(j, j).re()) > abs(a(*best, *best).re())) best = j;
  }
  return best;
}

}  // namespace

Signature signature(const Matrix& symmetric, PivotStrategy strategy) {
  if (!symmetric.is_square()) throw std::invalid_argument("signature of a non-square matrix");
  const std::size_t n = symmetric.rows();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!symmetric(i, j).is_real()) throw std::domain_error("signature needs a real matrix");
      if (!(symmetric(i, j) == symmetric(j, i))) throw std::invalid_argument("matrix is not symmetric");
    }
  }
  Matrix a = symmetric;
  std::vector<bool> done(n, false);
  Signature sig;
  std::size_t remaining = n;
  while (remaining > 0) {
    auto p = choose_pivot(a, done, strategy);
    if (!p) {
      std::optional<std::pair<std::size_t, std::size_t>> pair;
      for (std::size_t j = 0; j < n && !pair; ++j) {
        for (std::size_t k = j + 1; k < n && !pair; ++k) {
          if (!done[j] && !done[k] && !a(j, k).is_zero()) pair = {j, k};
        }
      }
      if (!pair) break;
      // e_j + e_k and e_j - e_k carry the diagonal values 2b and -2b.
      const auto [j, k] = *pair;
      for (std::size_t l = 0; l < n; ++l) {
        if (done[l]) continue;
        const Scalar x = a(j, l);
        const Scalar y = a(k, l);
        a(j, l) = x + y;
        a(k, l) = x - y;
      }
      for (std::size_t l = 0; l < n; ++l) {
        if (done[l]) continue;
        const Scalar x = a(l, j);
        const Scalar y = a(l, k);
        a(l, j) = x + y;
        a(l, k) = x - y;
      }
      p = j;
    }
    (a(*p, *p).sign() > 0 ? sig.pos : sig.neg) += 1;
    eliminate(a, *p, done);
    done[*p] = true;
    --remaining;
  }
  sig.zero = remaining;
  return sig;
}

Scalar determinant(Matrix m) {
  if (!m.is_square()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  Scalar det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c).is_zero()) ++p;
    if (p == n) return Scalar();
    if (p != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(m(p, k), m(c, k));
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m(r, c).is_zero()) continue;
      const Scalar factor = m(r, c) / m(c, c);
      for (std::size_t k = c; k < n; ++k) {
        if (!m(c, k).is_zero()) m(r, k) -= factor * m(c, k);
      }
    }
  }
  return det;
}

std::vector<Scalar> leading_minors(const Matrix& m) {
  if (!m.is_square()) throw std::invalid_argument("leading minors of a non-square matrix");
  std::vector<Scalar> out;
  for (std::size_t k = 1; k <= m.rows(); ++k) {
    Matrix block(k, k);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) block(i, j) = m(i, j);
    }
    out.push_back(determinant(std::move(block)));
  }
  return out;
}

bool IncrementalRref::add(std::vector<Scalar> row) {
  if (row.size() != unknowns_) throw std::invalid_argument("equation has the wrong number of unknowns");
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const Scalar factor = row[pivots_[r]];
    if (factor.is_zero()) continue;
    const auto& base = rows_[r];
    for (std::size_t k = 0; k < unknowns_; ++k) {
      if (!base[k].is_zero()) row[k] -= factor * base[k];
    }
  }
  std::size_t p = 0;
  while (p < unknowns_ && row[p].is_zero()) ++p;
  if (p == unknowns_) return false;
  const Scalar lead = row[p];
  for (auto& x : row) {
    if (!x.is_zero()) x /= lead;
  }
  for (auto& other : rows_) {
    const Scalar factor = other[p];
    if (factor.is_zero()) continue;
    for (std::size_t k = 0; k < unknowns_; ++k) {
      if (!row[k].is_zero()) other[k] -= factor * row[k];
    }
  }
  rows_.push_back(std::move(row));
  pivots_.push_back(p);
  return true;
}

std::vector<std::vector<Scalar>> IncrementalRref::nullspace() const {
  std::vector<bool> is_pivot(unknowns_, false);
  for (std::size_t p : pivots_) is_pivot[p] = true;
  std::vector<std::vector<Scalar>> out;
  for (std::size_t free = 0; free < unknowns_; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Scalar> v(unknowns_);
    v[free] = Scalar(1);
    for (std::size_t r = 0; r < rows_.size(); ++r) v[pivots_[r]] = -rows_[r][free];
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<std::vector<Scalar>> nullspace(const Matrix& m) {
  IncrementalRref rref(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::vector<Scalar> row(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) row[j] = m(i, j);
    rref.add(std::move(row));
  }
  return rref.nullspace();
}

std::size_t rank(const Matrix& m) { return m.cols() - nullspace(m).size(); }

}  // namespace treerep

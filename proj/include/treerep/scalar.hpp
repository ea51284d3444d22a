#pragma once

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

namespace treerep {

/// Exact Gaussian rational re + im*i over arbitrary-precision integers.
///
/// Real values (im == 0) take a fast path in every arithmetic operation, so
/// the common real case costs little more than a bare mpq_class. Both parts
/// are kept canonical (reduced, positive denominator) after every operation.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long value) : re_(value) {}  // NOLINT(google-explicit-constructor)
  Scalar(long num, long den);
  Scalar(mpq_class re) : re_(std::move(re)) { re_.canonicalize(); }  // NOLINT
  Scalar(mpq_class re, mpq_class im);

  /// Parses "p", "p/q", "i", "-i/3", "2/5i", "1/2+i/3", "p/q+r/t i".
  static Scalar parse(std::string_view text);
  static Scalar imaginary_unit() { return Scalar(mpq_class(0), mpq_class(1)); }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  /// Sign of a real scalar; throws std::domain_error for non-real values.
  int sign() const;

  Scalar conj() const;
  /// |z|^2, always rational.
  mpq_class norm() const { return re_ * re_ + im_ * im_; }

  /// Canonical text: "p/q" (or "p") for reals, "p/q+r/t i" otherwise.
  std::string str() const;
  /// Decimal rendering for human display only.
  std::string approx(int digits = 12) const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  Scalar operator-() const;

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  /// Ordering of real scalars; throws std::domain_error otherwise.
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b);

 private:
  mpq_class re_;
  mpq_class im_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

/// a + b*c, the workhorse of the dense kernels.
inline void add_product(Scalar& acc, const Scalar& b, const Scalar& c) {
  if (b.is_zero() || c.is_zero()) return;
  acc += b * c;
}

}  // namespace treerep

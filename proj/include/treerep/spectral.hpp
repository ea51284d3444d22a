#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "treerep/scalar.hpp"
#include "treerep/tree.hpp"

namespace treerep {

/// Where functions live: all of V (homogeneous, Laplacian) or the even
/// sublattice W (semi-homogeneous, 2-Laplacian).
enum class Lattice { full, even };

inline Lattice lattice_of(const TreeShape& shape) {
  return shape.is_homogeneous() ? Lattice::full : Lattice::even;
}

/// Radial eigenfunction values normalised to f(0) = 1. In the even-lattice
/// case only even distances are stored: values[k] = f(2k).
struct RadialProfile {
  Lattice lattice = Lattice::full;
  std::vector<Scalar> values;

  int stride() const { return lattice == Lattice::full ? 1 : 2; }
  int max_distance() const { return (static_cast<int>(values.size()) - 1) * stride(); }
  /// f(distance); distance must be on the lattice and within range.
  const Scalar& at(int distance) const;
};

/// An alpha-eigenfunction of L (full lattice) or L2 (even lattice), stored
/// densely on a ball B_M and determined by its values on B_{n0}: beyond the
/// sphere S_{n0} it is radial within each cone rooted on S_{n0}.
///
/// On the even lattice, odd-sphere entries are kept at zero and M is even.
class EigenFunction {
 public:
  EigenFunction(Scalar alpha, int invariance_depth, std::shared_ptr<const TreeBall> ball,
                std::vector<Scalar> values);

  const TreeShape& shape() const { return ball_->shape(); }
  const Scalar& alpha() const { return alpha_; }
  int invariance_depth() const { return invariance_depth_; }
  int depth() const { return ball_->depth(); }
  Lattice lattice() const { return lattice_of(shape()); }
  const TreeBall& ball() const { return *ball_; }
  const std::shared_ptr<const TreeBall>& ball_ptr() const { return ball_; }

  const std::vector<Scalar>& values() const { return values_; }
  const Scalar& operator[](Vertex v) const { return values_[v]; }
  const Scalar& at(const PathAddress& a) const { return values_[ball_->index(a)]; }
  bool in_lattice(Vertex v) const { return lattice() == Lattice::full || ball_->is_even(v); }
  bool is_zero() const;

  /// Prefix restriction to B_m, m >= invariance depth.
  EigenFunction restricted(int m) const;
  /// Same function with a declared invariance depth; values are unchanged.
  EigenFunction with_invariance_depth(int n0) const;

  EigenFunction& operator+=(const EigenFunction& o);
  EigenFunction& operator-=(const EigenFunction& o);
  EigenFunction& operator*=(const Scalar& c);
  friend EigenFunction operator+(EigenFunction a, const EigenFunction& b) { return a += b; }
  friend EigenFunction operator-(EigenFunction a, const EigenFunction& b) { return a -= b; }
  friend EigenFunction operator*(const Scalar& c, EigenFunction a) { return a *= c; }

 private:
  void combine(const EigenFunction& o, int sign);

  Scalar alpha_;
  int invariance_depth_;
  std::shared_ptr<const TreeBall> ball_;
  std::vector<Scalar> values_;
};

/// (Lh)(v) = (1/deg v) * sum of h over neighbours, for every v in B_{M-1}.
/// Throws std::invalid_argument when values do not cover the ball.
std::vector<Scalar> laplacian_apply(const TreeBall& ball, std::span<const Scalar> values);

/// (L2 h)(v) = mean of h over the r(s-1) vertices at distance exactly 2, for
/// every even v in B_{M-2}. Odd entries of the result are zero.
std::vector<Scalar> two_laplacian_apply(const TreeBall& ball, std::span<const Scalar> values);

namespace serial {
std::vector<Scalar> laplacian_apply(const TreeBall& ball, std::span<const Scalar> values);
std::vector<Scalar> two_laplacian_apply(const TreeBall& ball, std::span<const Scalar> values);
}  // namespace serial

/// Radial alpha-eigenfunction profile up to distance max_distance.
/// Full lattice: f(1) = alpha, f(n+1) = (d alpha f(n) - f(n-1)) / (d-1).
/// Even lattice: f(2) = alpha,
///   f(2n+2) = (r(s-1) alpha f(2n) - f(2n-2) - (s-2) f(2n)) / ((r-1)(s-1)).
RadialProfile radial_eigen(const TreeShape& shape, const Scalar& alpha, int max_distance);

/// The radial eigenfunction f (f(o) = 1) materialised on B_M.
EigenFunction radial_function(const TreeShape& shape, const Scalar& alpha, int depth);

/// Materialises h on B_M by the cone-radial recursion; M below the current
/// depth returns h unchanged. Even-lattice depths round up to even.
EigenFunction extend(const EigenFunction& h, int depth);

/// First vertex where the eigen equation fails, among all vertices whose
/// stencil lies inside the ball.
std::optional<Vertex> first_eigen_defect(const TreeBall& ball, std::span<const Scalar> values,
                                         const Scalar& alpha);
bool is_eigen(const TreeBall& ball, std::span<const Scalar> values, const Scalar& alpha);
inline bool is_eigen(const EigenFunction& h) { return is_eigen(h.ball(), h.values(), h.alpha()); }

/// Exact agreement of a and b on B_depth, extending either as needed.
bool agree_on(const EigenFunction& a, const EigenFunction& b, int depth);

/// Depth a function of the given invariance depth must be materialised at.
int minimal_depth(const TreeShape& shape, int invariance_depth);

}  // namespace treerep

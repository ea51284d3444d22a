#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "treerep/decomposition.hpp"
#include "treerep/group_action.hpp"
#include "treerep/linalg.hpp"

namespace treerep {

/// Q = sum_n c_n Q_n, with Q_n the standard inner product of the determining
/// data of the H_n components (antilinear in the first slot).
class BlockForm {
 public:
  const TreeShape& shape() const { return shape_; }
  const Scalar& alpha() const { return alpha_; }
  bool degenerate() const { return degenerate_; }

  bool has_block(int n) const { return !(degenerate_ && n % 2 == 1); }
  /// c_n; throws std::out_of_range for a block the form does not have.
  const Scalar& coefficient(int n) const;

  friend BlockForm assemble_Q(const TreeShape& shape, const Scalar& alpha);

 private:
  BlockForm(TreeShape shape, Scalar alpha) : shape_(shape), alpha_(std::move(alpha)) {}

  TreeShape shape_;
  Scalar alpha_;
  bool degenerate_ = false;
  Scalar c0_;
  Scalar odd_;
  Scalar even_;
};

/// Throws std::invalid_argument for non-real alpha and for alpha = 1 (and
/// alpha = -1 on homogeneous trees), where the representation is
/// one-dimensional.
BlockForm assemble_Q(const TreeShape& shape, const Scalar& alpha);

/// Q(x, y) from already-peeled inputs.
Scalar eval_Q(const BlockForm& q, const PeelResult& x, const PeelResult& y);
/// Q(x, y); peel failures propagate as std::domain_error.
Scalar eval_Q(const BlockForm& q, const EigenFunction& x, const EigenFunction& y);

/// Flattened basis of H_0 + ... + H_cutoff, block by block.
struct FlatBasis {
  std::vector<EigenFunction> functions;
  std::vector<int> block_of;
  std::vector<std::size_t> block_start;  // index of the first function of block n

  std::size_t size() const { return functions.size(); }
};
FlatBasis flat_basis(const TreeShape& shape, const Scalar& alpha, int cutoff);

Matrix gram(const BlockForm& q, const std::vector<EigenFunction>& basis);
namespace serial {
Matrix gram(const BlockForm& q, const std::vector<EigenFunction>& basis);
}

/// Gram matrix of Q on H_0 + ... + H_cutoff.
Matrix gram_through(const BlockForm& q, int cutoff);

/// Exact (+, -, 0) counts of Q on H_0 + ... + H_cutoff.
Signature form_signature(const BlockForm& q, int cutoff, PivotStrategy strategy = PivotStrategy::first_nonzero);

struct InvarianceViolation {
  std::size_t generator = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  Scalar difference;
};

struct InvarianceReport {
  std::vector<std::string> generators;
  std::vector<std::size_t> pairs_checked;  // per generator
  std::vector<std::size_t> violation_count;  // per generator
  std::vector<InvarianceViolation> violations;  // first few per generator

  bool passed() const { return violations.empty(); }
};

/// Q(gx, gy) - Q(x, y) over all pairs of basis vectors of
/// H_0 + ... + H_{cutoff - d(o, go)}. Nonzero differences are reported.
InvarianceReport invariance_check(const BlockForm& q, const std::vector<Automorphism>& generators, int cutoff);
namespace serial {
InvarianceReport invariance_check(const BlockForm& q, const std::vector<Automorphism>& generators, int cutoff);
}

/// Invariant forms B on span{f, h}, f radial and h the block-1 partner with
/// pi(g) f in span{f, h} for the swap g. Unknowns are b_f = B(f,f) and
/// b_h = B(h,h); B(f,h) = 0 unless `unconstrained`, which adds its real and
/// imaginary parts as two more unknowns.
struct RigidityResult {
  Scalar alpha;
  bool unconstrained = false;
  /// pi(g) f = action(0,0) f + action(1,0) h, pi(g) h = action(0,1) f + action(1,1) h.
  Matrix action;
  std::vector<std::string> unknowns;
  std::size_t equations = 0;
  /// Basis of the real solution space.
  std::vector<std::vector<Scalar>> solutions;
  /// b_f / b_h on a one-dimensional solution space with b_h != 0.
  std::optional<Scalar> ratio;
};

/// The partner h: eigenfunction with h(o) = 0 and pi(g) f = alpha f + c h.
EigenFunction rigidity_partner(const TreeShape& shape, const Scalar& alpha);
RigidityResult span_fh_rigidity(const TreeShape& shape, const Scalar& alpha, bool unconstrained = false);

struct FormSolverResult {
  int cutoff = 0;
  int restricted_cutoff = 0;
  std::size_t basis_size = 0;
  std::size_t restricted_size = 0;
  std::size_t unknowns = 0;
  std::size_t equations = 0;
  std::size_t rank = 0;
  std::size_t solution_dim = 0;
  /// Solutions restricted to H_0 + ... + H_restricted_cutoff, as independent
  /// symmetric matrices.
  std::vector<Matrix> restricted;
  bool proportional_to_Q = false;
  bool block_diagonal = false;
  std::optional<Scalar> ratio_to_Q;
};

/// Exact solve of B(gx, gy) = B(x, y) for a symmetric unknown B on
/// H_0 + ... + H_cutoff, over the swap and `samples` seeded rooted elements,
/// restricted to H_0 + ... + H_{cutoff - d(o, go)}. Empirical at truncation.
FormSolverResult truncated_form_solver(const TreeShape& shape, const Scalar& alpha, int cutoff,
                                       std::uint64_t seed = 1, int samples = 8);

/// The semi-homogeneous test functions around v = (0), w = (0,0), with
/// D = {o} + N(v). hd1: value a at o and w, b on the rest of N(v).
/// hd2: 1 at o, -1 at w, 0 on the rest of N(v). hd3: 0 at o and w, the given
/// values on the rest of N(v) (sum zero). Values on S_2 \ N(v) follow from
/// the eigen equation at o.
EigenFunction hd1_function(const TreeShape& shape, const Scalar& alpha, const Scalar& a, const Scalar& b);
EigenFunction hd2_function(const TreeShape& shape, const Scalar& alpha);
EigenFunction hd3_function(const TreeShape& shape, const Scalar& alpha, const std::vector<Scalar>& values);

}  // namespace treerep

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "treerep/group_action.hpp"
#include "treerep/spectral.hpp"

namespace treerep {

/// sum_i c_i pi(g_i) f for the radial f with f(o) = 1.
struct TranslateCombination {
  struct Term {
    Scalar coefficient;
    Automorphism word;
  };

  TreeShape shape;
  Scalar alpha;
  int depth = 0;
  std::vector<Term> terms;
  /// Correction groups applied; every group's coefficients sum to zero.
  std::size_t groups = 0;
  /// Vanishing R(v) checks made by the special-alpha procedure.
  std::size_t residual_checks = 0;

  /// The combination on B_depth. Since f is radial, pi(g) f = f(d(g o, .)).
  EigenFunction evaluate(int depth) const;
};

/// Translates of f reproducing h on B_{max(depth, n0(h) + 1)}. Rejects
/// alpha = +-1 and semi-homogeneous shapes.
TranslateCombination synthesize_transitive(const EigenFunction& h, int depth);

/// Two-phase per-vertex correction; rejects alpha = 1 and alpha = -1/(s-1)
/// (where f(0) + (s-2) f(2) - (s-1) f(4) vanishes).
TranslateCombination synthesize_semihomogeneous(const EigenFunction& h, int depth);

/// alpha = -1/(s-1): phase one only. Throws std::domain_error for inputs
/// with a nonzero neighbour sum around an odd vertex, and std::logic_error
/// if some R(v) fails to vanish.
TranslateCombination synthesize_special(const EigenFunction& h, int depth);

/// Dispatches on shape and alpha.
TranslateCombination synthesize(const EigenFunction& h, int depth);

/// First odd vertex of the ball whose neighbour sum is nonzero.
std::optional<Vertex> admissibility_defect(const EigenFunction& h);

}  // namespace treerep

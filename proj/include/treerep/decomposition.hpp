#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "treerep/scalar.hpp"
#include "treerep/spectral.hpp"
#include "treerep/tree.hpp"

namespace treerep {

/// Sparse vector over vertex indices, sorted by vertex.
using SparseVector = std::vector<std::pair<Vertex, Scalar>>;

/// How the determining data of block H_n is laid out on its data sphere.
///
/// Each group carries one sum-zero constraint over its cells; each cell is a
/// set of data vertices forced to share one value. Transitive blocks: one
/// group per v in S_{n-1}, cells are the children of v. Semi-homogeneous odd
/// blocks 2k-1: one group per v in S_{2k-2}, one cell per child w of v made
/// of N(w). Semi-homogeneous even blocks 2k: one group per w in S_{2k-1},
/// cells are the children of w. Block 0 is the single cell {o}.
struct BlockLayout {
  struct Group {
    Vertex anchor = 0;
    std::vector<std::vector<Vertex>> cells;
  };

  int block = 0;
  int data_sphere = 0;
  std::vector<Group> groups;

  std::size_t dimension() const;
};

/// Layout of block n (cached, immutable).
std::shared_ptr<const BlockLayout> block_layout(const TreeShape& shape, int n);

/// alpha = -1/(s-1) on a semi-homogeneous tree: odd blocks vanish.
bool is_degenerate(const TreeShape& shape, const Scalar& alpha);

/// Closed-form dim H_n.
std::uint64_t expected_dimension(const TreeShape& shape, const Scalar& alpha, int n);

struct SubspaceBasis {
  int block = 0;
  TreeShape shape;
  Scalar alpha;
  std::shared_ptr<const BlockLayout> layout;
  std::vector<EigenFunction> basis;
  std::uint64_t expected_dim = 0;
};

/// Basis of H_n: functions vanishing on B_{n-1}, cone-radial beyond S_n, with
/// data +1 on the first cell of a group and -1 on another. Rejects alpha = 1.
/// Degenerate odd blocks come back empty.
SubspaceBasis basis_Hn(const TreeShape& shape, const Scalar& alpha, int n);

/// Blocks 0..cutoff.
std::vector<SubspaceBasis> bases_through(const TreeShape& shape, const Scalar& alpha, int cutoff);

struct PeelResult {
  /// Nonzero components only, keyed by block index.
  std::map<int, EigenFunction> components;
  /// Determining data of each nonzero component: the value at o for block 0,
  /// the data-sphere values otherwise.
  std::map<int, SparseVector> data;
};

/// Splits an eigenfunction into its H_n components by triangular peeling.
/// Throws std::domain_error when a residual breaks a sum-zero constraint, when
/// a degenerate-alpha input has an odd component, or when the components fail
/// to reproduce h.
PeelResult peel_decompose(const EigenFunction& h);

/// Sphere-wise mean of h: its K-average.
EigenFunction radialize(const EigenFunction& h);

/// Coefficients of a single-block function in the basis of that block.
/// Throws std::domain_error if the function is not in the span.
std::vector<Scalar> coordinates(const SubspaceBasis& basis, const EigenFunction& component);

/// Where a function lives relative to the cone C_v of a vertex v != o.
enum class SupportSide { zero, anti_cone, cone, mixed };
/// Classification on the lattice vertices of h's ball.
SupportSide support_side(const EigenFunction& h, Vertex v);

}  // namespace treerep

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "treerep/spectral.hpp"
#include "treerep/tree.hpp"

namespace treerep {

/// Permutes the child subtrees hanging below `at`; fixes o.
struct RootedPerm {
  PathAddress at;
  std::vector<int> perm;  // child slot c goes to perm[c]
};

/// Involution exchanging o with `target` (length 1 on homogeneous trees,
/// length 2 with the midpoint fixed on semi-homogeneous trees). Subtrees
/// beyond the inverted path are identified slot by slot.
struct PathInversion {
  PathAddress target;
};

using Atom = std::variant<RootedPerm, PathInversion>;

/// A tree automorphism as a word of atoms, evaluated lazily on addresses.
/// The word a_0 a_1 ... a_k acts as a_0(a_1(...a_k(x))).
class Automorphism {
 public:
  explicit Automorphism(TreeShape shape) : shape_(shape) {}

  static Automorphism identity(const TreeShape& shape) { return Automorphism(shape); }
  /// Throws std::invalid_argument for an invalid address or non-permutation.
  static Automorphism rooted_perm(const TreeShape& shape, PathAddress at, std::vector<int> perm);
  /// Transposition of two child slots below `at`.
  static Automorphism transposition(const TreeShape& shape, PathAddress at, int a, int b);
  static Automorphism swap(const TreeShape& shape, PathAddress target);

  const TreeShape& shape() const { return shape_; }
  const std::vector<Atom>& word() const { return word_; }
  std::size_t length() const { return word_.size(); }
  bool is_identity_word() const { return word_.empty(); }

  PathAddress apply(PathAddress x) const;
  Automorphism inverse() const;
  /// Composition: (*this)(other(x)).
  Automorphism operator*(const Automorphism& other) const;
  /// d(o, g o).
  int displacement() const { return static_cast<int>(apply(PathAddress{}).length()); }
  /// Fixes o; every atom-level word made only of RootedPerm atoms does.
  bool fixes_root() const { return displacement() == 0; }

  std::string str() const;

 private:
  TreeShape shape_;
  std::vector<Atom> word_;
};

PathAddress apply_atom(const TreeShape& shape, const Atom& atom, PathAddress x);

/// (pi(g) h)(x) = h(g^{-1} x) on B_M. The result keeps the eigenvalue and has
/// invariance depth n0(h) + d(o, g o). Depth is raised to that if needed.
EigenFunction act(const Automorphism& g, const EigenFunction& h, int depth);

/// x -> g^{-1} x from B_depth into B_{depth + d(o, go)}, for reuse across
/// many functions.
struct PullbackMap {
  TreeShape shape;
  int depth = 0;
  int source_depth = 0;
  int displacement = 0;
  std::vector<Vertex> source;
};
PullbackMap pullback_map(const Automorphism& g, int depth);
/// act() through a precomputed map; throws std::invalid_argument when the
/// map is too shallow for h.
EigenFunction act(const PullbackMap& map, const EigenFunction& h);

/// A word in {swap(first child), rooted transpositions} sending o to target,
/// of at most 2 d(o, target) + 1 atoms. Semi-homogeneous targets must lie at
/// even distance.
Automorphism reach(const TreeShape& shape, const PathAddress& target);

/// The fixed swap generator: o <-> (0) or o <-> (0,0).
Automorphism base_swap(const TreeShape& shape);

/// Seeded product of uniformly sampled single-site transpositions at
/// vertices of depth <= max_site_depth. Element of K = G(o).
Automorphism random_k_element(const TreeShape& shape, std::mt19937_64& rng, int max_site_depth,
                              int max_atoms = 6);

/// All single-site transpositions at vertices of depth < depth (generators
/// of K acting on B_depth).
std::vector<Automorphism> rooted_transpositions(const TreeShape& shape, int depth);

/// Orbit of a vertex of B_depth under rooted_transpositions(shape, depth).
std::vector<Vertex> k_orbit(const TreeBall& ball, Vertex v);

/// Image of every edge of B_depth is an edge of the image ball.
bool preserves_adjacency(const Automorphism& g, int depth);

}  // namespace treerep

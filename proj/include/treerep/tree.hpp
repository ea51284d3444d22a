#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace treerep {

/// Dense breadth-first vertex index inside a TreeBall; the base vertex o is 0.
using Vertex = std::int32_t;
inline constexpr Vertex kNoVertex = -1;

/// Homogeneous degree-d tree, or semi-homogeneous degree-(r, s) tree with
/// the base vertex o of degree r. Vertices at even distance from o have
/// degree r, odd distance degree s. SemiHomogeneous(d, d) is kept distinct
/// from Homogeneous(d): it selects the even-sublattice (2-Laplacian) mode.
class TreeShape {
 public:
  enum class Kind { homogeneous, semi_homogeneous };

  static TreeShape homogeneous(int d);
  static TreeShape semi_homogeneous(int r, int s);
  /// Grammar: "h<d>" or "sh<r>,<s>".
  static TreeShape parse(std::string_view text);

  Kind kind() const { return kind_; }
  bool is_homogeneous() const { return kind_ == Kind::homogeneous; }
  bool is_semi() const { return kind_ == Kind::semi_homogeneous; }

  int d() const { return r_; }
  int r() const { return r_; }
  int s() const { return s_; }

  int degree_at(int distance) const { return distance % 2 == 0 ? r_ : s_; }
  /// Number of child slots of a vertex at the given distance from o.
  int child_count(int distance) const {
    return distance == 0 ? degree_at(0) : degree_at(distance) - 1;
  }

  /// Closed-form |S_n|; throws std::overflow_error past 2^62.
  std::uint64_t sphere_size(int n) const;
  /// Closed-form |B_n|.
  std::uint64_t ball_size(int n) const;

  std::string name() const;

  friend bool operator==(const TreeShape&, const TreeShape&) = default;

 private:
  TreeShape(Kind kind, int r, int s) : kind_(kind), r_(r), s_(s) {}

  Kind kind_;
  int r_;
  int s_;
};

/// Child-slot path from o. The first step ranges over [0, deg(o)), later
/// steps over [0, deg - 1): the slot toward the parent is never listed.
struct PathAddress {
  std::vector<int> steps;

  std::size_t length() const { return steps.size(); }
  bool is_root() const { return steps.empty(); }
  friend auto operator<=>(const PathAddress&, const PathAddress&) = default;
};

std::string to_string(const PathAddress& a);

/// Finite truncation B_N(o) with breadth-first indexing.
///
/// Children of a vertex are contiguous and spheres are contiguous index
/// ranges. A ball of depth N is an index-prefix of every deeper ball of the
/// same shape, so vertex indices are stable across depths. Immutable after
/// construction.
class TreeBall {
 public:
  static constexpr std::size_t kDefaultVertexBudget = 1'000'000;

  TreeBall(TreeShape shape, int depth, std::size_t vertex_budget = kDefaultVertexBudget);

  /// Process-wide cache of immutable balls keyed by (shape, depth).
  static std::shared_ptr<const TreeBall> shared(const TreeShape& shape, int depth);

  const TreeShape& shape() const { return shape_; }
  int depth() const { return depth_; }
  std::size_t size() const { return parent_.size(); }

  /// |B_n| for n <= depth.
  std::size_t size_through(int n) const { return sphere_begin_[n + 1]; }
  Vertex sphere_begin(int n) const { return static_cast<Vertex>(sphere_begin_[n]); }
  Vertex sphere_end(int n) const { return static_cast<Vertex>(sphere_begin_[n + 1]); }
  std::size_t sphere_count(int n) const { return sphere_begin_[n + 1] - sphere_begin_[n]; }

  int sphere(Vertex v) const { return sphere_[v]; }
  Vertex parent(Vertex v) const { return parent_[v]; }
  /// Which child slot of its parent v occupies (0 for o).
  int slot(Vertex v) const { return slot_[v]; }
  int degree(Vertex v) const { return shape_.degree_at(sphere_[v]); }
  /// Children materialised in this ball (none on the outer sphere).
  int child_count(Vertex v) const {
    return sphere_[v] < depth_ ? shape_.child_count(sphere_[v]) : 0;
  }
  Vertex first_child(Vertex v) const { return first_child_[v]; }
  Vertex child(Vertex v, int slot) const { return first_child_[v] + slot; }
  bool is_even(Vertex v) const { return sphere_[v] % 2 == 0; }

  std::vector<Vertex> neighbors(Vertex v) const;

  PathAddress address(Vertex v) const;
  /// Index of an address, or nullopt if it lies outside the ball or is invalid.
  std::optional<Vertex> find(const PathAddress& a) const;
  /// Index of an address; throws std::out_of_range if absent.
  Vertex index(const PathAddress& a) const;

  /// Ancestor of v on sphere n (n <= sphere(v)).
  Vertex ancestor(Vertex v, int n) const;
  int distance(Vertex a, Vertex b) const;

  /// C_v: vertices whose path from o passes through v. Rejects v = o.
  std::vector<Vertex> cone(Vertex v) const;
  bool in_cone(Vertex root, Vertex w) const;
  /// D_v: complement of C_v together with v.
  std::vector<Vertex> anti_cone(Vertex v) const;

 private:
  TreeShape shape_;
  int depth_;
  std::vector<std::size_t> sphere_begin_;
  std::vector<int> sphere_;
  std::vector<Vertex> parent_;
  std::vector<int> slot_;
  std::vector<Vertex> first_child_;
};

}  // namespace treerep

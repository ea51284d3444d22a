#include "treerep/tree.hpp"

#include <charconv>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace treerep {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  constexpr std::uint64_t kLimit = std::uint64_t{1} << 62;
  if (b != 0 && a > kLimit / b) throw std::overflow_error("sphere size overflow");
  return a * b;
}

std::uint64_t ipow(std::uint64_t base, int e) {
  std::uint64_t out = 1;
  for (int k = 0; k < e; ++k) out = checked_mul(out, base);
  return out;
}

int parse_int(std::string_view text, std::string_view what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument("malformed " + std::string(what) + ": '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

TreeShape TreeShape::homogeneous(int d) {
  if (d < 3) throw std::invalid_argument("degree must be >= 3, got " + std::to_string(d));
  return TreeShape(Kind::homogeneous, d, d);
}

TreeShape TreeShape::semi_homogeneous(int r, int s) {
  if (r < 3 || s < 3) {
    throw std::invalid_argument("degrees must be >= 3, got (" + std::to_string(r) + "," +
                                std::to_string(s) + ")");
  }
  return TreeShape(Kind::semi_homogeneous, r, s);
}

TreeShape TreeShape::parse(std::string_view text) {
  if (text.rfind("sh", 0) == 0) {
    const auto rest = text.substr(2);
    const auto comma = rest.find(',');
    if (comma == std::string_view::npos) {
      throw std::invalid_argument("semi-homogeneous shape needs 'sh<r>,<s>'");
    }
    return semi_homogeneous(parse_int(rest.substr(0, comma), "degree r"),
                            parse_int(rest.substr(comma + 1), "degree s"));
  }
  if (text.rfind('h', 0) == 0) return homogeneous(parse_int(text.substr(1), "degree d"));
  throw std::invalid_argument("unknown shape '" + std::string(text) + "' (use h<d> or sh<r>,<s>)");
}

std::uint64_t TreeShape::sphere_size(int n) const {
  if (n < 0) throw std::invalid_argument("negative sphere index");
  if (n == 0) return 1;
  if (is_homogeneous()) return checked_mul(r_, ipow(r_ - 1, n - 1));
  const int k = (n + 1) / 2;
  const std::uint64_t base = checked_mul(r_, checked_mul(ipow(r_ - 1, k - 1), ipow(s_ - 1, k - 1)));
  return n % 2 == 1 ? base : checked_mul(base, s_ - 1);
}

std::uint64_t TreeShape::ball_size(int n) const {
  std::uint64_t total = 0;
  for (int m = 0; m <= n; ++m) total += sphere_size(m);
  return total;
}

std::string TreeShape::name() const {
  if (is_homogeneous()) return "h" + std::to_string(r_);
  return "sh" + std::to_string(r_) + "," + std::to_string(s_);
}

std::string to_string(const PathAddress& a) {
  std::string out = "(";
  for (std::size_t k = 0; k < a.steps.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(a.steps[k]);
  }
  return out + ")";
}

TreeBall::TreeBall(TreeShape shape, int depth, std::size_t vertex_budget)
    : shape_(shape), depth_(depth) {
  if (depth < 0) throw std::invalid_argument("negative depth");
  const std::uint64_t total = shape.ball_size(depth);
  if (total > vertex_budget) {
    throw std::length_error("ball " + shape.name() + " depth " + std::to_string(depth) + " has " +
                            std::to_string(total) + " vertices, over the budget of " +
                            std::to_string(vertex_budget));
  }
  sphere_begin_.reserve(depth + 2);
  sphere_.reserve(total);
  parent_.reserve(total);
  slot_.reserve(total);
  first_child_.assign(total, kNoVertex);

  sphere_begin_.push_back(0);
  sphere_.push_back(0);
  parent_.push_back(kNoVertex);
  slot_.push_back(0);
  sphere_begin_.push_back(1);
  for (int n = 0; n < depth; ++n) {
    const int children = shape.child_count(n);
    for (std::size_t v = sphere_begin_[n]; v < sphere_begin_[n + 1]; ++v) {
      first_child_[v] = static_cast<Vertex>(parent_.size());
      for (int c = 0; c < children; ++c) {
        sphere_.push_back(n + 1);
        parent_.push_back(static_cast<Vertex>(v));
        slot_.push_back(c);
      }
    }
    sphere_begin_.push_back(parent_.size());
  }
}

std::shared_ptr<const TreeBall> TreeBall::shared(const TreeShape& shape, int depth) {
  using Key = std::tuple<int, int, int, int>;
  static std::mutex mutex;
  static std::map<Key, std::shared_ptr<const TreeBall>> cache;
  const Key key{static_cast<int>(shape.kind()), shape.r(), shape.s(), depth};
  std::lock_guard lock(mutex);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, std::make_shared<const TreeBall>(shape, depth)).first;
  return it->second;
}

std::vector<Vertex> TreeBall::neighbors(Vertex v) const {
  std::vector<Vertex> out;
  if (parent_[v] != kNoVertex) out.push_back(parent_[v]);
  for (int c = 0; c < child_count(v); ++c) out.push_back(child(v, c));
  return out;
}

PathAddress TreeBall::address(Vertex v) const {
  PathAddress a;
  a.steps.resize(sphere_[v]);
  for (int n = sphere_[v]; n > 0; --n) {
    a.steps[n - 1] = slot_[v];
    v = parent_[v];
  }
  return a;
}

std::optional<Vertex> TreeBall::find(const PathAddress& a) const {
  if (static_cast<int>(a.length()) > depth_) return std::nullopt;
  Vertex v = 0;
  for (int step : a.steps) {
    if (step < 0 || step >= child_count(v)) return std::nullopt;
    v = child(v, step);
  }
  return v;
}

Vertex TreeBall::index(const PathAddress& a) const {
  auto v = find(a);
  if (!v) throw std::out_of_range("address " + to_string(a) + " not in ball of depth " + std::to_string(depth_));
  return *v;
}

Vertex TreeBall::ancestor(Vertex v, int n) const {
  while (sphere_[v] > n) v = parent_[v];
  return v;
}

int TreeBall::distance(Vertex a, Vertex b) const {
  int steps = 0;
  while (a != b) {
    if (sphere_[a] >= sphere_[b]) {
      a = parent_[a];
    } else {
      b = parent_[b];
    }
    ++steps;
  }
  return steps;
}

bool TreeBall::in_cone(Vertex root, Vertex w) const {
  return sphere_[w] >= sphere_[root] && ancestor(w, sphere_[root]) == root;
}

std::vector<Vertex> TreeBall::cone(Vertex v) const {
  if (v == 0) throw std::invalid_argument("the cone of the base vertex is not defined");
  std::vector<Vertex> out{v};
  // Descendants of a contiguous range are a contiguous range one sphere down.
  Vertex lo = v;
  Vertex hi = v + 1;
  for (int n = sphere_[v]; n < depth_; ++n) {
    const Vertex next_lo = first_child_[lo];
    const Vertex next_hi = first_child_[hi - 1] + shape_.child_count(n);
    for (Vertex w = next_lo; w < next_hi; ++w) out.push_back(w);
    lo = next_lo;
    hi = next_hi;
  }
  return out;
}

std::vector<Vertex> TreeBall::anti_cone(Vertex v) const {
  if (v == 0) throw std::invalid_argument("the anti-cone of the base vertex is not defined");
  std::vector<Vertex> out;
  for (Vertex w = 0; w < static_cast<Vertex>(size()); ++w) {
    if (w == v || !in_cone(v, w)) out.push_back(w);
  }
  return out;
}

}  // namespace treerep

#include "treerep/group_action.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <stdexcept>

namespace treerep {

namespace {

bool is_prefix(const PathAddress& prefix, const PathAddress& x) {
  return x.length() >= prefix.length() && std::equal(prefix.steps.begin(), prefix.steps.end(), x.steps.begin());
}

bool valid_address(const TreeShape& shape, const PathAddress& a) {
  for (std::size_t k = 0; k < a.steps.size(); ++k) {
    if (a.steps[k] < 0 || a.steps[k] >= shape.child_count(static_cast<int>(k))) return false;
  }
  return true;
}

PathAddress concat(std::initializer_list<int> head, const std::vector<int>& steps, std::size_t from) {
  PathAddress out;
  out.steps.assign(head);
  out.steps.insert(out.steps.end(), steps.begin() + static_cast<std::ptrdiff_t>(from), steps.end());
  return out;
}

// Slot c of o (c != skip) in the order of the remaining slots.
int compress(int c, int skip) { return c < skip ? c : c - 1; }
int expand(int j, int skip) { return j < skip ? j : j + 1; }

PathAddress apply_inversion(const TreeShape& shape, const PathInversion& inv, const PathAddress& x) {
  const auto& t = inv.target.steps;
  const auto& s = x.steps;
  if (shape.is_homogeneous()) {
    const int a = t[0];
    if (s.empty()) return PathAddress{{a}};
    if (s[0] == a) {
      if (s.size() == 1) return PathAddress{};
      return concat({expand(s[1], a)}, s, 2);
    }
    return concat({a, compress(s[0], a)}, s, 1);
  }
  const int a = t[0];
  const int b = t[1];
  if (s.empty()) return PathAddress{{a, b}};
  if (s[0] == a) {
    if (s.size() == 1 || s[1] != b) return x;
    if (s.size() == 2) return PathAddress{};
    return concat({expand(s[2], a)}, s, 3);
  }
  return concat({a, b, compress(s[0], a)}, s, 1);
}

std::vector<int> inverse_perm(const std::vector<int>& p) {
  std::vector<int> out(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) out[p[k]] = static_cast<int>(k);
  return out;
}

std::uint64_t draw(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

}  // namespace

PathAddress apply_atom(const TreeShape& shape, const Atom& atom, PathAddress x) {
  if (const auto* p = std::get_if<RootedPerm>(&atom)) {
    const std::size_t k = p->at.length();
    if (x.length() > k && is_prefix(p->at, x)) x.steps[k] = p->perm[x.steps[k]];
    return x;
  }
  return apply_inversion(shape, std::get<PathInversion>(atom), x);
}

Automorphism Automorphism::rooted_perm(const TreeShape& shape, PathAddress at, std::vector<int> perm) {
  if (!valid_address(shape, at)) throw std::invalid_argument("invalid address " + to_string(at));
  const int slots = shape.child_count(static_cast<int>(at.length()));
  if (static_cast<int>(perm.size()) != slots) {
    throw std::invalid_argument("permutation of " + std::to_string(perm.size()) + " slots below " +
                                to_string(at) + ", which has " + std::to_string(slots));
  }
  std::vector<int> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  for (int k = 0; k < slots; ++k) {
    if (sorted[k] != k) throw std::invalid_argument("slot index out of range in permutation");
  }
  Automorphism g(shape);
  bool identity = true;
  for (int k = 0; k < slots; ++k) identity = identity && perm[k] == k;
  if (!identity) g.word_.emplace_back(RootedPerm{std::move(at), std::move(perm)});
  return g;
}

Automorphism Automorphism::transposition(const TreeShape& shape, PathAddress at, int a, int b) {
  const int slots = shape.child_count(static_cast<int>(at.length()));
  if (a < 0 || b < 0 || a >= slots || b >= slots) throw std::invalid_argument("slot index out of range");
  std::vector<int> perm(slots);
  std::iota(perm.begin(), perm.end(), 0);
  std::swap(perm[a], perm[b]);
  return rooted_perm(shape, std::move(at), std::move(perm));
}

Automorphism Automorphism::swap(const TreeShape& shape, PathAddress target) {
  const std::size_t want = shape.is_homogeneous() ? 1 : 2;
  if (target.length() != want) {
    throw std::invalid_argument("swap target must have length " + std::to_string(want) + " on " + shape.name());
  }
  if (!valid_address(shape, target)) throw std::invalid_argument("invalid swap target " + to_string(target));
  if (shape.degree_at(0) != shape.degree_at(static_cast<int>(want))) {
    throw std::invalid_argument("swap endpoints have different degrees");
  }
  Automorphism g(shape);
  g.word_.emplace_back(PathInversion{std::move(target)});
  return g;
}

PathAddress Automorphism::apply(PathAddress x) const {
  for (auto it = word_.rbegin(); it != word_.rend(); ++it) x = apply_atom(shape_, *it, std::move(x));
  return x;
}

Automorphism Automorphism::inverse() const {
  Automorphism g(shape_);
  for (auto it = word_.rbegin(); it != word_.rend(); ++it) {
    if (const auto* p = std::get_if<RootedPerm>(&*it)) {
      g.word_.emplace_back(RootedPerm{p->at, inverse_perm(p->perm)});
    } else {
      g.word_.push_back(*it);
    }
  }
  return g;
}

Automorphism Automorphism::operator*(const Automorphism& other) const {
  if (!(other.shape_ == shape_)) throw std::invalid_argument("composing automorphisms of different trees");
  Automorphism g(*this);
  g.word_.insert(g.word_.end(), other.word_.begin(), other.word_.end());
  return g;
}

std::string Automorphism::str() const {
  if (word_.empty()) return "id";
  std::string out;
  for (const auto& atom : word_) {
    if (!out.empty()) out += "*";
    if (const auto* p = std::get_if<RootedPerm>(&atom)) {
      out += "perm" + to_string(p->at) + "[";
      for (std::size_t k = 0; k < p->perm.size(); ++k) out += (k ? "," : "") + std::to_string(p->perm[k]);
      out += "]";
    } else {
      out += "swap" + to_string(std::get<PathInversion>(atom).target);
    }
  }
  return out;
}

PullbackMap pullback_map(const Automorphism& g, int depth) {
  const TreeShape& shape = g.shape();
  const Automorphism inv = g.inverse();
  PullbackMap map{shape, minimal_depth(shape, depth), 0, g.displacement(), {}};
  map.source_depth = map.depth + map.displacement;
  const auto ball = TreeBall::shared(shape, map.depth);
  const auto source = TreeBall::shared(shape, map.source_depth);
  map.source.resize(ball->size());
  for (Vertex v = 0; v < static_cast<Vertex>(ball->size()); ++v) map.source[v] = source->index(inv.apply(ball->address(v)));
  return map;
}

EigenFunction act(const PullbackMap& map, const EigenFunction& h) {
  if (!(map.shape == h.shape())) throw std::invalid_argument("automorphism and function on different trees");
  const int n0 = h.invariance_depth() + map.displacement;
  if (map.depth < minimal_depth(h.shape(), n0)) {
    throw std::invalid_argument("pullback map of depth " + std::to_string(map.depth) +
                                " cannot hold invariance depth " + std::to_string(n0));
  }
  const EigenFunction source = extend(h, map.source_depth);
  auto ball = TreeBall::shared(h.shape(), map.depth);
  std::vector<Scalar> values(ball->size());
  const bool even = h.lattice() == Lattice::even;
  for (Vertex v = 0; v < static_cast<Vertex>(ball->size()); ++v) {
    if (even && !ball->is_even(v)) continue;
    values[v] = source[map.source[v]];
  }
  return EigenFunction(h.alpha(), n0, std::move(ball), std::move(values));
}

EigenFunction act(const Automorphism& g, const EigenFunction& h, int depth) {
  const int n0 = h.invariance_depth() + g.displacement();
  return act(pullback_map(g, std::max(depth, n0)), h);
}

Automorphism base_swap(const TreeShape& shape) {
  return Automorphism::swap(shape, shape.is_homogeneous() ? PathAddress{{0}} : PathAddress{{0, 0}});
}

Automorphism reach(const TreeShape& shape, const PathAddress& target) {
  if (!valid_address(shape, target)) throw std::invalid_argument("invalid target " + to_string(target));
  const std::size_t step = shape.is_homogeneous() ? 1 : 2;
  if (target.length() % step != 0) {
    throw std::invalid_argument("target " + to_string(target) + " is not in the orbit of o");
  }
  const Automorphism g = base_swap(shape);
  Automorphism word = Automorphism::identity(shape);
  for (std::size_t len = step; len <= target.length(); len += step) {
    PathAddress next;
    next.steps.assign(target.steps.begin(), target.steps.begin() + static_cast<std::ptrdiff_t>(len));
    // The new step is taken from o toward u, then carried to target by word.
    const PathAddress u = word.inverse().apply(next);
    Automorphism move = Automorphism::identity(shape);
    if (u.steps[0] != 0) move = move * Automorphism::transposition(shape, PathAddress{}, 0, u.steps[0]);
    if (step == 2 && u.steps[1] != 0) {
      move = move * Automorphism::transposition(shape, PathAddress{{0}}, 0, u.steps[1]);
    }
    word = word * (move * g);
  }
  return word;
}

Automorphism random_k_element(const TreeShape& shape, std::mt19937_64& rng, int max_site_depth, int max_atoms) {
  Automorphism g = Automorphism::identity(shape);
  const auto atoms = 1 + static_cast<int>(draw(rng, static_cast<std::uint64_t>(max_atoms)));
  for (int k = 0; k < atoms; ++k) {
    const auto depth = static_cast<int>(draw(rng, static_cast<std::uint64_t>(max_site_depth) + 1));
    PathAddress at;
    for (int n = 0; n < depth; ++n) {
      at.steps.push_back(static_cast<int>(draw(rng, static_cast<std::uint64_t>(shape.child_count(n)))));
    }
    const int slots = shape.child_count(depth);
    const auto a = static_cast<int>(draw(rng, static_cast<std::uint64_t>(slots)));
    auto b = static_cast<int>(draw(rng, static_cast<std::uint64_t>(slots - 1)));
    if (b >= a) ++b;
    g = g * Automorphism::transposition(shape, std::move(at), a, b);
  }
  return g;
}

std::vector<Automorphism> rooted_transpositions(const TreeShape& shape, int depth) {
  std::vector<Automorphism> out;
  if (depth <= 0) return out;
  const auto ball = TreeBall::shared(shape, depth - 1);
  for (Vertex v = 0; v < static_cast<Vertex>(ball->size()); ++v) {
    const int slots = shape.child_count(ball->sphere(v));
    for (int a = 0; a < slots; ++a) {
      for (int b = a + 1; b < slots; ++b) out.push_back(Automorphism::transposition(shape, ball->address(v), a, b));
    }
  }
  return out;
}

std::vector<Vertex> k_orbit(const TreeBall& ball, Vertex v) {
  const auto gens = rooted_transpositions(ball.shape(), ball.sphere(v));
  std::set<Vertex> seen{v};
  std::deque<Vertex> queue{v};
  while (!queue.empty()) {
    const Vertex x = queue.front();
    queue.pop_front();
    const PathAddress a = ball.address(x);
    for (const auto& g : gens) {
      const Vertex y = ball.index(g.apply(a));
      if (seen.insert(y).second) queue.push_back(y);
    }
  }
  return {seen.begin(), seen.end()};
}

bool preserves_adjacency(const Automorphism& g, int depth) {
  const TreeShape& shape = g.shape();
  const auto ball = TreeBall::shared(shape, depth);
  for (Vertex v = 1; v < static_cast<Vertex>(ball->size()); ++v) {
    const PathAddress a = g.apply(ball->address(v));
    const PathAddress b = g.apply(ball->address(ball->parent(v)));
    if (!valid_address(shape, a) || !valid_address(shape, b)) return false;
    const PathAddress& longer = a.length() > b.length() ? a : b;
    const PathAddress& shorter = a.length() > b.length() ? b : a;
    if (longer.length() != shorter.length() + 1 || !is_prefix(shorter, longer)) return false;
    if (shape.is_semi() && (a.length() % 2) != (static_cast<std::size_t>(ball->sphere(v)) % 2)) return false;
  }
  return true;
}

}  // namespace treerep

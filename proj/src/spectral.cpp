#include "treerep/spectral.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace treerep {

namespace {

int round_up_even(int m) { return m % 2 == 0 ? m : m + 1; }

void require_cover(const TreeBall& ball, std::span<const Scalar> values) {
  if (values.size() < ball.size()) {
    throw std::invalid_argument("values cover " + std::to_string(values.size()) +
                                " vertices, ball needs " + std::to_string(ball.size()));
  }
}

Scalar neighbour_sum(const TreeBall& ball, std::span<const Scalar> values, Vertex v) {
  Scalar sum;
  if (const Vertex p = ball.parent(v); p != kNoVertex) sum += values[p];
  const Vertex first = ball.first_child(v);
  for (int c = 0; c < ball.child_count(v); ++c) sum += values[first + c];
  return sum;
}

// Sum over the vertices at distance exactly 2 from v; needs sphere(v) + 2 <= depth.
Scalar distance_two_sum(const TreeBall& ball, std::span<const Scalar> values, Vertex v) {
  Scalar sum;
  if (const Vertex p = ball.parent(v); p != kNoVertex) {
    if (const Vertex gp = ball.parent(p); gp != kNoVertex) sum += values[gp];
    const Vertex first = ball.first_child(p);
    for (int c = 0; c < ball.child_count(p); ++c) {
      if (first + c != v) sum += values[first + c];
    }
  }
  const Vertex first = ball.first_child(v);
  for (int c = 0; c < ball.child_count(v); ++c) {
    const Vertex w = first + c;
    const Vertex g = ball.first_child(w);
    for (int k = 0; k < ball.child_count(w); ++k) sum += values[g + k];
  }
  return sum;
}

Scalar laplacian_at(const TreeBall& ball, std::span<const Scalar> values, Vertex v) {
  return neighbour_sum(ball, values, v) / Scalar(ball.degree(v));
}

Scalar two_laplacian_at(const TreeBall& ball, std::span<const Scalar> values, Vertex v) {
  const TreeShape& shape = ball.shape();
  return distance_two_sum(ball, values, v) / Scalar(shape.r() * (shape.s() - 1));
}

}  // namespace

const Scalar& RadialProfile::at(int distance) const {
  if (distance % stride() != 0 || distance < 0 || distance > max_distance()) {
    throw std::out_of_range("radial profile has no value at distance " + std::to_string(distance));
  }
  return values[distance / stride()];
}

int minimal_depth(const TreeShape& shape, int invariance_depth) {
  return shape.is_semi() ? round_up_even(invariance_depth) : invariance_depth;
}

EigenFunction::EigenFunction(Scalar alpha, int invariance_depth, std::shared_ptr<const TreeBall> ball,
                             std::vector<Scalar> values)
    : alpha_(std::move(alpha)),
      invariance_depth_(invariance_depth),
      ball_(std::move(ball)),
      values_(std::move(values)) {
  if (values_.size() != ball_->size()) throw std::invalid_argument("values do not match the ball");
  if (invariance_depth_ < 0) throw std::invalid_argument("negative invariance depth");
  if (ball_->depth() < minimal_depth(shape(), invariance_depth_)) {
    throw std::invalid_argument("ball depth " + std::to_string(ball_->depth()) +
                                " below invariance depth " + std::to_string(invariance_depth_));
  }
  if (lattice() == Lattice::even && ball_->depth() % 2 != 0) {
    throw std::invalid_argument("even-lattice functions live on even-depth balls");
  }
}

bool EigenFunction::is_zero() const {
  for (const auto& v : values_) {
    if (!v.is_zero()) return false;
  }
  return true;
}

EigenFunction EigenFunction::restricted(int m) const {
  if (m < minimal_depth(shape(), invariance_depth_)) {
    throw std::invalid_argument("restriction below the invariance depth");
  }
  if (m >= depth()) return *this;
  auto ball = TreeBall::shared(shape(), m);
  std::vector<Scalar> v(values_.begin(), values_.begin() + static_cast<std::ptrdiff_t>(ball->size()));
  return EigenFunction(alpha_, invariance_depth_, std::move(ball), std::move(v));
}

EigenFunction EigenFunction::with_invariance_depth(int n0) const {
  return EigenFunction(alpha_, n0, ball_, values_);
}

void EigenFunction::combine(const EigenFunction& o, int sign) {
  if (!(o.shape() == shape()) || !(o.alpha_ == alpha_)) {
    throw std::invalid_argument("combining eigenfunctions of different shape or alpha");
  }
  const int n0 = std::max(invariance_depth_, o.invariance_depth_);
  const int m = std::max({depth(), o.depth(), minimal_depth(shape(), n0)});
  if (m > depth()) *this = extend(*this, m);
  const EigenFunction other = o.depth() < m ? extend(o, m) : o;
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (other.values_[k].is_zero()) continue;
    if (sign > 0) {
      values_[k] += other.values_[k];
    } else {
      values_[k] -= other.values_[k];
    }
  }
  invariance_depth_ = n0;
}

EigenFunction& EigenFunction::operator+=(const EigenFunction& o) {
  combine(o, 1);
  return *this;
}

EigenFunction& EigenFunction::operator-=(const EigenFunction& o) {
  combine(o, -1);
  return *this;
}

EigenFunction& EigenFunction::operator*=(const Scalar& c) {
  for (auto& v : values_) {
    if (!v.is_zero()) v *= c;
  }
  return *this;
}

bool agree_on(const EigenFunction& a, const EigenFunction& b, int depth) {
  if (!(a.shape() == b.shape())) return false;
  const EigenFunction x = extend(a, depth);
  const EigenFunction y = extend(b, depth);
  const std::size_t n = TreeBall::shared(a.shape(), minimal_depth(a.shape(), depth))->size();
  for (std::size_t k = 0; k < n; ++k) {
    if (!(x[static_cast<Vertex>(k)] == y[static_cast<Vertex>(k)])) return false;
  }
  return true;
}

std::vector<Scalar> serial::laplacian_apply(const TreeBall& ball, std::span<const Scalar> values) {
  require_cover(ball, values);
  if (ball.depth() == 0) return {};
  const std::size_t n = ball.size_through(ball.depth() - 1);
  std::vector<Scalar> out(n);
  for (std::size_t v = 0; v < n; ++v) out[v] = laplacian_at(ball, values, static_cast<Vertex>(v));
  return out;
}

std::vector<Scalar> laplacian_apply(const TreeBall& ball, std::span<const Scalar> values) {
  require_cover(ball, values);
  if (ball.depth() == 0) return {};
  const auto n = static_cast<std::ptrdiff_t>(ball.size_through(ball.depth() - 1));
  std::vector<Scalar> out(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t v = 0; v < n; ++v) out[v] = laplacian_at(ball, values, static_cast<Vertex>(v));
  return out;
}

std::vector<Scalar> serial::two_laplacian_apply(const TreeBall& ball, std::span<const Scalar> values) {
  require_cover(ball, values);
  if (ball.depth() < 2) return {};
  const std::size_t n = ball.size_through(ball.depth() - 2);
  std::vector<Scalar> out(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (ball.is_even(static_cast<Vertex>(v))) out[v] = two_laplacian_at(ball, values, static_cast<Vertex>(v));
  }
  return out;
}

std::vector<Scalar> two_laplacian_apply(const TreeBall& ball, std::span<const Scalar> values) {
  require_cover(ball, values);
  if (ball.depth() < 2) return {};
  const auto n = static_cast<std::ptrdiff_t>(ball.size_through(ball.depth() - 2));
  std::vector<Scalar> out(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t v = 0; v < n; ++v) {
    if (ball.is_even(static_cast<Vertex>(v))) out[v] = two_laplacian_at(ball, values, static_cast<Vertex>(v));
  }
  return out;
}

RadialProfile radial_eigen(const TreeShape& shape, const Scalar& alpha, int max_distance) {
  if (max_distance < 0) throw std::invalid_argument("negative depth");
  RadialProfile p;
  p.lattice = lattice_of(shape);
  p.values.emplace_back(1);
  if (shape.is_homogeneous()) {
    const Scalar d_alpha = alpha * Scalar(shape.d());
    const Scalar inv = Scalar(1, shape.d() - 1);
    if (max_distance >= 1) p.values.push_back(alpha);
    for (int n = 1; n < max_distance; ++n) {
      p.values.push_back((d_alpha * p.values[n] - p.values[n - 1]) * inv);
    }
    return p;
  }
  const int r = shape.r();
  const int s = shape.s();
  const Scalar coef = alpha * Scalar(r * (s - 1));
  const Scalar inv = Scalar(1, (r - 1) * (s - 1));
  const int last = max_distance / 2;
  if (last >= 1) p.values.push_back(alpha);
  for (int n = 1; n < last; ++n) {
    p.values.push_back((coef * p.values[n] - p.values[n - 1] - Scalar(s - 2) * p.values[n]) * inv);
  }
  return p;
}

EigenFunction radial_function(const TreeShape& shape, const Scalar& alpha, int depth) {
  const int m = shape.is_semi() ? round_up_even(depth) : depth;
  auto ball = TreeBall::shared(shape, m);
  const RadialProfile f = radial_eigen(shape, alpha, m);
  std::vector<Scalar> values(ball->size());
  for (int n = 0; n <= m; n += f.stride()) {
    for (Vertex v = ball->sphere_begin(n); v < ball->sphere_end(n); ++v) values[v] = f.at(n);
  }
  return EigenFunction(alpha, 0, std::move(ball), std::move(values));
}

EigenFunction extend(const EigenFunction& h, int depth) {
  const TreeShape& shape = h.shape();
  const int target = shape.is_semi() ? round_up_even(depth) : depth;
  if (target <= h.depth()) return h;
  auto ball = TreeBall::shared(shape, target);
  std::vector<Scalar> v(ball->size());
  std::copy(h.values().begin(), h.values().end(), v.begin());
  const Scalar& alpha = h.alpha();

  if (shape.is_homogeneous()) {
    const Scalar d_alpha = alpha * Scalar(shape.d());
    const Scalar inv = Scalar(1, shape.d() - 1);
    for (int m = h.depth(); m < target; ++m) {
      for (Vertex u = ball->sphere_begin(m); u < ball->sphere_end(m); ++u) {
        const Scalar t = u == 0 ? alpha * v[0] : (d_alpha * v[u] - v[ball->parent(u)]) * inv;
        const Vertex first = ball->first_child(u);
        for (int c = 0; c < ball->child_count(u); ++c) v[first + c] = t;
      }
    }
  } else {
    const int r = shape.r();
    const int s = shape.s();
    const Scalar coef = alpha * Scalar(r * (s - 1));
    const Scalar inv = Scalar(1, (r - 1) * (s - 1));
    auto fill_grandchildren = [&](Vertex u, const Scalar& t) {
      const Vertex first = ball->first_child(u);
      for (int c = 0; c < ball->child_count(u); ++c) {
        const Vertex g = ball->first_child(first + c);
        for (int k = 0; k < ball->child_count(first + c); ++k) v[g + k] = t;
      }
    };
    for (int m = h.depth(); m < target; m += 2) {
      if (m == 0) {
        fill_grandchildren(0, alpha * v[0]);
        continue;
      }
      // Siblings of u are the other children of its (odd) parent p.
      for (Vertex p = ball->sphere_begin(m - 1); p < ball->sphere_end(m - 1); ++p) {
        const Vertex first = ball->first_child(p);
        Scalar total;
        for (int c = 0; c < ball->child_count(p); ++c) total += v[first + c];
        const Scalar& grand = v[ball->parent(p)];
        for (int c = 0; c < ball->child_count(p); ++c) {
          const Vertex u = first + c;
          const Scalar siblings = total - v[u];
          fill_grandchildren(u, (coef * v[u] - grand - siblings) * inv);
        }
      }
    }
  }
  return EigenFunction(alpha, h.invariance_depth(), std::move(ball), std::move(v));
}

std::optional<Vertex> first_eigen_defect(const TreeBall& ball, std::span<const Scalar> values,
                                         const Scalar& alpha) {
  require_cover(ball, values);
  const TreeShape& shape = ball.shape();
  if (shape.is_homogeneous()) {
    if (ball.depth() == 0) return std::nullopt;
    const auto n = static_cast<Vertex>(ball.size_through(ball.depth() - 1));
    for (Vertex v = 0; v < n; ++v) {
      if (!(neighbour_sum(ball, values, v) == Scalar(ball.degree(v)) * alpha * values[v])) return v;
    }
    return std::nullopt;
  }
  if (ball.depth() < 2) return std::nullopt;
  const Scalar scale = alpha * Scalar(shape.r() * (shape.s() - 1));
  const auto n = static_cast<Vertex>(ball.size_through(ball.depth() - 2));
  for (Vertex v = 0; v < n; ++v) {
    if (!ball.is_even(v)) continue;
    if (!(distance_two_sum(ball, values, v) == scale * values[v])) return v;
  }
  return std::nullopt;
}

bool is_eigen(const TreeBall& ball, std::span<const Scalar> values, const Scalar& alpha) {
  return !first_eigen_defect(ball, values, alpha).has_value();
}

}  // namespace treerep

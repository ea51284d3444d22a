#include "treerep/decomposition.hpp"

#include <mutex>
#include <stdexcept>
#include <string>
#include <tuple>

namespace treerep {

namespace {

std::uint64_t ipow(std::uint64_t base, int e) {
  std::uint64_t out = 1;
  for (int k = 0; k < e; ++k) out *= base;
  return out;
}

int data_sphere_of(const TreeShape& shape, int n) {
  if (shape.is_homogeneous() || n % 2 == 0) return n;
  return n + 1;
}

std::shared_ptr<const BlockLayout> build_layout(const TreeShape& shape, int n) {
  auto layout = std::make_shared<BlockLayout>();
  layout->block = n;
  layout->data_sphere = data_sphere_of(shape, n);
  if (n == 0) {
    layout->groups.push_back({0, {{0}}});
    return layout;
  }
  const auto ball = TreeBall::shared(shape, layout->data_sphere);
  const bool odd_semi = shape.is_semi() && n % 2 == 1;
  const int anchor_sphere = n - 1;
  for (Vertex v = ball->sphere_begin(anchor_sphere); v < ball->sphere_end(anchor_sphere); ++v) {
    BlockLayout::Group group{v, {}};
    for (int c = 0; c < ball->child_count(v); ++c) {
      const Vertex w = ball->child(v, c);
      if (!odd_semi) {
        group.cells.push_back({w});
        continue;
      }
      std::vector<Vertex> cell;
      for (int k = 0; k < ball->child_count(w); ++k) cell.push_back(ball->child(w, k));
      group.cells.push_back(std::move(cell));
    }
    layout->groups.push_back(std::move(group));
  }
  return layout;
}

bool all_zero(const std::vector<Scalar>& v) {
  for (const auto& x : v) {
    if (!x.is_zero()) return false;
  }
  return true;
}

// Function of invariance depth n with the given data on its data sphere,
// materialised on B_depth.
EigenFunction from_data(const TreeShape& shape, const Scalar& alpha, int n, const BlockLayout& layout,
                        const std::vector<Scalar>& residual_data, int depth) {
  auto ball = TreeBall::shared(shape, layout.data_sphere);
  std::vector<Scalar> values(ball->size());
  for (Vertex v = ball->sphere_begin(layout.data_sphere); v < ball->sphere_end(layout.data_sphere); ++v) {
    values[v] = residual_data[v];
  }
  return extend(EigenFunction(alpha, n, std::move(ball), std::move(values)), depth);
}

SparseVector sparse_sphere(const EigenFunction& h, int sphere) {
  SparseVector out;
  const TreeBall& ball = h.ball();
  for (Vertex v = ball.sphere_begin(sphere); v < ball.sphere_end(sphere); ++v) {
    if (!h[v].is_zero()) out.emplace_back(v, h[v]);
  }
  return out;
}

[[noreturn]] void sum_zero_violation(int block, Vertex anchor) {
  throw std::domain_error("residual breaks the sum-zero constraint of block " + std::to_string(block) +
                          " below vertex " + std::to_string(anchor) + ": not an eigenfunction");
}

}  // namespace

std::size_t BlockLayout::dimension() const {
  if (block == 0) return 1;
  std::size_t dim = 0;
  for (const auto& g : groups) dim += g.cells.size() - 1;
  return dim;
}

std::shared_ptr<const BlockLayout> block_layout(const TreeShape& shape, int n) {
  if (n < 0) throw std::invalid_argument("negative block index");
  using Key = std::tuple<int, int, int, int>;
  static std::mutex mutex;
  static std::map<Key, std::shared_ptr<const BlockLayout>> cache;
  const Key key{static_cast<int>(shape.kind()), shape.r(), shape.s(), n};
  std::lock_guard lock(mutex);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, build_layout(shape, n)).first;
  return it->second;
}

bool is_degenerate(const TreeShape& shape, const Scalar& alpha) {
  return shape.is_semi() && alpha == Scalar(-1, shape.s() - 1);
}

std::uint64_t expected_dimension(const TreeShape& shape, const Scalar& alpha, int n) {
  if (n < 0) throw std::invalid_argument("negative block index");
  if (n == 0) return 1;
  if (shape.is_homogeneous()) {
    const std::uint64_t d = shape.d();
    if (n == 1) return d - 1;
    return d * (d - 2) * ipow(d - 1, n - 2);
  }
  const std::uint64_t r = shape.r();
  const std::uint64_t s = shape.s();
  if (n % 2 == 1) {
    if (is_degenerate(shape, alpha)) return 0;
    if (n == 1) return r - 1;
    const int k = (n + 1) / 2;
    return r * (r - 2) * ipow(r - 1, k - 2) * ipow(s - 1, k - 1);
  }
  const int k = n / 2;
  return r * ipow(r - 1, k - 1) * (s - 2) * ipow(s - 1, k - 1);
}

SubspaceBasis basis_Hn(const TreeShape& shape, const Scalar& alpha, int n) {
  if (alpha == Scalar(1)) throw std::invalid_argument("alpha = 1 is excluded");
  SubspaceBasis out{n, shape, alpha, block_layout(shape, n), {}, expected_dimension(shape, alpha, n)};
  const BlockLayout& layout = *out.layout;
  if (n == 0) {
    out.basis.push_back(radial_function(shape, alpha, 0));
    return out;
  }
  if (shape.is_semi() && n % 2 == 1 && is_degenerate(shape, alpha)) return out;
  const auto ball = TreeBall::shared(shape, layout.data_sphere);
  for (const auto& group : layout.groups) {
    for (std::size_t j = 1; j < group.cells.size(); ++j) {
      std::vector<Scalar> values(ball->size());
      for (Vertex v : group.cells[0]) values[v] = Scalar(1);
      for (Vertex v : group.cells[j]) values[v] = Scalar(-1);
      out.basis.emplace_back(alpha, n, ball, std::move(values));
    }
  }
  return out;
}

std::vector<SubspaceBasis> bases_through(const TreeShape& shape, const Scalar& alpha, int cutoff) {
  std::vector<SubspaceBasis> out;
  for (int n = 0; n <= cutoff; ++n) out.push_back(basis_Hn(shape, alpha, n));
  return out;
}

PeelResult peel_decompose(const EigenFunction& h) {
  const TreeShape& shape = h.shape();
  const Scalar& alpha = h.alpha();
  const int depth = h.depth();
  PeelResult out;
  EigenFunction residual = h;

  auto take = [&](int block, EigenFunction component, SparseVector data) {
    residual -= component;
    out.components.emplace(block, std::move(component));
    out.data.emplace(block, std::move(data));
  };

  if (!residual[0].is_zero()) {
    const Scalar c0 = residual[0];
    EigenFunction f = radial_function(shape, alpha, depth);
    f *= c0;
    take(0, std::move(f), SparseVector{{0, c0}});
  }

  if (shape.is_homogeneous()) {
    for (int n = 1; n <= depth && !all_zero(residual.values()); ++n) {
      const auto layout = block_layout(shape, n);
      bool any = false;
      for (const auto& group : layout->groups) {
        Scalar sum;
        for (const auto& cell : group.cells) {
          sum += residual[cell[0]];
          any = any || !residual[cell[0]].is_zero();
        }
        if (!sum.is_zero()) sum_zero_violation(n, group.anchor);
      }
      if (!any) continue;
      EigenFunction component = from_data(shape, alpha, n, *layout, residual.values(), depth);
      SparseVector data = sparse_sphere(component, n);
      take(n, std::move(component), std::move(data));
    }
  } else {
    const bool degenerate = is_degenerate(shape, alpha);
    for (int k = 1; 2 * k <= depth && !all_zero(residual.values()); ++k) {
      const int sphere = 2 * k;
      const auto odd = block_layout(shape, 2 * k - 1);
      const TreeBall& ball = residual.ball();
      // Odd part: the cell means, which must sum to zero below each anchor.
      std::vector<Scalar> odd_data(ball.size());
      bool any = false;
      for (const auto& group : odd->groups) {
        Scalar group_sum;
        for (const auto& cell : group.cells) {
          Scalar mean;
          for (Vertex x : cell) mean += residual[x];
          mean /= Scalar(static_cast<long>(cell.size()));
          group_sum += mean;
          if (mean.is_zero()) continue;
          any = true;
          for (Vertex x : cell) odd_data[x] = mean;
        }
        if (!group_sum.is_zero()) sum_zero_violation(2 * k - 1, group.anchor);
      }
      if (any) {
        if (degenerate) {
          throw std::domain_error("input has a component in an odd block, which is empty at alpha = " +
                                  alpha.str());
        }
        EigenFunction component = from_data(shape, alpha, 2 * k - 1, *odd, odd_data, depth);
        SparseVector data = sparse_sphere(component, sphere);
        take(2 * k - 1, std::move(component), std::move(data));
      }
      const auto even = block_layout(shape, 2 * k);
      any = false;
      for (const auto& group : even->groups) {
        Scalar sum;
        for (const auto& cell : group.cells) {
          sum += residual[cell[0]];
          any = any || !residual[cell[0]].is_zero();
        }
        if (!sum.is_zero()) sum_zero_violation(2 * k, group.anchor);
      }
      if (!any) continue;
      EigenFunction component = from_data(shape, alpha, 2 * k, *even, residual.values(), depth);
      SparseVector data = sparse_sphere(component, sphere);
      take(2 * k, std::move(component), std::move(data));
    }
  }
  if (!all_zero(residual.values())) {
    throw std::domain_error("blocks up to depth " + std::to_string(depth) +
                            " do not reproduce the input: not an eigenfunction");
  }
  return out;
}

EigenFunction radialize(const EigenFunction& h) {
  const TreeBall& ball = h.ball();
  std::vector<Scalar> values(ball.size());
  const int stride = h.lattice() == Lattice::full ? 1 : 2;
  for (int n = 0; n <= ball.depth(); n += stride) {
    Scalar mean;
    for (Vertex v = ball.sphere_begin(n); v < ball.sphere_end(n); ++v) mean += h[v];
    mean /= Scalar(static_cast<long>(ball.sphere_count(n)));
    for (Vertex v = ball.sphere_begin(n); v < ball.sphere_end(n); ++v) values[v] = mean;
  }
  return EigenFunction(h.alpha(), 0, h.ball_ptr(), std::move(values));
}

std::vector<Scalar> coordinates(const SubspaceBasis& basis, const EigenFunction& component) {
  const BlockLayout& layout = *basis.layout;
  if (component.depth() < layout.data_sphere || component.invariance_depth() > layout.data_sphere) {
    throw std::domain_error("function is not determined by the data sphere of block " +
                            std::to_string(basis.block));
  }
  if (basis.block == 0) {
    const EigenFunction f = radial_function(basis.shape, basis.alpha, component.depth());
    const Scalar c = component[0];
    for (Vertex v = 0; v < static_cast<Vertex>(component.ball().size_through(layout.data_sphere)); ++v) {
      if (!(component[v] == c * f[v])) throw std::domain_error("function is not radial");
    }
    return {c};
  }
  const TreeBall& ball = component.ball();
  for (Vertex v = 0; v < ball.sphere_begin(layout.data_sphere); ++v) {
    if (!component[v].is_zero()) throw std::domain_error("function does not vanish inside the data sphere");
  }
  std::vector<Scalar> out;
  out.reserve(layout.dimension());
  if (basis.basis.empty()) {
    for (Vertex v = ball.sphere_begin(layout.data_sphere); v < ball.sphere_end(layout.data_sphere); ++v) {
      if (!component[v].is_zero()) throw std::domain_error("block " + std::to_string(basis.block) + " is empty");
    }
    return out;
  }
  for (const auto& group : layout.groups) {
    Scalar first;
    for (std::size_t j = 1; j < group.cells.size(); ++j) {
      const Scalar c = -component[group.cells[j][0]];
      first += c;
      for (Vertex x : group.cells[j]) {
        if (!(component[x] == -c)) throw std::domain_error("data is not constant on a cell");
      }
      out.push_back(c);
    }
    for (Vertex x : group.cells[0]) {
      if (!(component[x] == first)) throw std::domain_error("data breaks a sum-zero constraint");
    }
  }
  return out;
}

SupportSide support_side(const EigenFunction& h, Vertex v) {
  const TreeBall& ball = h.ball();
  bool inside = false;
  bool outside = false;
  for (Vertex w = 0; w < static_cast<Vertex>(ball.size()); ++w) {
    if (h[w].is_zero()) continue;
    (ball.in_cone(v, w) ? inside : outside) = true;
  }
  if (inside && outside) return SupportSide::mixed;
  if (inside) return SupportSide::cone;
  if (outside) return SupportSide::anti_cone;
  return SupportSide::zero;
}

}  // namespace treerep

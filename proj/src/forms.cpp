#include "treerep/forms.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>

namespace treerep {

namespace {

constexpr std::size_t kViolationsKept = 8;

Scalar dot(const SparseVector& x, const SparseVector& y) {
  Scalar sum;
  auto a = x.begin();
  auto b = y.begin();
  while (a != x.end() && b != y.end()) {
    if (a->first < b->first) {
      ++a;
    } else if (b->first < a->first) {
      ++b;
    } else {
      sum += a->second.conj() * b->second;
      ++a;
      ++b;
    }
  }
  return sum;
}

std::vector<PeelResult> peel_all(const std::vector<EigenFunction>& functions) {
  std::vector<PeelResult> out(functions.size());
  const auto n = static_cast<std::ptrdiff_t>(functions.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = peel_decompose(functions[i]);
  return out;
}

Matrix gram_of(const BlockForm& q, const std::vector<PeelResult>& peeled) {
  const std::size_t n = peeled.size();
  Matrix g(n, n);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    for (std::size_t j = static_cast<std::size_t>(i); j < n; ++j) {
      const Scalar value = eval_Q(q, peeled[i], peeled[j]);
      g(j, i) = value.conj();
      g(i, j) = value;
    }
  }
  return g;
}

// pi(g) f - a f = b h with f(o) = 1, h(o) = 0; returns (a, b).
std::pair<Scalar, Scalar> span_coordinates(const EigenFunction& image, const EigenFunction& f,
                                           const EigenFunction& h) {
  const Scalar a = image[0];
  EigenFunction rest = image - a * f;
  Vertex probe = 1;
  while (h[probe].is_zero()) ++probe;
  const Scalar b = rest[probe] / h[probe];
  if (!agree_on(rest, b * h, rest.depth())) throw std::logic_error("swap image leaves span{f, h}");
  return {a, b};
}

// Eigenfunction of invariance depth 2 around v = (0), w = (0,0) with the given
// values at o, w and the rest of N(v); S_2 \ N(v) solves the equation at o.
EigenFunction d_function(const TreeShape& shape, const Scalar& alpha, const Scalar& at_o, const Scalar& at_w,
                         const std::vector<Scalar>& rest) {
  if (!shape.is_semi()) throw std::invalid_argument("these functions live on semi-homogeneous trees");
  const int r = shape.r();
  const int s = shape.s();
  if (static_cast<int>(rest.size()) != s - 2) throw std::invalid_argument("N(v) minus w has s - 2 vertices");
  auto ball = TreeBall::shared(shape, 2);
  std::vector<Scalar> values(ball->size());
  values[0] = at_o;
  const Vertex v = ball->child(0, 0);
  Scalar near = at_w;
  values[ball->child(v, 0)] = at_w;
  for (int c = 1; c < s - 1; ++c) {
    values[ball->child(v, c)] = rest[c - 1];
    near += rest[c - 1];
  }
  const Scalar far = (Scalar(r * (s - 1)) * alpha * at_o - near) / Scalar((r - 1) * (s - 1));
  for (int c = 1; c < r; ++c) {
    const Vertex u = ball->child(0, c);
    for (int k = 0; k < s - 1; ++k) values[ball->child(u, k)] = far;
  }
  return EigenFunction(alpha, 2, std::move(ball), std::move(values));
}

}  // namespace

const Scalar& BlockForm::coefficient(int n) const {
  if (n < 0 || !has_block(n)) throw std::out_of_range("the form has no block " + std::to_string(n));
  if (n == 0) return c0_;
  return shape_.is_semi() && n % 2 == 1 ? odd_ : even_;
}

BlockForm assemble_Q(const TreeShape& shape, const Scalar& alpha) {
  if (!alpha.is_real()) throw std::invalid_argument("the invariant form needs a real alpha, got " + alpha.str());
  if (alpha == Scalar(1)) {
    throw std::invalid_argument("alpha = 1 is excluded: the representation is the one-dimensional trivial one");
  }
  BlockForm q(shape, alpha);
  if (shape.is_homogeneous()) {
    if (alpha == Scalar(-1)) {
      throw std::invalid_argument("alpha = -1 is excluded: the representation is one-dimensional (the sign character)");
    }
    const int d = shape.d();
    q.c0_ = Scalar(d, d - 1) * (Scalar(1) - alpha * alpha);
    q.odd_ = Scalar(1);
    q.even_ = Scalar(1);
    return q;
  }
  const int r = shape.r();
  const int s = shape.s();
  q.c0_ = Scalar(1) - alpha;
  q.even_ = Scalar(1);
  q.degenerate_ = is_degenerate(shape, alpha);
  if (!q.degenerate_) q.odd_ = Scalar(r - 1) / (Scalar(r) * (Scalar(1) + Scalar(s - 1) * alpha));
  return q;
}

Scalar eval_Q(const BlockForm& q, const PeelResult& x, const PeelResult& y) {
  Scalar total;
  for (const auto& [n, data] : x.data) {
    const auto it = y.data.find(n);
    if (it == y.data.end()) continue;
    const Scalar value = dot(data, it->second);
    if (!value.is_zero()) total += q.coefficient(n) * value;
  }
  return total;
}

Scalar eval_Q(const BlockForm& q, const EigenFunction& x, const EigenFunction& y) {
  return eval_Q(q, peel_decompose(x), peel_decompose(y));
}

FlatBasis flat_basis(const TreeShape& shape, const Scalar& alpha, int cutoff) {
  FlatBasis out;
  for (int n = 0; n <= cutoff; ++n) {
    out.block_start.push_back(out.functions.size());
    for (auto& f : basis_Hn(shape, alpha, n).basis) {
      out.functions.push_back(std::move(f));
      out.block_of.push_back(n);
    }
  }
  out.block_start.push_back(out.functions.size());
  return out;
}

Matrix gram(const BlockForm& q, const std::vector<EigenFunction>& basis) { return gram_of(q, peel_all(basis)); }

Matrix serial::gram(const BlockForm& q, const std::vector<EigenFunction>& basis) {
  const std::size_t n = basis.size();
  std::vector<PeelResult> peeled;
  peeled.reserve(n);
  for (const auto& f : basis) peeled.push_back(peel_decompose(f));
  Matrix g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      g(i, j) = eval_Q(q, peeled[i], peeled[j]);
      g(j, i) = g(i, j).conj();
    }
  }
  return g;
}

Matrix gram_through(const BlockForm& q, int cutoff) {
  return gram(q, flat_basis(q.shape(), q.alpha(), cutoff).functions);
}

Signature form_signature(const BlockForm& q, int cutoff, PivotStrategy strategy) {
  return signature(gram_through(q, cutoff), strategy);
}

namespace {

struct TestSpace {
  std::vector<EigenFunction> functions;
  std::vector<PeelResult> peeled;
  Matrix gram;
};

template <bool Parallel>
InvarianceReport check_invariance(const BlockForm& q, const std::vector<Automorphism>& generators, int cutoff) {
  InvarianceReport report;
  std::map<int, TestSpace> spaces;
  for (std::size_t k = 0; k < generators.size(); ++k) {
    const Automorphism& g = generators[k];
    report.generators.push_back(g.str());
    const int reach = cutoff - g.displacement();
    if (reach < 0) {
      report.pairs_checked.push_back(0);
      report.violation_count.push_back(0);
      continue;
    }
    auto it = spaces.find(reach);
    if (it == spaces.end()) {
      TestSpace space;
      space.functions = flat_basis(q.shape(), q.alpha(), reach).functions;
      if constexpr (Parallel) {
        space.peeled = peel_all(space.functions);
        space.gram = gram_of(q, space.peeled);
      } else {
        for (const auto& f : space.functions) space.peeled.push_back(peel_decompose(f));
        space.gram = serial::gram(q, space.functions);
      }
      it = spaces.emplace(reach, std::move(space)).first;
    }
    const TestSpace& space = it->second;
    const std::size_t n = space.functions.size();
    const PullbackMap map = pullback_map(g, cutoff);
    std::vector<PeelResult> images(n);
    std::vector<std::vector<InvarianceViolation>> found(n);
    if constexpr (Parallel) {
#pragma omp parallel for schedule(dynamic)
      for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
        images[i] = peel_decompose(act(map, space.functions[i]));
      }
#pragma omp parallel for schedule(dynamic)
      for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
        for (std::size_t j = static_cast<std::size_t>(i); j < n; ++j) {
          Scalar diff = eval_Q(q, images[i], images[j]) - space.gram(i, j);
          if (!diff.is_zero()) found[i].push_back({k, static_cast<std::size_t>(i), j, std::move(diff)});
        }
      }
    } else {
      for (std::size_t i = 0; i < n; ++i) images[i] = peel_decompose(act(map, space.functions[i]));
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
          Scalar diff = eval_Q(q, images[i], images[j]) - space.gram(i, j);
          if (!diff.is_zero()) found[i].push_back({k, i, j, std::move(diff)});
        }
      }
    }
    report.pairs_checked.push_back(n * (n + 1) / 2);
    std::size_t count = 0;
    for (auto& row : found) {
      for (auto& v : row) {
        if (count++ < kViolationsKept) report.violations.push_back(std::move(v));
      }
    }
    report.violation_count.push_back(count);
  }
  return report;
}

}  // namespace

InvarianceReport invariance_check(const BlockForm& q, const std::vector<Automorphism>& generators, int cutoff) {
  return check_invariance<true>(q, generators, cutoff);
}

InvarianceReport serial::invariance_check(const BlockForm& q, const std::vector<Automorphism>& generators,
                                          int cutoff) {
  return check_invariance<false>(q, generators, cutoff);
}

EigenFunction rigidity_partner(const TreeShape& shape, const Scalar& alpha) {
  if (shape.is_homogeneous()) {
    const int d = shape.d();
    auto ball = TreeBall::shared(shape, 1);
    std::vector<Scalar> values(ball->size());
    values[1] = Scalar(1);
    for (int c = 1; c < d; ++c) values[1 + c] = Scalar(-1, d - 1);
    return EigenFunction(alpha, 1, std::move(ball), std::move(values));
  }
  const int r = shape.r();
  const int s = shape.s();
  std::vector<Scalar> rest(s - 2, alpha);
  EigenFunction h = d_function(shape, alpha, Scalar(0), Scalar(1) + alpha, rest);
  const Scalar far = -(Scalar(1) + Scalar(s - 1) * alpha) / Scalar((r - 1) * (s - 1));
  if (!(h[h.ball().index(PathAddress{{1, 0}})] == far)) throw std::logic_error("partner misses its S_2 value");
  return h;
}

RigidityResult span_fh_rigidity(const TreeShape& shape, const Scalar& alpha, bool unconstrained) {
  if (alpha == Scalar(1)) throw std::invalid_argument("alpha = 1 is excluded");
  if (shape.is_homogeneous() && alpha == Scalar(-1)) throw std::invalid_argument("alpha = -1 is excluded");
  RigidityResult out;
  out.alpha = alpha;
  out.unconstrained = unconstrained;
  const int depth = shape.is_homogeneous() ? 4 : 6;
  const Automorphism g = base_swap(shape);
  const EigenFunction f = radial_function(shape, alpha, depth);
  const EigenFunction h = extend(rigidity_partner(shape, alpha), depth);
  const auto [ff, fh] = span_coordinates(act(g, f, depth), f, h);
  const auto [hf, hh] = span_coordinates(act(g, h, depth), f, h);
  out.action = Matrix(2, 2);
  out.action(0, 0) = ff;
  out.action(1, 0) = fh;
  out.action(0, 1) = hf;
  out.action(1, 1) = hh;

  out.unknowns = {"B(f,f)", "B(h,h)"};
  if (unconstrained) {
    out.unknowns.emplace_back("Re B(f,h)");
    out.unknowns.emplace_back("Im B(f,h)");
  }
  const std::size_t u = out.unknowns.size();
  // B_kl as a linear form in the unknowns.
  auto entry = [&](int k, int l) {
    std::vector<Scalar> c(u);
    if (k == l) {
      c[k] = Scalar(1);
    } else if (unconstrained) {
      c[2] = Scalar(1);
      c[3] = k == 0 ? Scalar::imaginary_unit() : -Scalar::imaginary_unit();
    }
    return c;
  };
  IncrementalRref rref(u);
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      std::vector<Scalar> eq(u);
      for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) {
          const Scalar w = out.action(k, x).conj() * out.action(l, y);
          const auto c = entry(k, l);
          for (std::size_t t = 0; t < u; ++t) add_product(eq[t], w, c[t]);
        }
      }
      const auto c = entry(x, y);
      for (std::size_t t = 0; t < u; ++t) eq[t] -= c[t];
      std::vector<Scalar> re(u);
      std::vector<Scalar> im(u);
      for (std::size_t t = 0; t < u; ++t) {
        re[t] = Scalar(eq[t].re());
        im[t] = Scalar(eq[t].im());
      }
      rref.add(std::move(re));
      rref.add(std::move(im));
      out.equations += 2;
    }
  }
  out.solutions = rref.nullspace();
  if (out.solutions.size() == 1 && !out.solutions[0][1].is_zero()) {
    out.ratio = out.solutions[0][0] / out.solutions[0][1];
  }
  return out;
}

FormSolverResult truncated_form_solver(const TreeShape& shape, const Scalar& alpha, int cutoff, std::uint64_t seed,
                                       int samples) {
  if (!alpha.is_real()) throw std::invalid_argument("the form solver needs a real alpha");
  if (alpha == Scalar(1)) throw std::invalid_argument("alpha = 1 is excluded");
  if (cutoff < 1) throw std::invalid_argument("cutoff must be at least 1");
  FormSolverResult out;
  out.cutoff = cutoff;
  const FlatBasis flat = flat_basis(shape, alpha, cutoff);
  const std::vector<SubspaceBasis> bases = bases_through(shape, alpha, cutoff);
  const std::size_t dim = flat.size();
  out.basis_size = dim;
  out.unknowns = dim * (dim + 1) / 2;
  auto unknown = [dim](std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    return i * dim - i * (i - 1) / 2 + (j - i);
  };

  std::vector<Automorphism> generators{base_swap(shape)};
  std::mt19937_64 rng(seed);
  for (int k = 0; k < samples; ++k) generators.push_back(random_k_element(shape, rng, cutoff - 1));

  IncrementalRref rref(out.unknowns);
  int max_shift = 0;
  for (const auto& g : generators) {
    const int shift = g.displacement();
    max_shift = std::max(max_shift, shift);
    const int reach = cutoff - shift;
    if (reach < 0) continue;
    const std::size_t tests = flat.block_start[reach + 1];
    const PullbackMap map = pullback_map(g, cutoff);
    std::vector<std::vector<std::pair<std::size_t, Scalar>>> image(tests);
    for (std::size_t i = 0; i < tests; ++i) {
      const PeelResult peeled = peel_decompose(act(map, flat.functions[i]));
      for (const auto& [n, component] : peeled.components) {
        if (n > cutoff) throw std::logic_error("image leaves the truncation");
        const auto coords = coordinates(bases[n], component);
        for (std::size_t c = 0; c < coords.size(); ++c) {
          if (!coords[c].is_zero()) image[i].emplace_back(flat.block_start[n] + c, coords[c]);
        }
      }
    }
    for (std::size_t i = 0; i < tests; ++i) {
      for (std::size_t j = i; j < tests; ++j) {
        std::vector<Scalar> eq(out.unknowns);
        for (const auto& [k, a] : image[i]) {
          for (const auto& [l, b] : image[j]) eq[unknown(k, l)] += a * b;
        }
        eq[unknown(i, j)] -= Scalar(1);
        rref.add(std::move(eq));
        ++out.equations;
      }
    }
  }
  out.rank = rref.rank();
  const auto solutions = rref.nullspace();
  out.solution_dim = solutions.size();

  out.restricted_cutoff = cutoff - max_shift;
  const std::size_t kept = flat.block_start[out.restricted_cutoff + 1];
  out.restricted_size = kept;
  const std::size_t kept_unknowns = kept * (kept + 1) / 2;
  // Independent restricted solutions, read back from a fresh reduction.
  IncrementalRref rows(kept_unknowns);
  for (const auto& sol : solutions) {
    Matrix b(kept, kept);
    std::vector<Scalar> v(kept_unknowns);
    for (std::size_t i = 0; i < kept; ++i) {
      for (std::size_t j = i; j < kept; ++j) {
        b(i, j) = sol[unknown(i, j)];
        b(j, i) = b(i, j);
        v[unknown(i, j) - i * (dim - kept)] = b(i, j);
      }
    }
    if (rows.add(std::move(v))) out.restricted.push_back(std::move(b));
  }

  if (out.restricted.size() == 1) {
    const Matrix& b = out.restricted.front();
    std::vector<EigenFunction> kept_basis(flat.functions.begin(), flat.functions.begin() + static_cast<std::ptrdiff_t>(kept));
    const Matrix q = gram(assemble_Q(shape, alpha), kept_basis);
    const Scalar ratio = b(0, 0) / q(0, 0);
    bool proportional = true;
    bool diagonal = true;
    for (std::size_t i = 0; i < kept; ++i) {
      for (std::size_t j = 0; j < kept; ++j) {
        proportional = proportional && b(i, j) == ratio * q(i, j);
        if (flat.block_of[i] != flat.block_of[j]) diagonal = diagonal && b(i, j).is_zero();
      }
    }
    out.proportional_to_Q = proportional;
    out.block_diagonal = diagonal;
    if (proportional) out.ratio_to_Q = ratio;
  }
  return out;
}

EigenFunction hd1_function(const TreeShape& shape, const Scalar& alpha, const Scalar& a, const Scalar& b) {
  return d_function(shape, alpha, a, a, std::vector<Scalar>(shape.s() - 2, b));
}

EigenFunction hd2_function(const TreeShape& shape, const Scalar& alpha) {
  return d_function(shape, alpha, Scalar(1), Scalar(-1), std::vector<Scalar>(shape.s() - 2));
}

EigenFunction hd3_function(const TreeShape& shape, const Scalar& alpha, const std::vector<Scalar>& values) {
  Scalar sum;
  for (const auto& x : values) sum += x;
  if (!sum.is_zero()) throw std::invalid_argument("values on N(v) minus w must sum to zero");
  return d_function(shape, alpha, Scalar(0), Scalar(0), values);
}

}  // namespace treerep

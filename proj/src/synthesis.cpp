#include "treerep/synthesis.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "treerep/decomposition.hpp"

namespace treerep {

namespace {

// Running state: the partial sum F on B_M and the radial profile.
class Builder {
 public:
  Builder(const EigenFunction& h, int depth)
      : shape_(h.shape()),
        check_depth_(minimal_depth(shape_, std::max(depth, h.invariance_depth() + 1))),
        ball_(TreeBall::shared(shape_, check_depth_)),
        target_(extend(h, check_depth_)),
        profile_(radial_eigen(shape_, h.alpha(), 2 * check_depth_)),
        partial_(ball_->size()),
        out_{shape_, h.alpha(), check_depth_, {}, 0, 0} {}

  const TreeBall& ball() const { return *ball_; }
  const RadialProfile& f() const { return profile_; }
  int fix_depth() const { return minimal_depth(shape_, target_.invariance_depth()); }
  Scalar gap(Vertex w) const { return target_[w] - partial_[w]; }
  const EigenFunction& target() const { return target_; }
  TranslateCombination& result() { return out_; }

  void add(const Scalar& c, Vertex center) {
    if (c.is_zero()) return;
    out_.terms.push_back({c, reach(shape_, ball_->address(center))});
    const bool even = shape_.is_semi();
    for (Vertex x = 0; x < static_cast<Vertex>(ball_->size()); ++x) {
      if (even && !ball_->is_even(x)) continue;
      partial_[x] += c * profile_.at(ball_->distance(center, x));
    }
  }

  void close_group(const Scalar& coefficient_sum) {
    if (!coefficient_sum.is_zero()) throw std::logic_error("correction coefficients do not sum to zero");
    ++out_.groups;
  }

  TranslateCombination finish() {
    for (Vertex x = 0; x < static_cast<Vertex>(ball_->size()); ++x) {
      if (!(partial_[x] == target_[x])) {
        throw std::logic_error("synthesis misses the target at " + to_string(ball_->address(x)));
      }
    }
    return std::move(out_);
  }

 private:
  TreeShape shape_;
  int check_depth_;
  std::shared_ptr<const TreeBall> ball_;
  EigenFunction target_;
  RadialProfile profile_;
  std::vector<Scalar> partial_;
  TranslateCombination out_;
};

void require_real_shape(const EigenFunction& h, bool semi) {
  if (h.shape().is_semi() != semi) {
    throw std::invalid_argument(semi ? "expected a semi-homogeneous tree" : "expected a homogeneous tree");
  }
}

// Phase one below the even vertex v; returns R(v') for each child v'.
std::vector<Scalar> phase_one(Builder& b, Vertex v) {
  const TreeBall& ball = b.ball();
  const Scalar scale = Scalar(1) / (b.f().at(0) - b.f().at(2));
  std::vector<std::pair<Vertex, Scalar>> pending;
  std::vector<Scalar> residual;
  Scalar sum;
  for (int c = 0; c < ball.child_count(v); ++c) {
    const Vertex odd = ball.child(v, c);
    Scalar r;
    for (int k = 0; k < ball.child_count(odd); ++k) {
      const Vertex w = ball.child(odd, k);
      const Scalar gap = b.gap(w);
      r += gap;
      pending.emplace_back(w, gap * scale);
      sum += gap * scale;
    }
    residual.push_back(std::move(r));
  }
  for (const auto& [w, c] : pending) b.add(c, w);
  b.close_group(sum);
  return residual;
}

}  // namespace

EigenFunction TranslateCombination::evaluate(int eval_depth) const {
  int n0 = 0;
  for (const auto& t : terms) n0 = std::max(n0, t.word.displacement());
  const int m = minimal_depth(shape, std::max(eval_depth, n0));
  auto ball = TreeBall::shared(shape, m);
  const RadialProfile f = radial_eigen(shape, alpha, 2 * m);
  std::vector<Scalar> values(ball->size());
  const bool even = shape.is_semi();
  for (const auto& t : terms) {
    const Vertex center = ball->index(t.word.apply(PathAddress{}));
    for (Vertex x = 0; x < static_cast<Vertex>(ball->size()); ++x) {
      if (even && !ball->is_even(x)) continue;
      values[x] += t.coefficient * f.at(ball->distance(center, x));
    }
  }
  return EigenFunction(alpha, n0, std::move(ball), std::move(values));
}

TranslateCombination synthesize_transitive(const EigenFunction& h, int depth) {
  require_real_shape(h, false);
  const Scalar& alpha = h.alpha();
  if (alpha == Scalar(1) || alpha == Scalar(-1)) {
    throw std::invalid_argument("alpha = +-1 is excluded: then f(0) = f(2) and no correction exists");
  }
  Builder b(h, depth);
  const TreeBall& ball = b.ball();
  b.add(h[0], 0);
  const Scalar scale = Scalar(1) / (b.f().at(0) - b.f().at(2));
  for (int m = 0; m < b.fix_depth(); ++m) {
    for (Vertex v = ball.sphere_begin(m); v < ball.sphere_end(m); ++v) {
      std::vector<Scalar> coefficients;
      Scalar sum;
      for (int c = 0; c < ball.child_count(v); ++c) {
        coefficients.push_back(b.gap(ball.child(v, c)) * scale);
        sum += coefficients.back();
      }
      for (int c = 0; c < ball.child_count(v); ++c) b.add(coefficients[c], ball.child(v, c));
      b.close_group(sum);
    }
  }
  return b.finish();
}

TranslateCombination synthesize_semihomogeneous(const EigenFunction& h, int depth) {
  require_real_shape(h, true);
  const TreeShape& shape = h.shape();
  const Scalar& alpha = h.alpha();
  const int s = shape.s();
  if ((Scalar(s - 1) * alpha + Scalar(1)) * (alpha - Scalar(1)) == Scalar(0)) {
    throw std::invalid_argument("alpha = " + alpha.str() +
                                " is excluded: ((s-1) alpha + 1)(alpha - 1) = 0, so f(0) + (s-2) f(2) - (s-1) f(4) = 0" +
                                (is_degenerate(shape, alpha) ? "; use the special procedure" : ""));
  }
  Builder b(h, depth);
  const TreeBall& ball = b.ball();
  const RadialProfile& f = b.f();
  const Scalar ratio = (f.at(2) - f.at(4)) / (f.at(0) - f.at(2));
  const Scalar cleanup = Scalar(1) / (f.at(0) + Scalar(s - 2) * f.at(2) - Scalar(s - 1) * f.at(4));
  b.add(h[0], 0);
  for (int m = 0; m + 2 <= b.fix_depth(); m += 2) {
    for (Vertex v = ball.sphere_begin(m); v < ball.sphere_end(m); ++v) {
      const std::vector<Scalar> residual = phase_one(b, v);
      Scalar sum;
      std::vector<std::pair<Vertex, Scalar>> pending;
      for (int c = 0; c < ball.child_count(v); ++c) {
        const Vertex odd = ball.child(v, c);
        const Scalar coefficient = -(residual[c] * ratio) * cleanup;
        for (int k = 0; k < ball.child_count(odd); ++k) {
          pending.emplace_back(ball.child(odd, k), coefficient);
          sum += coefficient;
        }
      }
      for (const auto& [w, c] : pending) b.add(c, w);
      b.close_group(sum);
    }
  }
  return b.finish();
}

std::optional<Vertex> admissibility_defect(const EigenFunction& h) {
  const TreeBall& ball = h.ball();
  for (Vertex u = 0; u < static_cast<Vertex>(ball.size()); ++u) {
    if (ball.is_even(u) || ball.sphere(u) >= ball.depth()) continue;
    Scalar sum = h[ball.parent(u)];
    for (int c = 0; c < ball.child_count(u); ++c) sum += h[ball.child(u, c)];
    if (!sum.is_zero()) return u;
  }
  return std::nullopt;
}

TranslateCombination synthesize_special(const EigenFunction& h, int depth) {
  require_real_shape(h, true);
  if (!is_degenerate(h.shape(), h.alpha())) {
    throw std::invalid_argument("the special procedure needs alpha = -1/(s-1)");
  }
  const EigenFunction wide = extend(h, minimal_depth(h.shape(), std::max(depth, h.invariance_depth() + 1)));
  if (const auto u = admissibility_defect(wide)) {
    throw std::domain_error("input is outside the admissible subspace: neighbour sum around " +
                            to_string(wide.ball().address(*u)) + " is nonzero");
  }
  Builder b(h, depth);
  const TreeBall& ball = b.ball();
  b.add(h[0], 0);
  for (int m = 0; m + 2 <= b.fix_depth(); m += 2) {
    for (Vertex v = ball.sphere_begin(m); v < ball.sphere_end(m); ++v) {
      for (const auto& r : phase_one(b, v)) {
        if (!r.is_zero()) throw std::logic_error("R(v) = " + r.str() + " does not vanish");
        ++b.result().residual_checks;
      }
    }
  }
  return b.finish();
}

TranslateCombination synthesize(const EigenFunction& h, int depth) {
  if (h.shape().is_homogeneous()) return synthesize_transitive(h, depth);
  if (is_degenerate(h.shape(), h.alpha())) return synthesize_special(h, depth);
  return synthesize_semihomogeneous(h, depth);
}

}  // namespace treerep

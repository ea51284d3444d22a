#include <doctest.h>

#include <random>

#include "treerep/forms.hpp"
#include "treerep/io.hpp"
#include "treerep/synthesis.hpp"

using namespace treerep;

namespace {

// Direct evaluation: sum_i c_i f(d(g_i o, x)) from the closed-form profile.
bool reproduces(const TranslateCombination& c, const EigenFunction& h, int depth) {
  const auto target = extend(h, depth);
  const auto& ball = target.ball();
  const auto profile = radial_eigen(c.shape, c.alpha, 2 * depth + 4 * static_cast<int>(c.terms.size()) + 8);
  std::vector<PathAddress> centres;
  for (const auto& t : c.terms) centres.push_back(t.word.apply(PathAddress{}));
  for (Vertex v = 0; v < static_cast<Vertex>(ball.size_through(depth)); ++v) {
    if (!target.in_lattice(v)) continue;
    const PathAddress x = ball.address(v);
    Scalar sum;
    for (std::size_t i = 0; i < centres.size(); ++i) {
      const auto& y = centres[i];
      std::size_t k = 0;
      while (k < x.length() && k < y.length() && x.steps[k] == y.steps[k]) ++k;
      sum += c.terms[i].coefficient * profile.at(static_cast<int>(x.length() + y.length() - 2 * k));
    }
    if (!(sum == target[v])) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("f itself is a single term") {
  for (const char* name : {"h3", "sh3,4"}) {
    const auto shape = TreeShape::parse(name);
    for (const char* a : {"1/2", "-1/3"}) {
      const auto f = radial_function(shape, Scalar::parse(a), 2);
      const auto c = synthesize(f, 2);
      CHECK(c.terms.size() == 1);
      CHECK(reproduces(c, f, 2));
    }
  }
}

TEST_CASE("transitive synthesis of random targets") {
  const auto shape = TreeShape::homogeneous(3);
  const Scalar a(2, 7);
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 4; ++trial) {
    const auto h = random_element(shape, a, 2, rng);
    const auto c = synthesize_transitive(h, 3);
    CHECK(reproduces(c, h, 3));
  }
}

TEST_CASE("semi-homogeneous synthesis") {
  const auto shape = TreeShape::semi_homogeneous(3, 4);
  const Scalar a(1, 3);
  std::mt19937_64 rng(22);
  const auto h = random_element(shape, a, 2, rng);
  CHECK(reproduces(synthesize_semihomogeneous(h, 4), h, 4));
  const auto moved = act(base_swap(shape), radial_function(shape, a, 2), 4);
  CHECK(reproduces(synthesize_semihomogeneous(moved, 4), moved, 4));
  CHECK_THROWS_AS(synthesize_semihomogeneous(radial_function(shape, Scalar(-1, 3), 2), 4), std::invalid_argument);
}

TEST_CASE("special alpha synthesis") {
  const auto shape = TreeShape::semi_homogeneous(3, 4);
  const Scalar a(-1, 3);
  const auto moved = act(base_swap(shape), radial_function(shape, a, 2), 4);
  CHECK_FALSE(admissibility_defect(moved).has_value());
  const auto c = synthesize_special(moved, 4);
  CHECK(c.residual_checks > 0);
  CHECK(reproduces(c, moved, 4));
  const auto bad = hd1_function(shape, a, Scalar(1), Scalar(1));
  CHECK(admissibility_defect(bad).has_value());
  CHECK_THROWS_AS(synthesize_special(bad, 4), std::domain_error);
}

TEST_CASE("excluded alpha") {
  const auto f = radial_function(TreeShape::homogeneous(3), Scalar(-1), 2);
  CHECK_THROWS_AS(synthesize(f, 2), std::invalid_argument);
}

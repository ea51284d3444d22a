#include <doctest.h>

#include <random>

#include "treerep/decomposition.hpp"
#include "treerep/group_action.hpp"
#include "treerep/io.hpp"

using namespace treerep;

namespace {

long ipow(long b, int e) {
  long out = 1;
  while (e-- > 0) out *= b;
  return out;
}

long transitive_dim(long d, int n) {
  if (n == 0) return 1;
  if (n == 1) return d - 1;
  return d * (d - 2) * ipow(d - 1, n - 2);
}

long semi_dim(long r, long s, int n) {
  if (n == 0) return 1;
  if (n == 1) return r - 1;
  if (n == 2) return r * (s - 2);
  const int k = (n + 1) / 2;
  if (n % 2 == 1) return r * (r - 2) * ipow(r - 1, k - 2) * ipow(s - 1, k - 1);
  return r * ipow(r - 1, k - 1) * (s - 2) * ipow(s - 1, k - 1);
}

}  // namespace

TEST_CASE("block dimensions against closed forms") {
  for (long d : {3, 4, 5}) {
    const TreeShape shape = TreeShape::homogeneous(static_cast<int>(d));
    for (int n = 0; n <= 5; ++n) {
      CHECK(expected_dimension(shape, Scalar(1, 2), n) == static_cast<std::uint64_t>(transitive_dim(d, n)));
      CHECK(block_layout(shape, n)->dimension() == static_cast<std::uint64_t>(transitive_dim(d, n)));
    }
  }
  const TreeShape sh = TreeShape::semi_homogeneous(3, 4);
  const std::uint64_t dims[] = {1, 2, 6, 9, 36};
  for (int n = 0; n <= 4; ++n) {
    CHECK(expected_dimension(sh, Scalar(1, 2), n) == dims[n]);
    CHECK(static_cast<long>(dims[n]) == semi_dim(3, 4, n));
  }
}

TEST_CASE("degenerate alpha empties odd blocks") {
  const TreeShape sh = TreeShape::semi_homogeneous(3, 4);
  const Scalar a(-1, 3);
  CHECK(is_degenerate(sh, a));
  CHECK_FALSE(is_degenerate(sh, Scalar(-1, 2)));
  CHECK_FALSE(is_degenerate(TreeShape::homogeneous(4), a));
  for (int n = 1; n <= 5; n += 2) {
    CHECK(expected_dimension(sh, a, n) == 0);
    CHECK(basis_Hn(sh, a, n).basis.empty());
  }
  CHECK(basis_Hn(sh, a, 4).basis.size() == 36);
}

TEST_CASE("basis vectors are eigen, vanish inside, and are invariant beyond") {
  for (const char* name : {"h3", "sh3,4"}) {
    const TreeShape shape = TreeShape::parse(name);
    const Scalar a(2, 7);
    for (int n = 1; n <= 4; ++n) {
      const auto b = basis_Hn(shape, a, n);
      CHECK(b.basis.size() == b.expected_dim);
      for (const auto& h : b.basis) {
        const auto big = extend(h, b.layout->data_sphere + 2);
        CHECK(is_eigen(big));
        for (Vertex v = 0; v < static_cast<Vertex>(big.ball().size_through(n - 1)); ++v) CHECK(big[v].is_zero());
      }
    }
  }
}

TEST_CASE("peeling reconstructs and recovers coordinates") {
  for (const char* name : {"h3", "h4", "sh3,4"}) {
    const TreeShape shape = TreeShape::parse(name);
    const Scalar a(-2, 5);
    std::mt19937_64 rng(17);
    const auto bases = bases_through(shape, a, 4);
    for (int trial = 0; trial < 3; ++trial) {
      // Build a target with known coordinates.
      EigenFunction h = Scalar(2) * radial_function(shape, a, minimal_depth(shape, 3));
      std::map<int, std::vector<Scalar>> known;
      for (int n = 1; n <= 3; ++n) {
        for (const auto& f : bases[n].basis) {
          const Scalar c(static_cast<long>(rng() % 5) - 2);
          known[n].push_back(c);
          h += c * f;
        }
      }
      const auto peeled = peel_decompose(h);
      EigenFunction sum = Scalar(0) * h;
      for (const auto& [n, comp] : peeled.components) {
        sum += comp;
        if (n > 0) CHECK(coordinates(bases[n], comp) == known[n]);
      }
      CHECK(agree_on(sum, h, h.depth()));
    }
  }
}

TEST_CASE("peel rejects non-eigen input") {
  auto f = radial_function(TreeShape::homogeneous(3), Scalar(1, 2), 3);
  auto values = f.values();
  values[5] += Scalar(1);
  const EigenFunction bad(f.alpha(), 3, f.ball_ptr(), values);
  CHECK_THROWS_AS(peel_decompose(bad), std::domain_error);
}

TEST_CASE("radial part is h(o) f") {
  const TreeShape shape = TreeShape::homogeneous(3);
  const Scalar a(1, 2);
  std::mt19937_64 rng(2);
  const auto h = random_element(shape, a, 3, rng);
  CHECK(agree_on(radialize(h), h[0] * radial_function(shape, a, h.depth()), h.depth()));
}

TEST_CASE("support sides") {
  const TreeShape shape = TreeShape::homogeneous(3);
  const auto b = basis_Hn(shape, Scalar(1, 2), 2);
  const auto& h = b.basis.front();
  const Vertex v = h.ball().index(PathAddress{{0}});
  const Vertex w = h.ball().index(PathAddress{{1}});
  CHECK(support_side(h, v) == SupportSide::cone);
  CHECK(support_side(h, w) == SupportSide::anti_cone);
  CHECK(support_side(radial_function(shape, Scalar(1, 2), 3), v) == SupportSide::mixed);
  CHECK(support_side(Scalar(0) * h, v) == SupportSide::zero);
}

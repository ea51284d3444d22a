#include <doctest.h>

#include <set>
#include <stdexcept>

#include "treerep/tree.hpp"

using namespace treerep;

TEST_CASE("shape grammar") {
  CHECK(TreeShape::parse("h3") == TreeShape::homogeneous(3));
  CHECK(TreeShape::parse("sh3,4") == TreeShape::semi_homogeneous(3, 4));
  CHECK(TreeShape::parse("sh3,4").name() == "sh3,4");
  CHECK_THROWS_AS(TreeShape::parse("h2"), std::invalid_argument);
  CHECK_THROWS_AS(TreeShape::parse("sh2,4"), std::invalid_argument);
  CHECK_THROWS_AS(TreeShape::parse("x3"), std::invalid_argument);
  CHECK(TreeShape::semi_homogeneous(3, 3) != TreeShape::homogeneous(3));
}

TEST_CASE("sphere sizes by enumeration") {
  TreeBall h3(TreeShape::homogeneous(3), 4);
  const std::size_t expect[] = {1, 3, 6, 12, 24};
  for (int n = 0; n <= 4; ++n) CHECK(h3.sphere_count(n) == expect[n]);

  // sh3,4: 1, 3, 9, 18, 54
  TreeBall sh(TreeShape::semi_homogeneous(3, 4), 4);
  const std::size_t semi[] = {1, 3, 9, 18, 54};
  for (int n = 0; n <= 4; ++n) {
    CHECK(sh.sphere_count(n) == semi[n]);
    CHECK(sh.shape().sphere_size(n) == semi[n]);
  }
  CHECK(sh.size() == sh.shape().ball_size(4));
}

TEST_CASE("adjacency and degrees") {
  const TreeShape shape = TreeShape::semi_homogeneous(3, 4);
  TreeBall ball(shape, 4);
  for (Vertex v = 0; v < static_cast<Vertex>(ball.size_through(3)); ++v) {
    const auto nb = ball.neighbors(v);
    CHECK(static_cast<int>(nb.size()) == ball.degree(v));
    for (Vertex w : nb) CHECK(ball.distance(v, w) == 1);
  }
}

TEST_CASE("addresses and prefix stability") {
  const TreeShape shape = TreeShape::homogeneous(4);
  TreeBall small(shape, 2);
  TreeBall big(shape, 4);
  for (Vertex v = 0; v < static_cast<Vertex>(small.size()); ++v) {
    CHECK(big.address(v) == small.address(v));
    CHECK(big.index(small.address(v)) == v);
  }
  CHECK_FALSE(small.find(PathAddress{{0, 0, 0}}).has_value());
  CHECK_FALSE(small.find(PathAddress{{0, 3}}).has_value());
  CHECK_THROWS_AS(small.index(PathAddress{{0, 0, 0}}), std::out_of_range);
}

TEST_CASE("distance matches path lengths") {
  TreeBall ball(TreeShape::homogeneous(3), 4);
  const Vertex a = ball.index(PathAddress{{0, 1, 0}});
  const Vertex b = ball.index(PathAddress{{0, 0}});
  const Vertex c = ball.index(PathAddress{{2, 1, 1, 0}});
  CHECK(ball.distance(a, b) == 3);
  CHECK(ball.distance(a, c) == 7);
  CHECK(ball.distance(a, a) == 0);
  CHECK(ball.ancestor(c, 1) == ball.index(PathAddress{{2}}));
}

TEST_CASE("cone and anti-cone partition the ball") {
  TreeBall ball(TreeShape::homogeneous(3), 4);
  const Vertex v = ball.index(PathAddress{{1, 0}});
  const auto cone = ball.cone(v);
  const auto anti = ball.anti_cone(v);
  // 1 + 2 + 4 vertices below (1,0) within depth 4
  CHECK(cone.size() == 7);
  CHECK(cone.size() + anti.size() == ball.size() + 1);
  std::set<Vertex> both(cone.begin(), cone.end());
  for (Vertex w : anti) CHECK((both.count(w) == 0 || w == v));
  CHECK_THROWS_AS(ball.cone(0), std::invalid_argument);
}

TEST_CASE("vertex budget") {
  CHECK_THROWS_AS(TreeBall(TreeShape::homogeneous(5), 12, 1000), std::length_error);
}

#include <doctest.h>

#include <random>
#include <stdexcept>

#include "treerep/linalg.hpp"

using namespace treerep;

namespace {

Matrix from(std::initializer_list<std::initializer_list<long>> rows) {
  Matrix m(rows.size(), rows.begin()->size());
  std::size_t i = 0;
  for (const auto& r : rows) {
    std::size_t j = 0;
    for (long x : r) m(i, j++) = Scalar(x);
    ++i;
  }
  return m;
}

Matrix random_unitriangular(std::size_t n, std::mt19937_64& rng) {
  Matrix p = Matrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) p(i, j) = Scalar(static_cast<long>(rng() % 7) - 3);
  return p;
}

constexpr PivotStrategy kStrategies[] = {PivotStrategy::first_nonzero, PivotStrategy::largest,
                                         PivotStrategy::last_nonzero};

}  // namespace

TEST_CASE("signature of diagonal and hyperbolic matrices") {
  CHECK(signature(from({{2, 0, 0}, {0, -1, 0}, {0, 0, 0}})) == Signature{1, 1, 1});
  CHECK(signature(from({{0, 1}, {1, 0}})) == Signature{1, 1, 0});
  CHECK(signature(from({{0, 0, 1}, {0, 0, 0}, {1, 0, 0}})) == Signature{1, 1, 1});
  CHECK(to_string(Signature{3, 1, 0}) == "(3,1,0)");
}

TEST_CASE("Sylvester invariance under congruence and pivoting") {
  std::mt19937_64 rng(9);
  const Matrix d = from({{1, 0, 0, 0, 0}, {0, -2, 0, 0, 0}, {0, 0, 0, 0, 0}, {0, 0, 0, 3, 0}, {0, 0, 0, 0, -1}});
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix p = random_unitriangular(5, rng);
    const Matrix m = p.transpose() * d * p;
    for (auto s : kStrategies) CHECK(signature(m, s) == Signature{2, 2, 1});
  }
}

TEST_CASE("signature input validation") {
  CHECK_THROWS_AS(signature(from({{1, 2}, {3, 4}})), std::invalid_argument);
  CHECK_THROWS_AS(signature(Matrix(2, 3)), std::invalid_argument);
  Matrix c(1, 1);
  c(0, 0) = Scalar::imaginary_unit();
  CHECK_THROWS_AS(signature(c), std::domain_error);
}

TEST_CASE("determinants and leading minors") {
  const Matrix m = from({{2, 1, 0}, {1, 2, 1}, {0, 1, 2}});
  CHECK(determinant(m) == Scalar(4));
  const auto minors = leading_minors(m);
  REQUIRE(minors.size() == 3);
  CHECK(minors[0] == Scalar(2));
  CHECK(minors[1] == Scalar(3));
  CHECK(minors[2] == Scalar(4));
  CHECK(determinant(from({{1, 2}, {2, 4}})) == Scalar(0));
}

TEST_CASE("nullspace and rank") {
  const Matrix m = from({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
  CHECK(rank(m) == 2);
  const auto ns = nullspace(m);
  REQUIRE(ns.size() == 1);
  for (std::size_t i = 0; i < 3; ++i) {
    Scalar acc;
    for (std::size_t j = 0; j < 3; ++j) acc += m(i, j) * ns[0][j];
    CHECK(acc.is_zero());
  }
  IncrementalRref rref(3);
  CHECK(rref.add({Scalar(1), Scalar(1), Scalar(0)}));
  CHECK_FALSE(rref.add({Scalar(2), Scalar(2), Scalar(0)}));
  CHECK(rref.rank() == 1);
  CHECK(rref.nullspace().size() == 2);
}

TEST_CASE("hermitian helpers") {
  Matrix h(2, 2);
  h(0, 0) = Scalar(1);
  h(0, 1) = Scalar::parse("1+i");
  h(1, 0) = Scalar::parse("1-i");
  h(1, 1) = Scalar(2);
  CHECK(h.is_hermitian());
  CHECK(h.conj_transpose() == h);
  CHECK((Matrix(2, 2)).is_zero());
}

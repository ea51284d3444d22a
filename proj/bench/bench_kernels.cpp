#include <benchmark/benchmark.h>

#include <random>

#include "treerep/forms.hpp"

using namespace treerep;

namespace {

std::vector<Scalar> sample(const TreeBall& ball) {
  std::vector<Scalar> out(ball.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = Scalar(static_cast<long>(i % 11) - 5, static_cast<long>(i % 3 + 1));
  return out;
}

void BM_laplacian(benchmark::State& state) {
  const TreeBall ball(TreeShape::homogeneous(3), static_cast<int>(state.range(1)));
  const auto h = sample(ball);
  for (auto _ : state) {
    auto out = state.range(0) ? laplacian_apply(ball, h) : serial::laplacian_apply(ball, h);
    benchmark::DoNotOptimize(out);
  }
}

void BM_two_laplacian(benchmark::State& state) {
  const TreeBall ball(TreeShape::semi_homogeneous(3, 4), static_cast<int>(state.range(1)));
  const auto h = sample(ball);
  for (auto _ : state) {
    auto out = state.range(0) ? two_laplacian_apply(ball, h) : serial::two_laplacian_apply(ball, h);
    benchmark::DoNotOptimize(out);
  }
}

void BM_gram(benchmark::State& state) {
  const auto shape = TreeShape::semi_homogeneous(3, 4);
  const auto q = assemble_Q(shape, Scalar(1, 3));
  const auto basis = flat_basis(shape, Scalar(1, 3), static_cast<int>(state.range(1)));
  for (auto _ : state) {
    auto g = state.range(0) ? gram(q, basis.functions) : serial::gram(q, basis.functions);
    benchmark::DoNotOptimize(g);
  }
}

void BM_invariance(benchmark::State& state) {
  const auto shape = TreeShape::homogeneous(3);
  const auto q = assemble_Q(shape, Scalar(1, 2));
  std::mt19937_64 rng(1);
  std::vector<Automorphism> gens{base_swap(shape)};
  for (int k = 0; k < 4; ++k) gens.push_back(random_k_element(shape, rng, 3));
  for (auto _ : state) {
    auto r = state.range(0) ? invariance_check(q, gens, 4) : serial::invariance_check(q, gens, 4);
    benchmark::DoNotOptimize(r);
  }
}

}  // namespace

// First argument: 0 serial, 1 OpenMP.
BENCHMARK(BM_laplacian)->ArgsProduct({{0, 1}, {8, 10}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_two_laplacian)->ArgsProduct({{0, 1}, {6, 8}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_gram)->ArgsProduct({{0, 1}, {3, 4}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_invariance)->ArgsProduct({{0, 1}, {0}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

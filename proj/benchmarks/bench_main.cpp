#include <benchmark/benchmark.h>

#include "limitlab/crossed_product.hpp"
#include "limitlab/groups.hpp"
#include "limitlab/kcycles.hpp"
#include "limitlab/patterson_sullivan.hpp"
#include "limitlab/sphere.hpp"

namespace {

using namespace limitlab;

void BM_EnumerateBall(benchmark::State& state) {
  const auto g = groups::schottky_demo();
  const auto x0 = hyp::InteriorPoint::origin(2);
  groups::EnumerationOptions opt;
  opt.store_elements = false;
  for (auto _ : state) benchmark::DoNotOptimize(groups::enumerate_ball(g, static_cast<int>(state.range(0)), x0, opt).size());
}
BENCHMARK(BM_EnumerateBall)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_EstimateDelta(benchmark::State& state) {
  const auto g = groups::schottky_demo();
  const auto x0 = hyp::InteriorPoint::origin(2);
  for (auto _ : state) benchmark::DoNotOptimize(groups::estimate_delta(g, static_cast<int>(state.range(0)), x0).value);
}
BENCHMARK(BM_EstimateDelta)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_PsMeasure(benchmark::State& state) {
  const auto g = groups::schottky_demo();
  const auto x0 = hyp::InteriorPoint::origin(2);
  groups::EnumerationOptions opt;
  opt.store_elements = false;
  const auto ball = groups::enumerate_ball(g, static_cast<int>(state.range(0)), x0, opt);
  for (auto _ : state) benchmark::DoNotOptimize(ps::ps_measure(ball, x0, 0.48, 0.43).total_mass());
}
BENCHMARK(BM_PsMeasure)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_Represent(benchmark::State& state) {
  auto g = std::make_shared<const groups::GroupPresentation>(groups::schottky_demo());
  const auto ball = groups::enumerate_ball(*g, static_cast<int>(state.range(0)), hyp::InteriorPoint::origin(2));
  auto f = cp::CrossedProductElement::monomial(g, "ab", [](const hyp::Vec& xi) { return cp::Complex(xi(0), xi(1)); });
  f.add_term("B", [](const hyp::Vec& xi) { return cp::Complex(xi(2), 0.0); });
  const hyp::Vec xi = (hyp::Vec(3) << 0.0, 0.6, 0.8).finished();
  for (auto _ : state) benchmark::DoNotOptimize(cp::represent(f, xi, ball).matrix.norm());
}
BENCHMARK(BM_Represent)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_HardyCommutator(benchmark::State& state) {
  const auto a = kc::weierstrass_symbol();
  for (auto _ : state) benchmark::DoNotOptimize(kc::hardy_commutator(a, static_cast<int>(state.range(0))).norm());
}
BENCHMARK(BM_HardyCommutator)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_JansonWolff(benchmark::State& state) {
  const auto a = kc::smooth_symbol();
  for (auto _ : state) benchmark::DoNotOptimize(kc::janson_wolff_integral(a, 2.0, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_JansonWolff)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_MoebiusPullback(benchmark::State& state) {
  const auto g = hyp::Isometry::boost(2, 2, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(sphere::moebius_pullback(static_cast<int>(state.range(0)), g).matrix.norm());
}
BENCHMARK(BM_MoebiusPullback)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

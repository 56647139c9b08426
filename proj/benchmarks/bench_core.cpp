#include <benchmark/benchmark.h>

#include "toricfol/fan.hpp"
#include "toricfol/foliation.hpp"
#include "toricfol/ideals.hpp"
#include "toricfol/picard.hpp"
#include "toricfol/text.hpp"

using namespace toricfol;

namespace {

VectorField diagonal(const DegreeData& dd, const std::vector<int>& a) {
  std::vector<Polynomial> c;
  for (std::size_t i = 0; i < a.size(); ++i) c.push_back(Rational(a[i]) * Polynomial::variable(dd.nvars(), i));
  return VectorField::graded(dd, std::move(c), dd.zero());
}

void BM_Grading(benchmark::State& state) {
  const Fan fan = blowup_projective_space(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(grading(fan));
}
BENCHMARK(BM_Grading)->DenseRange(2, 5);

void BM_MaximalDivisors(benchmark::State& state) {
  const DegreeData dd = grading(product(blowup_projective_space(2), hirzebruch(static_cast<int>(state.range(0)))));
  for (auto _ : state) benchmark::DoNotOptimize(maximal_divisors(dd));
}
BENCHMARK(BM_MaximalDivisors)->DenseRange(0, 3);

void BM_GradedPiece(benchmark::State& state) {
  const DegreeData dd = grading(projective_space(3));
  MultiDegree d = dd.zero();
  d[0] = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(graded_piece_basis(dd, d));
}
BENCHMARK(BM_GradedPiece)->RangeMultiplier(2)->Range(2, 16);

void BM_Groebner(benchmark::State& state) {
  // cyclic-3 style system in four variables
  const std::size_t n = 4;
  const std::vector<Polynomial> gens = {
      parse_polynomial("x1 + x2 + x3 + x4", n), parse_polynomial("x1*x2 + x2*x3 + x3*x4 + x4*x1", n),
      parse_polynomial("x1*x2*x3 + x2*x3*x4 + x3*x4*x1 + x4*x1*x2", n),
      parse_polynomial("x1*x2*x3*x4 - 1", n)};
  for (auto _ : state) benchmark::DoNotOptimize(groebner_basis(gens));
}
BENCHMARK(BM_Groebner);

void BM_SingularCodim(benchmark::State& state) {
  const Fan fan = projective_space(3);
  const DegreeData dd = grading(fan);
  const SplitData sd = build_omega(dd, {diagonal(dd, {1, 2, 3, 5}), diagonal(dd, {4, 0, 1, 2})});
  for (auto _ : state) benchmark::DoNotOptimize(codim_in_variety(singular_ideal(sd, dd), fan));
}
BENCHMARK(BM_SingularCodim);

void BM_StabilityGap(benchmark::State& state) {
  const Fan fan = projective_space(3);
  const DegreeData dd = grading(fan);
  const SplitData sd = build_omega(dd, {diagonal(dd, {1, 2, 3, 5}), diagonal(dd, {4, 0, 1, 2})});
  for (auto _ : state) benchmark::DoNotOptimize(stability_gap(sd, dd, fan));
}
BENCHMARK(BM_StabilityGap)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();

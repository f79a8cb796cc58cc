// Serial against OpenMP kernels: series products and approximation records.

#include <benchmark/benchmark.h>

#include <vector>

#include "henselium/diagnostics.hpp"
#include "henselium/expression.hpp"
#include "henselium/hensel.hpp"

namespace {

using namespace henselium;

// The root of X^2 - X - t to t^n over the given field.
Series root(Field field, long n) {
  const Session s = Session::make({"t"}, field);
  return hensel_root(parse_polynomial("X^2 - X - t", s), parse_series("1", s), Exponent({n})).root;
}

Field field_for(long code) { return code == 0 ? Field::rationals() : Field::prime(code); }

void BM_MulSerial(benchmark::State& state) {
  const Series x = root(field_for(state.range(1)), state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mul_serial(x, x));
}

void BM_MulParallel(benchmark::State& state) {
  const Series x = root(field_for(state.range(1)), state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mul_parallel(x, x));
}

std::vector<Exponent> gaps(const Series& z) {
  std::vector<Exponent> support;
  for (const Term& t : z.terms()) support.push_back(t.exponent);
  return gap_exponents(support);
}

void BM_RecordsSerial(benchmark::State& state) {
  const Series z = root(Field::prime(101), state.range(0));
  const std::vector<Exponent> g = gaps(z);
  for (auto _ : state) benchmark::DoNotOptimize(build_records_serial(z, g));
}

void BM_RecordsParallel(benchmark::State& state) {
  const Series z = root(Field::prime(101), state.range(0));
  const std::vector<Exponent> g = gaps(z);
  for (auto _ : state) benchmark::DoNotOptimize(build_records_parallel(z, g));
}

// Arguments: precision, then 0 for Q or a prime p for F_p.
BENCHMARK(BM_MulSerial)->ArgsProduct({{128, 512}, {0, 101}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MulParallel)->ArgsProduct({{128, 512}, {0, 101}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RecordsSerial)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RecordsParallel)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

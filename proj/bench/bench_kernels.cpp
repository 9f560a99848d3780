#include <benchmark/benchmark.h>

#include "omloq/dynalg.hpp"
#include "omloq/linmap.hpp"
#include "omloq/testmonoid.hpp"

using namespace omloq;

namespace {

OmlPtr lattice(int mo) {
  return std::make_shared<const Oml>(catalog("mo", mo));
}

Exec exec_of(const benchmark::State& s) {
  return s.range(0) == 0 ? Exec::serial : Exec::parallel;
}

void label(benchmark::State& s) {
  s.SetLabel(s.range(0) == 0 ? "serial" : "parallel");
}

void BM_validate_oml(benchmark::State& s) {
  const Oml l = catalog("boolean", 5);
  for (auto _ : s) benchmark::DoNotOptimize(validate_oml(l, exec_of(s)));
  label(s);
}

void BM_enumerate_lin(benchmark::State& s) {
  const OmlPtr l = std::make_shared<const Oml>(catalog("boolean", 3));
  for (auto _ : s) benchmark::DoNotOptimize(enumerate_lin(l, kDefaultLinCap, exec_of(s)));
  label(s);
}

void BM_generate_T(benchmark::State& s) {
  const OmlPtr l = lattice(4);
  for (auto _ : s) benchmark::DoNotOptimize(generate_T(l, kDefaultMonoidCap, exec_of(s)));
  label(s);
}

void BM_verify_ida(benchmark::State& s) {
  const DynAlgebra alg(std::make_shared<const InvMonoid>(generate_T(lattice(3))));
  for (auto _ : s) benchmark::DoNotOptimize(verify_ida(alg, {}, exec_of(s)));
  label(s);
}

void BM_verify_module(benchmark::State& s) {
  const DynAlgebra alg(std::make_shared<const InvMonoid>(generate_T(lattice(2))));
  for (auto _ : s) benchmark::DoNotOptimize(verify_module(alg, {}, exec_of(s)));
  label(s);
}

void BM_verify_toda(benchmark::State& s) {
  const DynAlgebra alg(std::make_shared<const InvMonoid>(generate_T(lattice(3))));
  for (auto _ : s) benchmark::DoNotOptimize(verify_toda(alg, {}, exec_of(s)));
  label(s);
}

}  // namespace

// argument 0 runs the serial reference, 1 the OpenMP path
BENCHMARK(BM_validate_oml)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_enumerate_lin)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_generate_T)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_verify_ida)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_verify_module)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_verify_toda)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include <string>

#include "deformae/cohomology.hpp"
#include "deformae/extension_solver.hpp"
#include "io.hpp"

using namespace deformae;

namespace {

std::string data(const std::string& rel) { return std::string(DEFORMAE_DATA_DIR) + "/" + rel; }

Model model(const std::string& name) { return io::load_model(data("models/" + name + ".json")); }

BeltramiSeries family(const std::string& name, int n) {
  return *io::load_beltrami(data("beltrami/" + name + ".json"), n).series;
}

void BM_MasterIdentitySeries(benchmark::State& state) {
  const Model m = model("iwasawa");
  const auto phi = family("iwasawa-kuranishi", 3);
  const int order = static_cast<int>(state.range(0));
  const auto w = lift<Series>(Form<Scalar>::monomial(3, basis(3, {1, 1}).front(), 1));
  for (auto _ : state) {
    const auto ctx = series_context(m, phi, order);
    benchmark::DoNotOptimize(extension_residual(ctx, w));
  }
}
BENCHMARK(BM_MasterIdentitySeries)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_MasterIdentityValue(benchmark::State& state) {
  const Model m = model("iwasawa");
  const auto phi = family("iwasawa-kuranishi", 3);
  const auto ctx = value_context(m, phi, Scalar::parse("1/10+1/7i"));
  const auto w = Form<Scalar>::monomial(3, basis(3, {1, 1}).front(), 1);
  for (auto _ : state) benchmark::DoNotOptimize(extension_residual(ctx, w));
}
BENCHMARK(BM_MasterIdentityValue)->Unit(benchmark::kMicrosecond);

void BM_HodgeNumbers(benchmark::State& state) {
  const Model m = model(state.range(0) == 0 ? "iwasawa" : "solvable-b");
  for (auto _ : state) benchmark::DoNotOptimize(hodge_numbers(m));
}
BENCHMARK(BM_HodgeNumbers)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ExtendP0(benchmark::State& state) {
  const Model m = model("iwasawa");
  const OperatorCache cache(m);
  const auto phi = family("iwasawa-theta1", 3);
  const auto sigma = io::load_form(data("forms/w1-n3.json"), 3);
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(extend_p0(cache, phi, sigma, order));
}
BENCHMARK(BM_ExtendP0)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_Commutator(benchmark::State& state) {
  const Model m = model("kodaira-thurston");
  VectorForm<Scalar> phi(2), psi(2);
  phi.hol_row(0).add(Mask{1} << 2, Scalar(1, 1));
  phi.hol_row(1).add(Mask{1} << 3, Scalar(2, -1));
  psi.hol_row(0).add(Mask{1} << 3, Scalar(-1, 2));
  psi.hol_row(1).add(Mask{1} << 2, Scalar(3, 0));
  for (auto _ : state) benchmark::DoNotOptimize(bracket(phi, psi, m));
}
BENCHMARK(BM_Commutator)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();

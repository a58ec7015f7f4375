#include "pba/pba.hpp"
#include "pba_cli/examples.hpp"

#include <benchmark/benchmark.h>

namespace {

void BM_SaturateChshPerp(benchmark::State& state) {
    pba::FinitePBA chsh = pba::build_BX(pba::examples::chsh()).algebra;
    for (auto _ : state) benchmark::DoNotOptimize(pba::perp_extension(chsh, 4).size());
}
BENCHMARK(BM_SaturateChshPerp)->Unit(benchmark::kMillisecond);

void BM_LepSaturateChsh(benchmark::State& state) {
    pba::FinitePBA chsh = pba::build_BX(pba::examples::chsh()).algebra;
    for (auto _ : state) benchmark::DoNotOptimize(pba::lep_saturate(chsh, 4).size());
}
BENCHMARK(BM_LepSaturateChsh)->Unit(benchmark::kMillisecond);

void BM_BuildMagicSquare(benchmark::State& state) {
    pba::Scenario s = pba::examples::magic_square();
    for (auto _ : state) benchmark::DoNotOptimize(pba::build_BX(s).algebra.size());
}
BENCHMARK(BM_BuildMagicSquare)->Unit(benchmark::kMillisecond);

void BM_DpllCabello(benchmark::State& state) {
    pba::CnfProblem cnf = pba::ks_cnf(pba::from_glued_contexts(pba::examples::cabello_18()));
    for (auto _ : state) benchmark::DoNotOptimize(pba::dpll(cnf).has_value());
}
BENCHMARK(BM_DpllCabello)->Unit(benchmark::kMicrosecond);

void BM_PrBoxLp(benchmark::State& state) {
    pba::EmpiricalModel m = pba::examples::pr_box();
    for (auto _ : state) benchmark::DoNotOptimize(pba::model_noncontextual(m).noncontextual);
}
BENCHMARK(BM_PrBoxLp)->Unit(benchmark::kMicrosecond);

void BM_KsForcedSquare(benchmark::State& state) {
    pba::FinitePBA A = pba::examples::forced_magic_square();
    for (auto _ : state) benchmark::DoNotOptimize(pba::ks_check(A, pba::KsMethod::cnf).has_ks);
}
BENCHMARK(BM_KsForcedSquare)->Unit(benchmark::kMicrosecond);

} // namespace

BENCHMARK_MAIN();

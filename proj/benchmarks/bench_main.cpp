#include <benchmark/benchmark.h>

#include "ara/oracle.hpp"
#include "ara/pension.hpp"
#include "ara/retail.hpp"
#include "ara/special.hpp"

using namespace ara;

namespace {

pension::PensionScenario case1(int rivals) {
    pension::PensionScenario s;
    s.exit_profile.q_exit = {0.15, 0.05, 0.04, 0.03, 0.02, 0.01, 0.0};
    s.competitor_offers.emplace(
        pension::ScoreClass::None,
        CategoricalPMF({0.025, 0.03, 0.035, 0.04, 0.045, 0.05, 0.055, 0.06, 0.065, 0.07},
                       {0.05, 0.1, 0.2, 0.2, 0.15, 0.1, 0.1, 0.05, 0.05, 0.0}));
    s.n_competitors = rivals;
    return s;
}

void BM_StudentTCdf(benchmark::State& state) {
    double x = -10.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(student_t_cdf(x, 4.0));
        x = x > 10.0 ? -10.0 : x + 0.37;
    }
}
BENCHMARK(BM_StudentTCdf);

void BM_NormalCdf(benchmark::State& state) {
    double x = -6.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(normal_cdf(x));
        x = x > 6.0 ? -6.0 : x + 0.013;
    }
}
BENCHMARK(BM_NormalCdf);

void BM_RngUniform(benchmark::State& state) {
    RngStream rng(1, 0);
    for (auto _ : state) benchmark::DoNotOptimize(rng.uniform());
}
BENCHMARK(BM_RngUniform);

void BM_SampleP2(benchmark::State& state) {
    retail::RetailScenario s;
    s.n1 = static_cast<std::size_t>(state.range(0));
    s.n2 = static_cast<std::size_t>(state.range(0));
    const RngStream rng(2, 0);
    for (auto _ : state) benchmark::DoNotOptimize(retail::sample_p2(s, rng));
}
BENCHMARK(BM_SampleP2)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_RetailOptimum(benchmark::State& state) {
    retail::RetailScenario s;
    const RngStream rng(3, 0);
    for (auto _ : state) benchmark::DoNotOptimize(retail::optimal_price_p1(s, rng));
}
BENCHMARK(BM_RetailOptimum)->Unit(benchmark::kMillisecond);

void BM_PensionAcceptance(benchmark::State& state) {
    const auto s = case1(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(pension::acceptance_prob(0.05, s, RngStream(4, 0)));
    }
}
BENCHMARK(BM_PensionAcceptance)->Arg(1)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_ExhaustivePension(benchmark::State& state) {
    const auto s = case1(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(oracle::exhaustive_pension_acceptance(0.05, s));
}
BENCHMARK(BM_ExhaustivePension)->Arg(2)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_QuadraturePsi1(benchmark::State& state) {
    retail::RetailScenario s;
    const auto law = oracle::uniform_density(20.0, 40.0);
    for (auto _ : state) benchmark::DoNotOptimize(oracle::quadrature_psi1_retail(25.0, s, law));
}
BENCHMARK(BM_QuadraturePsi1)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();

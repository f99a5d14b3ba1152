#include <benchmark/benchmark.h>

#include <vector>

#include "ubq/detection.hpp"
#include "ubq/estimation.hpp"
#include "ubq/likelihood.hpp"
#include "ubq/permutation.hpp"
#include "ubq/sampling.hpp"

namespace {

ubq::ModelConfig ramp(std::size_t k) {
    std::vector<double> h(k), tau(k);
    for (std::size_t i = 0; i < k; ++i) {
        h[i] = 2.5 - 4.0 * static_cast<double>(i) / static_cast<double>(k - 1);
        tau[i] = 0.5 * h[i];
    }
    return ubq::ModelConfig(h, tau, 1.0, 0.05, 0.05, 2.0);
}

ubq::EtaVector shuffled_sample(const ubq::ModelConfig& cfg, std::int64_t n) {
    ubq::Engine eng(7);
    return ubq::generate_eta(cfg, 1.0, n, ubq::random_permutation(cfg.k(), eng), eng);
}

void BM_LoglikUnlabeled(benchmark::State& state) {
    const auto cfg = ramp(static_cast<std::size_t>(state.range(0)));
    const auto eta = shuffled_sample(cfg, 1000);
    const auto perm = ubq::Permutation::identity(cfg.k());
    for (auto _ : state) benchmark::DoNotOptimize(ubq::loglik_unlabeled(cfg, 0.8, perm, eta));
}
BENCHMARK(BM_LoglikUnlabeled)->Arg(20)->Arg(200)->Arg(2000);

void BM_RecoverPerm(benchmark::State& state) {
    const auto cfg = ramp(static_cast<std::size_t>(state.range(0)));
    const auto eta = shuffled_sample(cfg, 1000);
    for (auto _ : state) benchmark::DoNotOptimize(ubq::recover_perm_known_theta(cfg, 1.0, eta));
}
BENCHMARK(BM_RecoverPerm)->Arg(20)->Arg(200)->Arg(2000);

void BM_MleGivenPerm(benchmark::State& state) {
    const auto cfg = ramp(20);
    ubq::Engine eng(3);
    const auto id = ubq::Permutation::identity(20);
    const auto eta = ubq::generate_eta(cfg, 1.0, 1000, id, eng);
    for (auto _ : state) benchmark::DoNotOptimize(ubq::mle_theta_given_perm(cfg, id, eta));
}
BENCHMARK(BM_MleGivenPerm);

void BM_Estimate(benchmark::State& state) {
    const auto cfg = ramp(20);
    const auto eta = shuffled_sample(cfg, 1000);
    ubq::EstimateOptions opts;
    opts.strategy = static_cast<ubq::Strategy>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(ubq::estimate(cfg, eta, opts).theta_hat);
}
BENCHMARK(BM_Estimate)
    ->Arg(static_cast<int>(ubq::Strategy::Reorder))
    ->Arg(static_cast<int>(ubq::Strategy::AltMax))
    ->Arg(static_cast<int>(ubq::Strategy::AltMaxGoodInit));

void BM_GenerateEta(benchmark::State& state) {
    const auto cfg = ramp(20);
    const auto id = ubq::Permutation::identity(20);
    ubq::Engine eng(11);
    for (auto _ : state) benchmark::DoNotOptimize(ubq::generate_eta(cfg, 1.0, state.range(0), id, eng));
}
BENCHMARK(BM_GenerateEta)->Arg(100)->Arg(10000)->Arg(1000000);

void BM_StatisticT3(benchmark::State& state) {
    const auto cfg = ramp(20);
    const auto eta = shuffled_sample(cfg, 1000);
    for (auto _ : state) benchmark::DoNotOptimize(ubq::statistic_t3(cfg, eta).value);
}
BENCHMARK(BM_StatisticT3);

}  // namespace

BENCHMARK_MAIN();

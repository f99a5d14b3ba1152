#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "ubq/error.hpp"
#include "ubq/likelihood.hpp"
#include "ubq/permutation.hpp"

using namespace ubq;

namespace {

ModelConfig random_config(std::mt19937_64& rng, std::size_t k, double q0, double q1) {
    std::normal_distribution<double> normal;
    std::vector<double> h(k);
    std::vector<double> tau(k);
    for (auto& x : h) x = normal(rng);
    for (auto& x : tau) x = normal(rng);
    return ModelConfig(h, tau, 0.8, q0, q1, 2.0);
}

EtaVector random_eta(std::mt19937_64& rng, std::size_t k, std::int64_t n) {
    std::uniform_int_distribution<std::int64_t> count(0, n);
    std::vector<double> eta(k);
    for (auto& e : eta) e = static_cast<double>(count(rng)) / static_cast<double>(n);
    return EtaVector(eta, n);
}

std::vector<double> oracle_probs(const ModelConfig& cfg, double theta) {
    std::vector<double> p(cfg.k());
    for (std::size_t i = 0; i < cfg.k(); ++i) {
        p[i] = oracle::success_prob(cfg.h()[i], cfg.tau()[i], theta, cfg.sigma_w(), cfg.q0(), cfg.q1());
    }
    return p;
}

}  // namespace

TEST(SuccessProbs, Examples) {
    const ModelConfig half({2.0}, {1.0}, 1.0, 0.0, 0.0, 2.0);
    EXPECT_DOUBLE_EQ(success_probs(half, 0.5).p[0], 0.5);

    const ModelConfig flip({1.0}, {0.0}, 1.0, 0.05, 0.05, 2.0);
    EXPECT_NEAR(success_probs(flip, 1.0).p[0], 0.05 + 0.9 * oracle::normal_cdf(1.0), 1e-12);
    EXPECT_NEAR(success_probs(flip, 1.0).p[0], 0.807210, 5e-7);

    const ModelConfig erased({1.0, -2.0}, {0.3, 0.1}, 1.0, 0.3, 0.7, 2.0);
    for (double theta : {-2.0, 0.0, 1.3}) {
        for (double p : success_probs(erased, theta).p) EXPECT_NEAR(p, 0.3, 1e-15);
    }
}

TEST(SuccessProbs, ClampedConsistently) {
    const ModelConfig sat({1.0, 1.0}, {-50.0, 50.0}, 1.0, 0.0, 0.0, 2.0);
    const ProbVector pv = success_probs(sat, 0.0);
    EXPECT_DOUBLE_EQ(pv.p[0], 1.0 - kProbClamp);
    EXPECT_DOUBLE_EQ(pv.complement[0], kProbClamp);
    EXPECT_DOUBLE_EQ(pv.p[1], kProbClamp);
    EXPECT_TRUE(pv.clamped[0] && pv.clamped[1]);
    const auto raw = raw_success_probs(sat, 0.0);
    EXPECT_EQ(raw[0], 1.0);
    EXPECT_EQ(raw[1], 0.0);
}

TEST(SWeights, Examples) {
    ProbVector pv;
    pv.p = {0.5, 0.9, 0.1};
    pv.complement = {0.5, 0.1, 0.9};
    pv.clamped = {false, false, false};
    const auto s = s_weights(pv).s;
    EXPECT_DOUBLE_EQ(s[0], 0.0);
    EXPECT_NEAR(s[1], std::log(9.0), 1e-12);
    EXPECT_NEAR(s[2], -std::log(9.0), 1e-12);
    EXPECT_NEAR(std::log(9.0), 2.1972, 1e-4);
}

TEST(LoglikLabeled, Examples) {
    const ModelConfig half({1.0}, {0.0}, 1.0, 0.0, 0.0, 2.0);
    EXPECT_NEAR(loglik_labeled(half, 0.0, EtaVector({0.5}, 2)), 2.0 * std::log(0.5), 1e-14);
    EXPECT_NEAR(loglik_labeled(half, 0.0, EtaVector({0.5}, 2)), -1.386294, 1e-6);

    // eta = p gives -N * sum of binary entropies
    const ModelConfig cfg({1.0, -0.5, 2.0}, {0.2, 0.0, -0.3}, 1.0, 0.05, 0.1, 2.0);
    const auto p = success_probs(cfg, 0.7).p;
    const std::int64_t n = 13;
    double entropy = 0.0;
    for (double x : p) entropy += -x * std::log(x) - (1 - x) * std::log(1 - x);
    EXPECT_NEAR(loglik_labeled(cfg, 0.7, EtaVector(p, n)), -static_cast<double>(n) * entropy, 1e-10);
}

TEST(LoglikLabeled, MatchesBernoulliProduct) {
    std::mt19937_64 rng(3);
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t k = 1 + rep % 6;
        const ModelConfig cfg = random_config(rng, k, 0.02 * (rep % 4), 0.03 * (rep % 3));
        const std::int64_t n = 1 + rep % 17;
        const EtaVector eta = random_eta(rng, k, n);
        const double theta = -1.5 + 0.06 * rep;
        const auto p = oracle_probs(cfg, theta);
        std::vector<double> e(eta.values().begin(), eta.values().end());
        EXPECT_NEAR(loglik_labeled(cfg, theta, eta), oracle::bernoulli_loglik(p, e, n), 1e-9);
    }
}

TEST(LoglikUnlabeled, PermutationRoundTrip) {
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t k = 1 + rep % 8;
        const ModelConfig cfg = random_config(rng, k, 0.05, 0.05);
        const EtaVector eta = random_eta(rng, k, 40);
        const double theta = 0.3;
        EXPECT_NEAR(loglik_unlabeled(cfg, theta, Permutation::identity(k), eta), loglik_labeled(cfg, theta, eta),
                    1e-12);
        const Permutation p0 = random_permutation(k, rng);
        const EtaVector shuffled(apply_permutation(p0, eta.values()), eta.n());
        EXPECT_NEAR(loglik_unlabeled(cfg, theta, p0, shuffled), loglik_labeled(cfg, theta, eta), 1e-10);
    }
}

TEST(LoglikUnlabeled, MatchesDecompositionAndOracle) {
    std::mt19937_64 rng(6);
    for (int rep = 0; rep < 50; ++rep) {
        const ModelConfig cfg = random_config(rng, 4, 0.1, 0.0);
        const EtaVector eta = random_eta(rng, 4, 25);
        const Permutation perm = random_permutation(4, rng);
        const double theta = -1.0 + 0.04 * rep;
        const double direct = loglik_unlabeled(cfg, theta, perm, eta);
        EXPECT_NEAR(direct, loglik_unlabeled_decomposed(cfg, theta, perm, eta), 1e-10);
        std::vector<double> e(eta.values().begin(), eta.values().end());
        std::vector<std::size_t> pi(perm.indices().begin(), perm.indices().end());
        EXPECT_NEAR(direct, oracle::shuffled_loglik(oracle_probs(cfg, theta), e, pi, 25), 1e-9);
    }
}

TEST(LoglikUnlabeled, LengthMismatch) {
    const ModelConfig cfg({1.0, 2.0}, {0.0, 0.0}, 1.0, 0.0, 0.0, 2.0);
    EXPECT_THROW(loglik_unlabeled(cfg, 0.0, Permutation::identity(3), EtaVector({0.1, 0.2}, 3)), Error);
}

TEST(Loglik, FiniteAndNonPositiveUnderSaturation) {
    const ModelConfig cfg({1.0, 1.0, 1.0}, {-100.0, 0.0, 100.0}, 0.5, 0.0, 0.0, 2.0);
    for (double e0 : {0.0, 0.5, 1.0}) {
        const double l = loglik_labeled(cfg, 1.0, EtaVector({e0, 1.0 - e0, e0}, 10));
        EXPECT_TRUE(std::isfinite(l));
        EXPECT_LE(l, 0.0);
    }
}

TEST(Loglik, ConcaveForCleanGaussianChannel) {
    std::mt19937_64 rng(8);
    for (int rep = 0; rep < 10; ++rep) {
        const ModelConfig cfg = random_config(rng, 6, 0.0, 0.0);
        const EtaVector eta = random_eta(rng, 6, 50);
        const double step = 4.0 / 99.0;
        for (int i = 1; i < 99; ++i) {
            const double x = -2.0 + i * step;
            const double d2 = loglik_labeled(cfg, x - step, eta) - 2 * loglik_labeled(cfg, x, eta) +
                              loglik_labeled(cfg, x + step, eta);
            EXPECT_LE(d2, 1e-8) << "rep " << rep << " x " << x;
        }
    }
}

TEST(Score, MatchesFiniteDifference) {
    std::mt19937_64 rng(9);
    for (int rep = 0; rep < 30; ++rep) {
        const ModelConfig cfg = random_config(rng, 5, 0.05, 0.1);
        const EtaVector eta = random_eta(rng, 5, 30);
        const double theta = -1.2 + 0.08 * rep;
        const double hstep = 1e-5;
        const double fd = (loglik_labeled(cfg, theta + hstep, eta) - loglik_labeled(cfg, theta - hstep, eta)) /
                          (2 * hstep);
        EXPECT_NEAR(score_labeled(cfg, theta, eta), fd, 1e-5 * std::max(1.0, std::abs(fd)));
    }
}

TEST(Fisher, Examples) {
    const ModelConfig one({1.0}, {0.0}, 1.0, 0.0, 0.0, 2.0);
    const double phi0 = 1.0 / std::sqrt(2.0 * std::numbers::pi);
    EXPECT_NEAR(fisher_information(one, 0.0, 1), phi0 * phi0 / 0.25, 1e-14);
    EXPECT_NEAR(fisher_information(one, 0.0, 1), 2.0 / std::numbers::pi, 1e-14);
    EXPECT_NEAR(crlb(one, 0.0, 1), std::numbers::pi / 2.0, 1e-13);
    EXPECT_NEAR(crlb(one, 0.0, 4), std::numbers::pi / 8.0, 1e-13);

    const ModelConfig zero({0.0, 0.0}, {0.1, -0.2}, 1.0, 0.0, 0.0, 2.0);
    EXPECT_EQ(fisher_information(zero, 1.0, 10), 0.0);
    try {
        crlb(zero, 1.0, 10);
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ZeroInformation);
    }
    const ModelConfig erased({1.0}, {0.0}, 1.0, 0.4, 0.6, 2.0);
    try {
        fisher_information(erased, 0.0, 1);
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DegenerateChannel);
    }
}

TEST(Fisher, MatchesDerivativeOracleAndScalesWithN) {
    std::mt19937_64 rng(10);
    for (int rep = 0; rep < 30; ++rep) {
        const ModelConfig cfg = random_config(rng, 5, 0.05 * (rep % 3), 0.02 * (rep % 5));
        const double theta = -1.5 + 0.1 * rep;
        // I = N sum p'^2 / (p (1 - p)) with p' by central differences of the oracle
        double expect = 0.0;
        const double hstep = 1e-5;
        const auto p = oracle_probs(cfg, theta);
        const auto pp = oracle_probs(cfg, theta + hstep);
        const auto pm = oracle_probs(cfg, theta - hstep);
        for (std::size_t i = 0; i < cfg.k(); ++i) {
            const double d = (pp[i] - pm[i]) / (2 * hstep);
            expect += d * d / (p[i] * (1 - p[i]));
        }
        const double fi = fisher_information(cfg, theta, 7);
        EXPECT_NEAR(fi, 7 * expect, 1e-6 * std::max(1.0, fi));
        EXPECT_NEAR(fisher_information(cfg, theta, 14), 2 * fi, 1e-12 * fi);
        EXPECT_GE(fi, 0.0);
    }
}

#include "ubq/sampling.hpp"

#include <random>
#include <string>

#include "ubq/error.hpp"
#include "ubq/likelihood.hpp"

namespace ubq {

namespace {

std::vector<double> binomial_fractions(const std::vector<double>& p, std::int64_t n, Engine& engine) {
    std::vector<double> eta(p.size());
    const double scale = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < p.size(); ++i) {
        std::int64_t ones;
        if (p[i] <= 0.0) {
            ones = 0;
        } else if (p[i] >= 1.0) {
            ones = n;
        } else {
            std::binomial_distribution<std::int64_t> draw(n, p[i]);
            ones = draw(engine);
        }
        eta[i] = static_cast<double>(ones) * scale;
    }
    return eta;
}

std::vector<double> per_sample_fractions(const ModelConfig& cfg, double theta, std::int64_t n, Engine& engine) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> eta(cfg.k());
    const double scale = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < cfg.k(); ++i) {
        const double signal = cfg.h()[i] * theta;
        std::int64_t ones = 0;
        for (std::int64_t j = 0; j < n; ++j) {
            double u = unit(engine);
            while (u <= 0.0) u = unit(engine);
            const double w = cfg.sigma_w() * cfg.noise().quantile(u);
            const bool b = signal + w > cfg.tau()[i];
            const double flip = unit(engine);
            const bool out = b ? (flip >= cfg.q1()) : (flip < cfg.q0());
            ones += out ? 1 : 0;
        }
        eta[i] = static_cast<double>(ones) * scale;
    }
    return eta;
}

}  // namespace

EtaVector generate_eta(const ModelConfig& cfg, double theta, std::int64_t n, const Permutation& perm,
                       Engine& engine, SamplingPath path) {
    if (n < 1) fail(ErrorCode::InvalidArgument, "number of quantizers must be positive");
    if (perm.size() != cfg.k()) fail(ErrorCode::LengthMismatch, "permutation size differs from K");
    std::vector<double> eta = path == SamplingPath::Binomial
                                  ? binomial_fractions(raw_success_probs(cfg, theta), n, engine)
                                  : per_sample_fractions(cfg, theta, n, engine);
    return EtaVector(apply_permutation(perm, eta), n);
}

EtaVector generate_eta(const ModelConfig& cfg, double theta, std::int64_t n, const Permutation& perm,
                       ExperimentSeed seed, SamplingPath path) {
    Engine engine = make_engine(seed);
    return generate_eta(cfg, theta, n, perm, engine, path);
}

EtaVector hypothesis_sample(const ModelConfig& cfg, Hypothesis hypothesis, double theta, std::int64_t n,
                            const Permutation& perm, ExperimentSeed seed, SamplingPath path) {
    if (hypothesis == Hypothesis::H0) return generate_eta(cfg, 0.0, n, perm, seed, path);
    if (!cfg.theta_in_bounds(theta))
        fail(ErrorCode::ThetaOutOfBounds,
             "theta = " + std::to_string(theta) + " outside [-" + std::to_string(cfg.delta()) + ", " +
                 std::to_string(cfg.delta()) + "]");
    return generate_eta(cfg, theta, n, perm, seed, path);
}

}  // namespace ubq

#pragma once

#include <cstdint>

#include "ubq/model.hpp"
#include "ubq/permutation.hpp"
#include "ubq/rng.hpp"

namespace ubq {

enum class SamplingPath {
    /// Draw N * eta_i ~ Binomial(N, p_i) directly.
    Binomial,
    /// Draw every noise sample, quantize, pass through the channel, average.
    PerSample,
};

enum class Hypothesis { H0, H1 };

/// Simulates one observation and returns the shuffled fractions
/// apply_permutation(perm, eta).
EtaVector generate_eta(const ModelConfig& cfg, double theta, std::int64_t n, const Permutation& perm,
                       ExperimentSeed seed, SamplingPath path = SamplingPath::Binomial);

/// Same, drawing from a caller-owned engine.
EtaVector generate_eta(const ModelConfig& cfg, double theta, std::int64_t n, const Permutation& perm,
                       Engine& engine, SamplingPath path = SamplingPath::Binomial);

/// H0 draws with theta = 0; H1 requires theta in [-delta, delta].
EtaVector hypothesis_sample(const ModelConfig& cfg, Hypothesis hypothesis, double theta, std::int64_t n,
                            const Permutation& perm, ExperimentSeed seed,
                            SamplingPath path = SamplingPath::Binomial);

}  // namespace ubq

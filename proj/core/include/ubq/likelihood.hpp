#pragma once

#include <cstdint>
#include <vector>

#include "ubq/model.hpp"
#include "ubq/permutation.hpp"

namespace ubq {

/// Success probabilities are clamped to [kProbClamp, 1 - kProbClamp]
/// before any logarithm is taken.
inline constexpr double kProbClamp = 1e-12;

/// Per-index probability that a channel output equals one. The complement
/// is carried separately so log(1 - p) keeps its precision near p = 1.
struct ProbVector {
    std::vector<double> p;
    std::vector<double> complement;
    /// True where the clamp was active; the derivative w.r.t. theta is zero there.
    std::vector<bool> clamped;

    std::size_t size() const noexcept { return p.size(); }
};

/// Log-odds s[i] = log(p[i] / (1 - p[i])).
struct SWeights {
    std::vector<double> s;
};

ProbVector success_probs(const ModelConfig& cfg, double theta);

/// Unclamped q0 + (1 - q0 - q1) F((h theta - tau) / sigma_w); used for sampling.
std::vector<double> raw_success_probs(const ModelConfig& cfg, double theta);

SWeights s_weights(const ProbVector& p);

/// N * sum_i [eta_i log p_i + (1 - eta_i) log(1 - p_i)].
double loglik_labeled(const ModelConfig& cfg, double theta, const EtaVector& eta);
double loglik_labeled(const ProbVector& p, const EtaVector& eta);

/// Log-likelihood of shuffled data: row pi(i) of eta_tilde is attributed to
/// time index i.
double loglik_unlabeled(const ModelConfig& cfg, double theta, const Permutation& perm,
                        const EtaVector& eta_tilde);

/// Same value via N * (sum_i eta_tilde[pi(i)] s_i + sum_i log(1 - p_i)).
double loglik_unlabeled_decomposed(const ModelConfig& cfg, double theta, const Permutation& perm,
                                   const EtaVector& eta_tilde);

/// d/dtheta of loglik_labeled.
double score_labeled(const ModelConfig& cfg, double theta, const EtaVector& eta);

/// I(theta) = N (1-q0-q1)^2 / sigma_w^2 * sum_i h_i^2 f^2(z_i) / (p_i (1 - p_i)).
/// Throws DegenerateChannel when q0 + q1 == 1.
double fisher_information(const ModelConfig& cfg, double theta, std::int64_t n);

/// 1 / I(theta); throws ZeroInformation when I(theta) <= 1e-300.
double crlb(const ModelConfig& cfg, double theta, std::int64_t n);

}  // namespace ubq

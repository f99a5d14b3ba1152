#pragma once

#include <cstdint>
#include <vector>

#include "ubq/likelihood.hpp"
#include "ubq/model.hpp"

namespace ubq {

/// Gap statistics of the success probabilities sorted in descending order.
struct GapStats {
    /// min_i v_i / sqrt(p_(i)(1 - p_(i)) + p_(i+1)(1 - p_(i+1))).
    double t = 0.0;
    /// min_i v_i with v_i = p_(i) - p_(i+1).
    double t_tilde = 0.0;
    std::vector<double> sorted_p;
};

struct RecoveryApprox {
    double pr_kn = 0.0;          ///< Pr(K, N), clamped to [0, 1]
    double pr_kn_raw = 0.0;      ///< unclamped; negative when vacuous
    double pr_kn_relaxed = 0.0;  ///< relaxed form, clamped to [0, 1]
    double pr_kn_relaxed_raw = 0.0;
    std::int64_t n_req = 0;
    double alpha = 0.0;
    double c_t = 0.0;
};

struct PowerLawFit {
    double alpha;
    double c;
};

GapStats gap_stats(const ModelConfig& cfg, double theta);

/// 1 - exp(ln(K-1) - ln t - ln(N)/2 - t^2 N / 2) / sqrt(2 pi), unclamped.
/// Throws ZeroGap when t == 0.
double recovery_prob_approx(const GapStats& gaps, std::int64_t k, std::int64_t n);

/// 1 - exp(ln(K-1) - ln t~ - ln(N)/2 - t~^2 N) / (2 sqrt(pi)), unclamped.
double recovery_prob_relaxed(double t_tilde, std::int64_t k, std::int64_t n);

/// Bundles both approximations with the sample-complexity rule for (c_t, alpha).
RecoveryApprox recovery_approx(const GapStats& gaps, std::int64_t k, std::int64_t n, double c_t, double alpha);

/// c_t = a (1 - q0 - q1)(u - l) f(a u) for the ramp shape running from u to l.
/// Meaningful for u > |l| and a > 0; evaluated as written otherwise.
double ramp_ct(double u, double l, double a, const ModelConfig& cfg);

/// ceil((1 + alpha) / c_t^2 * K^(2 alpha) * ln K).
std::int64_t required_n(double c_t, double alpha, std::int64_t k);

/// E[t~] = (1 - q0 - q1) / (K^2 - 1) for success probabilities uniform on (q0, 1 - q1).
double expected_t_tilde_uniform(std::int64_t k, double q0, double q1);

/// Pr(c1 / K^2 <= t~ <= c2 / K^2) for the uniform parent.
double prob_t_tilde_interval(double c1, double c2, std::int64_t k, double q0, double q1);
/// Large-K limit exp(-c1 / (1-q0-q1)) - exp(-c2 / (1-q0-q1)).
double prob_t_tilde_interval_limit(double c1, double c2, double q0, double q1);

/// Least squares fit of ln t = ln c - alpha ln K.
PowerLawFit fit_alpha(const std::vector<std::int64_t>& k_grid, const std::vector<double>& t_values);
/// Same with alpha held fixed; only c is fitted.
PowerLawFit fit_alpha_fixed(const std::vector<std::int64_t>& k_grid, const std::vector<double>& t_values,
                            double alpha);

/// Quantizer count scaled by 1 / (1 - q0 - q1)^2 relative to a clean channel.
std::int64_t n_req_channel_scaling(std::int64_t n_req_clean, double q0, double q1);

/// Monte Carlo probability that known-theta recovery returns the planted
/// permutation exactly (likelihood equivalence when true p_i tie).
double empirical_recovery_prob(const ModelConfig& cfg, double theta, std::int64_t n, int trials,
                               std::uint64_t seed, std::uint32_t grid_index = 0);

}  // namespace ubq

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ubq/estimation.hpp"
#include "ubq/model.hpp"

namespace ubq {

enum class DetectorKind { T1, T2, T3 };

std::string_view to_string(DetectorKind k) noexcept;

struct DetectorSpec {
    DetectorKind kind = DetectorKind::T1;
    /// Required for T2.
    std::optional<double> theta_known;
    double p_fa_target = 0.05;
    std::optional<double> gamma;
    /// Joint solver used by T3.
    EstimateOptions t3_options;
};

/// max over theta of loglik_labeled minus its value at theta = 0. Never negative.
double statistic_t1(const ModelConfig& cfg, const EtaVector& eta);

/// Permutation-maximized likelihood at known theta minus that at theta = 0.
double statistic_t2(const ModelConfig& cfg, double theta, const EtaVector& eta_tilde);

struct T3Statistic {
    double value;
    Strategy solver;
    std::string initializer;
};

/// Jointly maximized (theta, Pi) likelihood minus the permutation-maximized
/// null likelihood. Reported as computed; a local joint solver can make it
/// negative.
T3Statistic statistic_t3(const ModelConfig& cfg, const EtaVector& eta_tilde, const EstimateOptions& options = {});

/// Evaluates the statistic named by `spec`. T1 reads eta as labeled data.
double evaluate_statistic(const ModelConfig& cfg, const DetectorSpec& spec, const EtaVector& eta);

/// Simulated statistics for `trials` draws under theta (H0 when theta == 0).
/// Shuffled detectors see a fresh random permutation every trial.
std::vector<double> simulate_statistic(const ModelConfig& cfg, const DetectorSpec& spec, double theta,
                                       std::int64_t n, int trials, std::uint64_t seed, std::uint32_t purpose,
                                       std::uint32_t grid_index = 0);

/// Empirical upper (1 - P_FA) quantile of the H0 statistic: the
/// ceil((1 - P_FA) * trials)-th smallest of `trials` simulated values.
double calibrate_gamma(const ModelConfig& cfg, const DetectorSpec& spec, std::int64_t n, int trials,
                       std::uint64_t seed, std::uint32_t grid_index = 0);

/// Fraction of statistics strictly above gamma.
double exceedance_rate(const std::vector<double>& statistics, double gamma);

struct PowerPoint {
    std::int64_t n;
    double gamma;
    double pd;
};

/// Calibrates gamma at each N from `trials` H0 draws, then measures the
/// detection rate over `trials` H1 draws at theta_true.
std::vector<PowerPoint> power_curve(const ModelConfig& cfg, const DetectorSpec& spec, double theta_true,
                                    const std::vector<std::int64_t>& n_grid, int trials, std::uint64_t seed);

}  // namespace ubq

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ubq/model.hpp"
#include "ubq/permutation.hpp"

namespace ubq {

enum class Strategy { Auto, Reorder, AltMax, AltMaxGoodInit };

std::string_view to_string(Strategy s) noexcept;

struct TracePoint {
    double theta;
    double loglik;
};

struct EstimationResult {
    double theta_hat = 0.0;
    Permutation perm_hat = Permutation::identity(1);
    double loglik = 0.0;
    int iterations = 0;
    std::vector<TracePoint> trace;
    /// Strategy that actually produced the result (never Auto).
    Strategy strategy = Strategy::Auto;
    std::string initializer;
    /// Set when two structurally different solutions reach the same likelihood.
    bool ambiguous = false;
};

enum class SpecialCaseKind { None, ConstantH, General };

/// Whether c tau + d h = e 1 has a nontrivial solution. For General the
/// constants are normalized to c = 1.
struct SpecialCaseClass {
    SpecialCaseKind kind = SpecialCaseKind::None;
    double c = 0.0;
    double d = 0.0;
    double e = 0.0;
};

struct InitialPoints {
    double first;
    double second;
};

struct Unidentifiability {
    double c0;
    /// Pi_a^T Pi_d: maps a solution (theta, Pi) to (2 c0 - theta, Pi * perm_map).
    Permutation perm_map;
};

inline constexpr int kDefaultMaxIter = 100;
inline constexpr double kDefaultEps = 1e-7;

/// theta in [-delta, delta] maximizing the likelihood for a fixed permutation.
/// With a hint, the result is never worse than the hint.
double mle_theta_given_perm(const ModelConfig& cfg, const Permutation& perm, const EtaVector& eta_tilde,
                            std::optional<double> hint = std::nullopt);

/// ML permutation for known theta: rows of eta_tilde are matched to time
/// indexes in the order of (1 - q0 - q1)(h theta - tau).
Permutation recover_perm_known_theta(const ModelConfig& cfg, double theta, const EtaVector& eta_tilde);

SpecialCaseClass classify_special_case(const ModelConfig& cfg);

/// Polynomial-time ML estimate for configurations where classify_special_case
/// finds a linear relation. Throws NotSpecialCase otherwise.
EstimationResult reordering_algorithm(const ModelConfig& cfg, const EtaVector& eta_tilde);

/// Moment-matching starting points for alternating maximization, clamped to
/// [-delta, delta]. Throws DegenerateShape when h is zero.
InitialPoints good_initial_points(const ModelConfig& cfg, const EtaVector& eta_tilde);

EstimationResult alternating_maximization(const ModelConfig& cfg, const EtaVector& eta_tilde, double theta_init,
                                          int max_iter = kDefaultMaxIter, double eps = kDefaultEps);

struct EstimateOptions {
    Strategy strategy = Strategy::Auto;
    int max_iter = kDefaultMaxIter;
    double eps = kDefaultEps;
    /// Replaces the starting points of AltMax when non-empty.
    std::vector<double> initial_points;
};

EstimationResult estimate(const ModelConfig& cfg, const EtaVector& eta_tilde, const EstimateOptions& options = {});

/// Detects the tau = c0 h, h_ascending = -h_descending construction under
/// which (theta, Pi) and (2 c0 - theta, Pi Pi_a^T Pi_d) are indistinguishable.
std::optional<Unidentifiability> unidentifiability_check(const ModelConfig& cfg);

}  // namespace ubq

#include "ubq/detection.hpp"

#include <algorithm>
#include <cmath>

#include "ubq/error.hpp"
#include "ubq/likelihood.hpp"
#include "ubq/parallel.hpp"
#include "ubq/rng.hpp"
#include "ubq/sampling.hpp"
#include "ubq/scalar_max.hpp"

namespace ubq {

namespace {

double null_term(const ModelConfig& cfg, const EtaVector& eta_tilde) {
    const Permutation perm0 = recover_perm_known_theta(cfg, 0.0, eta_tilde);
    return loglik_unlabeled(cfg, 0.0, perm0, eta_tilde);
}

bool shuffled(DetectorKind kind) { return kind != DetectorKind::T1; }

}  // namespace

std::string_view to_string(DetectorKind k) noexcept {
    switch (k) {
        case DetectorKind::T1: return "T1";
        case DetectorKind::T2: return "T2";
        case DetectorKind::T3: return "T3";
    }
    return "unknown";
}

double statistic_t1(const ModelConfig& cfg, const EtaVector& eta) {
    const double at_zero = loglik_labeled(cfg, 0.0, eta);
    const auto value = [&](double theta) { return loglik_labeled(cfg, theta, eta); };
    const auto score = [&](double theta) { return score_labeled(cfg, theta, eta); };
    const ScalarMaxResult best = maximize_bounded(value, score, -cfg.delta(), cfg.delta(), 0.0);
    return best.value - at_zero;
}

double statistic_t2(const ModelConfig& cfg, double theta, const EtaVector& eta_tilde) {
    cfg.require_informative();
    const Permutation perm = recover_perm_known_theta(cfg, theta, eta_tilde);
    return loglik_unlabeled(cfg, theta, perm, eta_tilde) - null_term(cfg, eta_tilde);
}

T3Statistic statistic_t3(const ModelConfig& cfg, const EtaVector& eta_tilde, const EstimateOptions& options) {
    cfg.require_informative();
    const EstimationResult joint = estimate(cfg, eta_tilde, options);
    return T3Statistic{joint.loglik - null_term(cfg, eta_tilde), joint.strategy, joint.initializer};
}

double evaluate_statistic(const ModelConfig& cfg, const DetectorSpec& spec, const EtaVector& eta) {
    switch (spec.kind) {
        case DetectorKind::T1: return statistic_t1(cfg, eta);
        case DetectorKind::T2:
            if (!spec.theta_known) fail(ErrorCode::InvalidArgument, "T2 requires a known theta");
            return statistic_t2(cfg, *spec.theta_known, eta);
        case DetectorKind::T3: return statistic_t3(cfg, eta, spec.t3_options).value;
    }
    fail(ErrorCode::InvalidArgument, "unknown detector");
}

std::vector<double> simulate_statistic(const ModelConfig& cfg, const DetectorSpec& spec, double theta,
                                       std::int64_t n, int trials, std::uint64_t seed, std::uint32_t purpose,
                                       std::uint32_t grid_index) {
    if (trials < 1) fail(ErrorCode::InvalidArgument, "trials must be positive");
    if (spec.kind == DetectorKind::T2 && !spec.theta_known)
        fail(ErrorCode::InvalidArgument, "T2 requires a known theta");
    const Hypothesis hyp = theta == 0.0 ? Hypothesis::H0 : Hypothesis::H1;
    std::vector<double> out(static_cast<std::size_t>(trials));
    parallel_for(out.size(), [&](std::size_t t) {
        Engine engine = make_engine({seed, stream_key(purpose, grid_index, t)});
        const Permutation perm =
            shuffled(spec.kind) ? random_permutation(cfg.k(), engine) : Permutation::identity(cfg.k());
        if (hyp == Hypothesis::H1 && !cfg.theta_in_bounds(theta))
            fail(ErrorCode::ThetaOutOfBounds, "alternative theta outside [-delta, delta]");
        const EtaVector eta = generate_eta(cfg, theta, n, perm, engine);
        out[t] = evaluate_statistic(cfg, spec, eta);
    });
    return out;
}

double calibrate_gamma(const ModelConfig& cfg, const DetectorSpec& spec, std::int64_t n, int trials,
                       std::uint64_t seed, std::uint32_t grid_index) {
    if (trials < 1) fail(ErrorCode::InvalidArgument, "trials must be positive");
    if (!(spec.p_fa_target > 0.0 && spec.p_fa_target <= 1.0))
        fail(ErrorCode::InvalidArgument, "false-alarm target must lie in (0, 1]");
    std::vector<double> stats = simulate_statistic(cfg, spec, 0.0, n, trials, seed, streams::kCalibration, grid_index);
    std::sort(stats.begin(), stats.end());
    const double rank = std::ceil((1.0 - spec.p_fa_target) * static_cast<double>(trials) - 1e-9);
    const auto index = static_cast<std::size_t>(std::clamp(rank, 1.0, static_cast<double>(trials)));
    return stats[index - 1];
}

double exceedance_rate(const std::vector<double>& statistics, double gamma) {
    if (statistics.empty()) return 0.0;
    const auto above = std::count_if(statistics.begin(), statistics.end(), [&](double s) { return s > gamma; });
    return static_cast<double>(above) / static_cast<double>(statistics.size());
}

std::vector<PowerPoint> power_curve(const ModelConfig& cfg, const DetectorSpec& spec, double theta_true,
                                    const std::vector<std::int64_t>& n_grid, int trials, std::uint64_t seed) {
    std::vector<PowerPoint> out;
    out.reserve(n_grid.size());
    for (std::size_t g = 0; g < n_grid.size(); ++g) {
        const auto grid_index = static_cast<std::uint32_t>(g);
        const double gamma = spec.gamma ? *spec.gamma : calibrate_gamma(cfg, spec, n_grid[g], trials, seed, grid_index);
        const std::vector<double> h1 =
            simulate_statistic(cfg, spec, theta_true, n_grid[g], trials, seed, streams::kPower, grid_index);
        out.push_back(PowerPoint{n_grid[g], gamma, exceedance_rate(h1, gamma)});
    }
    return out;
}

}  // namespace ubq

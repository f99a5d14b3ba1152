#include "ubq/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "ubq/error.hpp"
#include "ubq/estimation.hpp"
#include "ubq/parallel.hpp"
#include "ubq/rng.hpp"
#include "ubq/sampling.hpp"

namespace ubq {

namespace {

double clamp_unit(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

GapStats gap_stats(const ModelConfig& cfg, double theta) {
    if (cfg.k() < 2) fail(ErrorCode::InvalidArgument, "gap statistics need K >= 2");
    const ProbVector probs = success_probs(cfg, theta);
    GapStats g;
    g.sorted_p = probs.p;
    std::sort(g.sorted_p.begin(), g.sorted_p.end(), std::greater<>());
    g.t = std::numeric_limits<double>::infinity();
    g.t_tilde = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < g.sorted_p.size(); ++i) {
        const double a = g.sorted_p[i];
        const double b = g.sorted_p[i + 1];
        const double v = a - b;
        g.t_tilde = std::min(g.t_tilde, v);
        g.t = std::min(g.t, v / std::sqrt(a * (1.0 - a) + b * (1.0 - b)));
    }
    return g;
}

double recovery_prob_approx(const GapStats& gaps, std::int64_t k, std::int64_t n) {
    if (n < 1 || k < 2) fail(ErrorCode::InvalidArgument, "need K >= 2 and N >= 1");
    if (!(gaps.t > 0.0)) fail(ErrorCode::ZeroGap, "minimum normalized gap t is zero");
    const double nn = static_cast<double>(n);
    const double exponent = std::log(static_cast<double>(k - 1)) - std::log(gaps.t) - 0.5 * std::log(nn) -
                            0.5 * gaps.t * gaps.t * nn;
    return 1.0 - std::exp(exponent) / std::sqrt(2.0 * std::numbers::pi);
}

double recovery_prob_relaxed(double t_tilde, std::int64_t k, std::int64_t n) {
    if (n < 1 || k < 2) fail(ErrorCode::InvalidArgument, "need K >= 2 and N >= 1");
    if (!(t_tilde > 0.0)) fail(ErrorCode::ZeroGap, "minimum gap t~ is zero");
    const double nn = static_cast<double>(n);
    const double exponent = std::log(static_cast<double>(k - 1)) - std::log(t_tilde) - 0.5 * std::log(nn) -
                            t_tilde * t_tilde * nn;
    return 1.0 - std::exp(exponent) / (2.0 * std::sqrt(std::numbers::pi));
}

RecoveryApprox recovery_approx(const GapStats& gaps, std::int64_t k, std::int64_t n, double c_t, double alpha) {
    RecoveryApprox r;
    r.pr_kn_raw = recovery_prob_approx(gaps, k, n);
    r.pr_kn = clamp_unit(r.pr_kn_raw);
    r.pr_kn_relaxed_raw = recovery_prob_relaxed(gaps.t_tilde, k, n);
    r.pr_kn_relaxed = clamp_unit(r.pr_kn_relaxed_raw);
    r.c_t = c_t;
    r.alpha = alpha;
    r.n_req = required_n(c_t, alpha, k);
    return r;
}

double ramp_ct(double u, double l, double a, const ModelConfig& cfg) {
    return a * cfg.channel_gain() * (u - l) * cfg.noise().pdf(a * u);
}

std::int64_t required_n(double c_t, double alpha, std::int64_t k) {
    if (!(c_t > 0.0)) fail(ErrorCode::InvalidArgument, "c_t must be positive");
    if (k < 2) fail(ErrorCode::InvalidArgument, "K must be at least 2");
    const double kk = static_cast<double>(k);
    const double bound = (1.0 + alpha) / (c_t * c_t) * std::pow(kk, 2.0 * alpha) * std::log(kk);
    return static_cast<std::int64_t>(std::ceil(bound));
}

double expected_t_tilde_uniform(std::int64_t k, double q0, double q1) {
    if (k < 2) fail(ErrorCode::InvalidArgument, "K must be at least 2");
    const double kk = static_cast<double>(k);
    return (1.0 - q0 - q1) / (kk * kk - 1.0);
}

double prob_t_tilde_interval(double c1, double c2, std::int64_t k, double q0, double q1) {
    if (!(c1 > 0.0 && c1 <= c2)) fail(ErrorCode::InvalidArgument, "need 0 < c1 <= c2");
    const double gain = 1.0 - q0 - q1;
    if (!(gain > 0.0)) fail(ErrorCode::DegenerateChannel, "interval probability needs q0 + q1 < 1");
    const double kk = static_cast<double>(k);
    const auto survival = [&](double c) {
        const double base = std::max(0.0, 1.0 - c * (kk - 1.0) / (gain * kk * kk));
        return std::pow(base, kk);
    };
    return survival(c1) - survival(c2);
}

double prob_t_tilde_interval_limit(double c1, double c2, double q0, double q1) {
    if (!(c1 > 0.0 && c1 <= c2)) fail(ErrorCode::InvalidArgument, "need 0 < c1 <= c2");
    const double gain = 1.0 - q0 - q1;
    if (!(gain > 0.0)) fail(ErrorCode::DegenerateChannel, "interval probability needs q0 + q1 < 1");
    return std::exp(-c1 / gain) - std::exp(-c2 / gain);
}

PowerLawFit fit_alpha(const std::vector<std::int64_t>& k_grid, const std::vector<double>& t_values) {
    if (k_grid.size() != t_values.size()) fail(ErrorCode::LengthMismatch, "grid and values differ in length");
    if (k_grid.size() < 3) fail(ErrorCode::DegenerateFit, "need at least three points");
    const std::size_t m = k_grid.size();
    std::vector<double> x(m);
    std::vector<double> y(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (!(k_grid[i] > 0 && t_values[i] > 0.0)) fail(ErrorCode::DegenerateFit, "fit needs positive K and t");
        x[i] = std::log(static_cast<double>(k_grid[i]));
        y[i] = std::log(t_values[i]);
    }
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(m);
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(m);
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 1e-12)) fail(ErrorCode::DegenerateFit, "K grid is constant");
    const double slope = sxy / sxx;
    return PowerLawFit{-slope, std::exp(my - slope * mx)};
}

PowerLawFit fit_alpha_fixed(const std::vector<std::int64_t>& k_grid, const std::vector<double>& t_values,
                            double alpha) {
    if (k_grid.size() != t_values.size()) fail(ErrorCode::LengthMismatch, "grid and values differ in length");
    if (k_grid.empty()) fail(ErrorCode::DegenerateFit, "need at least one point");
    double sum = 0.0;
    for (std::size_t i = 0; i < k_grid.size(); ++i) {
        if (!(k_grid[i] > 0 && t_values[i] > 0.0)) fail(ErrorCode::DegenerateFit, "fit needs positive K and t");
        sum += std::log(t_values[i]) + alpha * std::log(static_cast<double>(k_grid[i]));
    }
    return PowerLawFit{alpha, std::exp(sum / static_cast<double>(k_grid.size()))};
}

std::int64_t n_req_channel_scaling(std::int64_t n_req_clean, double q0, double q1) {
    const double gain = 1.0 - q0 - q1;
    if (!(gain > 0.0)) fail(ErrorCode::DegenerateChannel, "scaling rule needs q0 + q1 < 1");
    // the tiny offset keeps exact products such as 100 / 0.25 from rounding up
    return static_cast<std::int64_t>(std::ceil(static_cast<double>(n_req_clean) / (gain * gain) - 1e-9));
}

double empirical_recovery_prob(const ModelConfig& cfg, double theta, std::int64_t n, int trials, std::uint64_t seed,
                               std::uint32_t grid_index) {
    if (trials < 1) fail(ErrorCode::InvalidArgument, "trials must be positive");
    cfg.require_informative();
    const std::vector<double> p = raw_success_probs(cfg, theta);
    std::vector<double> sorted = p;
    std::sort(sorted.begin(), sorted.end());
    const bool tied = std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();

    std::vector<unsigned char> hit(static_cast<std::size_t>(trials), 0);
    parallel_for(hit.size(), [&](std::size_t t) {
        Engine engine = make_engine({seed, stream_key(streams::kRecovery, grid_index, t)});
        const Permutation planted = random_permutation(cfg.k(), engine);
        const EtaVector eta_tilde = generate_eta(cfg, theta, n, planted, engine);
        const Permutation recovered = recover_perm_known_theta(cfg, theta, eta_tilde);
        bool ok = recovered == planted;
        if (!ok && tied) {
            const double a = loglik_unlabeled(cfg, theta, recovered, eta_tilde);
            const double b = loglik_unlabeled(cfg, theta, planted, eta_tilde);
            ok = std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b));
        }
        hit[t] = ok ? 1 : 0;
    });
    const auto successes = std::count(hit.begin(), hit.end(), static_cast<unsigned char>(1));
    return static_cast<double>(successes) / static_cast<double>(trials);
}

}  // namespace ubq

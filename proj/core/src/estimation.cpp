#include "ubq/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Dense>

#include "ubq/error.hpp"
#include "ubq/likelihood.hpp"
#include "ubq/scalar_max.hpp"

namespace ubq {

namespace {

bool require_fixed_size(const ModelConfig& cfg, const EtaVector& eta_tilde) {
    if (eta_tilde.size() != cfg.k())
        fail(ErrorCode::LengthMismatch,
             "eta has " + std::to_string(eta_tilde.size()) + " entries, model has K = " + std::to_string(cfg.k()));
    return true;
}

// Relative tolerance under which two branch likelihoods count as tied.
constexpr double kTieTolerance = 1e-10;

bool likelihood_tie(double a, double b) {
    return std::abs(a - b) <= kTieTolerance * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

EstimationResult single_solve(const ModelConfig& cfg, const EtaVector& eta_tilde, const Permutation& perm,
                              std::string initializer) {
    EstimationResult r;
    r.theta_hat = mle_theta_given_perm(cfg, perm, eta_tilde);
    r.perm_hat = perm;
    r.loglik = loglik_unlabeled(cfg, r.theta_hat, perm, eta_tilde);
    r.iterations = 1;
    r.trace.push_back({r.theta_hat, r.loglik});
    r.strategy = Strategy::Reorder;
    r.initializer = std::move(initializer);
    return r;
}

// Multi-start reduction: larger likelihood wins, then lower theta.
const EstimationResult& best_of(const EstimationResult& a, const EstimationResult& b) {
    if (a.loglik != b.loglik) return a.loglik > b.loglik ? a : b;
    return a.theta_hat <= b.theta_hat ? a : b;
}

double dot(std::span<const double> a, std::span<const double> b) {
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

}  // namespace

std::string_view to_string(Strategy s) noexcept {
    switch (s) {
        case Strategy::Auto: return "auto";
        case Strategy::Reorder: return "reorder";
        case Strategy::AltMax: return "altmax";
        case Strategy::AltMaxGoodInit: return "altmax_goodinit";
    }
    return "unknown";
}

double mle_theta_given_perm(const ModelConfig& cfg, const Permutation& perm, const EtaVector& eta_tilde,
                            std::optional<double> hint) {
    cfg.require_informative();
    require_fixed_size(cfg, eta_tilde);
    const EtaVector eta(apply_inverse(perm, eta_tilde.values()), eta_tilde.n());
    const auto value = [&](double theta) { return loglik_labeled(cfg, theta, eta); };
    const auto score = [&](double theta) { return score_labeled(cfg, theta, eta); };
    return maximize_bounded(value, score, -cfg.delta(), cfg.delta(), hint).x;
}

Permutation recover_perm_known_theta(const ModelConfig& cfg, double theta, const EtaVector& eta_tilde) {
    cfg.require_informative();
    require_fixed_size(cfg, eta_tilde);
    std::vector<double> keys(cfg.k());
    const double gain = cfg.channel_gain();
    for (std::size_t i = 0; i < cfg.k(); ++i) keys[i] = gain * (cfg.h()[i] * theta - cfg.tau()[i]);
    return order_matching(keys, eta_tilde.values());
}

SpecialCaseClass classify_special_case(const ModelConfig& cfg) {
    const std::size_t k = cfg.k();
    if (k < 2) fail(ErrorCode::InvalidArgument, "special-case classification needs K >= 2");
    const auto h = cfg.h();
    const auto tau = cfg.tau();

    const double h_scale = std::max(1.0, std::abs(*std::max_element(h.begin(), h.end(), [](double a, double b) {
        return std::abs(a) < std::abs(b);
    })));
    const auto [h_min, h_max] = std::minmax_element(h.begin(), h.end());
    if (*h_max - *h_min <= 1e-9 * h_scale) return SpecialCaseClass{SpecialCaseKind::ConstantH, 0.0, 1.0, h[0]};

    Eigen::MatrixXd m(static_cast<Eigen::Index>(k), 3);
    for (std::size_t i = 0; i < k; ++i) {
        m(static_cast<Eigen::Index>(i), 0) = tau[i];
        m(static_cast<Eigen::Index>(i), 1) = h[i];
        m(static_cast<Eigen::Index>(i), 2) = 1.0;
    }
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (sv(2) > 1e-9 * sv(0)) return SpecialCaseClass{};

    // Null vector (c, d, -e) of [tau h 1]; h is non-constant so c != 0.
    const Eigen::Vector3d null = svd.matrixV().col(2);
    const double c = null(0);
    return SpecialCaseClass{SpecialCaseKind::General, 1.0, null(1) / c, -null(2) / c};
}

EstimationResult reordering_algorithm(const ModelConfig& cfg, const EtaVector& eta_tilde) {
    cfg.require_informative();
    require_fixed_size(cfg, eta_tilde);
    const SpecialCaseClass special = classify_special_case(cfg);
    if (special.kind == SpecialCaseKind::None)
        fail(ErrorCode::NotSpecialCase, "no constants c, d, e with c tau + d h = e 1");

    if (special.kind == SpecialCaseKind::ConstantH) {
        std::vector<double> keys(cfg.k());
        for (std::size_t i = 0; i < cfg.k(); ++i) keys[i] = -cfg.channel_gain() * cfg.tau()[i];
        return single_solve(cfg, eta_tilde, order_matching(keys, eta_tilde.values()), "reorder:tau");
    }

    std::vector<double> plus(cfg.h().begin(), cfg.h().end());
    std::vector<double> minus(plus.size());
    std::transform(plus.begin(), plus.end(), minus.begin(), [](double x) { return -x; });
    EstimationResult r1 = single_solve(cfg, eta_tilde, order_matching(plus, eta_tilde.values()), "reorder:+h");
    EstimationResult r2 = single_solve(cfg, eta_tilde, order_matching(minus, eta_tilde.values()), "reorder:-h");
    if (likelihood_tie(r1.loglik, r2.loglik)) {
        r1.ambiguous = r1.theta_hat != r2.theta_hat || r1.perm_hat != r2.perm_hat;
        return r1;
    }
    EstimationResult& winner = r1.loglik > r2.loglik ? r1 : r2;
    return std::move(winner);
}

InitialPoints good_initial_points(const ModelConfig& cfg, const EtaVector& eta_tilde) {
    cfg.require_informative();
    require_fixed_size(cfg, eta_tilde);
    const auto h = cfg.h();
    const auto tau = cfg.tau();
    const double hh = dot(h, h);
    if (!(hh > 0.0)) fail(ErrorCode::DegenerateShape, "h^T h = 0");

    const double gain = cfg.channel_gain();
    const double sigma = cfg.sigma_w();
    const double delta = cfg.delta();
    double lower = 1.0;
    double upper = 0.0;
    for (std::size_t i = 0; i < cfg.k(); ++i) {
        const double at_low = cfg.q0() + gain * cfg.noise().cdf((-std::abs(h[i]) * delta - tau[i]) / sigma);
        const double at_high = cfg.q0() + gain * cfg.noise().cdf((std::abs(h[i]) * delta - tau[i]) / sigma);
        // for q0 + q1 > 1 the gain is negative and the two ends swap roles
        lower = std::min(lower, std::min(at_low, at_high));
        upper = std::max(upper, std::max(at_low, at_high));
    }

    double mm = 0.0;
    for (std::size_t i = 0; i < cfg.k(); ++i) {
        const double projected = std::clamp(eta_tilde[i], lower, upper);
        const double u = std::clamp((projected - cfg.q0()) / gain, kProbClamp, 1.0 - kProbClamp);
        const double m = sigma * cfg.noise().quantile(u);
        mm += m * m;
    }

    const double center = dot(tau, h) / hh;
    const double disc = (mm - dot(tau, tau)) / hh + center * center;
    const double radius = std::sqrt(std::max(0.0, disc));
    return InitialPoints{std::clamp(center + radius, -delta, delta), std::clamp(center - radius, -delta, delta)};
}

EstimationResult alternating_maximization(const ModelConfig& cfg, const EtaVector& eta_tilde, double theta_init,
                                          int max_iter, double eps) {
    cfg.require_informative();
    require_fixed_size(cfg, eta_tilde);
    if (!cfg.theta_in_bounds(theta_init))
        fail(ErrorCode::ThetaOutOfBounds, "initial theta " + std::to_string(theta_init) + " outside [-delta, delta]");
    if (!(eps > 0.0)) fail(ErrorCode::InvalidArgument, "tolerance must be positive");

    EstimationResult r;
    r.strategy = Strategy::AltMax;
    double theta = theta_init;
    Permutation perm = recover_perm_known_theta(cfg, theta, eta_tilde);
    double ll = loglik_unlabeled(cfg, theta, perm, eta_tilde);
    r.trace.push_back({theta, ll});

    for (int t = 1; t <= max_iter; ++t) {
        const double next = mle_theta_given_perm(cfg, perm, eta_tilde, theta);
        perm = recover_perm_known_theta(cfg, next, eta_tilde);
        ll = loglik_unlabeled(cfg, next, perm, eta_tilde);
        r.trace.push_back({next, ll});
        r.iterations = t;
        const bool converged = std::abs(next - theta) <= eps;
        theta = next;
        if (converged) break;
    }
    r.theta_hat = theta;
    r.perm_hat = std::move(perm);
    r.loglik = ll;
    return r;
}

EstimationResult estimate(const ModelConfig& cfg, const EtaVector& eta_tilde, const EstimateOptions& options) {
    const auto multi_start = [&](const std::vector<double>& starts, Strategy tag, const std::string& init) {
        std::optional<EstimationResult> best;
        for (double s : starts) {
            EstimationResult r = alternating_maximization(cfg, eta_tilde, s, options.max_iter, options.eps);
            best = best ? best_of(*best, r) : r;
        }
        best->strategy = tag;
        best->initializer = init;
        return *best;
    };

    Strategy strategy = options.strategy;
    if (strategy == Strategy::Auto) {
        if (cfg.k() >= 2 && classify_special_case(cfg).kind != SpecialCaseKind::None) {
            strategy = Strategy::Reorder;
        } else {
            const InitialPoints g = good_initial_points(cfg, eta_tilde);
            std::vector<double> starts{g.first};
            std::string init = "good-init";
            if (g.first == g.second) {
                starts.push_back(-cfg.delta());
                starts.push_back(cfg.delta());
                init = "good-init+delta";
            } else {
                starts.push_back(g.second);
            }
            return multi_start(starts, Strategy::AltMaxGoodInit, init);
        }
    }

    switch (strategy) {
        case Strategy::Reorder: return reordering_algorithm(cfg, eta_tilde);
        case Strategy::AltMax:
            if (!options.initial_points.empty()) return multi_start(options.initial_points, Strategy::AltMax, "custom");
            return multi_start({-cfg.delta(), cfg.delta()}, Strategy::AltMax, "+-delta");
        case Strategy::AltMaxGoodInit: {
            const InitialPoints g = good_initial_points(cfg, eta_tilde);
            return multi_start({g.first, g.second}, Strategy::AltMaxGoodInit, "good-init");
        }
        case Strategy::Auto: break;
    }
    fail(ErrorCode::InvalidArgument, "unhandled strategy");
}

std::optional<Unidentifiability> unidentifiability_check(const ModelConfig& cfg) {
    const auto h = cfg.h();
    const auto tau = cfg.tau();
    const double hh = dot(h, h);
    if (!(hh > 0.0)) return std::nullopt;
    constexpr double tol = 1e-9;

    const double c0 = dot(tau, h) / hh;
    for (std::size_t i = 0; i < cfg.k(); ++i)
        if (std::abs(tau[i] - c0 * h[i]) > tol) return std::nullopt;
    if (std::abs(c0) >= cfg.delta()) return std::nullopt;

    const Permutation desc = sorting_permutation(h);  // desc[r] = index of r-th largest
    const std::size_t k = cfg.k();
    for (std::size_t r = 0; r < k; ++r)
        if (std::abs(h[desc[k - 1 - r]] + h[desc[r]]) > tol) return std::nullopt;

    // As row maps: Pi_a sends index i to its ascending rank, Pi_d to its descending rank.
    std::vector<std::size_t> asc_rank(k);
    std::vector<std::size_t> desc_rank(k);
    for (std::size_t r = 0; r < k; ++r) {
        desc_rank[desc[r]] = r;
        asc_rank[desc[r]] = k - 1 - r;
    }
    const Permutation pi_a = make_permutation(std::move(asc_rank));
    const Permutation pi_d = make_permutation(std::move(desc_rank));
    return Unidentifiability{c0, compose(inverse(pi_a), pi_d)};
}

}  // namespace ubq

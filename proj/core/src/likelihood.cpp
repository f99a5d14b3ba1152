#include "ubq/likelihood.hpp"

#include <cmath>
#include <string>

#include "ubq/error.hpp"

namespace ubq {

namespace {

void require_matching(const ModelConfig& cfg, const EtaVector& eta) {
    if (eta.size() != cfg.k())
        fail(ErrorCode::LengthMismatch,
             "eta has " + std::to_string(eta.size()) + " entries, model has K = " + std::to_string(cfg.k()));
}

double standardized(const ModelConfig& cfg, std::size_t i, double theta) {
    return (cfg.h()[i] * theta - cfg.tau()[i]) / cfg.sigma_w();
}

}  // namespace

ProbVector success_probs(const ModelConfig& cfg, double theta) {
    const std::size_t k = cfg.k();
    const double gain = cfg.channel_gain();
    ProbVector out;
    out.p.resize(k);
    out.complement.resize(k);
    out.clamped.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        const double z = standardized(cfg, i, theta);
        // 1 - p = q1 + (1 - q0 - q1) (1 - F(z)), evaluated through the survival function.
        double p = cfg.q0() + gain * cfg.noise().cdf(z);
        double c = cfg.q1() + gain * cfg.noise().sf(z);
        bool clamped = false;
        if (p < kProbClamp) {
            p = kProbClamp;
            c = 1.0 - kProbClamp;
            clamped = true;
        } else if (c < kProbClamp) {
            c = kProbClamp;
            p = 1.0 - kProbClamp;
            clamped = true;
        }
        out.p[i] = p;
        out.complement[i] = c;
        out.clamped[i] = clamped;
    }
    return out;
}

std::vector<double> raw_success_probs(const ModelConfig& cfg, double theta) {
    std::vector<double> p(cfg.k());
    for (std::size_t i = 0; i < cfg.k(); ++i)
        p[i] = cfg.q0() + cfg.channel_gain() * cfg.noise().cdf(standardized(cfg, i, theta));
    return p;
}

SWeights s_weights(const ProbVector& p) {
    SWeights out;
    out.s.resize(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) out.s[i] = std::log(p.p[i]) - std::log(p.complement[i]);
    return out;
}

double loglik_labeled(const ProbVector& p, const EtaVector& eta) {
    if (eta.size() != p.size()) fail(ErrorCode::LengthMismatch, "eta and probability vector differ in length");
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double e = eta[i];
        if (e > 0.0) sum += e * std::log(p.p[i]);
        if (e < 1.0) sum += (1.0 - e) * std::log(p.complement[i]);
    }
    return static_cast<double>(eta.n()) * sum;
}

double loglik_labeled(const ModelConfig& cfg, double theta, const EtaVector& eta) {
    require_matching(cfg, eta);
    return loglik_labeled(success_probs(cfg, theta), eta);
}

double loglik_unlabeled(const ModelConfig& cfg, double theta, const Permutation& perm, const EtaVector& eta_tilde) {
    require_matching(cfg, eta_tilde);
    if (perm.size() != cfg.k()) fail(ErrorCode::LengthMismatch, "permutation size differs from K");
    const ProbVector p = success_probs(cfg, theta);
    double sum = 0.0;
    for (std::size_t i = 0; i < cfg.k(); ++i) {
        const double e = eta_tilde[perm[i]];
        if (e > 0.0) sum += e * std::log(p.p[i]);
        if (e < 1.0) sum += (1.0 - e) * std::log(p.complement[i]);
    }
    return static_cast<double>(eta_tilde.n()) * sum;
}

double loglik_unlabeled_decomposed(const ModelConfig& cfg, double theta, const Permutation& perm,
                                   const EtaVector& eta_tilde) {
    require_matching(cfg, eta_tilde);
    if (perm.size() != cfg.k()) fail(ErrorCode::LengthMismatch, "permutation size differs from K");
    const ProbVector p = success_probs(cfg, theta);
    const SWeights s = s_weights(p);
    double weighted = 0.0;
    double base = 0.0;
    for (std::size_t i = 0; i < cfg.k(); ++i) {
        weighted += eta_tilde[perm[i]] * s.s[i];
        base += std::log(p.complement[i]);
    }
    return static_cast<double>(eta_tilde.n()) * (weighted + base);
}

double score_labeled(const ModelConfig& cfg, double theta, const EtaVector& eta) {
    require_matching(cfg, eta);
    const ProbVector p = success_probs(cfg, theta);
    const double scale = cfg.channel_gain() / cfg.sigma_w();
    double sum = 0.0;
    for (std::size_t i = 0; i < cfg.k(); ++i) {
        if (p.clamped[i]) continue;
        const double dp = scale * cfg.h()[i] * cfg.noise().pdf(standardized(cfg, i, theta));
        sum += (eta[i] - p.p[i]) / (p.p[i] * p.complement[i]) * dp;
    }
    return static_cast<double>(eta.n()) * sum;
}

double fisher_information(const ModelConfig& cfg, double theta, std::int64_t n) {
    cfg.require_informative();
    if (n < 1) fail(ErrorCode::InvalidArgument, "number of quantizers must be positive");
    const ProbVector p = success_probs(cfg, theta);
    double sum = 0.0;
    for (std::size_t i = 0; i < cfg.k(); ++i) {
        const double f = cfg.noise().pdf(standardized(cfg, i, theta));
        const double h = cfg.h()[i];
        sum += h * h * f * f / (p.p[i] * p.complement[i]);
    }
    const double gain = cfg.channel_gain();
    return static_cast<double>(n) * gain * gain / (cfg.sigma_w() * cfg.sigma_w()) * sum;
}

double crlb(const ModelConfig& cfg, double theta, std::int64_t n) {
    const double info = fisher_information(cfg, theta, n);
    if (!(info > 1e-300)) fail(ErrorCode::ZeroInformation, "Fisher information vanishes at this theta");
    return 1.0 / info;
}

}  // namespace ubq

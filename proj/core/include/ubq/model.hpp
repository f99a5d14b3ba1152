#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ubq/noise.hpp"

namespace ubq {

/// Observation model: K time indexes, each observed by N identical binary
/// quantizers with threshold tau[i] on h[i] * theta + sigma_w * w, followed
/// by a binary channel that flips 0 -> 1 with probability q0 and 1 -> 0
/// with probability q1. theta is constrained to [-delta, delta].
class ModelConfig {
public:
    ModelConfig(std::vector<double> h, std::vector<double> tau, double sigma_w, double q0, double q1,
                double delta, NoiseDistribution noise = NoiseDistribution::gaussian());

    std::size_t k() const noexcept { return h_.size(); }
    std::span<const double> h() const noexcept { return h_; }
    std::span<const double> tau() const noexcept { return tau_; }
    double sigma_w() const noexcept { return sigma_w_; }
    double q0() const noexcept { return q0_; }
    double q1() const noexcept { return q1_; }
    double delta() const noexcept { return delta_; }
    const NoiseDistribution& noise() const noexcept { return noise_; }

    /// 1 - q0 - q1: the factor by which the channel scales the quantizer cdf.
    double channel_gain() const noexcept { return 1.0 - q0_ - q1_; }
    /// False when q0 + q1 == 1, where the channel output is independent of theta.
    bool informative() const noexcept { return informative_; }
    /// Throws DegenerateChannel for a non-informative channel.
    void require_informative() const;

    bool theta_in_bounds(double theta) const noexcept { return theta >= -delta_ && theta <= delta_; }

private:
    std::vector<double> h_;
    std::vector<double> tau_;
    double sigma_w_;
    double q0_;
    double q1_;
    double delta_;
    NoiseDistribution noise_;
    bool informative_;
};

/// Per-time-index fraction of ones across the N quantizers.
class EtaVector {
public:
    EtaVector(std::vector<double> eta, std::int64_t n);

    std::size_t size() const noexcept { return eta_.size(); }
    std::int64_t n() const noexcept { return n_; }
    std::span<const double> values() const noexcept { return eta_; }
    double operator[](std::size_t i) const noexcept { return eta_[i]; }

private:
    std::vector<double> eta_;
    std::int64_t n_;
};

}  // namespace ubq

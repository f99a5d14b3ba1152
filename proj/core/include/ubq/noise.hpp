#pragma once

#include <string_view>

namespace ubq {

enum class NoiseFamily { Gaussian, Logistic };

/// Unit-variance, zero-mean noise law. A sample with standard deviation
/// sigma has pdf f(x / sigma) / sigma and cdf F(x / sigma).
class NoiseDistribution {
public:
    static NoiseDistribution gaussian() noexcept { return NoiseDistribution(NoiseFamily::Gaussian); }
    static NoiseDistribution logistic() noexcept { return NoiseDistribution(NoiseFamily::Logistic); }

    NoiseFamily family() const noexcept { return family_; }
    std::string_view name() const noexcept;

    double pdf(double x) const noexcept;
    double cdf(double x) const noexcept;
    /// 1 - cdf(x), evaluated without cancellation in the upper tail.
    double sf(double x) const noexcept;
    /// Inverse cdf on (0, 1); returns -inf / +inf at 0 / 1.
    double quantile(double u) const noexcept;

    /// Both mandatory families are log-concave.
    bool log_concave() const noexcept { return true; }

    friend bool operator==(const NoiseDistribution&, const NoiseDistribution&) = default;

private:
    explicit NoiseDistribution(NoiseFamily family) noexcept : family_(family) {}

    NoiseFamily family_;
};

}  // namespace ubq

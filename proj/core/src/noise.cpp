#include "ubq/noise.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace ubq {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;
// Logistic scale giving unit variance: s^2 pi^2 / 3 = 1.
constexpr double kLogisticScale = 0.55132889542179204315;

double normal_cdf(double x) { return 0.5 * std::erfc(-x * kInvSqrt2); }

// Acklam's rational approximation followed by one Halley step on erfc,
// which brings the result to full double precision.
double normal_quantile(double u) {
    if (u <= 0.0) return -std::numeric_limits<double>::infinity();
    if (u >= 1.0) return std::numeric_limits<double>::infinity();

    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                   1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                   6.680131188771972e+01,  -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                   -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                   3.754408661907416e+00};
    constexpr double low = 0.02425;

    double x;
    if (u < low) {
        const double q = std::sqrt(-2.0 * std::log(u));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (u <= 1.0 - low) {
        const double q = u - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log1p(-u));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    // Refine against whichever tail is computed without cancellation.
    const double e = (u < 0.5) ? normal_cdf(x) - u : (1.0 - u) - 0.5 * std::erfc(x * kInvSqrt2);
    const double step = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
    return x - step / (1.0 + 0.5 * x * step);
}

}  // namespace

std::string_view NoiseDistribution::name() const noexcept {
    switch (family_) {
        case NoiseFamily::Gaussian: return "gaussian";
        case NoiseFamily::Logistic: return "logistic";
    }
    return "unknown";
}

double NoiseDistribution::pdf(double x) const noexcept {
    switch (family_) {
        case NoiseFamily::Gaussian: return kInvSqrt2Pi * std::exp(-0.5 * x * x);
        case NoiseFamily::Logistic: {
            const double z = -std::abs(x) / kLogisticScale;
            const double e = std::exp(z);
            return e / (kLogisticScale * (1.0 + e) * (1.0 + e));
        }
    }
    return 0.0;
}

double NoiseDistribution::cdf(double x) const noexcept {
    switch (family_) {
        case NoiseFamily::Gaussian: return normal_cdf(x);
        case NoiseFamily::Logistic: {
            const double z = x / kLogisticScale;
            if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
            const double e = std::exp(z);
            return e / (1.0 + e);
        }
    }
    return 0.0;
}

double NoiseDistribution::sf(double x) const noexcept {
    // both families are symmetric about zero
    return cdf(-x);
}

double NoiseDistribution::quantile(double u) const noexcept {
    switch (family_) {
        case NoiseFamily::Gaussian: return normal_quantile(u);
        case NoiseFamily::Logistic:
            if (u <= 0.0) return -std::numeric_limits<double>::infinity();
            if (u >= 1.0) return std::numeric_limits<double>::infinity();
            return kLogisticScale * (std::log(u) - std::log1p(-u));
    }
    return 0.0;
}

}  // namespace ubq

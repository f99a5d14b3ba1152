#include "ubq/model.hpp"

#include <cmath>
#include <string>

#include "ubq/error.hpp"

namespace ubq {

namespace {

bool all_finite(const std::vector<double>& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

}  // namespace

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NotABijection: return "NotABijection";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::InvalidKey: return "InvalidKey";
        case ErrorCode::InvalidConfig: return "InvalidConfig";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::DegenerateChannel: return "DegenerateChannel";
        case ErrorCode::DegenerateShape: return "DegenerateShape";
        case ErrorCode::ZeroInformation: return "ZeroInformation";
        case ErrorCode::ThetaOutOfBounds: return "ThetaOutOfBounds";
        case ErrorCode::NotSpecialCase: return "NotSpecialCase";
        case ErrorCode::ZeroGap: return "ZeroGap";
        case ErrorCode::DegenerateFit: return "DegenerateFit";
    }
    return "Unknown";
}

ModelConfig::ModelConfig(std::vector<double> h, std::vector<double> tau, double sigma_w, double q0, double q1,
                         double delta, NoiseDistribution noise)
    : h_(std::move(h)),
      tau_(std::move(tau)),
      sigma_w_(sigma_w),
      q0_(q0),
      q1_(q1),
      delta_(delta),
      noise_(noise),
      informative_(std::abs(1.0 - q0 - q1) > 1e-12) {
    if (h_.empty()) fail(ErrorCode::InvalidConfig, "signal shape must have K >= 1 entries");
    if (h_.size() != tau_.size())
        fail(ErrorCode::LengthMismatch,
             "h has " + std::to_string(h_.size()) + " entries but tau has " + std::to_string(tau_.size()));
    if (!all_finite(h_) || !all_finite(tau_)) fail(ErrorCode::InvalidConfig, "h and tau must be finite");
    if (!(sigma_w_ > 0.0) || !std::isfinite(sigma_w_)) fail(ErrorCode::InvalidConfig, "sigma_w must be positive");
    if (!(delta_ > 0.0) || !std::isfinite(delta_)) fail(ErrorCode::InvalidConfig, "delta must be positive");
    if (!(q0_ >= 0.0 && q0_ <= 1.0) || !(q1_ >= 0.0 && q1_ <= 1.0))
        fail(ErrorCode::InvalidConfig, "flip probabilities must lie in [0, 1]");
}

void ModelConfig::require_informative() const {
    if (!informative_) fail(ErrorCode::DegenerateChannel, "q0 + q1 == 1: channel output carries no signal");
}

EtaVector::EtaVector(std::vector<double> eta, std::int64_t n) : eta_(std::move(eta)), n_(n) {
    if (n_ < 1) fail(ErrorCode::InvalidArgument, "number of quantizers must be positive");
    if (eta_.empty()) fail(ErrorCode::InvalidArgument, "eta must be non-empty");
    for (double x : eta_)
        if (!(x >= 0.0 && x <= 1.0)) fail(ErrorCode::InvalidArgument, "eta entries must lie in [0, 1]");
}

}  // namespace ubq

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ubq/csv.hpp"
#include "ubq/detection.hpp"
#include "ubq/estimation.hpp"
#include "ubq/model.hpp"
#include "ubq/rng.hpp"

namespace ubq {

inline constexpr int kConfigVersion = 1;
inline constexpr int kDefaultTrials = 500;

enum class ExperimentKind { Mse, Detection, Recovery, GapFit };

std::string_view to_string(ExperimentKind k) noexcept;

struct ShapeSpec {
    enum class Type { Explicit, Ramp, Sinusoid, Gaussian };
    Type type = Type::Explicit;
    std::vector<double> values;
    double u = 1.0;
    double l = -1.0;
    /// Length for generated shapes; K grids override it.
    std::size_t k = 0;
    std::uint64_t seed = 0;
    bool random() const noexcept { return type == Type::Sinusoid || type == Type::Gaussian; }
};

struct TauSpec {
    enum class Type { Explicit, Scaled, Uniform };
    Type type = Type::Scaled;
    std::vector<double> values;
    double c0 = 0.0;
    std::uint64_t seed = 0;
    bool random() const noexcept { return type == Type::Uniform; }
};

struct ModelSpec {
    ShapeSpec h;
    TauSpec tau;
    double sigma_w = 1.0;
    double q0 = 0.0;
    double q1 = 0.0;
    double delta = 2.0;
    std::string noise = "gaussian";
};

struct DetectorEntry {
    DetectorKind kind = DetectorKind::T1;
    /// Only meaningful for T3.
    Strategy strategy = Strategy::Auto;
};

struct ExperimentConfig {
    int version = kConfigVersion;
    ExperimentKind kind = ExperimentKind::Mse;
    ModelSpec model;
    double theta = 1.0;
    std::vector<std::int64_t> n_grid;
    std::vector<std::int64_t> k_grid;
    int trials = kDefaultTrials;
    std::uint64_t seed = 1;
    std::string output;
    double p_fa = 0.05;
    std::vector<DetectorEntry> detectors;
    std::vector<Strategy> strategies;
    /// (q0, q1) pairs swept by recovery runs; empty means the model channel.
    std::vector<std::pair<double, double>> channels;
    /// Gap fit: statistic to regress ("t" or "t_tilde") and an optional fixed alpha.
    std::string fit_statistic = "t";
    std::optional<double> fit_alpha;
};

/// Parses a JSON config. When `full` is set, the optional "full" object is
/// merged over the top level first. Throws InvalidConfig on schema errors.
ExperimentConfig parse_config(const std::string& text, bool full = false);
ExperimentConfig load_config(const std::string& path, bool full = false);

/// Instantiates the model at length k (0 keeps the shape's own length).
/// Random shapes and thresholds are drawn from `engine`.
ModelConfig build_model(const ModelSpec& spec, std::size_t k, Engine& engine);
/// Same, drawing random parts from the seeds stored in `spec`.
ModelConfig build_model(const ModelSpec& spec, std::size_t k = 0);

Table run_mse(const ExperimentConfig& cfg);
Table run_detection(const ExperimentConfig& cfg);
Table run_recovery(const ExperimentConfig& cfg);
Table run_gap_fit(const ExperimentConfig& cfg);
Table run_experiment(const ExperimentConfig& cfg);

}  // namespace ubq

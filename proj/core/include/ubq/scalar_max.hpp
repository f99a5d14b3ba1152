#pragma once

#include <functional>
#include <optional>

namespace ubq {

struct ScalarMaxOptions {
    int grid_points = 33;
    /// Stationarity target for the score polish.
    double gradient_tol = 1e-8;
};

struct ScalarMaxResult {
    double x = 0.0;
    double value = 0.0;
    /// True when x sits on one of the interval bounds.
    bool at_bound = false;
};

/// Bounded maximization of a scalar function on [lo, hi].
///
/// Every local maximum of a uniform coarse grid is refined with Brent's
/// method inside its two neighbouring cells, then polished by root-finding
/// the supplied derivative when it changes sign over the cell. The polish is
/// kept unless it lowers the objective beyond rounding. An optional hint is
/// evaluated as an extra candidate, so the result is never worse than the
/// hint. Exact ties go to the smaller x.
ScalarMaxResult maximize_bounded(const std::function<double(double)>& value,
                                 const std::function<double(double)>& derivative, double lo, double hi,
                                 std::optional<double> hint = std::nullopt,
                                 const ScalarMaxOptions& options = {});

}  // namespace ubq

#include "ubq/scalar_max.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "ubq/error.hpp"

namespace ubq {

namespace {

struct Candidate {
    double x;
    double value;
};

bool better(const Candidate& a, const Candidate& b) {
    if (a.value != b.value) return a.value > b.value;
    return a.x < b.x;
}

// Golden/parabolic refinement inside [a, b], followed by a score-root polish
// when the derivative brackets a stationary point.
Candidate refine(const std::function<double(double)>& value, const std::function<double(double)>& derivative,
                 double a, double b, double tol) {
    const auto negated = [&](double x) { return -value(x); };
    std::uintmax_t brent_iters = 200;
    const auto [xb, fb] = boost::math::tools::brent_find_minima(negated, a, b, std::numeric_limits<double>::digits / 2,
                                                                brent_iters);
    Candidate best{xb, -fb};
    if (!derivative) return best;

    const double da = derivative(a);
    const double db = derivative(b);
    if (!(da > 0.0 && db < 0.0)) {
        // Monotone over the cell: the maximum sits on the corresponding end.
        const double end = (da <= 0.0 && db <= 0.0) ? a : ((da >= 0.0 && db >= 0.0) ? b : xb);
        const Candidate at_end{end, value(end)};
        if (better(at_end, best)) best = at_end;
        return best;
    }
    if (std::abs(derivative(xb)) <= tol) return best;

    std::uintmax_t root_iters = 200;
    const auto stop = [](double lo, double hi) {
        return std::abs(hi - lo) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(lo));
    };
    const auto [r0, r1] = boost::math::tools::toms748_solve(derivative, a, b, da, db, stop, root_iters);
    const double root = 0.5 * (r0 + r1);
    const Candidate polished{root, value(root)};
    // Near the top the objective is flat to rounding; prefer the stationary point.
    const double noise = 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(best.value));
    if (polished.value >= best.value - noise) best = polished;
    return best;
}

}  // namespace

ScalarMaxResult maximize_bounded(const std::function<double(double)>& value,
                                 const std::function<double(double)>& derivative, double lo, double hi,
                                 std::optional<double> hint, const ScalarMaxOptions& options) {
    if (!(lo < hi)) fail(ErrorCode::InvalidArgument, "empty search interval");
    const int g = std::max(options.grid_points, 3);
    std::vector<double> xs(static_cast<std::size_t>(g));
    std::vector<double> vs(xs.size());
    for (int k = 0; k < g; ++k) {
        xs[k] = (k == g - 1) ? hi : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(g - 1);
        vs[k] = value(xs[k]);
    }

    Candidate best{xs[0], vs[0]};
    for (int k = 0; k < g; ++k) {
        const bool left_ok = k == 0 || vs[k] >= vs[k - 1];
        const bool right_ok = k == g - 1 || vs[k] >= vs[k + 1];
        if (!(left_ok && right_ok)) continue;
        const double a = xs[std::max(k - 1, 0)];
        const double b = xs[std::min(k + 1, g - 1)];
        Candidate c = refine(value, derivative, a, b, options.gradient_tol);
        const Candidate grid{xs[k], vs[k]};
        if (better(grid, c)) c = grid;
        if (better(c, best)) best = c;
    }
    if (hint && *hint >= lo && *hint <= hi) {
        const Candidate h{*hint, value(*hint)};
        if (better(h, best)) best = h;
    }
    return ScalarMaxResult{best.x, best.value, best.x <= lo || best.x >= hi};
}

}  // namespace ubq

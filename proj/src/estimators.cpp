#include "mimpeak/estimators.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "mimpeak/errors.hpp"

namespace mimpeak {

namespace {

// denominators below this raise explicit degenerate errors instead of
// emitting infinities
constexpr double kTinyDenominator = 1e-300;

void check_iteration_config(const IterationConfig& cfg) {
    if (!(cfg.tol > 0.0)) throw std::invalid_argument("iteration tol must be > 0");
    if (cfg.max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
}

double interval_slope(const Spectrum& s, std::size_t j) {
    return (s.y(j + 1) - s.y(j)) / s.dx();
}

// Shared accumulation for the type-II update: per in-range mirror point,
// numerator term a^2*(x_i + x_j) + a*(y_i - y_j) and slope-square sum.
struct Mim2Sums {
    double numerator = 0.0;
    double slope_sq = 0.0;
    std::size_t included = 0;
};

Mim2Sums accumulate_mim2(const Window& window, double x_p_prev) {
    const Spectrum& s = window.slice();
    Mim2Sums sums;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double xi = s.x(i);
        const double yi = s.y(i);
        const double xm = mirror(xi, x_p_prev);
        auto j = locate_interval(s, xm);
        if (!j) continue;
        // Mirrors landing exactly on a grid point have two valid brackets
        // whose slopes differ. Take the segment on the axis side, so a
        // reflected window picks the reflected segment and the update stays
        // reflection-equivariant (this happens for every sample whenever
        // the previous iterate sits on the grid, e.g. the initial argmax).
        // A sample mirroring onto itself anchors the axis at its own
        // position; its weight averages the adjacent segments, which is
        // side-symmetric. Either bracket of an on-axis sample contributes
        // a^2*(x_i + x_j) + a*(y_i - y_j) = 2*x_i*a^2 exactly.
        const double t = (xm - s.x0()) / s.dx();
        if (std::abs(t - std::round(t)) < 1e-9) {
            const auto g = static_cast<std::size_t>(std::llround(t));
            if (std::abs(xi - x_p_prev) < 1e-9 * s.dx()) {
                double weight = 0.0;
                int segments = 0;
                if (g >= 1) {
                    const double a = interval_slope(s, g - 1);
                    weight += a * a;
                    ++segments;
                }
                if (g + 2 <= s.size()) {
                    const double a = interval_slope(s, g);
                    weight += a * a;
                    ++segments;
                }
                weight /= static_cast<double>(segments);
                sums.numerator += 2.0 * xi * weight;
                sums.slope_sq += weight;
                ++sums.included;
                continue;
            }
            if (xi < x_p_prev && g >= 1) j = g - 1;
        }
        const double a = interval_slope(s, *j);
        sums.numerator += a * a * (xi + s.x(*j)) + a * (yi - s.y(*j));
        sums.slope_sq += a * a;
        ++sums.included;
    }
    return sums;
}

void check_mim2_sums(const Mim2Sums& sums) {
    if (sums.included == 0)
        throw EstimatorError("no overlap: every mirrored point falls outside the window");
    if (std::abs(sums.slope_sq) < kTinyDenominator)
        throw EstimatorError("flat spectrum: all bracketing segments have zero slope");
}

template <typename StepFn>
PeakEstimate iterate(const Window& window, const IterationConfig& cfg, StepFn step) {
    check_iteration_config(cfg);
    PeakEstimate est;
    est.x_initial = argmax_position(window.slice()).position;
    double x_prev = est.x_initial;
    for (int k = 1; k <= cfg.max_iters; ++k) {
        const double x_next = step(window, x_prev);
        est.history.push_back(x_next);
        est.iterations = k;
        if (std::abs(x_next - x_prev) < cfg.tol) {
            est.converged = true;
            est.x_p = x_next;
            return est;
        }
        x_prev = x_next;
    }
    // ran out of iterations; detect a two-cycle over the last three iterates
    const auto n = est.history.size();
    const double xk = est.history[n - 1];
    if (n >= 2) {
        const double xk1 = est.history[n - 2];
        const double xk2 = n >= 3 ? est.history[n - 3] : est.x_initial;
        if (std::abs(xk - xk2) < cfg.tol && std::abs(xk - xk1) >= cfg.tol) {
            est.oscillating = true;
            est.x_p = 0.5 * (xk + xk1);
            return est;
        }
    }
    est.x_p = xk;
    return est;
}

} // namespace

double mirror(double x, double axis) { return 2.0 * axis - x; }

std::optional<std::size_t> locate_interval(const Spectrum& spectrum, double x_prime) {
    const double slack = 1e-9 * spectrum.dx();
    if (x_prime < spectrum.x0() - slack || x_prime > spectrum.x_back() + slack)
        return std::nullopt;
    const double t = (x_prime - spectrum.x0()) / spectrum.dx();
    auto j = static_cast<std::ptrdiff_t>(std::floor(t));
    // positions landing on a grid point (within slack) take that index
    if (std::abs(t - std::round(t)) < 1e-9) j = static_cast<std::ptrdiff_t>(std::llround(t));
    const auto last_interval = static_cast<std::ptrdiff_t>(spectrum.size()) - 2;
    if (j < 0) j = 0;
    if (j > last_interval) j = last_interval;
    return static_cast<std::size_t>(j);
}

double lerp(const Spectrum& spectrum, std::size_t j, double x_prime) {
    if (j + 1 >= spectrum.size()) throw EstimatorError("lerp: interval index out of range");
    const double xj = spectrum.x(j);
    const double slack = 1e-6 * spectrum.dx();
    if (x_prime < xj - slack || x_prime > spectrum.x(j + 1) + slack) {
        std::ostringstream msg;
        msg << "lerp: x=" << x_prime << " outside interval [" << xj << ", "
            << spectrum.x(j + 1) << "]";
        throw EstimatorError(msg.str());
    }
    return interval_slope(spectrum, j) * (x_prime - xj) + spectrum.y(j);
}

std::vector<MirrorPoint> mirror_points(const Window& window, double x_p) {
    const Spectrum& s = window.slice();
    std::vector<MirrorPoint> points;
    points.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        MirrorPoint p;
        p.origin = i;
        p.x_mirror = mirror(s.x(i), x_p);
        p.y_mirror = s.y(i);
        p.interval = locate_interval(s, p.x_mirror);
        if (p.interval) p.y_interp = lerp(s, *p.interval, p.x_mirror);
        points.push_back(p);
    }
    return points;
}

double centroid(const Window& window) {
    const Spectrum& s = window.slice();
    double weighted = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        weighted += s.x(i) * s.y(i);
        total += s.y(i);
    }
    if (std::abs(total) < kTinyDenominator)
        throw WindowError("degenerate window: amplitude sum is ~0");
    return weighted / total;
}

double mim1_step(const Window& window, double x_p_prev) {
    const Spectrum& s = window.slice();
    double weighted = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double xi = s.x(i);
        const double yi = s.y(i);
        const double xm = mirror(xi, x_p_prev);
        const auto j = locate_interval(s, xm);
        // out-of-range mirrors keep the original amplitude
        const double ym = j ? lerp(s, *j, xm) : yi;
        weighted += xi * yi + xm * ym;
        total += yi + ym;
    }
    if (std::abs(total) < kTinyDenominator)
        throw WindowError("degenerate window: combined amplitude sum is ~0");
    return weighted / total;
}

double mim2_step(const Window& window, double x_p_prev) {
    const Mim2Sums sums = accumulate_mim2(window, x_p_prev);
    check_mim2_sums(sums);
    return sums.numerator / (2.0 * sums.slope_sq);
}

Mim2Candidates mim2_step_candidates(const Window& window, double x_p_prev) {
    const Mim2Sums sums = accumulate_mim2(window, x_p_prev);
    check_mim2_sums(sums);
    return {sums.numerator / (2.0 * sums.slope_sq), sums.numerator / sums.slope_sq};
}

PeakEstimate mim1(const Window& window, const IterationConfig& cfg) {
    return iterate(window, cfg, [](const Window& w, double x) { return mim1_step(w, x); });
}

PeakEstimate mim2(const Window& window, const IterationConfig& cfg) {
    return iterate(window, cfg, [](const Window& w, double x) { return mim2_step(w, x); });
}

Residual residual_s(const Window& window, double x_p) {
    const Spectrum& s = window.slice();
    Residual res;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double xm = mirror(s.x(i), x_p);
        const auto j = locate_interval(s, xm);
        if (!j) continue;
        const double d = lerp(s, *j, xm) - s.y(i);
        res.value += d * d;
        ++res.included;
    }
    return res;
}

double residual_s_frozen(const Window& window, const std::vector<MirrorPoint>& points,
                         double x_p) {
    const Spectrum& s = window.slice();
    double total = 0.0;
    for (const MirrorPoint& p : points) {
        if (!p.interval) continue;
        const std::size_t j = *p.interval;
        const double a = interval_slope(s, j);
        const double interp = a * (2.0 * x_p - s.x(p.origin) - s.x(j)) + s.y(j);
        const double d = interp - s.y(p.origin);
        total += d * d;
    }
    return total;
}

PeakEstimate estimate(const Window& window, Method method, const IterationConfig& cfg) {
    switch (method) {
    case Method::Centroid: {
        const double x_p = centroid(window);
        PeakEstimate est;
        est.x_p = x_p;
        est.x_initial = x_p;
        est.converged = true;
        return est;
    }
    case Method::Mim1:
        return mim1(window, cfg);
    case Method::Mim2:
        return mim2(window, cfg);
    }
    std::abort(); // unreachable
}

} // namespace mimpeak

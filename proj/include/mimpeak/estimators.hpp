#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mimpeak/select.hpp"
#include "mimpeak/signal.hpp"

namespace mimpeak {

enum class Method { Centroid, Mim1, Mim2 };

/// Linear is the only built-in interpolation; the enum is the extension
/// point for nonlinear variants.
enum class Interpolation { Linear };

struct IterationConfig {
    double tol = 1e-9;  // stop when |x_p change| < tol
    int max_iters = 100;
    Interpolation interpolation = Interpolation::Linear;
};

/// Result of an iterative (or direct) peak-position estimate.
///
/// `history` holds the iterate produced by each step, so
/// history.size() == iterations. The starting value (the window argmax)
/// is kept in `x_initial`. `converged` and `oscillating` are mutually
/// exclusive; `oscillating` is only set when the iteration hit max_iters
/// in a two-cycle, in which case x_p is the mean of the last two iterates.
struct PeakEstimate {
    double x_p = 0.0;
    double x_initial = 0.0;
    int iterations = 0;
    bool converged = false;
    bool oscillating = false;
    std::vector<double> history;
};

/// One window sample reflected about a candidate peak position, together
/// with the interval of the window's source spectrum that brackets the
/// reflected position (if any) and the interpolated amplitude there.
struct MirrorPoint {
    std::size_t origin = 0;                  // window-local sample index
    double x_mirror = 0.0;                   // 2*x_p - x_i
    double y_mirror = 0.0;                   // = y_i
    std::optional<std::size_t> interval;     // source interval j, or out of range
    double y_interp = 0.0;                   // lerp(j, x_mirror) when in range
};

/// Residual of the symmetry fit: sum of squared differences between
/// interpolated and mirrored amplitudes, over the mirror points that land
/// inside the window.
struct Residual {
    double value = 0.0;
    std::size_t included = 0;
};

/// Reflection of x about the axis: 2*axis - x.
double mirror(double x, double axis);

/// Index j of the grid interval [x_j, x_{j+1}] containing x_prime, with
/// 0 <= j <= size-2. Positions exactly on a grid point take that point's
/// own index (clamped at the last interval). Returns nullopt when x_prime
/// falls outside [x_0, x_{N-1}] beyond a 1e-9*dx slack.
std::optional<std::size_t> locate_interval(const Spectrum& spectrum, double x_prime);

/// Linear interpolation between samples j and j+1. x_prime must lie inside
/// the interval (small floating slack allowed); throws EstimatorError
/// otherwise.
double lerp(const Spectrum& spectrum, std::size_t j, double x_prime);

/// All window samples mirrored about x_p, with bracketing intervals and
/// interpolated amplitudes resolved on the window's source spectrum.
std::vector<MirrorPoint> mirror_points(const Window& window, double x_p);

/// Amplitude-weighted mean position of the window samples.
/// Throws WindowError when the amplitude sum is degenerate (~0).
double centroid(const Window& window);

/// One type-I update: the centroid of the window samples united with their
/// mirror images about x_p_prev. In-range mirrors take the interpolated
/// amplitude; out-of-range mirrors keep their original amplitude.
double mim1_step(const Window& window, double x_p_prev);

/// One type-II update: the exact minimizer of the frozen-interval residual
///   sum_i (a_i*(2*x_p - x_i - x_j) + y_j - y_i)^2,
/// where a_i is the slope of the source-spectrum interval bracketing the
/// mirror of window sample i about x_p_prev and mirrors outside the source
/// grid are excluded:
///   x_p = [sum a_i^2*(x_i + x_j) + sum a_i*(y_i - y_j)] / (2*sum a_i^2).
/// `selfcheck` verifies this closed form (including the factor 2 in the
/// denominator) against a dense grid search of the residual.
/// Mirrors landing exactly on a grid point take the bracketing segment on
/// the axis side (both brackets are valid; this choice keeps the update
/// reflection-equivariant); a sample mirroring onto itself is anchored
/// with the mean squared slope of its adjacent segments.
/// Throws EstimatorError when every mirror is out of range or all
/// bracketing segments are flat.
double mim2_step(const Window& window, double x_p_prev);

/// Both denominator variants of the type-II update: the derived form
/// (factor 2) and the variant without it. Used by the selfcheck oracle to
/// confirm which one minimizes the residual.
struct Mim2Candidates {
    double with_factor2 = 0.0;
    double without_factor2 = 0.0;
};
Mim2Candidates mim2_step_candidates(const Window& window, double x_p_prev);

/// Iterate mim1_step from the window argmax until the change drops below
/// cfg.tol or max_iters is reached.
PeakEstimate mim1(const Window& window, const IterationConfig& cfg = {});

/// Iterate mim2_step from the window argmax. Same stop rules as mim1; a
/// two-cycle at max_iters sets `oscillating` and returns the mean of the
/// last two iterates.
PeakEstimate mim2(const Window& window, const IterationConfig& cfg = {});

/// Symmetry residual at x_p with intervals located at x_p itself, over the
/// window samples whose mirrors stay on the source grid.
Residual residual_s(const Window& window, double x_p);

/// Symmetry residual as a function of x_p with intervals frozen at the
/// positions recorded in `points` (from mirror_points at some previous
/// x_p). This is the quadratic objective one mim2_step minimizes; the grid
/// oracle scans it to validate the closed form.
double residual_s_frozen(const Window& window, const std::vector<MirrorPoint>& points,
                         double x_p);

/// Run the named estimator. Centroid yields iterations = 0, converged =
/// true and an empty history.
PeakEstimate estimate(const Window& window, Method method, const IterationConfig& cfg = {});

} // namespace mimpeak

#pragma once

#include <cstddef>

#include "mimpeak/signal.hpp"

namespace mimpeak {

/// Location of the sample maximum. On ties the index is the first index of
/// the tied run and the position is the run's midpoint (possibly between
/// grid points).
struct ArgmaxResult {
    std::size_t index = 0;
    double position = 0.0;
};

ArgmaxResult argmax_position(const Spectrum& spectrum);

/// Contiguous above-threshold slice [lo, hi] of a spectrum around its
/// maximum. Estimators operate on the window's samples only; `slice()`
/// exposes them as a standalone uniform spectrum.
class Window {
public:
    Window(Spectrum source, std::size_t lo, std::size_t hi, double threshold);

    const Spectrum& source() const noexcept { return source_; }
    std::size_t lo() const noexcept { return lo_; }
    std::size_t hi() const noexcept { return hi_; }
    std::size_t size() const noexcept { return hi_ - lo_ + 1; }
    double threshold() const noexcept { return threshold_; }

    /// k-th window sample, k in [0, size()).
    double x(std::size_t k) const noexcept { return slice_.x(k); }
    double y(std::size_t k) const noexcept { return slice_.y(k); }

    const Spectrum& slice() const noexcept { return slice_; }

private:
    Spectrum source_;
    Spectrum slice_;
    std::size_t lo_;
    std::size_t hi_;
    double threshold_;
};

/// Walk outwards from the spectrum maximum while samples stay >= threshold
/// (samples exactly at the threshold are kept). Throws WindowError when the
/// peak itself is below the threshold or fewer than 3 samples survive.
Window select_window(const Spectrum& spectrum, double threshold);

} // namespace mimpeak

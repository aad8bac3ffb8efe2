#include "mimpeak/select.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mimpeak/errors.hpp"

namespace mimpeak {

namespace {

Spectrum make_slice(const Spectrum& source, std::size_t lo, std::size_t hi) {
    if (lo > hi || hi >= source.size())
        throw std::invalid_argument("window indices out of range");
    std::vector<double> y(source.amplitudes().begin() + static_cast<std::ptrdiff_t>(lo),
                          source.amplitudes().begin() + static_cast<std::ptrdiff_t>(hi) + 1);
    return Spectrum(source.x(lo), source.dx(), std::move(y));
}

} // namespace

ArgmaxResult argmax_position(const Spectrum& spectrum) {
    std::size_t first = 0;
    for (std::size_t i = 1; i < spectrum.size(); ++i)
        if (spectrum.y(i) > spectrum.y(first)) first = i;
    // midpoint of the tied run starting at the maximum
    std::size_t last = first;
    while (last + 1 < spectrum.size() && spectrum.y(last + 1) == spectrum.y(first)) ++last;
    const double mid = 0.5 * (static_cast<double>(first) + static_cast<double>(last));
    return {first, spectrum.x0() + mid * spectrum.dx()};
}

Window::Window(Spectrum source, std::size_t lo, std::size_t hi, double threshold)
    : source_(std::move(source)),
      slice_(make_slice(source_, lo, hi)),
      lo_(lo),
      hi_(hi),
      threshold_(threshold) {}

Window select_window(const Spectrum& spectrum, double threshold) {
    const ArgmaxResult peak = argmax_position(spectrum);
    if (spectrum.y(peak.index) < threshold) {
        std::ostringstream msg;
        msg << "empty window: peak amplitude " << spectrum.y(peak.index)
            << " is below threshold " << threshold;
        throw WindowError(msg.str());
    }
    std::size_t lo = peak.index;
    while (lo > 0 && spectrum.y(lo - 1) >= threshold) --lo;
    std::size_t hi = peak.index;
    while (hi + 1 < spectrum.size() && spectrum.y(hi + 1) >= threshold) ++hi;
    if (hi - lo + 1 < 3) {
        std::ostringstream msg;
        msg << "too few samples: only " << (hi - lo + 1)
            << " above threshold " << threshold << ", need at least 3";
        throw WindowError(msg.str());
    }
    return Window(spectrum, lo, hi, threshold);
}

} // namespace mimpeak

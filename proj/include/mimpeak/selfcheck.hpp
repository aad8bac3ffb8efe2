#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "mimpeak/bench.hpp"

namespace mimpeak {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct SelfCheckReport {
    std::vector<CheckResult> checks;
    /// Which type-II denominator the grid oracle confirmed:
    /// "2*sum(a_i^2)", "sum(a_i^2)" or "ambiguous".
    std::string confirmed_denominator;

    bool all_passed() const;
};

/// Embedded property checks: noise-free fixed points, mirror involution,
/// and the type-II stationary point against a dense grid search of the
/// frozen residual on `window_count` randomized noisy windows. The grid
/// scan also discriminates the two candidate denominator forms.
SelfCheckReport run_selfcheck(std::size_t window_count = 100,
                              std::uint64_t seed = kDefaultSeed);

} // namespace mimpeak

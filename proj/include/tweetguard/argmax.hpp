#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>

namespace tweetguard {

/// Relative gap below which two class scores count as tied. Scores that are
/// equal in exact arithmetic can differ in the last few bits depending on
/// summation order; the tie rule must not depend on that.
inline constexpr double kTieTolerance = 1e-12;

/// Index of the lowest-numbered score within kTieTolerance of the maximum.
inline std::size_t argmax_lowest(std::span<const double> scores) noexcept {
    if (scores.empty()) return 0;
    const double best = *std::max_element(scores.begin(), scores.end());
    const double slack = kTieTolerance * std::max(1.0, std::abs(best));
    for (std::size_t i = 0; i < scores.size(); ++i)
        if (scores[i] >= best - slack) return i;
    return 0;
}

}  // namespace tweetguard

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace tweetguard {

/// Sparse feature vector: strictly increasing indices with finite, non-zero
/// values of the same length.
struct SparseVector {
    std::vector<std::uint32_t> indices;
    std::vector<double> values;

    std::size_t nnz() const noexcept { return indices.size(); }
    bool empty() const noexcept { return indices.empty(); }

    /// Largest index + 1, or 0 when empty.
    std::size_t min_dimension() const noexcept { return indices.empty() ? 0 : indices.back() + 1u; }

    double dot(std::span<const double> dense) const noexcept {
        double s = 0.0;
        for (std::size_t i = 0; i < indices.size(); ++i) s += values[i] * dense[indices[i]];
        return s;
    }

    /// dense += scale * this
    void axpy_into(double scale, std::span<double> dense) const noexcept {
        for (std::size_t i = 0; i < indices.size(); ++i) dense[indices[i]] += scale * values[i];
    }

    double squared_norm() const noexcept {
        double s = 0.0;
        for (double v : values) s += v * v;
        return s;
    }

    friend bool operator==(const SparseVector&, const SparseVector&) = default;
};

/// Throws Error unless the SparseVector invariants hold (and every index is
/// below `dimension` when given).
void validate(const SparseVector& v, std::size_t dimension = SIZE_MAX);

}  // namespace tweetguard

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace tweetguard {

/// xorshift64* generator seeded through one round of splitmix64.
///
///   state0 = splitmix64(seed)            (0 is replaced by 0x9E3779B97F4A7C15)
///   x ^= x >> 12; x ^= x << 25; x ^= x >> 27; state = x
///   output = x * 0x2545F4914F6CDD1D
///
/// Every shuffle, fold assignment and stochastic solver draws from this
/// generator, so results are reproducible across platforms and languages.
class Xorshift64Star {
public:
    explicit Xorshift64Star(std::uint64_t seed) noexcept;

    std::uint64_t next() noexcept;

    /// Uniform integer in [0, bound) by rejection sampling; bound must be > 0.
    std::uint64_t uniform_below(std::uint64_t bound) noexcept;

private:
    std::uint64_t state_;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Fisher-Yates: for i = n-1 down to 1, swap(v[i], v[uniform_below(i+1)]).
template <typename T>
void shuffle_in_place(std::vector<T>& v, Xorshift64Star& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        auto j = static_cast<std::size_t>(rng.uniform_below(i));
        using std::swap;
        swap(v[i - 1], v[j]);
    }
}

/// A seeded permutation of 0..n-1.
std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed);

}  // namespace tweetguard

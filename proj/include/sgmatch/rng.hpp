#pragma once

// SplitMix64 streams. A stream is identified by a master seed and a path of integer tags;
// the same (seed, tags) always yields the same sequence on every platform, independent of how
// work is scheduled across threads.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <utility>

namespace sgmatch::rng {

inline constexpr std::uint64_t splitmix64_next(std::uint64_t& state) noexcept {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Seed of the substream reached from `seed` along `tags`.
inline constexpr std::uint64_t derive(std::uint64_t seed,
                                      std::initializer_list<std::uint64_t> tags) noexcept {
    std::uint64_t state = seed;
    std::uint64_t key = splitmix64_next(state);
    for (std::uint64_t t : tags) {
        state = key ^ (t * 0xD1B54A32D192ED03ull);
        key = splitmix64_next(state);
    }
    return key;
}

class Stream {
public:
    explicit constexpr Stream(std::uint64_t seed) noexcept : state_(seed) {}
    Stream(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) noexcept
        : state_(derive(seed, tags)) {}

    constexpr std::uint64_t next() noexcept { return splitmix64_next(state_); }

    /// Uniform on [0, 1) with 53 random bits.
    constexpr double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    constexpr bool bernoulli(double p) noexcept { return uniform() < p; }

    /// Uniform on {0, ..., n-1}, unbiased (Lemire's multiply-and-reject); n > 0.
    std::uint64_t below(std::uint64_t n) noexcept {
        unsigned __int128 m = static_cast<unsigned __int128>(next()) * n;
        auto low = static_cast<std::uint64_t>(m);
        if (low < n) {
            const std::uint64_t threshold = (0 - n) % n;
            while (low < threshold) {
                m = static_cast<unsigned __int128>(next()) * n;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    template <class T>
    void shuffle(std::span<T> items) noexcept {
        for (std::size_t i = items.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    std::uint64_t state_;
};

}  // namespace sgmatch::rng

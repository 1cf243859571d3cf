#pragma once

#include <cstdint>
#include <initializer_list>

namespace bpqm {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// splitmix64 finalizer
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) {
    return mix64(a ^ mix64(b + kGolden));
}

// Top 53 bits to [0, 1).
constexpr double to_unit(std::uint64_t x) {
    return static_cast<double>(x >> 11) * 0x1.0p-53;
}

// Counter-indexed uniform draw: the value depends only on (key, index), so
// work split across threads sees the same numbers as a serial loop.
constexpr double uniform_at(std::uint64_t key, std::uint64_t index) {
    return to_unit(hash_combine(key, index));
}

// Reproducible splitmix64 stream. Only integer arithmetic is involved, so a
// seed produces the same sequence on every platform (unlike the std::
// distributions, whose algorithms are implementation-defined).
class RngStream {
public:
    explicit RngStream(std::uint64_t seed = 0) : seed_(seed), state_(seed) {}

    std::uint64_t next_u64() {
        state_ += kGolden;
        ++counter_;
        return mix64(state_);
    }

    double uniform() { return to_unit(next_u64()); }

    // Uniform integer in [0, n); Lemire's multiply-shift with rejection.
    std::uint64_t below(std::uint64_t n);

    // Independent child stream keyed by tags; does not advance this stream.
    RngStream derive(std::initializer_list<std::uint64_t> tags) const {
        std::uint64_t s = seed_;
        for (auto t : tags) s = hash_combine(s, t);
        return RngStream(s);
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t counter() const { return counter_; }

private:
    std::uint64_t seed_;
    std::uint64_t state_;
    std::uint64_t counter_ = 0;
};

inline std::uint64_t RngStream::below(std::uint64_t n) {
    unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
        const std::uint64_t threshold = (0 - n) % n;
        while (low < threshold) {
            m = static_cast<unsigned __int128>(next_u64()) * n;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

}  // namespace bpqm

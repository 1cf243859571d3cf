#pragma once

#include "bpqm/rng.hpp"
#include "bpqm/spectra.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace bpqm {

// Monte-Carlo stand-in for a heralded mixture: M eigen lists of one
// alphabet size, stored contiguously (sample i occupies [i*q, (i+1)*q)).
class ChannelBag {
public:
    // Validates every sample as an EigenList would.
    ChannelBag(int q, std::vector<double> flat);

    static ChannelBag constant(const EigenList& lam, std::size_t m);
    static ChannelBag from_samples(const std::vector<EigenList>& samples);

    int q() const { return q_; }
    std::size_t size() const { return data_.size() / static_cast<std::size_t>(q_); }
    std::span<const double> sample(std::size_t i) const {
        return {data_.data() + i * static_cast<std::size_t>(q_), static_cast<std::size_t>(q_)};
    }
    EigenList at(std::size_t i) const;
    const std::vector<double>& data() const { return data_; }

    bool operator==(const ChannelBag&) const = default;

private:
    struct Trusted {};
    ChannelBag(Trusted, int q, std::vector<double> flat) : q_(q), data_(std::move(flat)) {}

    friend ChannelBag bag_bit_combine(const ChannelBag&, const ChannelBag&, RngStream&);
    friend ChannelBag bag_check_combine(const ChannelBag&, const ChannelBag&, RngStream&);

    int q_;
    std::vector<double> data_;
};

inline constexpr std::size_t kMaxBagDoubles = 100'000'000;

// Fisher-Yates permutation of [0, n) driven by the stream.
std::vector<std::uint32_t> random_permutation(std::size_t n, RngStream& rng);

// Pairs b1[i] with a shuffled b2 and bit-combines each pair. Draws exactly
// one 64-bit key from rng; everything else is derived from that key.
ChannelBag bag_bit_combine(const ChannelBag& b1, const ChannelBag& b2, RngStream& rng);

// Same pairing, then keeps one check-node branch per pair sampled by
// inverse CDF over m = 0..q-1.
ChannelBag bag_check_combine(const ChannelBag& b1, const ChannelBag& b2, RngStream& rng);

struct BagStats {
    double mean_pgm_error = 0;
    double mean_holevo = 0;  // nats
    double mean_holevo_qits = 0;
    double mean_fidelity = 0;
};

BagStats bag_stats(const ChannelBag& b);
double bag_mean_pgm_error(const ChannelBag& b);

// True when every sample is within tol of [1, ..., 1].
bool bag_is_perfect(const ChannelBag& b, double tol = 1e-9);

}  // namespace bpqm

#include "bpqm/polar.hpp"

#include "bpqm/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace bpqm {

namespace {

void require_levels(int n, std::size_t m) {
    if (n < 0 || n > 30) throw InvalidInput("polarization levels must lie in [0, 30]");
    if (m == 0) throw InvalidInput("bag size M must be >= 1");
}

// Randomness for the two children of node `index` at depth `level - 1`.
RngStream node_stream(std::uint64_t seed, int level, std::size_t index, int child) {
    return RngStream(seed).derive({static_cast<std::uint64_t>(level), index, static_cast<std::uint64_t>(child)});
}

std::pair<ChannelBag, ChannelBag> split(const ChannelBag& parent, std::uint64_t seed, int level, std::size_t index) {
    RngStream check_rng = node_stream(seed, level, index, 0);
    RngStream bit_rng = node_stream(seed, level, index, 1);
    return {bag_check_combine(parent, parent, check_rng), bag_bit_combine(parent, parent, bit_rng)};
}

void descend(const ChannelBag& bag, int level, int n, std::size_t index, std::uint64_t seed,
             std::vector<BagStats>& out) {
    if (level == n) {
        out[index] = bag_stats(bag);
        return;
    }
    auto [minus, plus] = split(bag, seed, level + 1, index);
    descend(minus, level + 1, n, 2 * index, seed, out);
    descend(plus, level + 1, n, 2 * index + 1, seed, out);
}

}  // namespace

std::vector<ChannelBag> polar_de(const EigenList& lam, int n, std::size_t m, std::uint64_t seed) {
    require_levels(n, m);
    if (std::ldexp(static_cast<double>(m) * lam.q(), n) > kMaxPolarLeafDoubles)
        throw GuardViolation("polar_de would hold 2^n * M * q = " +
                             std::to_string(std::ldexp(static_cast<double>(m) * lam.q(), n)) +
                             " doubles; use polar_de_stats");
    std::vector<ChannelBag> level{ChannelBag::constant(lam, m)};
    for (int k = 1; k <= n; ++k) {
        std::vector<ChannelBag> next;
        next.reserve(level.size() * 2);
        for (std::size_t i = 0; i < level.size(); ++i) {
            auto [minus, plus] = split(level[i], seed, k, i);
            next.push_back(std::move(minus));
            next.push_back(std::move(plus));
        }
        level = std::move(next);
    }
    return level;
}

std::vector<BagStats> polar_de_stats(const EigenList& lam, int n, std::size_t m, std::uint64_t seed) {
    require_levels(n, m);
    const double work = std::ldexp(static_cast<double>(m), n + 1) * lam.q() * lam.q();
    if (work > kMaxPolarWork)
        throw GuardViolation("polar density evolution with n=" + std::to_string(n) + ", M=" + std::to_string(m) +
                             " exceeds the work budget");
    std::vector<BagStats> out(std::size_t{1} << n);
    descend(ChannelBag::constant(lam, m), 0, n, 0, seed, out);
    return out;
}

PolarDesignResult design_info_set(const std::vector<double>& per_channel_error, double epsilon) {
    if (per_channel_error.empty()) throw InvalidInput("no channels to design over");
    if (!(epsilon >= 0.0)) throw InvalidInput("target block error rate must be >= 0");
    const std::size_t nch = per_channel_error.size();
    std::vector<std::size_t> order(nch);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return per_channel_error[a] < per_channel_error[b]; });

    PolarDesignResult r;
    r.block_length = nch;
    r.n = static_cast<int>(std::lround(std::log2(static_cast<double>(nch))));
    r.per_channel_error = per_channel_error;
    r.epsilon = epsilon;
    double partial = 0.0;
    for (std::size_t idx : order) {
        if (4.0 * (partial + per_channel_error[idx]) > epsilon) break;
        partial += per_channel_error[idx];
        r.info_set.push_back(idx + 1);
    }
    std::sort(r.info_set.begin(), r.info_set.end());
    r.design_rate = static_cast<double>(r.info_set.size()) / nch;
    return r;
}

PolarDesignResult design_info_set(const std::vector<ChannelBag>& leaves, double epsilon) {
    std::vector<double> err;
    err.reserve(leaves.size());
    for (const auto& b : leaves) err.push_back(bag_stats(b).mean_pgm_error);
    return design_info_set(err, epsilon);
}

PolarDesignResult polar_design(const EigenList& lam, int n, std::size_t m, double epsilon, std::uint64_t seed) {
    std::vector<double> err;
    for (const auto& s : polar_de_stats(lam, n, m, seed)) err.push_back(s.mean_pgm_error);
    PolarDesignResult r = design_info_set(err, epsilon);
    r.n = n;
    r.seed = seed;
    r.bag_size = m;
    return r;
}

std::vector<RankRow> normalized_rank(const std::vector<double>& per_channel_error) {
    std::vector<std::size_t> order(per_channel_error.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return per_channel_error[a] < per_channel_error[b]; });
    std::vector<RankRow> rows;
    rows.reserve(order.size());
    for (std::size_t r = 0; r < order.size(); ++r) rows.push_back({order[r] + 1, r + 1, per_channel_error[order[r]]});
    return rows;
}

std::vector<SweepRow> rate_vs_lambda0_sweep(int q, int n, double epsilon, const std::vector<double>& grid,
                                            std::size_t m, std::uint64_t seed) {
    std::vector<SweepRow> rows;
    for (double l0 : grid) {
        if (!(l0 >= 1.0 && l0 <= q)) throw InvalidInput("sweep lambda0 values must lie in [1, q]");
        const EigenList lam = EigenList::one_parameter(q, l0);
        const PolarDesignResult r = polar_design(lam, n, m, epsilon, seed);
        rows.push_back({l0, r.design_rate, holevo_information(lam, LogBase::q), n, m, seed, epsilon});
    }
    return rows;
}

}  // namespace bpqm

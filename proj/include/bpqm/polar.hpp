#pragma once

#include "bpqm/bag.hpp"
#include "bpqm/spectra.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace bpqm {

// Memory budget for polar_de, which materializes every leaf bag.
inline constexpr double kMaxPolarLeafDoubles = 5e7;
// Work budget (pair combinations) for the streaming variant.
inline constexpr double kMaxPolarWork = 2e10;

// Leaf bags of n polarization levels. Channel 2i-1 (1-based) is the check
// child of parent i and 2i its bit child; each combine pairs a bag with an
// independently shuffled copy of itself. Every node draws its randomness
// from (seed, level, parent index), so the result does not depend on the
// traversal order.
std::vector<ChannelBag> polar_de(const EigenList& lam, int n, std::size_t m, std::uint64_t seed);

// Same recursion walked depth first, keeping only per-leaf statistics.
// Produces bitwise the same numbers as bag_stats over polar_de's leaves.
std::vector<BagStats> polar_de_stats(const EigenList& lam, int n, std::size_t m, std::uint64_t seed);

struct PolarDesignResult {
    int n = 0;
    std::size_t block_length = 0;
    std::vector<double> per_channel_error;
    std::vector<std::size_t> info_set;  // 1-based, ascending
    double design_rate = 0;
    double epsilon = 0;
    std::uint64_t seed = 0;
    std::size_t bag_size = 0;

    // design_rate == 0 because even the best channel breaks the budget
    bool empty_design() const { return info_set.empty(); }
};

// Largest greedy-by-smallest-error set with 4 * sum(error) <= epsilon.
PolarDesignResult design_info_set(const std::vector<double>& per_channel_error, double epsilon);
PolarDesignResult design_info_set(const std::vector<ChannelBag>& leaves, double epsilon);

PolarDesignResult polar_design(const EigenList& lam, int n, std::size_t m, double epsilon, std::uint64_t seed);

struct RankRow {
    std::size_t index;  // 1-based channel index
    std::size_t rank;   // 1-based rank by ascending error
    double mean_pgm_error;
};

// Channels sorted by ascending error (ties by index).
std::vector<RankRow> normalized_rank(const std::vector<double>& per_channel_error);

struct SweepRow {
    double lambda0;
    double design_rate;
    double holevo_qits;
    int n;
    std::size_t bag_size;
    std::uint64_t seed;
    double epsilon;
};

// One-parameter family [lambda0, (q-lambda0)/(q-1), ...] at every grid
// point, all runs sharing the same seed.
std::vector<SweepRow> rate_vs_lambda0_sweep(int q, int n, double epsilon, const std::vector<double>& grid,
                                            std::size_t m, std::uint64_t seed);

}  // namespace bpqm

#pragma once

#include "bpqm/bag.hpp"
#include "bpqm/spectra.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace bpqm {

struct LdpcParams {
    int dv = 3;
    int dc = 6;
    std::size_t bag_size = 10'000;
    int max_iterations = 100;
    double delta = 1e-6;  // convergence threshold on mean PGM error
    std::uint64_t seed = 0;
};

enum class Verdict { converged, not_converged };

struct LdpcDERun {
    int dv = 0;
    int dc = 0;
    int q = 0;
    double lambda0 = 0;
    std::size_t bag_size = 0;
    int max_iterations = 0;
    double delta = 0;
    std::uint64_t seed = 0;
    std::vector<double> per_iteration_error;
    Verdict verdict = Verdict::not_converged;

    double final_error() const { return per_iteration_error.empty() ? 1.0 : per_iteration_error.back(); }
};

// One round: (dc-1)-fold check combining of the message bag (running result
// against the original bag), (dv-1)-fold bit combining of that result, then
// bit combining with the channel bag.
ChannelBag ldpc_de_iteration(const ChannelBag& channel_bag, const ChannelBag& message_bag, int dv, int dc,
                             RngStream& rng);

// Iterates until the mean PGM error drops below delta (or every sample is
// within 1e-9 of perfect) or max_iterations rounds have run.
LdpcDERun ldpc_de_run(const EigenList& lam, const LdpcParams& params);

struct BisectionStep {
    double lambda0;
    bool converged;
    double final_error;
    int iterations;
};

struct ThresholdResult {
    int dv = 0;
    int dc = 0;
    int q = 0;
    double lambda0_threshold = 0;
    double bracket_width = 0;
    double lower = 0;  // largest lambda0 seen to converge
    double upper = 0;  // smallest lambda0 seen to fail
    std::size_t bag_size = 0;
    int max_iterations = 0;
    std::uint64_t seed = 0;
    double delta = 0;
    double tol = 0;
    std::vector<BisectionStep> path;
};

// Bisection over lambda0 in [1, q] on the one-parameter family until the
// bracket is at most tol wide. Throws NoTransition when both ends agree or
// the ensemble has design rate <= 0.
ThresholdResult threshold_bisect(int q, const LdpcParams& params, double tol);

// lambda0 in (1, q) where the base-q entropy of the one-parameter spectrum
// equals the design rate 1 - dv/dc.
double holevo_limit_lambda0(int dv, int dc, int q);
double one_parameter_holevo_qits(int q, double lambda0);

struct CurvePoint {
    double lambda0;
    double final_error;
    int iterations;
};

// Final mean PGM error after DE at every grid point.
std::vector<CurvePoint> ldpc_error_curve(int q, const LdpcParams& params, const std::vector<double>& grid);

}  // namespace bpqm

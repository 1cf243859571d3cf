#include "bpqm/ldpc.hpp"

#include "bpqm/error.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <cmath>
#include <cstdint>
#include <string>

namespace bpqm {

namespace {

void validate(const LdpcParams& p) {
    if (p.dv < 2 || p.dc < 2) throw InvalidInput("LDPC degrees must satisfy dv >= 2 and dc >= 2");
    if (p.bag_size == 0) throw InvalidInput("bag size M must be >= 1");
    if (p.max_iterations < 1) throw InvalidInput("iteration budget T must be >= 1");
    if (!(p.delta > 0.0)) throw InvalidInput("convergence threshold delta must be > 0");
}

}  // namespace

ChannelBag ldpc_de_iteration(const ChannelBag& channel_bag, const ChannelBag& message_bag, int dv, int dc,
                             RngStream& rng) {
    if (dv < 2 || dc < 2) throw InvalidInput("LDPC degrees must satisfy dv >= 2 and dc >= 2");
    ChannelBag checked = message_bag;
    for (int r = 2; r <= dc - 1; ++r) checked = bag_check_combine(checked, message_bag, rng);
    ChannelBag ext = checked;
    for (int r = 2; r <= dv - 1; ++r) ext = bag_bit_combine(ext, checked, rng);
    return bag_bit_combine(channel_bag, ext, rng);
}

LdpcDERun ldpc_de_run(const EigenList& lam, const LdpcParams& params) {
    validate(params);
    LdpcDERun run;
    run.dv = params.dv;
    run.dc = params.dc;
    run.q = lam.q();
    run.lambda0 = lam[0];
    run.bag_size = params.bag_size;
    run.max_iterations = params.max_iterations;
    run.delta = params.delta;
    run.seed = params.seed;

    const ChannelBag channel = ChannelBag::constant(lam, params.bag_size);
    ChannelBag message = channel;
    const RngStream root(params.seed);
    for (int t = 1; t <= params.max_iterations; ++t) {
        RngStream rng = root.derive({static_cast<std::uint64_t>(t)});
        message = ldpc_de_iteration(channel, message, params.dv, params.dc, rng);
        const double err = bag_mean_pgm_error(message);
        run.per_iteration_error.push_back(err);
        if (err < params.delta || bag_is_perfect(message)) {
            run.verdict = Verdict::converged;
            break;
        }
    }
    return run;
}

ThresholdResult threshold_bisect(int q, const LdpcParams& params, double tol) {
    validate(params);
    if (q < 2) throw InvalidInput("q must be >= 2");
    if (!(tol > 0.0)) throw InvalidInput("bisection tolerance must be > 0");
    if (params.dv >= params.dc)
        throw NoTransition("(dv, dc) = (" + std::to_string(params.dv) + ", " + std::to_string(params.dc) +
                           ") has design rate <= 0; no threshold to locate");

    ThresholdResult r;
    r.dv = params.dv;
    r.dc = params.dc;
    r.q = q;
    r.bag_size = params.bag_size;
    r.max_iterations = params.max_iterations;
    r.seed = params.seed;
    r.delta = params.delta;
    r.tol = tol;

    std::uint64_t step = 0;
    auto verdict = [&](double l0) {
        LdpcParams p = params;
        p.seed = hash_combine(params.seed, step++);
        const LdpcDERun run = ldpc_de_run(EigenList::one_parameter(q, l0), p);
        const bool ok = run.verdict == Verdict::converged;
        r.path.push_back({l0, ok, run.final_error(), static_cast<int>(run.per_iteration_error.size())});
        return ok;
    };

    double lo = 1.0;
    double hi = q;
    const bool lo_ok = verdict(lo);
    const bool hi_ok = verdict(hi);
    if (lo_ok == hi_ok)
        throw NoTransition(std::string("density evolution ") + (lo_ok ? "converges" : "fails") +
                           " at both ends of [1, q]; check M, T and delta");
    if (!lo_ok) throw NoTransition("density evolution fails on the perfect channel and converges on the useless one");

    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (verdict(mid))
            lo = mid;
        else
            hi = mid;
    }
    r.lower = lo;
    r.upper = hi;
    r.bracket_width = hi - lo;
    r.lambda0_threshold = 0.5 * (lo + hi);
    return r;
}

double one_parameter_holevo_qits(int q, double lambda0) {
    return holevo_information(EigenList::one_parameter(q, lambda0), LogBase::q);
}

double holevo_limit_lambda0(int dv, int dc, int q) {
    if (dv < 1 || dc < 1) throw InvalidInput("LDPC degrees must be positive");
    const double rate = 1.0 - static_cast<double>(dv) / dc;
    if (!(rate > 0.0 && rate < 1.0)) throw InvalidInput("design rate 1 - dv/dc must lie in (0, 1)");
    auto f = [&](double l0) { return one_parameter_holevo_qits(q, l0) - rate; };
    std::uintmax_t max_iter = 200;
    const auto [a, b] = boost::math::tools::toms748_solve(f, 1.0, static_cast<double>(q), 1.0 - rate, -rate,
                                                          boost::math::tools::eps_tolerance<double>(52), max_iter);
    return 0.5 * (a + b);
}

std::vector<CurvePoint> ldpc_error_curve(int q, const LdpcParams& params, const std::vector<double>& grid) {
    std::vector<CurvePoint> out;
    for (double l0 : grid) {
        const LdpcDERun run = ldpc_de_run(EigenList::one_parameter(q, l0), params);
        out.push_back({l0, run.final_error(), static_cast<int>(run.per_iteration_error.size())});
    }
    return out;
}

}  // namespace bpqm

#include "bpqm/bag.hpp"

#include "bpqm/combine.hpp"
#include "bpqm/error.hpp"
#include "bpqm/parallel.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace bpqm {

namespace {

void require_pairable(const ChannelBag& b1, const ChannelBag& b2) {
    if (b1.q() != b2.q()) throw DimensionMismatch("bags have different alphabet sizes");
    if (b1.size() != b2.size())
        throw SizeMismatch("bag sizes differ: " + std::to_string(b1.size()) + " vs " + std::to_string(b2.size()));
}

}  // namespace

ChannelBag::ChannelBag(int q, std::vector<double> flat) : q_(q), data_(std::move(flat)) {
    if (q < 2) throw InvalidInput("bag needs q >= 2");
    if (data_.empty() || data_.size() % static_cast<std::size_t>(q) != 0)
        throw InvalidInput("bag data must hold M >= 1 samples of length q");
    if (data_.size() > kMaxBagDoubles) throw GuardViolation("bag exceeds the memory budget");
    for (std::size_t i = 0; i < size(); ++i) {
        const EigenList checked(std::vector<double>(sample(i).begin(), sample(i).end()));
        std::copy(checked.vector().begin(), checked.vector().end(), data_.begin() + i * q);
    }
}

ChannelBag ChannelBag::constant(const EigenList& lam, std::size_t m) {
    if (m == 0) throw InvalidInput("bag size M must be >= 1");
    if (m * lam.q() > kMaxBagDoubles) throw GuardViolation("bag exceeds the memory budget");
    std::vector<double> flat;
    flat.reserve(m * lam.q());
    for (std::size_t i = 0; i < m; ++i) flat.insert(flat.end(), lam.vector().begin(), lam.vector().end());
    return ChannelBag(Trusted{}, lam.q(), std::move(flat));
}

ChannelBag ChannelBag::from_samples(const std::vector<EigenList>& samples) {
    if (samples.empty()) throw InvalidInput("bag needs at least one sample");
    const int q = samples.front().q();
    std::vector<double> flat;
    for (const auto& s : samples) {
        if (s.q() != q) throw DimensionMismatch("bag samples have different alphabet sizes");
        flat.insert(flat.end(), s.vector().begin(), s.vector().end());
    }
    return ChannelBag(Trusted{}, q, std::move(flat));
}

EigenList ChannelBag::at(std::size_t i) const {
    return EigenList(std::vector<double>(sample(i).begin(), sample(i).end()));
}

std::vector<std::uint32_t> random_permutation(std::size_t n, RngStream& rng) {
    std::vector<std::uint32_t> p(n);
    std::iota(p.begin(), p.end(), 0u);
    for (std::size_t i = n; i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.below(i));
        std::swap(p[i - 1], p[j]);
    }
    return p;
}

ChannelBag bag_bit_combine(const ChannelBag& b1, const ChannelBag& b2, RngStream& rng) {
    require_pairable(b1, b2);
    const std::uint64_t key = rng.next_u64();
    RngStream shuffle(hash_combine(key, 0));
    const auto perm = random_permutation(b2.size(), shuffle);
    const int q = b1.q();
    std::vector<double> out(b1.data().size());
    parallel_for(b1.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i)
            bit_combine_into(b1.sample(i), b2.sample(perm[i]), {out.data() + i * q, static_cast<std::size_t>(q)});
    });
    return ChannelBag(ChannelBag::Trusted{}, q, std::move(out));
}

ChannelBag bag_check_combine(const ChannelBag& b1, const ChannelBag& b2, RngStream& rng) {
    require_pairable(b1, b2);
    const std::uint64_t key = rng.next_u64();
    RngStream shuffle(hash_combine(key, 0));
    const auto perm = random_permutation(b2.size(), shuffle);
    const std::uint64_t branch_key = hash_combine(key, 1);
    const int q = b1.q();
    const double q2 = static_cast<double>(q) * q;
    std::vector<double> out(b1.data().size());
    parallel_for(b1.size(), [&](std::size_t begin, std::size_t end) {
        std::vector<double> w(q);
        for (std::size_t i = begin; i < end; ++i) {
            const auto a = b1.sample(i);
            const auto b = b2.sample(perm[i]);
            check_branch_weights(a, b, w);
            double kept = 0.0;
            for (double x : w)
                if (x / q2 >= kBranchCutoff) kept += x;
            const double target = uniform_at(branch_key, i) * kept;
            int chosen = -1;
            double cum = 0.0;
            for (int m = 0; m < q; ++m) {
                if (w[m] / q2 < kBranchCutoff) continue;
                chosen = m;
                cum += w[m];
                if (target < cum) break;
            }
            check_branch_into(a, b, chosen, w[chosen], {out.data() + i * q, static_cast<std::size_t>(q)});
        }
    });
    return ChannelBag(ChannelBag::Trusted{}, q, std::move(out));
}

BagStats bag_stats(const ChannelBag& b) {
    const std::size_t n = b.size();
    std::vector<double> err(n), hol(n), fid(n);
    parallel_for(n, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const EigenList lam = b.at(i);
            err[i] = pgm_error(lam);
            hol[i] = holevo_information(lam);
            fid[i] = channel_fidelity(lam);
        }
    });
    BagStats s;
    s.mean_pgm_error = std::accumulate(err.begin(), err.end(), 0.0) / n;
    s.mean_holevo = std::accumulate(hol.begin(), hol.end(), 0.0) / n;
    s.mean_holevo_qits = s.mean_holevo / std::log(static_cast<double>(b.q()));
    s.mean_fidelity = std::accumulate(fid.begin(), fid.end(), 0.0) / n;
    return s;
}

double bag_mean_pgm_error(const ChannelBag& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) acc += pgm_error(b.sample(i));
    return acc / b.size();
}

bool bag_is_perfect(const ChannelBag& b, double tol) {
    for (double x : b.data())
        if (std::abs(x - 1.0) > tol) return false;
    return true;
}

}  // namespace bpqm

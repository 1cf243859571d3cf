#include "bpqm/verify.hpp"

#include "bpqm/linalg.hpp"
#include "bpqm/unitaries.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bpqm {

EigenList random_eigen_list(int q, RngStream& rng) {
    std::vector<double> v(q);
    const double mode = rng.uniform();
    if (mode < 0.15) return random_one_parameter_list(q, rng);
    for (auto& x : v) x = -std::log1p(-rng.uniform());
    if (mode < 0.3) {
        // knock out a random proper subset
        const std::size_t zeros = rng.below(static_cast<std::uint64_t>(q));
        for (std::size_t k = 0; k < zeros; ++k) v[rng.below(static_cast<std::uint64_t>(q))] = 0.0;
        if (std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; })) v[0] = 1.0;
    }
    const double s = std::accumulate(v.begin(), v.end(), 0.0);
    for (auto& x : v) x *= q / s;
    return EigenList(std::move(v));
}

EigenList random_one_parameter_list(int q, RngStream& rng) {
    return EigenList::one_parameter(q, q * rng.uniform());
}

double branch_list_defect(const std::vector<CheckBranch>& a, const std::vector<CheckBranch>& b) {
    double worst = 0;
    auto find = [](const std::vector<CheckBranch>& list, int m) -> const CheckBranch* {
        for (const auto& br : list)
            if (br.m == m) return &br;
        return nullptr;
    };
    auto visit = [&](const std::vector<CheckBranch>& x, const std::vector<CheckBranch>& y) {
        for (const auto& bx : x) {
            const CheckBranch* by = find(y, bx.m);
            if (!by) {
                worst = std::max(worst, bx.prob);
                continue;
            }
            worst = std::max(worst, std::abs(bx.prob - by->prob));
            for (int j = 0; j < bx.lam.q(); ++j) worst = std::max(worst, std::abs(bx.lam[j] - by->lam[j]));
        }
    };
    visit(a, b);
    visit(b, a);
    return worst;
}

namespace {

SuiteResult row(std::string name, int q, std::size_t cases, double tol) {
    return SuiteResult{std::move(name), q, cases, 0.0, tol};
}

void note(SuiteResult& r, double defect) {
    // NaN must fail the row
    if (!(defect <= r.max_defect)) r.max_defect = std::isnan(defect) ? INFINITY : defect;
}

double eigen_diff(const EigenList& a, const EigenList& b) {
    double d = 0;
    for (int j = 0; j < a.q(); ++j) d = std::max(d, std::abs(a[j] - b[j]));
    return d;
}

// Largest entry outside the diagonal label blocks.
double off_block_defect(const UnitaryBundle& u) {
    const Eigen::Index b = static_cast<Eigen::Index>(u.q) * u.q;
    double d = 0;
    for (Eigen::Index i = 0; i < u.matrix.rows(); ++i)
        for (Eigen::Index k = 0; k < u.matrix.cols(); ++k)
            if (i / b != k / b) d = std::max(d, std::abs(u.matrix(i, k)));
    return d;
}

}  // namespace

std::vector<SuiteResult> oracle_equivalence_suite(int q, std::size_t pairs, std::uint64_t seed) {
    RngStream rng = RngStream(seed).derive({0x6f72u, static_cast<std::uint64_t>(q)});
    auto check = row("check_combine vs dense oracle", q, pairs, 1e-9);
    auto bit = row("bit_combine vs dense oracle", q, pairs, 1e-9);
    auto pgm = row("pgm_error vs dense oracle", q, 2 * pairs, 1e-9);
    for (std::size_t i = 0; i < pairs; ++i) {
        const EigenList a = random_eigen_list(q, rng);
        const EigenList b = random_eigen_list(q, rng);
        note(check, branch_list_defect(check_combine_branches(a, b), check_combine_oracle(a, b)));
        note(bit, eigen_diff(bit_combine(a, b), bit_combine_oracle(a, b)));
        note(pgm, std::abs(pgm_error(a) - pgm_error_oracle(a)));
        note(pgm, std::abs(pgm_error(b) - pgm_error_oracle(b)));
    }
    return {check, bit, pgm};
}

std::vector<SuiteResult> unitary_contract_suite(int q, std::size_t pairs, std::uint64_t seed) {
    RngStream rng = RngStream(seed).derive({0x7575u, static_cast<std::uint64_t>(q)});
    const int labels = std::max(1, std::min(3, kMaxControlledDim / (q * q)));

    auto perm = row("check permutation action", q, 1, 1e-12);
    auto check_u = row("check unitarity", q, 1, kUnitaryTol);
    auto check_m = row("check measurement statistics", q, pairs, 1e-9);
    auto bit_u = row("bit unitarity", q, pairs, kUnitaryTol);
    auto bit_m = row("bit mapping", q, pairs, 1e-9);
    auto conj_u = row("conjugated unitarity", q, 2 * pairs, kUnitaryTol);
    auto conj_check = row("conjugated check statistics", q, pairs, 1e-9);
    auto conj_bit = row("conjugated bit mapping", q, pairs, 1e-9);
    auto ctrl_u = row("controlled unitarity", q, 2 * pairs, kUnitaryTol);
    auto ctrl_block = row("controlled block structure", q, 2 * pairs, 1e-12);
    auto ctrl_check = row("controlled check statistics", q, pairs * labels, 1e-9);
    auto ctrl_bit = row("controlled bit mapping", q, pairs * labels, 1e-9);

    const ComplexMatrix ut = check_permutation(q);
    note(perm, check_permutation_defect(ut, q));
    const UnitaryBundle check = build_check_unitary(q);
    note(check_u, unitarity_defect(check.matrix));

    for (std::size_t i = 0; i < pairs; ++i) {
        const EigenList a = random_eigen_list(q, rng);
        const EigenList b = random_eigen_list(q, rng);
        const auto closed = check_combine_branches(a, b);
        note(check_m, branch_list_defect(closed, check_measurement_statistics(check.matrix, a, b)));

        const UnitaryBundle bit = build_bit_unitary(a, b);
        note(bit_u, unitarity_defect(bit.matrix));
        note(bit_m, bit_contract_defect(bit.matrix, a, b));

        const ComplexMatrix v = random_unitary(q, rng.next_u64());
        const UnitaryBundle check_v = conjugate_unitary(check, v);
        const UnitaryBundle bit_v = conjugate_unitary(bit, v);
        note(conj_u, unitarity_defect(check_v.matrix));
        note(conj_u, unitarity_defect(bit_v.matrix));
        note(conj_check, branch_list_defect(closed, check_measurement_statistics(check_v.matrix, a, b, v)));
        note(conj_bit, bit_contract_defect(bit_v.matrix, a, b, v));

        std::vector<std::pair<EigenList, EigenList>> label_pairs{{a, b}};
        while (static_cast<int>(label_pairs.size()) < labels)
            label_pairs.emplace_back(random_eigen_list(q, rng), random_eigen_list(q, rng));
        const UnitaryBundle cb = build_controlled_bit_unitary(label_pairs);
        const UnitaryBundle cc = build_controlled_check_unitary(q, labels);
        note(ctrl_u, unitarity_defect(cb.matrix));
        note(ctrl_u, unitarity_defect(cc.matrix));
        note(ctrl_block, off_block_defect(cb));
        note(ctrl_block, off_block_defect(cc));
        for (int x = 0; x < labels; ++x) {
            const auto& [lx, rx] = label_pairs[x];
            note(ctrl_bit, bit_contract_defect(label_block(cb, x), lx, rx));
            note(ctrl_check, branch_list_defect(check_combine_branches(lx, rx),
                                                check_measurement_statistics(label_block(cc, x), lx, rx)));
        }
    }
    return {perm, check_u, check_m, bit_u, bit_m, conj_u, conj_check, conj_bit, ctrl_u, ctrl_block, ctrl_check, ctrl_bit};
}

SuiteResult conservation_suite(int q, std::size_t operations, std::uint64_t seed) {
    RngStream rng = RngStream(seed).derive({0x636fu, static_cast<std::uint64_t>(q)});
    auto r = row("trace and probability conservation", q, operations, 1e-9);
    std::vector<double> out(q), w(q);
    for (std::size_t i = 0; i < operations; ++i) {
        const EigenList a = random_eigen_list(q, rng);
        const EigenList b = random_eigen_list(q, rng);
        if (i % 2 == 0) {
            bit_combine_into(a.values(), b.values(), out);
            note(r, std::abs(std::accumulate(out.begin(), out.end(), 0.0) - q));
            continue;
        }
        check_branch_weights(a.values(), b.values(), w);
        double psum = 0;
        for (int m = 0; m < q; ++m) {
            psum += w[m] / (static_cast<double>(q) * q);
            if (w[m] <= 0) continue;
            check_branch_into(a.values(), b.values(), m, w[m], out);
            note(r, std::abs(std::accumulate(out.begin(), out.end(), 0.0) - q));
        }
        note(r, std::abs(psum - 1.0));
    }
    return r;
}

SuiteResult chain_rule_suite(int q, std::size_t pairs, std::uint64_t seed) {
    RngStream rng = RngStream(seed).derive({0x6368u, static_cast<std::uint64_t>(q)});
    auto r = row("Holevo chain rule", q, pairs, 1e-9);
    for (std::size_t i = 0; i < pairs; ++i) {
        const EigenList a = random_eigen_list(q, rng);
        const EigenList b = random_eigen_list(q, rng);
        double lhs = holevo_information(bit_combine(a, b));
        for (const auto& br : check_combine_branches(a, b)) lhs += br.prob * holevo_information(br.lam);
        note(r, std::abs(lhs - holevo_information(a) - holevo_information(b)));
    }
    return r;
}

std::vector<SuiteResult> fidelity_suite(int q, std::size_t pairs, std::uint64_t seed) {
    RngStream rng = RngStream(seed).derive({0x6669u, static_cast<std::uint64_t>(q)});
    constexpr double tol = 1e-12;
    auto bit = row("bit fidelity bound", q, 2 * pairs, tol);
    auto check = row("check fidelity bound", q, 2 * pairs, tol);
    auto special_eq = row("one-parameter bit equality", q, pairs, 1e-12);
    auto special_check = row("one-parameter check bound", q, pairs, tol);
    auto sandwich = row("Holevo-fidelity sandwich", q, 4 * pairs, tol);

    auto sandwich_defect = [](const EigenList& l) {
        const double f = channel_fidelity(l);
        const auto [lo, hi] = fidelity_holevo_bounds(l);
        return std::max({0.0, lo - f, f - hi});
    };
    auto bounds = [&](const FidelityBoundReport& rep) {
        note(bit, std::max(0.0, rep.bit_fidelity - rep.bit_bound));
        note(check, std::max(0.0, rep.check_fidelity - rep.check_bound));
    };

    for (std::size_t i = 0; i < pairs; ++i) {
        const EigenList a = random_eigen_list(q, rng);
        const EigenList b = random_eigen_list(q, rng);
        bounds(fidelity_bound_check(a, b));
        note(sandwich, sandwich_defect(a));
        note(sandwich, sandwich_defect(b));

        const EigenList c = random_one_parameter_list(q, rng);
        const EigenList d = random_one_parameter_list(q, rng);
        const FidelityBoundReport rep = fidelity_bound_check(c, d);
        bounds(rep);
        note(special_eq, rep.one_parameter ? std::abs(rep.bit_fidelity - rep.special_bit_value) : INFINITY);
        note(special_check, std::max(0.0, rep.check_fidelity - rep.special_check_bound));
        note(sandwich, sandwich_defect(c));
        note(sandwich, sandwich_defect(d));
    }
    return {bit, check, special_eq, special_check, sandwich};
}

bool all_passed(const std::vector<SuiteResult>& rows) {
    return std::all_of(rows.begin(), rows.end(), [](const SuiteResult& r) { return r.passed(); });
}

}  // namespace bpqm

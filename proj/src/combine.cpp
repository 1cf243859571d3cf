#include "bpqm/combine.hpp"

#include "bpqm/error.hpp"

#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace bpqm {

namespace {

void require_same_q(int q1, int q2) {
    if (q1 != q2)
        throw DimensionMismatch("alphabet sizes differ: " + std::to_string(q1) + " vs " + std::to_string(q2));
}

}  // namespace

HeraldedEnsemble::HeraldedEnsemble(std::vector<Branch> branches) {
    if (branches.empty()) throw InvalidInput("heralded ensemble needs at least one branch");
    const int q = branches.front().lam.q();
    double total = 0.0;
    for (const auto& b : branches) {
        require_same_q(q, b.lam.q());
        if (!(b.prob >= 0.0 && b.prob <= 1.0 + 1e-9)) throw InvalidInput("branch probability outside [0, 1]");
        total += b.prob;
    }
    if (std::abs(total - 1.0) > 1e-9) throw InvalidInput("branch probabilities must sum to 1");
    double kept = 0.0;
    for (auto& b : branches)
        if (b.prob >= kBranchCutoff) {
            kept += b.prob;
            branches_.push_back(std::move(b));
        }
    if (branches_.empty()) throw InvalidInput("every branch fell below the probability cutoff");
    for (auto& b : branches_) b.prob /= kept;
}

HeraldedEnsemble HeraldedEnsemble::single(EigenList lam) {
    std::vector<Branch> b;
    b.push_back({1.0, std::move(lam)});
    return HeraldedEnsemble(std::move(b));
}

void bit_combine_into(std::span<const double> a, std::span<const double> b, std::span<double> out) {
    const int q = static_cast<int>(a.size());
    for (int j = 0; j < q; ++j) {
        double acc = 0.0;
        for (int k = 0, r = j; k < q; ++k, r = (r == 0 ? q - 1 : r - 1)) {
            // r == j - k (mod q)
            acc += a[k] * b[r] + a[r] * b[k];
        }
        out[j] = acc / (2.0 * q);
    }
}

void check_branch_weights(std::span<const double> a, std::span<const double> b, std::span<double> weights) {
    const int q = static_cast<int>(a.size());
    for (int m = 0; m < q; ++m) {
        double acc = 0.0;
        for (int j = 0; j < q; ++j) acc += a[(m + j) % q] * b[(q - j) % q];
        weights[m] = acc;
    }
}

void check_branch_into(std::span<const double> a, std::span<const double> b, int m, double weight,
                       std::span<double> out) {
    const int q = static_cast<int>(a.size());
    const double scale = q / weight;
    for (int j = 0; j < q; ++j) out[j] = a[(m + j) % q] * b[(q - j) % q] * scale;
}

std::vector<CheckBranch> check_combine_branches(const EigenList& lam1, const EigenList& lam2) {
    require_same_q(lam1.q(), lam2.q());
    const int q = lam1.q();
    std::vector<double> w(q);
    check_branch_weights(lam1.values(), lam2.values(), w);
    const double q2 = static_cast<double>(q) * q;
    double kept = 0.0;
    for (double x : w)
        if (x / q2 >= kBranchCutoff) kept += x / q2;
    std::vector<CheckBranch> out;
    std::vector<double> buf(q);
    for (int m = 0; m < q; ++m) {
        const double p = w[m] / q2;
        if (p < kBranchCutoff) continue;
        check_branch_into(lam1.values(), lam2.values(), m, w[m], buf);
        out.push_back({m, p / kept, EigenList(buf)});
    }
    return out;
}

HeraldedEnsemble check_combine(const EigenList& lam1, const EigenList& lam2) {
    std::vector<Branch> b;
    for (auto& cb : check_combine_branches(lam1, lam2)) b.push_back({cb.prob, std::move(cb.lam)});
    return HeraldedEnsemble(std::move(b));
}

EigenList bit_combine(const EigenList& lam1, const EigenList& lam2) {
    require_same_q(lam1.q(), lam2.q());
    std::vector<double> out(lam1.q());
    bit_combine_into(lam1.values(), lam2.values(), out);
    return EigenList(std::move(out));
}

namespace {

class BranchAccumulator {
public:
    void add(double p, EigenList lam) {
        auto [it, inserted] = index_.try_emplace(lam.vector(), branches_.size());
        if (inserted)
            branches_.push_back({p, std::move(lam)});
        else
            branches_[it->second].prob += p;
    }
    HeraldedEnsemble finish() { return HeraldedEnsemble(std::move(branches_)); }

private:
    std::vector<Branch> branches_;
    std::map<std::vector<double>, std::size_t> index_;
};

}  // namespace

HeraldedEnsemble check_combine_heralded(const HeraldedEnsemble& e1, const HeraldedEnsemble& e2) {
    require_same_q(e1.q(), e2.q());
    BranchAccumulator acc;
    for (const auto& b1 : e1.branches())
        for (const auto& b2 : e2.branches())
            for (auto& cb : check_combine_branches(b1.lam, b2.lam))
                acc.add(b1.prob * b2.prob * cb.prob, std::move(cb.lam));
    return acc.finish();
}

HeraldedEnsemble bit_combine_heralded(const HeraldedEnsemble& e1, const HeraldedEnsemble& e2) {
    require_same_q(e1.q(), e2.q());
    BranchAccumulator acc;
    for (const auto& b1 : e1.branches())
        for (const auto& b2 : e2.branches()) acc.add(b1.prob * b2.prob, bit_combine(b1.lam, b2.lam));
    return acc.finish();
}

double ensemble_holevo(const HeraldedEnsemble& e, LogBase base) {
    double acc = 0.0;
    for (const auto& b : e.branches()) acc += b.prob * holevo_information(b.lam, base);
    return acc;
}

double ensemble_fidelity(const HeraldedEnsemble& e) {
    double acc = 0.0;
    for (const auto& b : e.branches()) acc += b.prob * channel_fidelity(b.lam);
    return acc;
}

double ensemble_pgm_error(const HeraldedEnsemble& e) {
    double acc = 0.0;
    for (const auto& b : e.branches()) acc += b.prob * pgm_error(b.lam);
    return acc;
}

std::vector<CheckBranch> check_combine_oracle(const EigenList& lam1, const EigenList& lam2) {
    require_same_q(lam1.q(), lam2.q());
    const int q = lam1.q();
    if (q > 7) throw GuardViolation("check_combine_oracle is limited to q <= 7");
    const int d = q * q;

    const ComplexMatrix f = dft_matrix(q);
    const ComplexMatrix ff = kron(f, f);
    ComplexMatrix perm = ComplexMatrix::Zero(d, d);
    for (int j = 0; j < q; ++j)
        for (int jp = 0; jp < q; ++jp) perm(mod_q(j + jp, q) * q + mod_q(-jp, q), j * q + jp) = 1.0;
    const ComplexMatrix u_tilde = ff * perm * ff.adjoint();

    const ComplexMatrix psi1 = canonical_states(lam1);
    const ComplexMatrix psi2 = canonical_states(lam2);

    std::vector<CheckBranch> out;
    for (int m = 0; m < q; ++m) {
        // (<v_m| (x) I) as a q x q^2 map
        ComplexMatrix proj = ComplexMatrix::Zero(q, d);
        for (int a = 0; a < q; ++a)
            for (int b = 0; b < q; ++b) proj(b, a * q + b) = std::conj(f(a, m));

        ComplexMatrix states(q, q);  // column l: normalized conditional state
        double prob = -1.0;
        for (int l = 0; l < q; ++l) {
            ComplexMatrix sigma = ComplexMatrix::Zero(q, q);
            ComplexVector rep;
            for (int u = 0; u < q; ++u) {
                const ComplexVector in = kron(ComplexVector(psi1.col(u)), ComplexVector(psi2.col(mod_q(u - l, q))));
                const ComplexVector cond = proj * (u_tilde * in);
                sigma += cond * cond.adjoint() / static_cast<double>(q);
                if (u == 0) rep = cond;
            }
            const double p_l = sigma.trace().real();
            if (prob < 0.0) prob = p_l;
            if (std::abs(p_l - prob) > 1e-9)
                throw std::logic_error("check oracle: branch probability depends on the input symbol");
            if (p_l < kBranchCutoff) break;
            // Every u contributes the same pure state up to a phase.
            if (max_abs_diff(sigma, rep * rep.adjoint()) > 1e-9)
                throw std::logic_error("check oracle: conditional state is not pure");
            states.col(l) = rep / std::sqrt(p_l);
        }
        if (prob < kBranchCutoff) continue;

        const ComplexMatrix gram = states.adjoint() * states;
        for (int i = 0; i < q; ++i)
            for (int j = 0; j < q; ++j)
                if (std::abs(gram(i, j) - gram(0, mod_q(j - i, q))) > 1e-9)
                    throw std::logic_error("check oracle: branch Gram matrix is not circulant");
        std::vector<double> lam(q);
        for (int k = 0; k < q; ++k) lam[k] = (f.col(k).adjoint() * gram * f.col(k))(0, 0).real();
        out.push_back({m, prob, EigenList(std::move(lam))});
    }
    double total = 0.0;
    for (const auto& b : out) total += b.prob;
    for (auto& b : out) b.prob /= total;
    return out;
}

EigenList bit_combine_oracle(const EigenList& lam1, const EigenList& lam2) {
    require_same_q(lam1.q(), lam2.q());
    const int q = lam1.q();
    if (q > 16) throw GuardViolation("bit_combine_oracle is limited to q <= 16");
    const GramRow g1 = eigen_to_gram(lam1);
    const GramRow g2 = eigen_to_gram(lam2);
    std::vector<Complex> g(q);
    for (int u = 0; u < q; ++u) g[u] = g1[u] * g2[u];
    return gram_to_eigen(GramRow(std::move(g)));
}

bool is_one_parameter(const EigenList& lam) {
    for (int j = 2; j < lam.q(); ++j)
        if (std::abs(lam[j] - lam[1]) > 1e-12) return false;
    return true;
}

FidelityBoundReport fidelity_bound_check(const EigenList& lam1, const EigenList& lam2) {
    require_same_q(lam1.q(), lam2.q());
    const int q = lam1.q();
    FidelityBoundReport r;
    r.f1 = channel_fidelity(lam1);
    r.f2 = channel_fidelity(lam2);
    r.bit_fidelity = channel_fidelity(bit_combine(lam1, lam2));
    r.bit_bound = (q - 1) * r.f1 * r.f2;
    r.check_fidelity = ensemble_fidelity(check_combine(lam1, lam2));
    r.check_bound = r.f1 + r.f2 + (q - 1) * r.f1 * r.f2;
    r.one_parameter = is_one_parameter(lam1) && is_one_parameter(lam2);
    if (r.one_parameter) {
        r.special_bit_value = r.f1 * r.f2;
        r.special_check_bound = r.f1 + r.f2 - r.f1 * r.f2;
    }
    return r;
}

bool FidelityBoundReport::holds(double tol) const {
    bool ok = bit_fidelity <= bit_bound + tol && check_fidelity <= check_bound + tol;
    if (one_parameter)
        ok = ok && std::abs(bit_fidelity - special_bit_value) <= tol && check_fidelity <= special_check_bound + tol;
    return ok;
}

HeraldedFidelityReport heralded_fidelity_bound_check(const HeraldedEnsemble& e1, const HeraldedEnsemble& e2) {
    const int q = e1.q();
    HeraldedFidelityReport r;
    r.f1 = ensemble_fidelity(e1);
    r.f2 = ensemble_fidelity(e2);
    r.bit_fidelity = ensemble_fidelity(bit_combine_heralded(e1, e2));
    r.bit_bound = (q - 1) * r.f1 * r.f2;
    r.check_fidelity = ensemble_fidelity(check_combine_heralded(e1, e2));
    r.check_bound = r.f1 + r.f2 + (q - 1) * r.f1 * r.f2;
    return r;
}

bool HeraldedFidelityReport::holds(double tol) const {
    return bit_fidelity <= bit_bound + tol && check_fidelity <= check_bound + tol;
}

}  // namespace bpqm

#include "bpqm/unitaries.hpp"

#include "bpqm/error.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bpqm {

namespace {

void require_small_q(int q) {
    if (q < 2 || q > kMaxUnitaryQ)
        throw GuardViolation("dense unitaries need 2 <= q <= " + std::to_string(kMaxUnitaryQ) +
                             ", got q=" + std::to_string(q));
}

void require_unitary(const ComplexMatrix& m, const char* what) {
    if (unitarity_defect(m) >= kUnitaryTol) throw std::logic_error(std::string(what) + " is not unitary");
}

ComplexVector basis_vector(int dim, int i) {
    ComplexVector e = ComplexVector::Zero(dim);
    e(i) = 1.0;
    return e;
}

ComplexMatrix block_diagonal(const std::vector<ComplexMatrix>& blocks) {
    Eigen::Index n = 0;
    for (const auto& b : blocks) n += b.rows();
    ComplexMatrix out = ComplexMatrix::Zero(n, n);
    Eigen::Index off = 0;
    for (const auto& b : blocks) {
        out.block(off, off, b.rows(), b.cols()) = b;
        off += b.rows();
    }
    return out;
}

}  // namespace

std::string_view to_string(UnitaryKind kind) {
    switch (kind) {
        case UnitaryKind::check: return "check";
        case UnitaryKind::bit: return "bit";
        case UnitaryKind::controlled_check: return "controlled-check";
        case UnitaryKind::controlled_bit: return "controlled-bit";
    }
    return "unknown";
}

ComplexMatrix check_permutation(int q) {
    require_small_q(q);
    const ComplexMatrix ff = kron(dft_matrix(q), dft_matrix(q));
    ComplexMatrix perm = ComplexMatrix::Zero(q * q, q * q);
    for (int j = 0; j < q; ++j)
        for (int jp = 0; jp < q; ++jp) perm(mod_q(j + jp, q) * q + mod_q(-jp, q), j * q + jp) = 1.0;
    return ff * perm * ff.adjoint();
}

UnitaryBundle build_check_unitary(int q) {
    require_small_q(q);
    const ComplexMatrix id = ComplexMatrix::Identity(q, q);
    UnitaryBundle b;
    b.q = q;
    b.kind = UnitaryKind::check;
    b.matrix = kron(id, ComplexMatrix(dft_matrix(q).adjoint())) * swap_matrix(q) * check_permutation(q);
    require_unitary(b.matrix, "check unitary");
    return b;
}

UnitaryBundle build_bit_unitary(const EigenList& lam1, const EigenList& lam2) {
    if (lam1.q() != lam2.q()) throw DimensionMismatch("bit unitary: alphabet sizes differ");
    const int q = lam1.q();
    require_small_q(q);
    const ComplexMatrix f = dft_matrix(q);
    const ComplexMatrix ff = kron(f, f);

    ComplexMatrix shift = ComplexMatrix::Zero(q * q, q * q);
    for (int j = 0; j < q; ++j)
        for (int jp = 0; jp < q; ++jp) shift(mod_q(j + jp, q) * q + jp, j * q + jp) = 1.0;
    const ComplexMatrix u_plus = ff * shift * ff.adjoint();

    const ComplexVector e0 = basis_vector(q, 0);
    ComplexMatrix u_control = ComplexMatrix::Zero(q * q, q * q);
    for (int k = 0; k < q; ++k) {
        ComplexVector z(q);  // Fourier coefficients of zeta~_k
        for (int j = 0; j < q; ++j) z(j) = std::sqrt(lam1[mod_q(k - j, q)] * lam2[j]);
        const double norm = z.norm();

        ComplexMatrix block = ComplexMatrix::Identity(q, q);
        if (norm > 1e-12) {
            const ComplexVector zeta = f * z / norm;
            // Pin the phase of <0|zeta> so the reflection lands exactly on |0>.
            const Complex a0 = zeta(0);
            const Complex phase = std::abs(a0) > 0.0 ? a0 / std::abs(a0) : Complex(1.0);
            const ComplexVector diff = zeta / phase - e0;
            const double dn = diff.norm();
            if (dn > 1e-14) {
                const ComplexVector r = diff / dn;
                block -= 2.0 * r * r.adjoint();
            }
            block /= phase;
        }
        const ComplexVector vk = f.col(k);
        u_control += kron(ComplexMatrix(vk * vk.adjoint()), block);
    }

    UnitaryBundle b;
    b.q = q;
    b.kind = UnitaryKind::bit;
    b.matrix = u_control * u_plus;
    require_unitary(b.matrix, "bit unitary");
    if (bit_contract_defect(b.matrix, lam1, lam2) > 1e-10)
        throw std::logic_error("bit unitary does not satisfy its defining relation");
    return b;
}

UnitaryBundle conjugate_unitary(const UnitaryBundle& u, const ComplexMatrix& v) {
    if (v.rows() != u.q || v.cols() != u.q) throw DimensionMismatch("conjugating isometry must be q x q");
    if (unitarity_defect(v) >= kUnitaryTol) throw NotUnitary("conjugating matrix is not unitary");
    const ComplexMatrix id = ComplexMatrix::Identity(u.q, u.q);
    const ComplexMatrix left = kron(v, id);
    const ComplexMatrix right = kron(ComplexMatrix(v.adjoint()), ComplexMatrix(v.adjoint()));
    std::vector<ComplexMatrix> blocks;
    for (int x = 0; x < u.labels; ++x) blocks.push_back(left * label_block(u, x) * right);
    UnitaryBundle out = u;
    out.matrix = block_diagonal(blocks);
    require_unitary(out.matrix, "conjugated unitary");
    return out;
}

UnitaryBundle build_controlled_bit_unitary(const std::vector<std::pair<EigenList, EigenList>>& branch_pairs) {
    if (branch_pairs.empty()) throw InvalidInput("controlled bit unitary needs at least one branch pair");
    const int q = branch_pairs.front().first.q();
    require_small_q(q);
    const long long dim = static_cast<long long>(q) * q * static_cast<long long>(branch_pairs.size());
    if (dim > kMaxControlledDim)
        throw GuardViolation("controlled unitary dimension " + std::to_string(dim) + " exceeds " +
                             std::to_string(kMaxControlledDim));
    std::vector<ComplexMatrix> blocks;
    for (const auto& [a, b] : branch_pairs) blocks.push_back(build_bit_unitary(a, b).matrix);
    UnitaryBundle out;
    out.q = q;
    out.labels = static_cast<int>(branch_pairs.size());
    out.kind = UnitaryKind::controlled_bit;
    out.matrix = block_diagonal(blocks);
    require_unitary(out.matrix, "controlled bit unitary");
    return out;
}

UnitaryBundle build_controlled_check_unitary(int q, int labels) {
    require_small_q(q);
    if (labels < 1) throw InvalidInput("label count must be positive");
    if (static_cast<long long>(q) * q * labels > kMaxControlledDim)
        throw GuardViolation("controlled unitary dimension exceeds " + std::to_string(kMaxControlledDim));
    const ComplexMatrix block = build_check_unitary(q).matrix;
    UnitaryBundle out;
    out.q = q;
    out.labels = labels;
    out.kind = UnitaryKind::controlled_check;
    out.matrix = block_diagonal(std::vector<ComplexMatrix>(labels, block));
    return out;
}

ComplexMatrix label_block(const UnitaryBundle& u, int x) {
    const int d = u.q * u.q;
    if (x < 0 || x >= u.labels) throw InvalidInput("label out of range");
    return u.matrix.block(x * d, x * d, d, d);
}

double check_permutation_defect(const ComplexMatrix& u_tilde, int q) {
    const ComplexMatrix f = dft_matrix(q);
    double worst = 0.0;
    for (int j = 0; j < q; ++j)
        for (int jp = 0; jp < q; ++jp) {
            const ComplexVector in = kron(ComplexVector(f.col(j)), ComplexVector(f.col(jp)));
            const ComplexVector want =
                kron(ComplexVector(f.col(mod_q(j + jp, q))), ComplexVector(f.col(mod_q(-jp, q))));
            worst = std::max(worst, (u_tilde * in - want).norm());
        }
    return worst;
}

double bit_contract_defect(const ComplexMatrix& u, const EigenList& lam1, const EigenList& lam2,
                           const ComplexMatrix& v) {
    const int q = lam1.q();
    const ComplexMatrix psi1 = v * canonical_states(lam1);
    const ComplexMatrix psi2 = v * canonical_states(lam2);
    const ComplexMatrix out = v * canonical_states(bit_combine(lam1, lam2));
    const ComplexVector e0 = basis_vector(q, 0);
    double worst = 0.0;
    for (int s = 0; s < q; ++s) {
        const ComplexVector in = kron(ComplexVector(psi1.col(s)), ComplexVector(psi2.col(s)));
        const ComplexVector want = kron(ComplexVector(out.col(s)), e0);
        worst = std::max(worst, (u * in - want).norm());
    }
    return worst;
}

double bit_contract_defect(const ComplexMatrix& u, const EigenList& lam1, const EigenList& lam2) {
    return bit_contract_defect(u, lam1, lam2, ComplexMatrix::Identity(lam1.q(), lam1.q()));
}

std::vector<CheckBranch> check_measurement_statistics(const ComplexMatrix& u, const EigenList& lam1,
                                                      const EigenList& lam2, const ComplexMatrix& v) {
    const int q = lam1.q();
    const ComplexMatrix psi1 = v * canonical_states(lam1);
    const ComplexMatrix psi2 = v * canonical_states(lam2);
    const ComplexMatrix f = dft_matrix(q);

    std::vector<CheckBranch> out;
    for (int m = 0; m < q; ++m) {
        ComplexMatrix states(q, q);
        double prob = -1.0;
        for (int l = 0; l < q; ++l) {
            ComplexMatrix sigma = ComplexMatrix::Zero(q, q);
            ComplexVector rep;
            for (int s = 0; s < q; ++s) {
                const ComplexVector in = kron(ComplexVector(psi1.col(s)), ComplexVector(psi2.col(mod_q(s - l, q))));
                const ComplexVector full = u * in;
                ComplexVector cond(q);  // (I (x) <m|) full
                for (int a = 0; a < q; ++a) cond(a) = full(a * q + m);
                sigma += cond * cond.adjoint() / static_cast<double>(q);
                if (s == 0) rep = cond;
            }
            const double p_l = sigma.trace().real();
            if (prob < 0.0) prob = p_l;
            if (std::abs(p_l - prob) > 1e-9)
                throw std::logic_error("check measurement: outcome probability depends on the input");
            if (p_l < kBranchCutoff) break;
            states.col(l) = rep / std::sqrt(p_l);
        }
        if (prob < kBranchCutoff) continue;
        const ComplexMatrix gram = states.adjoint() * states;
        std::vector<double> lam(q);
        for (int k = 0; k < q; ++k) lam[k] = (f.col(k).adjoint() * gram * f.col(k))(0, 0).real();
        out.push_back({m, prob, EigenList(std::move(lam))});
    }
    return out;
}

std::vector<CheckBranch> check_measurement_statistics(const ComplexMatrix& u, const EigenList& lam1,
                                                      const EigenList& lam2) {
    return check_measurement_statistics(u, lam1, lam2, ComplexMatrix::Identity(lam1.q(), lam1.q()));
}

}  // namespace bpqm

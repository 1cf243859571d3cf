#include "bpqm/spectra.hpp"

#include "bpqm/error.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

namespace bpqm {

namespace {

std::string describe(std::span<const double> v) {
    std::ostringstream os;
    os.precision(17);
    os << '[';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ']';
    return os.str();
}

}  // namespace

EigenList::EigenList(std::vector<double> values) : values_(std::move(values)) {
    const int q = static_cast<int>(values_.size());
    if (q < 2) throw InvalidInput("eigen list needs q >= 2 entries");
    bool clamped = false;
    for (double& x : values_) {
        if (!std::isfinite(x)) throw InvalidInput("eigen list has non-finite entry " + describe(values_));
        if (x < -kNegativeClampTol) throw NotPsd("eigen list has negative entry " + describe(values_));
        if (x < 0.0) {
            x = 0.0;
            clamped = true;
        }
    }
    const double sum = std::accumulate(values_.begin(), values_.end(), 0.0);
    if (std::abs(sum - q) >= kTraceTol)
        throw InvalidInput("eigen list must sum to q=" + std::to_string(q) + ", got " + describe(values_));
    if (clamped)
        for (double& x : values_) x *= q / sum;
}

EigenList EigenList::one_parameter(int q, double lambda0) {
    if (q < 2) throw InvalidInput("q must be >= 2");
    if (!(lambda0 >= 0.0 && lambda0 <= q))
        throw InvalidInput("lambda0 must lie in [0, q]");
    std::vector<double> v(q, (q - lambda0) / (q - 1));
    v[0] = lambda0;
    return EigenList(std::move(v));
}

EigenList EigenList::perfect(int q) { return EigenList(std::vector<double>(q, 1.0)); }

EigenList EigenList::useless(int q) {
    std::vector<double> v(q, 0.0);
    v[0] = q;
    return EigenList(std::move(v));
}

NormalizedSpectrum normalize(const EigenList& lam) {
    NormalizedSpectrum mu;
    mu.probs.reserve(lam.q());
    for (double x : lam.values()) mu.probs.push_back(x / lam.q());
    return mu;
}

GramRow::GramRow(std::vector<Complex> entries) : entries_(std::move(entries)) {
    const int q = static_cast<int>(entries_.size());
    if (q < 2) throw InvalidInput("Gram row needs q >= 2 entries");
    if (std::abs(entries_[0] - 1.0) > 1e-9) throw InvalidInput("Gram row must have g_0 = 1");
    entries_[0] = 1.0;
    for (int u = 1; u < q; ++u) {
        if (std::abs(entries_[u]) > 1.0 + 1e-9) throw InvalidInput("Gram row entry exceeds unit modulus");
        if (std::abs(entries_[q - u] - std::conj(entries_[u])) > 1e-9)
            throw InvalidInput("Gram row is not Hermitian-circulant");
    }
}

ComplexMatrix GramRow::circulant() const {
    const int n = q();
    ComplexMatrix g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = entries_[mod_q(j - i, n)];
    return g;
}

GramRow eigen_to_gram(const EigenList& lam) {
    const int q = lam.q();
    std::vector<Complex> g(q);
    g[0] = 1.0;
    for (int i = 1; 2 * i <= q; ++i) {
        Complex acc = 0.0;
        for (int j = 0; j < q; ++j) acc += lam[j] * root_of_unity(q, -static_cast<long long>(i) * j);
        g[i] = acc / static_cast<double>(q);
        g[q - i] = std::conj(g[i]);
    }
    if (q % 2 == 0) g[q / 2] = g[q / 2].real();
    return GramRow(std::move(g));
}

EigenList gram_to_eigen(const GramRow& g) {
    const int q = g.q();
    std::vector<double> lam(q);
    for (int m = 0; m < q; ++m) {
        Complex acc = 0.0;
        for (int j = 0; j < q; ++j) acc += g[j] * root_of_unity(q, static_cast<long long>(j) * m);
        if (std::abs(acc.imag()) >= 1e-9) throw InvalidInput("Gram row spectrum is not real");
        lam[m] = acc.real();
    }
    for (double x : lam)
        if (x < -kNegativeClampTol) throw NotPsd("overlaps do not form a PSD Gram matrix");
    return EigenList(std::move(lam));
}

ComplexMatrix canonical_states(const EigenList& lam) {
    const int q = lam.q();
    ComplexMatrix coeff(q, q);  // Fourier-basis coefficients, column u
    const double s = 1.0 / std::sqrt(static_cast<double>(q));
    for (int j = 0; j < q; ++j)
        for (int u = 0; u < q; ++u)
            coeff(j, u) = s * std::sqrt(lam[j]) * root_of_unity(q, -static_cast<long long>(u) * j);
    return dft_matrix(q) * coeff;
}

double shannon_entropy(std::span<const double> probs, LogBase base, int q) {
    double h = 0.0;
    for (double p : probs)
        if (p > 0.0) h -= p * std::log(p);
    if (base == LogBase::q) h /= std::log(static_cast<double>(q));
    return h;
}

double holevo_information(const EigenList& lam, LogBase base) {
    return shannon_entropy(normalize(lam).probs, base, lam.q());
}

double channel_fidelity(const EigenList& lam) {
    const GramRow g = eigen_to_gram(lam);
    double acc = 0.0;
    for (int u = 1; u < lam.q(); ++u) acc += std::abs(g[u]);
    return acc / (lam.q() - 1);
}

double pgm_error(std::span<const double> lam) {
    double s = 0.0;
    for (double x : lam) s += std::sqrt(x > 0.0 ? x : 0.0);
    s /= static_cast<double>(lam.size());
    return 1.0 - s * s;
}

double pgm_error(const EigenList& lam) { return pgm_error(lam.values()); }

double pgm_error_oracle(const EigenList& lam) {
    const int q = lam.q();
    if (q > 16) throw GuardViolation("pgm_error_oracle is limited to q <= 16");
    const ComplexMatrix psi = canonical_states(lam);
    const ComplexMatrix rho_bar = psi * psi.adjoint() / static_cast<double>(q);

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho_bar);
    if (es.info() != Eigen::Success) throw SingularMean("eigendecomposition of rho_bar failed");
    Eigen::VectorXd inv_sqrt = Eigen::VectorXd::Zero(q);
    Eigen::VectorXd support = Eigen::VectorXd::Zero(q);
    for (int i = 0; i < q; ++i) {
        const double ev = es.eigenvalues()(i);
        if (ev > 1e-12) {
            inv_sqrt(i) = 1.0 / std::sqrt(ev);
            support(i) = 1.0;
        }
    }
    const ComplexMatrix& vecs = es.eigenvectors();
    const ComplexMatrix rho_inv_sqrt = vecs * inv_sqrt.cast<Complex>().asDiagonal() * vecs.adjoint();
    const ComplexMatrix projector = vecs * support.cast<Complex>().asDiagonal() * vecs.adjoint();

    ComplexMatrix completeness = ComplexMatrix::Zero(q, q);
    double success = 0.0;
    for (int u = 0; u < q; ++u) {
        const ComplexVector gamma = rho_inv_sqrt * psi.col(u) / std::sqrt(static_cast<double>(q));
        const ComplexMatrix m_u = gamma * gamma.adjoint();
        completeness += m_u;
        success += (psi.col(u).adjoint() * m_u * psi.col(u))(0, 0).real();
    }
    if (max_abs_diff(completeness, projector) > 1e-8)
        throw SingularMean("PGM operators do not resolve the support projector");
    return 1.0 - success / q;
}

FidelityBounds fidelity_holevo_bounds(const EigenList& lam) {
    const int q = lam.q();
    const double gap = std::max(0.0, std::log(static_cast<double>(q)) - holevo_information(lam));
    const double lower = std::sqrt(std::max(0.0, std::exp(gap) - 1.0)) / (q - 1);
    const double upper = std::sqrt(2.0 * q / (q - 1) * gap);
    return {lower, upper};
}

}  // namespace bpqm

#include "bpqm/linalg.hpp"

#include "bpqm/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace bpqm {

Complex root_of_unity(int q, long long k) {
    const int r = mod_q(k, q);
    if (r == 0) return {1.0, 0.0};
    if (2 * r == q) return {-1.0, 0.0};
    return std::polar(1.0, 2.0 * std::numbers::pi * r / q);
}

ComplexMatrix dft_matrix(int q) {
    ComplexMatrix f(q, q);
    const double s = 1.0 / std::sqrt(static_cast<double>(q));
    for (int j = 0; j < q; ++j)
        for (int m = 0; m < q; ++m)
            f(j, m) = s * root_of_unity(q, static_cast<long long>(j) * m);
    return f;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
    ComplexVector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i)
        out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

ComplexMatrix swap_matrix(int q) {
    ComplexMatrix s = ComplexMatrix::Zero(q * q, q * q);
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) s(b * q + a, a * q + b) = 1.0;
    return s;
}

double unitarity_defect(const ComplexMatrix& u) {
    const ComplexMatrix d = u.adjoint() * u - ComplexMatrix::Identity(u.cols(), u.cols());
    return d.cwiseAbs().maxCoeff();
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

ComplexMatrix random_unitary(int dim, unsigned long long seed) {
    RngStream rng(seed);
    auto gauss = [&rng] {
        // Box-Muller; u1 kept away from zero.
        const double u1 = 1.0 - rng.uniform();
        const double u2 = rng.uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    };
    ComplexMatrix z(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) z(i, j) = Complex(gauss(), gauss());
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    ComplexMatrix qmat = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < dim; ++j) {
        const Complex d = r(j, j);
        if (std::abs(d) > 0) qmat.col(j) *= d / std::abs(d);
    }
    return qmat;
}

}  // namespace bpqm

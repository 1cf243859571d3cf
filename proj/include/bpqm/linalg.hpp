#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>

namespace bpqm {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// omega^k for omega = exp(2*pi*i/q); k is reduced mod q first so large
// exponents stay exact.
Complex root_of_unity(int q, long long k);

// Index arithmetic mod q mapped to [0, q).
inline int mod_q(long long k, int q) {
    const long long r = k % q;
    return static_cast<int>(r < 0 ? r + q : r);
}

// F with F|j> = |v_j>, i.e. F(j, m) = omega^{jm} / sqrt(q).
ComplexMatrix dft_matrix(int q);

// A (x) B with the first factor as the most significant index.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);

// SWAP on C^q (x) C^q.
ComplexMatrix swap_matrix(int q);

// max_{ij} |(U^dagger U - I)_{ij}|
double unitarity_defect(const ComplexMatrix& u);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// Unit-modulus Haar-ish unitary from the QR factorization of a Gaussian
// matrix; the seed drives a splitmix stream so results are reproducible.
ComplexMatrix random_unitary(int dim, unsigned long long seed);

}  // namespace bpqm

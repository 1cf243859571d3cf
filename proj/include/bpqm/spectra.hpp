#pragma once

#include "bpqm/linalg.hpp"

#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

namespace bpqm {

// Tolerances shared across the library.
inline constexpr double kTraceTol = 1e-9;
inline constexpr double kNegativeClampTol = 1e-9;

enum class LogBase { natural, q };

// Eigenvalues of the circulant Gram matrix of a symmetric q-ary pure-state
// channel, ordered so that lambda_m belongs to the Fourier vector
// <j|v_m> = omega^{jm}/sqrt(q). Entries are nonnegative and sum to q.
//
// Construction validates the list: entries in (-1e-9, 0) are clamped to zero
// and the list is rescaled to sum q; anything more negative raises NotPsd.
class EigenList {
public:
    explicit EigenList(std::vector<double> values);
    EigenList(std::initializer_list<double> values)
        : EigenList(std::vector<double>(values)) {}

    // [lambda0, (q-lambda0)/(q-1), ..., (q-lambda0)/(q-1)]
    static EigenList one_parameter(int q, double lambda0);
    // [1, ..., 1]: orthonormal output states.
    static EigenList perfect(int q);
    // [q, 0, ..., 0]: all output states identical.
    static EigenList useless(int q);

    int q() const { return static_cast<int>(values_.size()); }
    std::span<const double> values() const { return values_; }
    const std::vector<double>& vector() const { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }

    bool operator==(const EigenList&) const = default;

private:
    std::vector<double> values_;
};

// mu = lambda / q, a probability vector.
struct NormalizedSpectrum {
    std::vector<double> probs;
};

NormalizedSpectrum normalize(const EigenList& lam);

// First row g_0..g_{q-1} of the circulant Gram matrix. g_0 == 1 and the row
// is Hermitian-circulant: g_{q-u} == conj(g_u).
class GramRow {
public:
    explicit GramRow(std::vector<Complex> entries);

    int q() const { return static_cast<int>(entries_.size()); }
    std::span<const Complex> entries() const { return entries_; }
    const Complex& operator[](std::size_t i) const { return entries_[i]; }

    // G_{i,j} = g_{j-i}
    ComplexMatrix circulant() const;

private:
    std::vector<Complex> entries_;
};

// g_i = (1/q) sum_j lambda_j omega^{-ij}
GramRow eigen_to_gram(const EigenList& lam);

// lambda_m = sum_j g_j omega^{jm}
EigenList gram_to_eigen(const GramRow& g);

// q x q matrix whose u-th column is |psi_u> = (1/sqrt q) sum_j sqrt(lambda_j)
// omega^{-uj} |v_j>, written in the canonical basis.
ComplexMatrix canonical_states(const EigenList& lam);

// Shannon entropy of mu. Base q reports "qits" on [0, 1].
double holevo_information(const EigenList& lam, LogBase base = LogBase::natural);
double shannon_entropy(std::span<const double> probs, LogBase base, int q);

// F(W) = (1/(q-1)) sum_{u>=1} |g_u|
double channel_fidelity(const EigenList& lam);

// Closed-form PGM error 1 - ((1/q) sum_u sqrt(lambda_u))^2.
double pgm_error(const EigenList& lam);
double pgm_error(std::span<const double> lam);

// Dense square-root measurement built from rho_bar on its support. q <= 16.
double pgm_error_oracle(const EigenList& lam);

struct FidelityBounds {
    double lower;
    double upper;
};

// Chi-squared / KL sandwich on F(W) in terms of ln q - I(W).
FidelityBounds fidelity_holevo_bounds(const EigenList& lam);

}  // namespace bpqm

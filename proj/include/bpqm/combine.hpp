#pragma once

#include "bpqm/spectra.hpp"

#include <span>
#include <vector>

namespace bpqm {

// Branches lighter than this are dropped and the rest renormalized.
inline constexpr double kBranchCutoff = 1e-15;

struct Branch {
    double prob;
    EigenList lam;
};

// Heralded mixture of symmetric PSCs: branch x occurs with probability p_x
// and its label sits in an orthogonal classical register.
class HeraldedEnsemble {
public:
    // Drops branches below kBranchCutoff; the probabilities must sum to 1
    // within 1e-9 and every branch must share q.
    explicit HeraldedEnsemble(std::vector<Branch> branches);

    static HeraldedEnsemble single(EigenList lam);

    int q() const { return branches_.front().lam.q(); }
    const std::vector<Branch>& branches() const { return branches_; }
    std::size_t size() const { return branches_.size(); }

private:
    std::vector<Branch> branches_;
};

// Check-node branch m, labeled by the Fourier outcome of the first register.
struct CheckBranch {
    int m;
    double prob;
    EigenList lam;
};

// ---- kernels on raw spans (used by the Monte-Carlo bags) ----

// out_j = (1/q) sum_k a_k b_{j-k}. Evaluated symmetrically so that swapping
// a and b yields a bitwise identical result.
void bit_combine_into(std::span<const double> a, std::span<const double> b, std::span<double> out);

// Unnormalized branch weights w_m = sum_j a_{m+j} b_{-j}; p_m = w_m / q^2.
void check_branch_weights(std::span<const double> a, std::span<const double> b, std::span<double> weights);

// out_j = a_{m+j} b_{-j} * q / w_m
void check_branch_into(std::span<const double> a, std::span<const double> b, int m, double weight,
                       std::span<double> out);

// ---- closed-form update rules ----

std::vector<CheckBranch> check_combine_branches(const EigenList& lam1, const EigenList& lam2);
HeraldedEnsemble check_combine(const EigenList& lam1, const EigenList& lam2);
EigenList bit_combine(const EigenList& lam1, const EigenList& lam2);

// Product-distribute the branches in (branch1, branch2, m) order, merging
// bitwise-identical eigen lists into their first occurrence.
HeraldedEnsemble check_combine_heralded(const HeraldedEnsemble& e1, const HeraldedEnsemble& e2);
HeraldedEnsemble bit_combine_heralded(const HeraldedEnsemble& e1, const HeraldedEnsemble& e2);

double ensemble_holevo(const HeraldedEnsemble& e, LogBase base = LogBase::natural);
double ensemble_fidelity(const HeraldedEnsemble& e);
double ensemble_pgm_error(const HeraldedEnsemble& e);

// ---- dense oracles ----

// Builds |psi1_u> (x) |psi2_{u-l}>, applies the Fourier-basis permutation
// (j, j') -> (j + j', -j'), projects register 1 onto |v_m> and reads the
// branch eigen list off the Gram matrix of the conditional states. q <= 7.
std::vector<CheckBranch> check_combine_oracle(const EigenList& lam1, const EigenList& lam2);

// Hadamard product of the two Gram rows, mapped back to an eigen list. q <= 16.
EigenList bit_combine_oracle(const EigenList& lam1, const EigenList& lam2);

// ---- fidelity bounds ----

struct FidelityBoundReport {
    double f1 = 0;
    double f2 = 0;
    double bit_fidelity = 0;    // F(W1 (*) W2)
    double bit_bound = 0;       // (q-1) F1 F2
    double check_fidelity = 0;  // F(W1 [+] W2), branch-averaged
    double check_bound = 0;     // F1 + F2 + (q-1) F1 F2
    bool one_parameter = false;
    double special_bit_value = 0;    // F1 F2, equals bit_fidelity
    double special_check_bound = 0;  // F1 + F2 - F1 F2

    bool holds(double tol = 1e-12) const;
};

// True when lambda_1 == ... == lambda_{q-1} to 1e-12.
bool is_one_parameter(const EigenList& lam);

FidelityBoundReport fidelity_bound_check(const EigenList& lam1, const EigenList& lam2);

struct HeraldedFidelityReport {
    double f1 = 0;
    double f2 = 0;
    double bit_fidelity = 0;
    double bit_bound = 0;
    double check_fidelity = 0;
    double check_bound = 0;

    bool holds(double tol = 1e-12) const;
};

HeraldedFidelityReport heralded_fidelity_bound_check(const HeraldedEnsemble& e1, const HeraldedEnsemble& e2);

}  // namespace bpqm

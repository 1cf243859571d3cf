#pragma once

#include "bpqm/combine.hpp"
#include "bpqm/linalg.hpp"
#include "bpqm/spectra.hpp"

#include <string_view>
#include <utility>
#include <vector>

namespace bpqm {

enum class UnitaryKind { check, bit, controlled_check, controlled_bit };

std::string_view to_string(UnitaryKind kind);

// Dense BPQM node unitary on (labels) x C^q x C^q. Controlled forms put the
// classical label register first (most significant index), which makes the
// matrix block diagonal with one q^2 x q^2 block per label.
struct UnitaryBundle {
    int q = 0;
    int labels = 1;
    UnitaryKind kind = UnitaryKind::check;
    ComplexMatrix matrix;
};

inline constexpr double kUnitaryTol = 1e-10;
inline constexpr int kMaxUnitaryQ = 7;
inline constexpr int kMaxControlledDim = 512;

// Fourier-basis permutation (j, j') -> (j + j', -j') written in the canonical
// basis. Channel independent.
ComplexMatrix check_permutation(int q);

// U = (I (x) F^dagger) SWAP U~ : register 2 ends up holding the branch
// label m in the canonical basis.
UnitaryBundle build_check_unitary(int q);

// U = U_control U_+ with U_+ (|v_j>|v_j'>) = |v_{j+j'}>|v_j'> and per-k
// reflections sending |zeta_k> to |0>. Maps |psi1_u>|psi2_u> to
// |psi_u^bit>|0> for every u.
UnitaryBundle build_bit_unitary(const EigenList& lam1, const EigenList& lam2);

// (V (x) I) U (V^dagger (x) V^dagger), applied per label for controlled forms.
UnitaryBundle conjugate_unitary(const UnitaryBundle& u, const ComplexMatrix& v);

// sum_x |x><x| (x) U_bit(lam_x1, lam_x2)
UnitaryBundle build_controlled_bit_unitary(const std::vector<std::pair<EigenList, EigenList>>& branch_pairs);

// I_labels (x) U_check
UnitaryBundle build_controlled_check_unitary(int q, int labels);

// ---- contract checks ----

// max over (j, j') of || U~ |v_j v_j'> - |v_{j+j'} v_{-j'}> ||
double check_permutation_defect(const ComplexMatrix& u_tilde, int q);

// max over u of || U (V psi1_u (x) V psi2_u) - V psi_u^bit (x) |0> || for the
// q^2 x q^2 block `u`.
double bit_contract_defect(const ComplexMatrix& u, const EigenList& lam1, const EigenList& lam2,
                           const ComplexMatrix& v);
double bit_contract_defect(const ComplexMatrix& u, const EigenList& lam1, const EigenList& lam2);

// Applies a check unitary to the check-node channel outputs (states V psi
// when v is given), measures register 2 in the canonical basis and returns
// the outcome probabilities with the Gram spectra of the conditional
// register-1 states.
std::vector<CheckBranch> check_measurement_statistics(const ComplexMatrix& u, const EigenList& lam1,
                                                      const EigenList& lam2, const ComplexMatrix& v);
std::vector<CheckBranch> check_measurement_statistics(const ComplexMatrix& u, const EigenList& lam1,
                                                      const EigenList& lam2);

// Diagonal block for label x of a controlled bundle.
ComplexMatrix label_block(const UnitaryBundle& u, int x);

}  // namespace bpqm

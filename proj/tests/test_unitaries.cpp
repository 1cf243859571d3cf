#include "bpqm/error.hpp"
#include "bpqm/unitaries.hpp"
#include "bpqm/verify.hpp"

#include <gtest/gtest.h>

using namespace bpqm;

TEST(Linalg, RootsOfUnity) {
    EXPECT_EQ(root_of_unity(4, 0), Complex(1, 0));
    EXPECT_EQ(root_of_unity(4, 2), Complex(-1, 0));
    EXPECT_EQ(root_of_unity(4, 6), Complex(-1, 0));
    EXPECT_NEAR(std::abs(root_of_unity(3, 1) - std::polar(1.0, 2 * M_PI / 3)), 0.0, 1e-15);
    EXPECT_EQ(mod_q(-1, 5), 4);
    EXPECT_EQ(mod_q(7, 5), 2);
}

TEST(Linalg, DftIsUnitary) {
    for (int q = 2; q <= 9; ++q) EXPECT_LT(unitarity_defect(dft_matrix(q)), 1e-14);
}

TEST(Linalg, SwapAndKron) {
    const ComplexMatrix s = swap_matrix(3);
    EXPECT_LT(max_abs_diff(s * s, ComplexMatrix::Identity(9, 9)), 1e-15);
    ComplexVector a = ComplexVector::Zero(3), b = ComplexVector::Zero(3);
    a(1) = 1;
    b(2) = 1;
    EXPECT_LT((s * kron(a, b) - kron(b, a)).norm(), 1e-15);
}

TEST(Linalg, RandomUnitaryIsDeterministic) {
    EXPECT_LT(unitarity_defect(random_unitary(5, 3)), 1e-12);
    EXPECT_EQ(max_abs_diff(random_unitary(4, 9), random_unitary(4, 9)), 0.0);
    EXPECT_GT(max_abs_diff(random_unitary(4, 9), random_unitary(4, 10)), 1e-3);
}

TEST(CheckUnitary, PermutationInFourierBasis) {
    for (int q : {2, 3, 4, 5, 7}) {
        const ComplexMatrix ut = check_permutation(q);
        EXPECT_LT(check_permutation_defect(ut, q), 1e-12);
        // in the Fourier basis every column has exactly one unit entry
        const ComplexMatrix ff = kron(dft_matrix(q), dft_matrix(q));
        const ComplexMatrix p = ff.adjoint() * ut * ff;
        for (Eigen::Index c = 0; c < p.cols(); ++c) {
            int ones = 0;
            for (Eigen::Index r = 0; r < p.rows(); ++r) {
                const double m = std::abs(p(r, c));
                EXPECT_TRUE(m < 1e-12 || std::abs(m - 1.0) < 1e-12);
                ones += m > 0.5;
            }
            EXPECT_EQ(ones, 1);
        }
    }
}

TEST(CheckUnitary, IdentityIsNotAPermutationContract) {
    EXPECT_GT(check_permutation_defect(ComplexMatrix::Identity(9, 9), 3), 0.5);
}

TEST(CheckUnitary, BundleShape) {
    const UnitaryBundle u = build_check_unitary(5);
    EXPECT_EQ(u.q, 5);
    EXPECT_EQ(u.labels, 1);
    EXPECT_EQ(u.kind, UnitaryKind::check);
    EXPECT_EQ(u.matrix.rows(), 25);
    EXPECT_LT(unitarity_defect(u.matrix), kUnitaryTol);
    EXPECT_EQ(to_string(UnitaryKind::controlled_bit), "controlled-bit");
}

TEST(CheckUnitary, MeasurementMatchesClosedForm) {
    const EigenList a{2.2, 0.4, 0.4};
    const EigenList b{1.0, 1.5, 0.5};
    const auto stats = check_measurement_statistics(build_check_unitary(3).matrix, a, b);
    EXPECT_LT(branch_list_defect(stats, check_combine_branches(a, b)), 1e-12);
}

TEST(CheckUnitary, Guards) {
    EXPECT_THROW(build_check_unitary(8), GuardViolation);
    EXPECT_THROW(build_check_unitary(1), GuardViolation);
    EXPECT_THROW(build_controlled_check_unitary(3, 0), InvalidInput);
    EXPECT_THROW(build_controlled_check_unitary(7, 11), GuardViolation);
    EXPECT_NO_THROW(build_controlled_check_unitary(7, 10));
}

TEST(BitUnitary, ContractOnReference) {
    const EigenList a{2.2, 0.4, 0.4};
    const UnitaryBundle u = build_bit_unitary(a, a);
    EXPECT_EQ(u.kind, UnitaryKind::bit);
    EXPECT_LT(unitarity_defect(u.matrix), kUnitaryTol);
    EXPECT_LT(bit_contract_defect(u.matrix, a, a), 1e-9);
}

TEST(BitUnitary, DegenerateSpectra) {
    // zero entries in the convolution leave blocks with nothing to rotate
    for (int q : {2, 3, 5}) {
        const std::vector<EigenList> lists{EigenList::useless(q), EigenList::perfect(q), EigenList::one_parameter(q, 0.0)};
        for (const auto& a : lists)
            for (const auto& b : lists) {
                const UnitaryBundle u = build_bit_unitary(a, b);
                EXPECT_LT(unitarity_defect(u.matrix), kUnitaryTol);
                EXPECT_LT(bit_contract_defect(u.matrix, a, b), 1e-9);
            }
    }
}

TEST(BitUnitary, MismatchedAlphabets) {
    EXPECT_THROW(build_bit_unitary(EigenList::perfect(2), EigenList::perfect(3)), DimensionMismatch);
}

TEST(Conjugation, Validation) {
    const UnitaryBundle u = build_check_unitary(3);
    EXPECT_THROW(conjugate_unitary(u, ComplexMatrix::Identity(2, 2)), DimensionMismatch);
    EXPECT_THROW(conjugate_unitary(u, 2.0 * ComplexMatrix::Identity(3, 3)), NotUnitary);
    EXPECT_LT(max_abs_diff(conjugate_unitary(u, ComplexMatrix::Identity(3, 3)).matrix, u.matrix), 1e-15);
}

TEST(Conjugation, DftConjugationKeepsContracts) {
    const EigenList a{1.2, 0.3, 1.5};
    const EigenList b{0.2, 2.0, 0.8};
    const ComplexMatrix f = dft_matrix(3);
    const UnitaryBundle bit = conjugate_unitary(build_bit_unitary(a, b), f);
    EXPECT_LT(unitarity_defect(bit.matrix), kUnitaryTol);
    EXPECT_LT(bit_contract_defect(bit.matrix, a, b, f), 1e-9);
    const UnitaryBundle check = conjugate_unitary(build_check_unitary(3), f);
    EXPECT_LT(branch_list_defect(check_measurement_statistics(check.matrix, a, b, f), check_combine_branches(a, b)), 1e-9);
}

TEST(Conjugation, UnconjugatedUnitaryFailsRotatedStates) {
    const EigenList a{1.2, 0.3, 1.5};
    const ComplexMatrix v = random_unitary(3, 5);
    EXPECT_GT(bit_contract_defect(build_bit_unitary(a, a).matrix, a, a, v), 1e-3);
}

TEST(Controlled, BlocksMatchPerLabelUnitaries) {
    const EigenList a{2.2, 0.4, 0.4}, b{1.0, 1.0, 1.0}, c{0.1, 2.5, 0.4};
    const UnitaryBundle u = build_controlled_bit_unitary({{a, b}, {c, a}});
    EXPECT_EQ(u.labels, 2);
    EXPECT_EQ(u.kind, UnitaryKind::controlled_bit);
    EXPECT_EQ(u.matrix.rows(), 18);
    EXPECT_LT(max_abs_diff(label_block(u, 0), build_bit_unitary(a, b).matrix), 1e-15);
    EXPECT_LT(max_abs_diff(label_block(u, 1), build_bit_unitary(c, a).matrix), 1e-15);
    EXPECT_EQ(u.matrix.block(0, 9, 9, 9).norm(), 0.0);
    EXPECT_THROW(label_block(u, 2), InvalidInput);
    EXPECT_THROW(label_block(u, -1), InvalidInput);
    EXPECT_THROW(build_controlled_bit_unitary({}), InvalidInput);
}

TEST(Controlled, ConjugationIsPerLabel) {
    const UnitaryBundle u = build_controlled_check_unitary(3, 3);
    const ComplexMatrix v = random_unitary(3, 8);
    const UnitaryBundle w = conjugate_unitary(u, v);
    EXPECT_EQ(w.labels, 3);
    EXPECT_EQ(w.kind, UnitaryKind::controlled_check);
    const ComplexMatrix single = conjugate_unitary(build_check_unitary(3), v).matrix;
    for (int x = 0; x < 3; ++x) EXPECT_LT(max_abs_diff(label_block(w, x), single), 1e-14);
}

TEST(Contracts, RandomSuites) {
    for (int q : {2, 3, 4, 5})
        for (const auto& r : unitary_contract_suite(q, 10, 31)) EXPECT_TRUE(r.passed()) << r.name << " q=" << q;
}

#pragma once

#include "bpqm/combine.hpp"
#include "bpqm/rng.hpp"
#include "bpqm/spectra.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace bpqm {

// Mix of Dirichlet-like lists, lists with exact zeros and one-parameter lists.
EigenList random_eigen_list(int q, RngStream& rng);
EigenList random_one_parameter_list(int q, RngStream& rng);

// One row of a verification table: the worst defect seen over `cases`
// randomized instances against a fixed tolerance.
struct SuiteResult {
    std::string name;
    int q = 0;
    std::size_t cases = 0;
    double max_defect = 0;
    double tolerance = 0;

    bool passed() const { return max_defect <= tolerance; }
};

// Largest difference between two labeled branch lists; missing labels
// count as probability 0.
double branch_list_defect(const std::vector<CheckBranch>& a, const std::vector<CheckBranch>& b);

// Closed forms against dense oracles: check branches, bit convolution, PGM.
std::vector<SuiteResult> oracle_equivalence_suite(int q, std::size_t pairs, std::uint64_t seed);

// Check/bit unitaries, their conjugated forms and controlled forms.
std::vector<SuiteResult> unitary_contract_suite(int q, std::size_t pairs, std::uint64_t seed);

// Trace and probability conservation over random combine operations.
SuiteResult conservation_suite(int q, std::size_t operations, std::uint64_t seed);

// sum_m p_m H(check branch m) + H(bit) = H(mu1) + H(mu2), in nats.
SuiteResult chain_rule_suite(int q, std::size_t pairs, std::uint64_t seed);

// Node fidelity bounds, the one-parameter special case and the
// Holevo-fidelity sandwich. Defects are bound violations (0 when they hold).
std::vector<SuiteResult> fidelity_suite(int q, std::size_t pairs, std::uint64_t seed);

bool all_passed(const std::vector<SuiteResult>& rows);

}  // namespace bpqm

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cclab/criteria.hpp"

namespace cclab {

struct NumericCheck {
    int trials = 0;
    double max_rel_integral = 0.0;
    double witness_rel_integral = 0.0;  // meaningful when the verdict is false
    bool agrees = true;                 // numeric outcome consistent with the symbolic verdict
};

/// Structured verdict bundle for one operator. Every verdict names the
/// criterion that produced it; flags carry expectation mismatches and any
/// internal inconsistencies.
struct AnalysisReport {
    std::string name;
    int dim = 0;
    std::string shape;
    DiffPolynomial::Homogeneity homogeneous;
    std::vector<int> levels;
    Verdict zero_integral;
    std::optional<Verdict> null_lagrangian;  // absent for constrained quantities
    H1Verdict h1;
    std::map<std::string, Rational> criterion_details;
    std::optional<NumericCheck> numeric;
    std::vector<std::string> flags;
    bool internal_inconsistency = false;
    std::optional<bool> conjecture_agrees;  // rank>=3 slot-homogeneous cross-check

    std::string to_json(int indent = 2) const;
};

// Full symbolic analysis: shape detection, homogeneity, decomposition levels,
// zero-integral, null-Lagrangian, h1 attribution, applicable coefficient
// criteria with cross-checks, expectation flags.
AnalysisReport analyze(const OperatorSpec& spec);

std::string reports_to_json(const std::vector<AnalysisReport>& reports, int indent = 2);

}  // namespace cclab

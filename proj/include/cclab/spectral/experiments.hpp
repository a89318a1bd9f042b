#pragma once

#include <optional>

#include "cclab/spectral/estimators.hpp"
#include "cclab/spectral/quadrature.hpp"

namespace cclab::spectral {

struct SupportExceedsBox : GridError {
    explicit SupportExceedsBox(const std::string& what) : GridError(what) {}
};

/// One measured series with its attached pass/fail property.
struct ExperimentResult {
    std::string id;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    bool pass = false;
    std::string note;

    std::string to_csv() const;
    std::string summary_json() const;
};

struct ExperimentConfig {
    int grid = 0;  // 0 -> default for the dimension
    int trials = 20;
    unsigned seed = 42;
    double tol = 1e-8;
    int scale_lo = -4;  // dyadic h1 scale range
    int scale_hi = 1;
    bool force_direct = false;  // direct grid evaluation at every tau (errors when
                                // the dilated support leaves the box)
};

// rho(tau) for the fixed rescaled trial family; the change-of-variables
// identities make the series exact, a direct grid evaluation cross-checks
// them where the dilated supports fit inside the box. p = 0 selects the
// BMO-type normalization, p > 1 the L^p variant.
std::vector<ExperimentResult> scaling_experiment(const ExperimentConfig& cfg, double p = 0);

// pointwise identity and weak-limit series of the oscillating second-order
// family on the 3-torus
std::vector<ExperimentResult> oscillation_experiment(const ExperimentConfig& cfg);

std::vector<ExperimentResult> beurling_experiment(const ExperimentConfig& cfg);
std::vector<ExperimentResult> kb_experiment(const ExperimentConfig& cfg);
std::vector<ExperimentResult> potentials_experiment(const ExperimentConfig& cfg);
std::vector<ExperimentResult> poincare_experiment(const ExperimentConfig& cfg);
std::vector<ExperimentResult> ns_experiment(const ExperimentConfig& cfg);

std::vector<ExperimentResult> run_experiment(const std::string& name,
                                             const ExperimentConfig& cfg);

}  // namespace cclab::spectral

#pragma once

#include <map>

#include "cclab/spectral/multipliers.hpp"

namespace cclab::spectral {

struct H1Estimate {
    double value = 0;
    bool mean_flag = false;  // raised when the input is not mean-free
};

// Maximal-function surrogate: max over dyadic scales t = 2^j, j in
// [j_minus, j_plus], of |h * eta_t| with a fixed normalized mollifier;
// L^1 norm by the periodic trapezoid rule. A constant-equivalent estimator,
// not the exact norm.
H1Estimate h1_norm_estimate(const GridField& h, int j_minus, int j_plus);

// max mean oscillation over all dyadic sub-cubes of levels 0..log2(n)
double bmo_norm_estimate(const GridField& b);

struct Cube {
    std::array<int, 3> lo{0, 0, 0};  // corner in grid indices
    int side_cells = 0;
};

struct PoincareResult {
    std::map<MultiIndex, double, MultiIndexLess> polynomial;  // coeffs around the cube center
    double lhs = 0;   // (avg |f - P|^q)^{1/q}
    double rhs = 0;   // l(Q)^k (avg |grad^k f|^p)^{1/p}
    double ratio() const { return lhs / (rhs + 1e-300); }
};

// degree-(k-1) polynomial matching every derivative average on the cube,
// plus the two sides of the Poincare inequality
PoincareResult poincare_check(const GridField& f, const Cube& q, int k, double p);

}  // namespace cclab::spectral

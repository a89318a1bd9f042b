#pragma once

#include "cclab/spectral/grid.hpp"

namespace cclab::spectral {

// Homogeneous Fourier multipliers. The zero mode is sent to 0 for every
// homogeneous multiplier (Riesz, Beurling, inverse Laplacian); the Leray
// projection keeps the mean. Modes with any axis at the Nyquist frequency
// are annihilated; inputs are expected band-limited below n/2.

GridField spectral_derivative(const GridField& f, const MultiIndex& alpha);
GridField riesz(const GridField& f, int axis);
std::vector<GridField> leray_project(const std::vector<GridField>& u);
GridField divergence(const std::vector<GridField>& u);

GridField beurling(const GridField& f);                      // multiplier conj(xi)/xi, n = 2
std::pair<GridField, GridField> wirtinger(const GridField& u);  // (u_z, u_zbar)

GridField jacobian(const std::vector<GridField>& u);   // det of the gradient matrix
GridField hessian_det(const GridField& u);

// K_b f = conj((S b - b S) conj(S f)); b real-valued, n = 2
GridField kb_apply(const GridField& b, const GridField& f);
// relative gap between int b (|Sf|^2 - |f|^2) and int f conj(K_b f)
double kb_identity_check(const GridField& b, const GridField& f);
struct BmosEstimate {
    double value = 0;
    int iterations = 0;
    bool stagnated = false;          // reached the 1e-8 relative stop
    std::vector<double> sequence;    // monotone from below on the discrete operator
};
// power iteration on the self-adjoint K_b; lower bound of the discrete norm
BmosEstimate bmos_norm(const GridField& b, int max_iterations = 60, unsigned seed = 1);

GridField poisson_solve(const GridField& u);  // (-Laplace)^{-1}, mean-free input
std::vector<GridField> potential_C(const std::vector<GridField>& T);   // n(n-1)/2 components
std::vector<GridField> potential_B(const std::vector<GridField>& Phi); // divergence-free image
std::vector<GridField> potential_gradient(const GridField& psi);

// right inverse of B on divergence-free mean-free fields
std::vector<GridField> divergence_potential(const std::vector<GridField>& u);

// relative error of div((u.grad)u) = sum_ij d_j u_i d_i u_j, and the pressure
struct NsIdentity {
    double relative_error = 0;
    GridField pressure;
};
NsIdentity ns_identity_check(const std::vector<GridField>& u);

}  // namespace cclab::spectral

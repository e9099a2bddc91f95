#pragma once

#include "dwall/numerics.hpp"
#include "dwall/report.hpp"

namespace dwall {

// Positive even ground state of eps^2 eta'' + (1 - x^2 - eta^2) eta = 0,
// stored on [0, L] with eta'(0) = 0 and eta(L) = 0.
struct GroundState {
    double eps;
    ScalarField eta;
    SolveReport report;

    // Even extension with cubic interpolation; zero beyond the truncation.
    double at(double x) const;
};

ScalarField thomas_fermi(const Grid& grid);

GroundState solve_eta(double eps, const Grid& grid, double tol = 1e-10, int max_iter = 200000);

double eta_residual(const GroundState& gs);

} // namespace dwall

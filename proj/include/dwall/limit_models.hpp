#pragma once

#include "dwall/numerics.hpp"
#include "dwall/report.hpp"

#include <utility>
#include <vector>

namespace dwall {

enum class LimitCoordinate { x_unit_interval, xi_half_line };

const char* to_string(LimitCoordinate c);

// Lowest eigenpair of -((1 - x^2) v')' = nu (1 - x^2)^2 v, v(0) = 0, bounded at x = 1.
// In the xi coordinate (x = tanh xi) this is -w'' = nu sech^6(xi) w.
struct LimitEigen {
    double nu0;
    ScalarField v0; // v0(0) = 0, positive, weighted L2 norm one
    LimitCoordinate coordinate;
};

LimitEigen solve_nu0(LimitCoordinate coordinate, const Grid& grid);

// Discrete Rayleigh quotient of le.v0 for the operator it was computed with.
double rayleigh_quotient(const LimitEigen& le);

double mu_zero(const LimitEigen& le);
double mu_zero(double nu0);

struct LimitProfile {
    ScalarField u; // on [0, 1/mu], u(0) = pi/4
    SolveReport report;
    bool constant = false;
};

// Relaxation of -(p u')' + q sin(4u)/4 = 0 with p = 1 - (mu y)^2, q = p^2,
// u(0) = pi/4 and the natural condition at y = 1/mu.
LimitProfile solve_limit_profile(double mu, const Grid& grid, double tol = 1e-10, int max_iter = 2000000);

// Full symmetric (theta1, theta2) = (sin u, cos u) on [-Y, Y] from the half
// profile, using u(-y) = pi/2 - u(y) and a constant extension beyond 1/mu.
PairField reconstruct_theta(const ScalarField& u_half, double half_length);
PairField reconstruct_theta(const ScalarField& u_half);

// Second variation of the constrained energy at u = pi/4 in direction v
// (x-form, v given on the eigenproblem grid), using the discrete forms.
double second_variation(double mu, const LimitEigen& le);

// u(y) = pi/2 - arctan(exp(-y)).
ScalarField explicit_wall(const Grid& grid);
// max |-u'' + sin(4u)/4| at interior nodes.
double el_residual(const ScalarField& u);

// Cubic coefficient of the pitchfork, mu^2 - mu0^2 = delta2 a^2 + ...
double normal_form_delta2(const LimitEigen& le);

std::vector<std::pair<double, double>> predicted_bifurcation_curve(const std::vector<double>& eps_values, double nu0);
// eps = mu0 sqrt(gamma - 1)
double predicted_eps(double gamma, double nu0);

} // namespace dwall

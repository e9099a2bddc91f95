#pragma once

#include "dwall/ground_state.hpp"
#include "dwall/numerics.hpp"

#include <string>
#include <utility>
#include <vector>

namespace dwall {

// Schroedinger operators -eps^2 d^2 + x^2 - 1 + c eta^2 with
//   L_plus: c = 3, L_minus: c = 1, L_gamma: c = 1 + 2(1 - gamma)/(1 + gamma),
//   L_partner: c = gamma (second block of the Hessian at the uncoupled state).
enum class OperatorKind { L_plus, L_minus, L_gamma, L_partner };

const char* to_string(OperatorKind kind);
double eta_coefficient(OperatorKind kind, double gamma);

struct OperatorSpec {
    OperatorKind kind = OperatorKind::L_gamma;
    double eps = 0.1;
    double gamma = 1.0;
    Boundary bc_left = Boundary::dirichlet;
    Grid domain = Grid(0.0, 3.0, 2049);
};

// Half-line discretisation on spec.domain with Dirichlet at the truncation.
TriDiag assemble(const OperatorSpec& spec, const GroundState& eta);

struct EigenResult {
    std::vector<double> eigenvalues; // ascending
    std::vector<double> residuals;   // ||(A - lambda) v|| / ||v||
    std::vector<std::vector<double>> vectors;
    int k = 0;
};

// Number of eigenvalues of A = W^{-1} K strictly below x (Sturm count).
int count_below(const TriDiag& m, double x);

EigenResult low_eigenvalues(const TriDiag& m, int k);

struct BlockSignature {
    std::string name;
    int negatives = 0;
    std::vector<double> lowest;
};

struct StateSignature {
    std::vector<BlockSignature> blocks;
    int negatives() const;
};

struct HessianClassification {
    StateSignature uncoupled;
    StateSignature symmetric_full;
    StateSignature symmetric_Es;
};

// Eigenvalues within this distance of zero are not counted as negative.
inline constexpr double zero_eigenvalue_tolerance = 1e-8;

HessianClassification classify_hessians(double eps, double gamma, const GroundState& eta, int lowest = 5);

// Full-line spectrum from the even (neumann at 0) and odd (dirichlet at 0) parts.
std::vector<double> full_line_lowest(OperatorKind kind, double gamma, const GroundState& eta, int k);

// max |L_minus eta| on the half-line grid (even sector).
double kernel_residual(const GroundState& eta);

double lowest_L_gamma(double gamma, const GroundState& eta);

class NoSignChangeError : public Error {
public:
    using Error::Error;
};

// Root of gamma -> lambda_min(L_gamma, dirichlet at 0).
double gamma_zero(double eps, const GroundState& eta, std::pair<double, double> bracket = {1.0, 3.0},
                  double tol = 1e-10);

struct BifurcationPoint {
    double eps = 0.0;
    double gamma0 = 0.0;
    bool converged = false;
    std::string message;
};

// gamma_zero for each eps on [0, L] with n nodes; evaluated concurrently,
// returned in input order.
std::vector<BifurcationPoint> bifurcation_curve(const std::vector<double>& eps_values, double domain_length, int n,
                                                std::pair<double, double> bracket = {1.0, 3.0}, double tol = 1e-10);

// (delta / 4) sin(4 theta) ||eta||_{L4}^4 with the full-line norm.
double ls_constraint(double theta, double delta, const GroundState& eta);

// Quadratic form of L_gamma in the product variable for v = 4x^2 on [0, 1/2], 1 beyond.
double trial_quadratic_form(double gamma, const GroundState& eta);

} // namespace dwall

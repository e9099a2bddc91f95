#pragma once

#include "dwall/coupled_states.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dwall {

class BracketError : public Error {
public:
    using Error::Error;
};

struct SplitPoint {
    double alpha = 0.0;
    double split = 0.0;  // psi1'(0+) + psi2'(0+)
    double energy = 0.0; // G of the half-line profile
    WallKind kind = WallKind::symmetric;
    bool converged = false;
};

struct SplitEvaluation {
    SplitPoint point;
    WallProfile profile;
};

struct SolverSettings {
    double tol = 1e-9;
    int max_iter = 200000;
};

// Solve in the half-line class with psi(0) = (alpha, alpha) starting from the
// asymmetric seed, or from warm (whose value at 0 is replaced by alpha).
SplitEvaluation evaluate_split(const PhysParams& p, const GroundState& eta, const Grid& grid,
                               const SolverSettings& s = {}, const PairField* warm = nullptr);

// Throws ConvergenceError when the profile does not converge.
SplitPoint split_function(const PhysParams& p, const GroundState& eta, const Grid& grid, double tol = 1e-9);

struct WallRoot {
    SplitPoint point;
    WallProfile profile;
    int evaluations = 0;
};

// Bisection-guarded secant on alpha -> S(alpha); stops at |S| <= 1e-6 or
// bracket width <= tol_alpha.
WallRoot find_wall_alpha(const PhysParams& p, const GroundState& eta, const Grid& grid,
                         std::pair<double, double> bracket, double tol_alpha = 1e-4, const SolverSettings& s = {},
                         const PairField* warm = nullptr);

// Steps of 0.05 away from center until S changes sign; the result brackets a root.
std::pair<double, double> locate_wall_bracket(const PhysParams& p, const GroundState& eta, const Grid& grid,
                                              double center, const SolverSettings& s = {},
                                              const PairField* warm = nullptr);

enum class ScanMode { warm, cold };

std::vector<SplitPoint> alpha_scan(const PhysParams& p, const GroundState& eta, const Grid& grid, double alpha_min,
                                   double alpha_max, int steps, const SolverSettings& s = {},
                                   ScanMode mode = ScanMode::warm);

struct ContinuationPoint {
    double gamma = 0.0;
    double alpha_opt = 0.0;
    double split = 0.0;
    bool converged = false;
    std::string message;
};

std::vector<ContinuationPoint> gamma_continuation(double eps, const GroundState& eta, const Grid& grid,
                                                  const std::vector<double>& gammas, const SolverSettings& s = {});

} // namespace dwall

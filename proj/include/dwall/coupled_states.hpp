#pragma once

#include "dwall/energetics.hpp"
#include "dwall/ground_state.hpp"
#include "dwall/numerics.hpp"
#include "dwall/report.hpp"

namespace dwall {

enum class WallKind { symmetric, wall_first_dominant, wall_second_dominant };
enum class Component { first, second };

const char* to_string(WallKind kind);

class SignIndefiniteError : public Error {
public:
    using Error::Error;
};

struct WallProfile {
    PhysParams params;
    PairField psi;
    SolveReport report;
    WallKind kind;
};

struct HomogeneousWall {
    PairField phi;
    SolveReport report;
};

PairField uncoupled_state(const GroundState& eta, Component which);
PairField symmetric_state(const GroundState& eta, double gamma);
PairField rotating_state(const GroundState& eta, double theta);

// psi1 = eta sigma(x/eps), psi2 = eta sigma(-x/eps), blended so both equal alpha at 0.
PairField asymmetric_seed(const GroundState& eta, const Grid& grid, double alpha);

// Relaxation on [0, L] with psi(0) = (alpha, alpha) and psi(L) = 0.
WallProfile solve_coupled(const PhysParams& p, const GroundState& eta, const Grid& grid, const PairField& init,
                          double tol = 1e-9, int max_iter = 200000);

// Wall of the trap-free system on a symmetric grid [-Z, Z], phi1(-Z) = 0, phi1(Z) = 1,
// phi2(z) = phi1(-z).
HomogeneousWall solve_homogeneous_wall(double gamma, const Grid& grid, double tol = 1e-9, int max_iter = 200000);

// Max-norm residual of the trapped system at interior nodes.
double coupled_residual(const PairField& psi, const PhysParams& p);
// Same for the trap-free system (the z variable).
double homogeneous_residual(const PairField& phi, double gamma);

WallKind classify_difference(const PairField& psi, double threshold = 1e-8);

} // namespace dwall

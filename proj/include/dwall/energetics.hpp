#pragma once

#include "dwall/ground_state.hpp"
#include "dwall/numerics.hpp"

#include <string>

namespace dwall {

struct PhysParams {
    double eps = 0.1;
    double gamma = 3.0;
    double mu = 0.0;
    double alpha = 0.0;

    // Throws InvalidArgument naming the first field out of range.
    void validate() const;
};

struct EnergyBreakdown {
    double kinetic = 0.0;
    double trap = 0.0;
    double quartic = 0.0;
    double coupling = 0.0;
    double total = 0.0;
};

class DegenerateWindowError : public Error {
public:
    using Error::Error;
};

class ConstraintViolation : public Error {
public:
    ConstraintViolation(const std::string& what, int node, double deviation)
        : Error(what), node_(node), deviation_(deviation)
    {
    }
    int node() const noexcept { return node_; }
    double deviation() const noexcept { return deviation_; }

private:
    int node_;
    double deviation_;
};

enum class LimitEnergy { mu_gamma, mu_one, zero_one };

// Grids starting at 0 are half-line representations of symmetric states;
// every integral over them is doubled.
bool is_half_line(const Grid& grid);

EnergyBreakdown energy_G(const PairField& psi, const PhysParams& p);
double energy_F(const ScalarField& eta, double eps);
// phi is sampled in the stretched variable z = x / eps.
double energy_J(const PairField& phi, const PhysParams& p, const GroundState& eta);
double energy_J0(const PairField& phi, double gamma);

// |G(psi) - F(eta) - eps J(psi / eta)| on the window where eta >= 1e-6.
double splitting_check(const PairField& psi, const PhysParams& p, const GroundState& eta);

// theta is sampled in y = z sqrt(gamma - 1). The mu_gamma variant needs
// eps = mu sqrt(gamma - 1) with eps taken from the ground state.
double energy_I(const PairField& theta, const PhysParams& p, const GroundState& eta, LimitEnergy variant);

} // namespace dwall

#include "dwall/ground_state.hpp"

#include "relaxation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

namespace dwall {

double GroundState::at(double x) const
{
    const double ax = std::abs(x);
    const Grid& g = eta.grid();
    if (ax >= g.x_max()) return 0.0;
    return interpolate_cubic(g, eta.values(), ax);
}

ScalarField thomas_fermi(const Grid& grid)
{
    return ScalarField::sample(grid, [](double x) { return std::abs(x) < 1.0 ? std::sqrt(1.0 - x * x) : 0.0; });
}

namespace {

void require_half_line(const Grid& grid)
{
    if (grid.x_min() != 0.0) throw InvalidArgument("ground state grid must start at x = 0");
}

// Residual at unknown nodes 0..n-2 of eps^2 eta'' + (1 - x^2 - eta^2) eta.
double residual_on(const Grid& grid, double eps, std::span<const double> eta)
{
    const auto lap = second_derivative_matrix(grid, Boundary::neumann, Boundary::dirichlet);
    std::span<const double> inner = eta.first(static_cast<std::size_t>(grid.size() - 1));
    const auto d2 = lap.apply(inner);
    double r = 0.0;
    for (std::size_t i = 0; i < inner.size(); ++i) {
        const double x = grid.node(static_cast<int>(i));
        const double e = inner[i];
        r = std::max(r, std::abs(-eps * eps * d2[i] + (1.0 - x * x - e * e) * e));
    }
    return r;
}

} // namespace

GroundState solve_eta(double eps, const Grid& grid, double tol, int max_iter)
{
    if (!(eps > 0.0)) throw InvalidArgument("epsilon must be positive");
    if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
    if (max_iter < 1) throw InvalidArgument("max_iter must be positive");
    require_half_line(grid);

    const auto start = std::chrono::steady_clock::now();
    const int n = grid.size();
    const auto m = static_cast<std::size_t>(n - 1);

    std::vector<double> eta(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double x = grid.node(static_cast<int>(i));
        eta[i] = std::max(x < 1.0 ? std::sqrt(1.0 - x * x) : 0.0, 1e-3);
    }

    std::vector<double> trap(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double x = grid.node(static_cast<int>(i));
        trap[i] = x * x - 1.0;
    }
    const TriDiag linear =
        second_derivative_matrix(grid, Boundary::neumann, Boundary::dirichlet).scaled(eps * eps).with_potential(trap);

    detail::RelaxationStep step(linear, 3.0);
    SolveReport report;
    std::vector<double> full(static_cast<std::size_t>(n), 0.0);
    std::vector<double> next(m);
    auto residual = [&] {
        std::copy(eta.begin(), eta.end(), full.begin());
        return residual_on(grid, eps, full);
    };
    report.residual = residual();
    while (report.residual > tol && report.iterations < max_iter) {
        for (std::size_t i = 0; i < m; ++i) next[i] = eta[i] * (step.shift() - eta[i] * eta[i]);
        step.advance(eta, next);
        if (std::any_of(next.begin(), next.end(), [](double v) { return !(v > 0.0); })) {
            step.reduce();
            continue;
        }
        eta.swap(next);
        ++report.iterations;
        report.residual = residual();
    }
    report.converged = report.residual <= tol;
    std::copy(eta.begin(), eta.end(), full.begin());
    full.back() = 0.0;
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return GroundState{eps, ScalarField(grid, std::move(full)), report};
}

double eta_residual(const GroundState& gs)
{
    return residual_on(gs.eta.grid(), gs.eps, gs.eta.values());
}

} // namespace dwall

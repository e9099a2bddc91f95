#include "dwall/coupled_states.hpp"

#include "relaxation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

namespace dwall {

const char* to_string(WallKind kind)
{
    switch (kind) {
    case WallKind::symmetric: return "symmetric";
    case WallKind::wall_first_dominant: return "wall_first_dominant";
    case WallKind::wall_second_dominant: return "wall_second_dominant";
    }
    return "unknown";
}

namespace {

std::vector<double> scaled_copy(std::span<const double> v, double s)
{
    std::vector<double> out(v.begin(), v.end());
    for (double& x : out) x *= s;
    return out;
}

double stabilising_shift(double gamma) { return std::max(1.0 + gamma, 3.0); }

// Residual of -c2 u'' + (V + u^2 + g v^2) u at nodes 1..n-2, with the
// three-point stencil on node values.
double pair_residual(const PairField& f, double c2, double gamma, auto&& potential)
{
    const Grid& g = f.grid();
    const auto a = f.first();
    const auto b = f.second();
    const double inv_h2 = 1.0 / (g.spacing() * g.spacing());
    double r = 0.0;
    for (std::size_t i = 1; i + 1 < a.size(); ++i) {
        const double v = potential(g.node(static_cast<int>(i)));
        const double a2 = a[i] * a[i];
        const double b2 = b[i] * b[i];
        const double lap_a = (2.0 * a[i] - a[i - 1] - a[i + 1]) * inv_h2;
        const double lap_b = (2.0 * b[i] - b[i - 1] - b[i + 1]) * inv_h2;
        r = std::max(r, std::abs(c2 * lap_a + (v + a2 + gamma * b2) * a[i]));
        r = std::max(r, std::abs(c2 * lap_b + (v + gamma * a2 + b2) * b[i]));
    }
    return r;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

PairField uncoupled_state(const GroundState& eta, Component which)
{
    const auto v = eta.eta.values();
    std::vector<double> on(v.begin(), v.end());
    std::vector<double> off(v.size(), 0.0);
    if (which == Component::first) return PairField(eta.eta.grid(), std::move(on), std::move(off));
    return PairField(eta.eta.grid(), std::move(off), std::move(on));
}

PairField symmetric_state(const GroundState& eta, double gamma)
{
    if (!(gamma > 0.0) && gamma != 0.0) throw InvalidArgument("gamma must be non-negative");
    const double s = 1.0 / std::sqrt(1.0 + gamma);
    auto v = scaled_copy(eta.eta.values(), s);
    return PairField(eta.eta.grid(), v, v);
}

PairField rotating_state(const GroundState& eta, double theta)
{
    if (!(theta >= 0.0 && theta <= 0.5 * std::numbers::pi)) throw InvalidArgument("theta must lie in [0, pi/2]");
    return PairField(eta.eta.grid(), scaled_copy(eta.eta.values(), std::cos(theta)),
                     scaled_copy(eta.eta.values(), std::sin(theta)));
}

PairField asymmetric_seed(const GroundState& eta, const Grid& grid, double alpha)
{
    if (!(alpha > 0.0)) throw InvalidArgument("alpha must be positive");
    const double k = 2.0 * alpha / eta.at(0.0);
    std::vector<double> a(static_cast<std::size_t>(grid.size()));
    std::vector<double> b(a.size());
    for (int i = 0; i < grid.size(); ++i) {
        const double x = grid.node(i);
        const double up = 1.0 / (1.0 + std::exp(-x / eta.eps));
        const double down = 1.0 - up;
        const double e = eta.at(x);
        a[static_cast<std::size_t>(i)] = e * (up + (k - 1.0) * down);
        b[static_cast<std::size_t>(i)] = e * k * down;
    }
    a.front() = alpha;
    b.front() = alpha;
    a.back() = 0.0;
    b.back() = 0.0;
    return PairField(grid, std::move(a), std::move(b));
}

WallKind classify_difference(const PairField& psi, double threshold)
{
    const auto a = psi.first();
    const auto b = psi.second();
    double lo = 0.0;
    double hi = 0.0;
    for (std::size_t i = 1; i + 1 < a.size(); ++i) {
        const double d = a[i] - b[i];
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    if (hi <= threshold && lo >= -threshold) return WallKind::symmetric;
    if (lo >= -threshold) return WallKind::wall_first_dominant;
    if (hi <= threshold) return WallKind::wall_second_dominant;
    std::ostringstream os;
    os << "psi1 - psi2 changes sign (range " << lo << " .. " << hi << ")";
    throw SignIndefiniteError(os.str());
}

WallProfile solve_coupled(const PhysParams& p, const GroundState& eta, const Grid& grid, const PairField& init,
                          double tol, int max_iter)
{
    p.validate();
    if (!(p.eps > 0.0)) throw InvalidArgument("eps must be positive");
    if (std::abs(p.eps - eta.eps) > 1e-12) throw InvalidArgument("eps does not match the ground state");
    if (grid.x_min() != 0.0) throw InvalidArgument("wall grid must start at x = 0");
    if (!(init.grid() == grid)) throw GridMismatchError("initial profile is not on the solver grid");
    if (!(tol > 0.0) || max_iter < 1) throw InvalidArgument("tolerance and iteration budget must be positive");
    if (std::abs(init.first()[0] - p.alpha) > 1e-12 || std::abs(init.second()[0] - p.alpha) > 1e-12)
        throw InvalidArgument("initial profile must equal alpha at x = 0");

    const auto t0 = std::chrono::steady_clock::now();
    const int n = grid.size();
    const auto m = static_cast<std::size_t>(n - 2);
    const double e2 = p.eps * p.eps;
    const double h = grid.spacing();

    std::vector<double> trap(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double x = grid.node(static_cast<int>(i + 1));
        trap[i] = x * x - 1.0;
    }
    const TriDiag linear =
        second_derivative_matrix(grid, Boundary::dirichlet, Boundary::dirichlet).scaled(e2).with_potential(trap);
    detail::RelaxationStep step(linear, stabilising_shift(p.gamma));
    const double lift = e2 * p.alpha / (h * h);

    std::vector<double> a(init.first().begin() + 1, init.first().end() - 1);
    std::vector<double> b(init.second().begin() + 1, init.second().end() - 1);
    std::vector<double> na(m), nb(m);
    std::vector<double> full_a(static_cast<std::size_t>(n), 0.0), full_b(static_cast<std::size_t>(n), 0.0);
    full_a.front() = p.alpha;
    full_b.front() = p.alpha;

    auto assemble = [&] {
        std::copy(a.begin(), a.end(), full_a.begin() + 1);
        std::copy(b.begin(), b.end(), full_b.begin() + 1);
        return PairField(grid, full_a, full_b);
    };
    auto residual = [&] {
        return pair_residual(assemble(), e2, p.gamma, [](double x) { return x * x - 1.0; });
    };

    SolveReport report;
    report.residual = residual();
    const double c = step.shift();
    while (report.residual > tol && report.iterations < max_iter) {
        for (std::size_t i = 0; i < m; ++i) {
            const double a2 = a[i] * a[i];
            const double b2 = b[i] * b[i];
            na[i] = (c - a2 - p.gamma * b2) * a[i];
            nb[i] = (c - p.gamma * a2 - b2) * b[i];
        }
        na.front() += lift;
        nb.front() += lift;
        step.advance(a, na);
        step.advance(b, nb);
        a.swap(na);
        b.swap(nb);
        ++report.iterations;
        report.residual = residual();
    }
    report.converged = report.residual <= tol;
    PairField psi = assemble();
    report.seconds = seconds_since(t0);
    WallKind kind = WallKind::symmetric;
    if (report.converged) {
        kind = classify_difference(psi);
    } else {
        try {
            kind = classify_difference(psi);
        } catch (const SignIndefiniteError&) {
            kind = WallKind::symmetric;
        }
    }
    return WallProfile{p, std::move(psi), report, kind};
}

HomogeneousWall solve_homogeneous_wall(double gamma, const Grid& grid, double tol, int max_iter)
{
    if (!(gamma > 1.0)) throw InvalidArgument("homogeneous walls exist only for gamma > 1");
    if (std::abs(grid.x_min() + grid.x_max()) > 1e-12 * grid.length())
        throw InvalidArgument("homogeneous wall grid must be symmetric about 0");
    if (!(tol > 0.0) || max_iter < 1) throw InvalidArgument("tolerance and iteration budget must be positive");

    const auto t0 = std::chrono::steady_clock::now();
    const int n = grid.size();
    const auto nn = static_cast<std::size_t>(n);
    const auto m = nn - 2;
    const double h = grid.spacing();
    const double kappa = std::sqrt(gamma - 1.0);

    // phi holds all nodes; phi2 is its mirror image, so only phi1 is iterated.
    std::vector<double> phi(nn);
    for (int i = 0; i < n; ++i) phi[static_cast<std::size_t>(i)] = 1.0 / (1.0 + std::exp(-kappa * grid.node(i)));
    phi.front() = 0.0;
    phi.back() = 1.0;

    const TriDiag linear = second_derivative_matrix(grid, Boundary::dirichlet, Boundary::dirichlet).shifted(-1.0);
    detail::RelaxationStep step(linear, stabilising_shift(gamma));
    const double c = step.shift();

    auto mirror = [&](std::span<const double> v) { return std::vector<double>(v.rbegin(), v.rend()); };
    auto residual = [&] { return homogeneous_residual(PairField(grid, phi, mirror(phi)), gamma); };

    SolveReport report;
    report.residual = residual();
    std::vector<double> inner(m), next(m);
    while (report.residual > tol && report.iterations < max_iter) {
        for (std::size_t i = 0; i < m; ++i) {
            const double a = phi[i + 1];
            const double b = phi[nn - 2 - i];
            next[i] = (c - a * a - gamma * b * b) * a;
            inner[i] = a;
        }
        next.back() += 1.0 / (h * h);
        step.advance(inner, next);
        std::copy(next.begin(), next.end(), phi.begin() + 1);
        ++report.iterations;
        report.residual = residual();
    }
    report.converged = report.residual <= tol;
    report.seconds = seconds_since(t0);
    auto second = mirror(phi);
    return HomogeneousWall{PairField(grid, std::move(phi), std::move(second)), report};
}

double coupled_residual(const PairField& psi, const PhysParams& p)
{
    return pair_residual(psi, p.eps * p.eps, p.gamma, [](double x) { return x * x - 1.0; });
}

double homogeneous_residual(const PairField& phi, double gamma)
{
    return pair_residual(phi, 1.0, gamma, [](double) { return -1.0; });
}

} // namespace dwall

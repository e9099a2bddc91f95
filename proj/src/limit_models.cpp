#include "dwall/limit_models.hpp"

#include "dwall/spectral.hpp"
#include "relaxation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>

namespace dwall {

const char* to_string(LimitCoordinate c)
{
    return c == LimitCoordinate::x_unit_interval ? "x" : "xi";
}

namespace {

constexpr double quarter_pi = std::numbers::pi / 4.0;

// Antiderivative of (1 - x^2)^2.
double q_primitive(double x) { return x - 2.0 * x * x * x / 3.0 + std::pow(x, 5) / 5.0; }

// Divergence-form -(p v')' on nodes 1..n-1 of [0, X] with p known at cell
// midpoints, Dirichlet at 0 and zero flux at X. Weights are cell fractions
// times the mass density.
TriDiag divergence_operator(const Grid& g, auto&& p, std::span<const double> density)
{
    const int n = g.size();
    const double h = g.spacing();
    const double inv_h2 = 1.0 / (h * h);
    const auto m = static_cast<std::size_t>(n - 1);
    std::vector<double> d(m), o(m - 1), w(m);
    for (std::size_t k = 0; k < m; ++k) {
        const int i = static_cast<int>(k) + 1;
        const double left = p(g.node(i - 1) + 0.5 * h);
        const double right = i < n - 1 ? p(g.node(i) + 0.5 * h) : 0.0;
        d[k] = (left + right) * inv_h2;
        if (k + 1 < m) o[k] = -right * inv_h2;
        w[k] = density[k];
    }
    return TriDiag(std::move(d), std::move(o), std::move(w));
}

TriDiag x_operator(const Grid& g)
{
    if (g.x_min() != 0.0 || std::abs(g.x_max() - 1.0) > 1e-14)
        throw InvalidArgument("x-form eigenproblem needs the grid [0, 1]");
    const int n = g.size();
    const double h = g.spacing();
    std::vector<double> mass(static_cast<std::size_t>(n - 1));
    for (int i = 1; i < n - 1; ++i) mass[static_cast<std::size_t>(i - 1)] = std::pow(1.0 - g.node(i) * g.node(i), 2);
    // Exact dual-cell mass at the degenerate end keeps the weight positive.
    mass.back() = (q_primitive(1.0) - q_primitive(1.0 - 0.5 * h)) / h;
    return divergence_operator(g, [](double x) { return 1.0 - x * x; }, mass);
}

TriDiag xi_operator(const Grid& g)
{
    if (g.x_min() != 0.0) throw InvalidArgument("xi-form eigenproblem needs a grid starting at 0");
    const int n = g.size();
    std::vector<double> mass(static_cast<std::size_t>(n - 1));
    for (int i = 1; i < n; ++i) mass[static_cast<std::size_t>(i - 1)] = std::pow(1.0 / std::cosh(g.node(i)), 6);
    mass.back() *= 0.5;
    return divergence_operator(g, [](double) { return 1.0; }, mass);
}

TriDiag operator_for(const LimitEigen& le)
{
    return le.coordinate == LimitCoordinate::x_unit_interval ? x_operator(le.v0.grid()) : xi_operator(le.v0.grid());
}

double quadratic(const TriDiag& m, std::span<const double> v)
{
    const auto d = m.diag();
    const auto o = m.off();
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        s += d[i] * v[i] * v[i];
        if (i + 1 < v.size()) s += 2.0 * o[i] * v[i] * v[i + 1];
    }
    return s;
}

double mass_form(const TriDiag& m, std::span<const double> v, int power = 2)
{
    const auto w = m.weight();
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) s += w[i] * std::pow(v[i], power);
    return s;
}

std::span<const double> unknowns(const ScalarField& f) { return f.values().subspan(1); }

} // namespace

LimitEigen solve_nu0(LimitCoordinate coordinate, const Grid& grid)
{
    const TriDiag m = coordinate == LimitCoordinate::x_unit_interval ? x_operator(grid) : xi_operator(grid);
    const EigenResult eig = low_eigenvalues(m, 1);
    const auto& vec = eig.vectors.front();
    std::vector<double> v(static_cast<std::size_t>(grid.size()), 0.0);
    std::copy(vec.begin(), vec.end(), v.begin() + 1);
    double sum = 0.0;
    for (double x : v) sum += x;
    const double norm = std::sqrt(grid.spacing() * mass_form(m, vec)) * (sum < 0.0 ? -1.0 : 1.0);
    for (double& x : v) x /= norm;
    return LimitEigen{eig.eigenvalues.front(), ScalarField(grid, std::move(v)), coordinate};
}

double rayleigh_quotient(const LimitEigen& le)
{
    const TriDiag m = operator_for(le);
    const auto v = unknowns(le.v0);
    return quadratic(m, v) / mass_form(m, v);
}

double mu_zero(double nu0)
{
    if (!(nu0 > 0.0)) throw InvalidArgument("nu0 must be positive");
    return 1.0 / std::sqrt(nu0);
}

double mu_zero(const LimitEigen& le) { return mu_zero(le.nu0); }

double second_variation(double mu, const LimitEigen& le)
{
    if (!(mu > 0.0)) throw InvalidArgument("mu must be positive");
    const TriDiag m = operator_for(le);
    const auto v = unknowns(le.v0);
    const double h = le.v0.grid().spacing();
    return (mu * mu * h * quadratic(m, v) - h * mass_form(m, v)) / mu;
}

LimitProfile solve_limit_profile(double mu, const Grid& grid, double tol, int max_iter)
{
    if (!(mu > 0.0)) throw InvalidArgument("mu must be positive");
    if (grid.x_min() != 0.0 || std::abs(grid.x_max() * mu - 1.0) > 1e-12)
        throw InvalidArgument("limit profile grid must be [0, 1/mu]");
    if (!(tol > 0.0) || max_iter < 1) throw InvalidArgument("tolerance and iteration budget must be positive");

    const auto t0 = std::chrono::steady_clock::now();
    const int n = grid.size();
    const auto m = static_cast<std::size_t>(n - 1);
    const double h = grid.spacing();

    // In s = mu y the mass density is q = (1 - s^2)^2; the end cell uses its exact average.
    std::vector<double> density(m), q(m), cell(m, 1.0);
    for (std::size_t k = 0; k < m; ++k) {
        const double s = mu * grid.node(static_cast<int>(k) + 1);
        q[k] = std::pow(1.0 - s * s, 2);
    }
    q.back() = (q_primitive(1.0) - q_primitive(1.0 - 0.5 * mu * h)) / (0.5 * mu * h);
    cell.back() = 0.5;
    for (std::size_t k = 0; k < m; ++k) density[k] = cell[k] * q[k];
    const TriDiag linear = divergence_operator(
        grid, [mu](double y) { return 1.0 - mu * mu * y * y; }, density);

    // Unknown is w = u - pi/4, which satisfies -(p w')' = q sin(4w)/4.
    std::vector<double> w(m), next(m);
    for (std::size_t k = 0; k < m; ++k)
        w[k] = 0.1 * std::sin(0.5 * std::numbers::pi * mu * grid.node(static_cast<int>(k) + 1));

    auto residual = [&] {
        const auto kw = linear.apply(w); // (K w) / (cell q)
        double r = 0.0;
        for (std::size_t k = 0; k < m; ++k) r = std::max(r, std::abs(q[k] * (kw[k] - 0.25 * std::sin(4.0 * w[k]))));
        return r;
    };

    detail::RelaxationStep step(linear, 1.0);
    const double c = step.shift();
    SolveReport report;
    report.residual = residual();
    while (report.residual > tol && report.iterations < max_iter) {
        for (std::size_t k = 0; k < m; ++k) next[k] = c * w[k] + 0.25 * std::sin(4.0 * w[k]);
        step.advance(w, next);
        w.swap(next);
        ++report.iterations;
        report.residual = residual();
    }
    report.converged = report.residual <= tol;
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const bool constant = max_abs(w) < 1e-6;
    std::vector<double> u(static_cast<std::size_t>(n), quarter_pi);
    if (!constant)
        for (std::size_t k = 0; k < m; ++k) u[k + 1] = quarter_pi + w[k];
    return LimitProfile{ScalarField(grid, std::move(u)), report, constant};
}

PairField reconstruct_theta(const ScalarField& u_half, double half_length)
{
    const Grid& g = u_half.grid();
    if (g.x_min() != 0.0) throw InvalidArgument("half profile must start at 0");
    const double h = g.spacing();
    const int extra = std::max(0, static_cast<int>(std::ceil((half_length - g.x_max()) / h - 1e-9)));
    const int half_nodes = g.size() + extra; // nodes 0..half_nodes-1 on the right
    const int n = 2 * half_nodes - 1;
    const double y_max = (half_nodes - 1) * h;
    const Grid full(-y_max, y_max, n);
    const double tail = u_half[g.size() - 1];
    auto right = [&](int j) { return j < g.size() ? u_half[j] : tail; };
    std::vector<double> a(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const int j = i - (half_nodes - 1);
        const double u = j >= 0 ? right(j) : std::numbers::pi / 2.0 - right(-j);
        a[static_cast<std::size_t>(i)] = std::sin(u);
        b[static_cast<std::size_t>(i)] = std::cos(u);
    }
    return PairField(full, std::move(a), std::move(b));
}

PairField reconstruct_theta(const ScalarField& u_half) { return reconstruct_theta(u_half, u_half.grid().x_max()); }

ScalarField explicit_wall(const Grid& grid)
{
    return ScalarField::sample(grid, [](double y) { return std::numbers::pi / 2.0 - std::atan(std::exp(-y)); });
}

double el_residual(const ScalarField& u)
{
    const Grid& g = u.grid();
    const double inv_h2 = 1.0 / (g.spacing() * g.spacing());
    double r = 0.0;
    for (int i = 1; i + 1 < g.size(); ++i) {
        const double lap = (u[i - 1] - 2.0 * u[i] + u[i + 1]) * inv_h2;
        r = std::max(r, std::abs(-lap + 0.25 * std::sin(4.0 * u[i])));
    }
    return r;
}

double normal_form_delta2(const LimitEigen& le)
{
    if (le.coordinate != LimitCoordinate::x_unit_interval)
        throw InvalidArgument("normal form coefficient is evaluated in the x coordinate");
    const TriDiag m = operator_for(le);
    std::vector<double> v(le.v0.values().begin() + 1, le.v0.values().end());
    const double h = le.v0.grid().spacing();
    const double norm = std::sqrt(h * mass_form(m, v));
    for (double& x : v) x /= norm;
    const double mu0 = mu_zero(le);
    return -(8.0 / 3.0) * mu0 * mu0 * mass_form(m, v, 4) / mass_form(m, v, 2);
}

std::vector<std::pair<double, double>> predicted_bifurcation_curve(const std::vector<double>& eps_values, double nu0)
{
    if (!(nu0 > 0.0)) throw InvalidArgument("nu0 must be positive");
    std::vector<std::pair<double, double>> out;
    out.reserve(eps_values.size());
    for (double e : eps_values) out.emplace_back(e, 1.0 + nu0 * e * e);
    return out;
}

double predicted_eps(double gamma, double nu0)
{
    if (gamma < 1.0) throw InvalidArgument("gamma must be at least 1");
    return mu_zero(nu0) * std::sqrt(gamma - 1.0);
}

} // namespace dwall

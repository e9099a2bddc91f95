#include "doctest.h"

#include "dwall/energetics.hpp"
#include "dwall/ground_state.hpp"
#include "dwall/limit_models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace dwall;

namespace {

constexpr double quarter_pi = std::numbers::pi / 4;

const LimitEigen& x_eigen(int n = 2049)
{
    static const LimitEigen fine = solve_nu0(LimitCoordinate::x_unit_interval, Grid(0.0, 1.0, 2049));
    if (n == 2049) return fine;
    static const LimitEigen coarse = solve_nu0(LimitCoordinate::x_unit_interval, Grid(0.0, 1.0, 1025));
    return coarse;
}

const LimitEigen& xi_eigen()
{
    static const LimitEigen le = solve_nu0(LimitCoordinate::xi_half_line, Grid(0.0, 10.0, 2049));
    return le;
}

LimitProfile profile(double mu, int n = 1025) { return solve_limit_profile(mu, Grid(0.0, 1.0 / mu, n)); }

double max_deviation(const ScalarField& u)
{
    double m = 0.0;
    for (double v : u.values()) m = std::max(m, std::abs(v - quarter_pi));
    return m;
}

} // namespace

TEST_CASE("limit eigenvalue in both coordinates")
{
    const auto& x = x_eigen();
    const auto& xi = xi_eigen();
    CHECK(xi.nu0 == doctest::Approx(7.29).epsilon(0.05 / 7.29));
    CHECK(std::abs(x.nu0 - xi.nu0) / xi.nu0 <= 1e-3);
    CHECK(x.coordinate == LimitCoordinate::x_unit_interval);
    CHECK(xi.coordinate == LimitCoordinate::xi_half_line);
}

TEST_CASE("eigenvalue converges under refinement")
{
    // Second order: the change from 1025 to 2049 nodes is tiny compared to nu0.
    CHECK(std::abs(x_eigen(1025).nu0 - x_eigen(2049).nu0) <= 1e-3);
}

TEST_CASE("eigenvector normalisation and sign")
{
    for (const LimitEigen* le : {&x_eigen(), &xi_eigen()}) {
        const auto v = le->v0.values();
        CHECK(v.front() == 0.0);
        for (std::size_t i = 1; i < v.size(); ++i) CHECK(v[i] > 0.0);
        CHECK(rayleigh_quotient(*le) == doctest::Approx(le->nu0).epsilon(1e-8));
    }
}

TEST_CASE("critical width")
{
    CHECK(mu_zero(1.0) == 1.0);
    CHECK(mu_zero(4.0) == 0.5);
    CHECK(mu_zero(x_eigen()) == doctest::Approx(1.0 / std::sqrt(x_eigen().nu0)).epsilon(1e-15));
    CHECK(mu_zero(x_eigen()) == doctest::Approx(0.3705).epsilon(1e-3));
}

TEST_CASE("second variation changes sign at the critical width")
{
    const auto& le = x_eigen();
    const double mu0 = mu_zero(le);
    for (double mu : {mu0, 0.4, 0.6, 1.0}) CHECK(second_variation(mu, le) >= -1e-8);
    CHECK(std::abs(second_variation(mu0, le)) <= 1e-8);
    for (double mu : {0.2, 0.3, 0.36}) CHECK(second_variation(mu, le) < 0.0);
}

TEST_CASE("supercritical width relaxes to the constant state")
{
    const auto r = profile(0.5);
    CHECK(r.report.converged);
    CHECK(r.constant);
    CHECK(max_deviation(r.u) == 0.0);
}

TEST_CASE("subcritical width gives a lower-energy wall")
{
    const double mu = 0.2;
    const auto r = profile(mu);
    REQUIRE(r.report.converged);
    CHECK_FALSE(r.constant);
    CHECK(r.u[0] == quarter_pi);
    CHECK(max_deviation(r.u) > 0.1);
    const auto v = r.u.values();
    for (std::size_t i = 1; i < v.size(); ++i) CHECK(v[i] > v[i - 1]);

    const double y_max = 1.0 / mu;
    const auto theta = reconstruct_theta(r.u, y_max);
    const GroundState unused = solve_eta(0.1, Grid(0.0, 3.0, 257), 1e-8);
    const PhysParams p{0.1, 1.0, mu, 0.0};
    const double wall = energy_I(theta, p, unused, LimitEnergy::mu_one);
    CHECK(wall < 2.0 / (15.0 * mu));
}

TEST_CASE("reconstructed pair is mirror symmetric")
{
    const auto r = profile(0.25);
    REQUIRE(r.report.converged);
    const auto theta = reconstruct_theta(r.u, 1.2 / 0.25);
    const auto a = theta.first();
    const auto b = theta.second();
    const std::size_t n = a.size();
    REQUIRE(n % 2 == 1);
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(std::abs(a[i] - b[n - 1 - i]) <= 1e-10);
        CHECK(a[i] * a[i] + b[i] * b[i] == doctest::Approx(1.0).epsilon(1e-14));
    }
    // The extension is rounded out to whole cells.
    CHECK(theta.grid().x_min() <= -4.8);
    CHECK(theta.grid().x_min() > -4.8 - theta.grid().spacing());
    // Constant beyond the support.
    CHECK(a[0] == a[1]);
    CHECK(a[n - 1] == a[n - 2]);
}

TEST_CASE("pitchfork amplitude scales like a square root")
{
    const double mu0 = mu_zero(x_eigen());
    std::vector<double> ratios;
    for (double mu : {0.34, 0.36, 0.368}) {
        const auto r = profile(mu, 513);
        CHECK_FALSE(r.constant);
        ratios.push_back(max_deviation(r.u) / std::sqrt(mu0 - mu));
    }
    const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
    CHECK(*hi / *lo <= 2.0);
    CHECK(*lo > 0.0);
}

TEST_CASE("normal form coefficient")
{
    const double d = normal_form_delta2(x_eigen(2049));
    const double d_coarse = normal_form_delta2(x_eigen(1025));
    CHECK(d < 0.0);
    CHECK(std::abs(d - d_coarse) <= 5e-4 * std::abs(d));

    // Independent of how the eigenvector is scaled.
    const auto& le = x_eigen();
    std::vector<double> scaled(le.v0.values().begin(), le.v0.values().end());
    for (double& v : scaled) v *= 3.0;
    const LimitEigen big{le.nu0, ScalarField(le.v0.grid(), scaled), le.coordinate};
    CHECK(normal_form_delta2(big) == doctest::Approx(d).epsilon(1e-12));

    CHECK_THROWS_AS(normal_form_delta2(xi_eigen()), InvalidArgument);
}

TEST_CASE("explicit wall solves the limiting equation")
{
    std::vector<double> res;
    for (int n : {2049, 4097, 8193}) {
        const Grid y(-20.0, 20.0, n);
        const auto u = explicit_wall(y);
        CHECK(u[n / 2] == doctest::Approx(quarter_pi).epsilon(1e-15));
        res.push_back(el_residual(u));
    }
    // Truncation error of the three-point stencil is h^2/12 times a bounded derivative.
    const double h = 40.0 / 8192;
    CHECK(res.back() <= 0.1 * h * h);
    CHECK(res[0] / res[1] == doctest::Approx(4.0).epsilon(0.05));
    CHECK(res[1] / res[2] == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("predicted bifurcation curve")
{
    const auto curve = predicted_bifurcation_curve({0.0, 0.1}, 7.29);
    REQUIRE(curve.size() == 2);
    CHECK(curve[0].second == 1.0);
    CHECK(curve[1].first == 0.1);
    CHECK(curve[1].second == doctest::Approx(1.0729).epsilon(1e-12));
    for (double gamma : {1.01, 1.2, 2.0}) {
        const double eps = predicted_eps(gamma, 7.29);
        CHECK(predicted_bifurcation_curve({eps}, 7.29)[0].second == doctest::Approx(gamma).epsilon(1e-12));
    }
}

TEST_CASE("bad limit-model inputs are rejected")
{
    CHECK_THROWS_AS(solve_nu0(LimitCoordinate::x_unit_interval, Grid(0.0, 2.0, 101)), InvalidArgument);
    CHECK_THROWS_AS(solve_limit_profile(0.3, Grid(0.0, 2.0, 101)), InvalidArgument);
    CHECK_THROWS_AS(mu_zero(-1.0), InvalidArgument);
}

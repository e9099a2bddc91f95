#include "doctest.h"

#include "dwall/split_continuation.hpp"

#include <algorithm>
#include <cmath>

using namespace dwall;

namespace {

const GroundState& eta01()
{
    static const GroundState gs = solve_eta(0.1, Grid(0.0, 3.0, 2049), 1e-10);
    return gs;
}

const Grid& grid() { return eta01().eta.grid(); }

double one_sided_sum(const PairField& f)
{
    const double h = f.grid().spacing();
    auto d = [h](std::span<const double> v) { return (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h); };
    return d(f.first()) + d(f.second());
}

} // namespace

TEST_CASE("split function near the wall root")
{
    const auto pt = split_function(PhysParams{0.1, 3.0, 0.0, 0.5}, eta01(), grid());
    CHECK(pt.converged);
    CHECK(pt.kind == WallKind::wall_first_dominant);
    // Within the scan resolution of the root; the secant slope is about -31.
    CHECK(std::abs(pt.split) < 0.1);

    const auto small = split_function(PhysParams{0.1, 3.0, 0.0, 0.05}, eta01(), grid());
    CHECK(small.split > 0.0);
}

TEST_CASE("split function of the symmetric profile vanishes")
{
    const auto& gs = eta01();
    const double gamma = 3.0;
    const auto s = symmetric_state(gs, gamma);
    const double alpha = s.first().front();
    const auto e = evaluate_split(PhysParams{0.1, gamma, 0.0, alpha}, gs, grid(), {}, &s);
    CHECK(e.point.kind == WallKind::symmetric);
    // The profile is eta / 2 and eta is even, so both one-sided slopes vanish.
    CHECK(std::abs(e.point.split) <= 1e-6);
    CHECK(std::abs(e.point.split - one_sided_sum(s)) <= 1e-6);
}

TEST_CASE("split is invariant under swapping the components")
{
    const auto e = evaluate_split(PhysParams{0.1, 3.0, 0.0, 0.45}, eta01(), grid());
    CHECK(one_sided_sum(e.profile.psi.swapped()) == e.point.split);
}

TEST_CASE("root finding reproduces alpha0 near one half")
{
    const auto root = find_wall_alpha(PhysParams{0.1, 3.0, 0.0, 0.0}, eta01(), grid(), {0.2, 0.7});
    CHECK(std::abs(root.point.split) <= 1e-6);
    CHECK(root.point.alpha == doctest::Approx(0.5).epsilon(0.04));
    CHECK(root.profile.kind == WallKind::wall_first_dominant);
    CHECK(root.evaluations < 30);
}

TEST_CASE("at gamma 3 the sum of the wall components is the ground state")
{
    // For gamma = 3 the sum and difference of the components decouple into two
    // copies of the scalar equation, so psi1 + psi2 = eta and alpha0 = eta(0) / 2.
    const auto& gs = eta01();
    const auto root = find_wall_alpha(PhysParams{0.1, 3.0, 0.0, 0.0}, gs, grid(), {0.2, 0.7});
    CHECK(root.point.alpha == doctest::Approx(0.5 * gs.eta[0]).epsilon(1e-6));
    double diff = 0.0;
    for (int i = 0; i < grid().size(); ++i) {
        const auto k = static_cast<std::size_t>(i);
        diff = std::max(diff, std::abs(root.profile.psi.first()[k] + root.profile.psi.second()[k] - gs.eta[i]));
    }
    CHECK(diff <= 1e-6);
}

TEST_CASE("root agrees with the energy minimum of the scan")
{
    const PhysParams p{0.1, 3.0, 0.0, 0.2};
    const auto scan = alpha_scan(p, eta01(), grid(), 0.2, 0.7, 26);
    REQUIRE(scan.size() == 26);
    int crossings = 0;
    for (std::size_t i = 1; i < scan.size(); ++i) {
        CHECK(scan[i].converged);
        if ((scan[i].split > 0.0) != (scan[i - 1].split > 0.0)) ++crossings;
    }
    CHECK(crossings == 1);

    const auto best = std::min_element(scan.begin(), scan.end(),
                                       [](const SplitPoint& a, const SplitPoint& b) { return a.energy < b.energy; });
    const auto k = static_cast<std::size_t>(best - scan.begin());
    REQUIRE(k > 0);
    REQUIRE(k + 1 < scan.size());
    // Unimodal: decreasing up to the minimum, increasing after.
    for (std::size_t i = 1; i <= k; ++i) CHECK(scan[i].energy < scan[i - 1].energy);
    for (std::size_t i = k + 1; i < scan.size(); ++i) CHECK(scan[i].energy > scan[i - 1].energy);

    const auto root = find_wall_alpha(p, eta01(), grid(), {0.2, 0.7});
    const double step = 0.02;
    CHECK(std::abs(root.point.alpha - best->alpha) <= step);
    // Energy at the root is not above its scan neighbours.
    CHECK(root.point.energy <= scan[k].energy + 1e-12);
}

TEST_CASE("degenerate scan returns the endpoints")
{
    const auto scan = alpha_scan(PhysParams{0.1, 3.0, 0.0, 0.3}, eta01(), grid(), 0.3, 0.6, 2);
    REQUIRE(scan.size() == 2);
    CHECK(scan[0].alpha == 0.3);
    CHECK(scan[1].alpha == 0.6);
}

TEST_CASE("warm and cold scans agree")
{
    const PhysParams p{0.1, 3.0, 0.0, 0.35};
    const auto warm = alpha_scan(p, eta01(), grid(), 0.35, 0.65, 7, {}, ScanMode::warm);
    const auto cold = alpha_scan(p, eta01(), grid(), 0.35, 0.65, 7, {}, ScanMode::cold);
    REQUIRE(warm.size() == cold.size());
    for (std::size_t i = 0; i < warm.size(); ++i) {
        REQUIRE(warm[i].converged);
        REQUIRE(cold[i].converged);
        CHECK(warm[i].alpha == cold[i].alpha);
        CHECK(std::abs(warm[i].split - cold[i].split) <= 1e-7 * std::max(1.0, std::abs(cold[i].split)));
        CHECK(std::abs(warm[i].energy - cold[i].energy) <= 1e-7);
    }
}

TEST_CASE("warm and cold profiles agree in max norm")
{
    const PhysParams p{0.1, 3.0, 0.0, 0.52};
    const auto cold = evaluate_split(p, eta01(), grid());
    const auto start = evaluate_split(PhysParams{0.1, 3.0, 0.0, 0.47}, eta01(), grid());
    const auto warm = evaluate_split(p, eta01(), grid(), {}, &start.profile.psi);
    double diff = 0.0;
    for (std::size_t i = 0; i < cold.profile.psi.first().size(); ++i) {
        diff = std::max(diff, std::abs(cold.profile.psi.first()[i] - warm.profile.psi.first()[i]));
        diff = std::max(diff, std::abs(cold.profile.psi.second()[i] - warm.profile.psi.second()[i]));
    }
    CHECK(diff <= 1e-7);
}

TEST_CASE("bracket without a sign change is rejected")
{
    CHECK_THROWS_AS(find_wall_alpha(PhysParams{0.1, 3.0, 0.0, 0.0}, eta01(), grid(), {0.2, 0.3}), BracketError);
    CHECK_THROWS_AS(find_wall_alpha(PhysParams{0.1, 3.0, 0.0, 0.0}, eta01(), grid(), {0.3, 0.2}), InvalidArgument);
}

TEST_CASE("continuation in gamma")
{
    const std::vector<double> gammas{3.0, 2.5, 2.0, 1.5, 1.2};
    const auto pts = gamma_continuation(0.1, eta01(), grid(), gammas);
    REQUIRE(pts.size() == gammas.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        CHECK(pts[i].converged);
        CHECK(pts[i].gamma == gammas[i]);
        CHECK(std::abs(pts[i].split) <= 1e-6);
        if (i > 0) CHECK(pts[i].alpha_opt > pts[i - 1].alpha_opt);
    }
    // Linear interpolation between gamma = 3 and the gamma -> 1 limit 1/sqrt(2).
    const double anchored = std::sqrt(0.5) + (pts[0].alpha_opt - std::sqrt(0.5)) * (1.2 - 1.0) / (3.0 - 1.0);
    CHECK(std::abs(pts.back().alpha_opt - anchored) <= 0.05);

    CHECK(gamma_continuation(0.1, eta01(), grid(), {}).empty());
}

TEST_CASE("continuation records invalid gamma instead of throwing")
{
    const auto pts = gamma_continuation(0.1, eta01(), grid(), {0.8});
    REQUIRE(pts.size() == 1);
    CHECK_FALSE(pts[0].converged);
    CHECK_FALSE(pts[0].message.empty());
}

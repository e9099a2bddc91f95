// End-to-end acceptance checks. One PASS/FAIL line per criterion; nonzero exit
// if any fails. Tolerances are fixed here and must not be relaxed.

#include "oracles.hpp"

#include "dwall/cli.hpp"
#include "dwall/coupled_states.hpp"
#include "dwall/energetics.hpp"
#include "dwall/ground_state.hpp"
#include "dwall/limit_models.hpp"
#include "dwall/spectral.hpp"
#include "dwall/split_continuation.hpp"

#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace dwall;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Verdict {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

const GroundState& eta_at(double eps, int n = 2049)
{
    static std::map<std::pair<double, int>, GroundState> cache;
    auto it = cache.find({eps, n});
    if (it == cache.end()) it = cache.emplace(std::pair{eps, n}, solve_eta(eps, Grid(0.0, 3.0, n), 1e-10)).first;
    return it->second;
}

double summary_value(const std::string& summary, const std::string& key)
{
    const auto pos = summary.find(" " + key + "=");
    if (pos == std::string::npos) throw std::runtime_error("summary lacks " + key);
    return std::stod(summary.substr(pos + key.size() + 2));
}

PairField pair_from(const Grid& g, const ScalarField& a, const ScalarField& b)
{
    return PairField(g, {a.values().begin(), a.values().end()}, {b.values().begin(), b.values().end()});
}

double max_dev_from_quarter_pi(const ScalarField& u)
{
    double m = 0.0;
    for (double v : u.values()) m = std::max(m, std::abs(v - std::numbers::pi / 4));
    return m;
}

// 1. Limit eigenvalue through the command-line entry point.
void nu0_reproduction(Verdict& v)
{
    const auto dir = std::filesystem::temp_directory_path() / "dwall_acceptance";
    std::filesystem::create_directories(dir);
    std::ostringstream out, err;
    const auto t0 = Clock::now();
    const int rc = cli::run({"limit-nu0", "--coordinate", "xi", "--domain", "10", "--grid-n", "4097", "--out",
                             (dir / "nu0.csv").string()},
                            out, err);
    const double t = seconds_since(t0);
    std::filesystem::remove_all(dir);
    v.require(rc == 0, "exit status " + std::to_string(rc) + " " + err.str());
    if (rc != 0) return;
    const double nu0 = summary_value(out.str(), "nu0");
    v.detail << "nu0=" << nu0 << " time=" << t << "s";
    v.require(std::abs(nu0 - 7.29) <= 0.05, "nu0 = 7.29 +- 0.05");
    v.require(t < 5.0, "runtime < 5 s");
}

// 2. Root of the split function.
void split_root(Verdict& v)
{
    const auto t0 = Clock::now();
    const GroundState gs = solve_eta(0.1, Grid(0.0, 3.0, 2049), 1e-10);
    const Grid& g = gs.eta.grid();
    const PhysParams p{0.1, 3.0, 0.0, 0.5};
    const auto bracket = locate_wall_bracket(p, gs, g, 0.5);
    const WallRoot root = find_wall_alpha(p, gs, g, bracket);
    const double t = seconds_since(t0);
    v.detail << "alpha0=" << root.point.alpha << " S=" << root.point.split << " time=" << t << "s";
    v.require(root.point.converged, "converged");
    v.require(std::abs(root.point.alpha - 0.5) <= 0.02, "alpha0 = 0.50 +- 0.02");
    v.require(t < 60.0, "runtime < 60 s");
}

// 3. Trend of the optimal alpha toward gamma = 1.
void limiting_alpha(Verdict& v)
{
    const std::vector<double> gammas{3.0, 2.5, 2.0, 1.5, 1.2};
    const auto& gs = eta_at(0.1);
    const auto pts = gamma_continuation(0.1, gs, gs.eta.grid(), gammas);
    bool monotone = true;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        v.require(pts[i].converged, "converged at gamma " + std::to_string(pts[i].gamma));
        v.detail << "a(" << pts[i].gamma << ")=" << pts[i].alpha_opt << " ";
        if (i > 0 && !(pts[i].alpha_opt > pts[i - 1].alpha_opt)) monotone = false;
    }
    const auto& a = pts[pts.size() - 2];
    const auto& b = pts.back();
    const double slope = (b.alpha_opt - a.alpha_opt) / (b.gamma - a.gamma);
    const double at_one = b.alpha_opt + slope * (1.0 - b.gamma);
    v.detail << "extrapolated=" << at_one;
    v.require(monotone, "monotone trend");
    v.require(std::abs(at_one - std::sqrt(0.5)) <= 0.05, "extrapolation within 0.05 of 1/sqrt(2)");
}

// 4. Computed bifurcation threshold against the limit prediction.
void bifurcation_consistency(Verdict& v)
{
    const double nu0 = solve_nu0(LimitCoordinate::xi_half_line, Grid(0.0, 10.0, 4097)).nu0;
    const double g05 = gamma_zero(0.05, eta_at(0.05));
    const double g10 = gamma_zero(0.1, eta_at(0.1));
    const double d05 = std::abs(g05 - (1.0 + nu0 * 0.05 * 0.05));
    const double d10 = std::abs(g10 - (1.0 + nu0 * 0.1 * 0.1));
    v.detail << "gamma0(0.05)=" << g05 << " gamma0(0.1)=" << g10 << " dev=" << d05 << "," << d10;
    v.require(d05 <= 0.02 && d10 <= 0.02, "|gamma0 - (1 + nu0 eps^2)| <= 0.02");
    v.require(g05 < g10, "gamma0(0.05) < gamma0(0.1)");
    v.require(g05 > 1.0 && g10 > 1.0, "both above 1");
}

// 5. Energy splitting on exact and random states.
void splitting_identity(Verdict& v)
{
    const PhysParams p{0.1, 3.0, 0.0, 0.0};
    const auto& gs = eta_at(0.1);
    double worst = splitting_check(symmetric_state(gs, p.gamma), p, gs);
    std::mt19937_64 rng(2024);
    std::vector<std::pair<oracle::SmoothRandom, oracle::SmoothRandom>> fields;
    for (int k = 0; k < 20; ++k) {
        fields.emplace_back(oracle::make_smooth(rng, 0.9, 0.7), oracle::make_smooth(rng, 0.9, 0.7));
        const auto& [f1, f2] = fields.back();
        const Grid& g = gs.eta.grid();
        worst = std::max(worst, splitting_check(pair_from(g, ScalarField::sample(g, f1), ScalarField::sample(g, f2)), p, gs));
    }
    v.detail << "max=" << worst;
    v.require(worst <= 1e-6, "splitting error <= 1e-6");

    // Second-order decay on the first random field.
    std::vector<double> errs;
    for (int n : {513, 1025, 2049}) {
        const auto& e = eta_at(0.1, n);
        const Grid& g = e.eta.grid();
        const auto& [f1, f2] = fields.front();
        errs.push_back(splitting_check(pair_from(g, ScalarField::sample(g, f1), ScalarField::sample(g, f2)), p, e));
    }
    const double r1 = errs[0] / errs[1];
    const double r2 = errs[1] / errs[2];
    v.detail << " ratios=" << r1 << "," << r2;
    v.require(r1 > 3.0 && r2 > 3.0, "O(h^2) decay (ratio > 3 per halving)");
}

// 6. Closed-form energies.
void closed_form_energies(Verdict& v)
{
    const auto& gs = eta_at(0.1);
    const double gamma = 3.0;
    // Simpson on the stretched axis; full line.
    const double z_max = 3.0 / gs.eps;
    const int m = 20000;
    const double h = z_max / m;
    double s = 0.0;
    for (int i = 0; i <= m; ++i)
        s += ((i == 0 || i == m) ? 1.0 : (i % 2 ? 4.0 : 2.0)) * std::pow(gs.at(gs.eps * i * h), 4);
    const double eta4 = 2.0 * s * h / 3.0;
    const double closed = (gamma - 1.0) / (4.0 * (1.0 + gamma)) * eta4;

    const double c = 1.0 / std::sqrt(1.0 + gamma);
    const Grid z(0.0, z_max, 4097);
    const std::vector<double> cv(4097, c);
    const double j = energy_J(PairField(z, cv, cv), PhysParams{0.1, gamma, 0.0, 0.0}, gs);
    const double rel = std::abs(j - closed) / std::abs(closed);
    v.detail << "J rel err=" << rel;
    v.require(rel <= 1e-6, "J at constant symmetric state to 1e-6 relative");

    const Grid y(-20.0, 20.0, 8193);
    const auto u = explicit_wall(y);
    std::vector<double> a, b;
    for (double t : u.values()) {
        a.push_back(std::sin(t));
        b.push_back(std::cos(t));
    }
    const double i01 = energy_I(PairField(y, a, b), PhysParams{0.1, 1.0, 0.0, 0.0}, gs, LimitEnergy::zero_one);
    v.detail << " I01=" << i01;
    v.require(std::abs(i01 - 0.5) <= 1e-4, "I of explicit wall = 0.5 +- 1e-4");
}

// 7. Hessian signatures and the kernel of L_minus.
void hessian_classification(Verdict& v)
{
    const auto& gs = eta_at(0.1);
    const auto low = classify_hessians(0.1, 0.5, gs);
    const auto high = classify_hessians(0.1, 3.0, gs);
    v.detail << "gamma=0.5: uncoupled " << low.uncoupled.negatives() << " symmetric " << low.symmetric_full.negatives()
             << "; gamma=3: uncoupled " << high.uncoupled.negatives() << " symmetric "
             << high.symmetric_full.negatives();
    v.require(low.uncoupled.negatives() >= 1 && low.symmetric_full.negatives() == 0,
              "gamma 0.5: symmetric minimiser, uncoupled saddle");
    v.require(high.uncoupled.negatives() == 0 && high.symmetric_full.negatives() >= 1,
              "gamma 3: uncoupled minimiser, symmetric saddle");
    const double kr = kernel_residual(gs);
    v.detail << " kernel=" << kr;
    v.require(kr <= 1e-8, "L_minus kernel residual <= 1e-8");
}

// 8. Structure and energy of the wall.
void wall_properties(Verdict& v)
{
    const auto& gs = eta_at(0.1);
    const Grid& g = gs.eta.grid();
    const PhysParams p{0.1, 3.0, 0.0, 0.5};
    const WallRoot root = find_wall_alpha(p, gs, g, locate_wall_bracket(p, gs, g, 0.5));
    const auto a = root.profile.psi.first();
    const auto b = root.profile.psi.second();
    bool ordered = true;
    for (std::size_t i = 1; i + 1 < a.size(); ++i)
        if (!(a[i] > b[i] && b[i] > 0.0)) ordered = false;
    v.require(root.point.converged, "converged");
    v.require(ordered, "psi1 > psi2 > 0 on the interior");
    try {
        v.require(classify_difference(root.profile.psi, 1e-8) == WallKind::wall_first_dominant, "first dominant");
    } catch (const SignIndefiniteError& e) {
        v.require(false, std::string("sign change: ") + e.what());
    }
    const PhysParams q{0.1, 3.0, 0.0, 0.0};
    const double e_wall = energy_G(root.profile.psi, q).total;
    const double e_sym = energy_G(symmetric_state(gs, 3.0), q).total;
    v.detail << "G(wall)=" << e_wall << " G(symmetric)=" << e_sym;
    v.require(e_wall < e_sym, "wall energy below symmetric");
}

// 9. Pitchfork of the limiting constrained problem.
void limit_pitchfork(Verdict& v)
{
    const LimitEigen le = solve_nu0(LimitCoordinate::x_unit_interval, Grid(0.0, 1.0, 2049));
    const double mu0 = mu_zero(le);
    auto profile = [](double mu, int n) { return solve_limit_profile(mu, Grid(0.0, 1.0 / mu, n)); };

    const auto above = profile(0.5, 1025);
    v.require(above.report.converged && above.constant, "constant pi/4 at mu = 0.5");

    const double mu = 0.2;
    const auto below = profile(mu, 1025);
    const GroundState& gs = eta_at(0.1);
    const double e_wall =
        energy_I(reconstruct_theta(below.u, 1.0 / mu), PhysParams{0.1, 1.0, mu, 0.0}, gs, LimitEnergy::mu_one);
    const double e_const = 2.0 / (15.0 * mu);
    v.detail << "mu0=" << mu0 << " I(mu=0.2)=" << e_wall << " vs " << e_const;
    v.require(below.report.converged && !below.constant, "nonconstant at mu = 0.2");
    v.require(e_wall < e_const, "lower energy than the constant state");

    std::vector<double> ratios;
    for (double m : {0.34, 0.36}) ratios.push_back(max_dev_from_quarter_pi(profile(m, 513).u) / std::sqrt(mu0 - m));
    const double spread = std::max(ratios[0], ratios[1]) / std::min(ratios[0], ratios[1]);
    v.detail << " ratios=" << ratios[0] << "," << ratios[1];
    v.require(std::min(ratios[0], ratios[1]) > 0.0 && spread <= 2.0, "amplitude ratio within a factor 2");

    const double d2 = normal_form_delta2(le);
    v.detail << " delta2=" << d2;
    v.require(d2 < 0.0, "delta2 < 0");
}

// 10. Trap-free wall against the explicit profile as gamma -> 1.
void homogeneous_limit(Verdict& v)
{
    // The wall width grows like 1/sqrt(gamma - 1); the domain and grid follow
    // so the resolution in the rescaled variable is the same for every gamma.
    constexpr double y_half = 12.0;
    constexpr double hy = 0.01;
    std::vector<double> devs;
    for (double gamma : {1.5, 1.2, 1.05}) {
        const double s = std::sqrt(gamma - 1.0);
        const double z_half = std::max(20.0, y_half / s);
        const int n = 2 * static_cast<int>(std::ceil(z_half * s / hy)) + 1;
        const Grid g(-z_half, z_half, n);
        const auto w = solve_homogeneous_wall(gamma, g);
        v.require(w.report.converged, "converged at gamma " + std::to_string(gamma));
        double dev = 0.0;
        for (int i = 0; i < n; ++i) {
            const double u = std::numbers::pi / 2 - std::atan(std::exp(-g.node(i) * s));
            const auto k = static_cast<std::size_t>(i);
            dev = std::max({dev, std::abs(w.phi.first()[k] - std::sin(u)), std::abs(w.phi.second()[k] - std::cos(u))});
        }
        devs.push_back(dev);
        v.detail << "dev(" << gamma << ")=" << dev << " ";
    }
    v.require(devs[1] < devs[0] && devs[2] < devs[1], "deviation decreases as gamma -> 1");
}

} // namespace

int main()
{
    const std::vector<std::pair<const char*, std::function<void(Verdict&)>>> criteria{
        {"limit eigenvalue", nu0_reproduction},
        {"split-function root", split_root},
        {"limiting alpha", limiting_alpha},
        {"bifurcation curve", bifurcation_consistency},
        {"energy splitting", splitting_identity},
        {"closed-form energies", closed_form_energies},
        {"hessian classification", hessian_classification},
        {"wall properties", wall_properties},
        {"limit pitchfork", limit_pitchfork},
        {"homogeneous-wall limit", homogeneous_limit},
    };
    int failures = 0;
    int index = 0;
    for (const auto& [name, check] : criteria) {
        ++index;
        Verdict v;
        try {
            check(v);
        } catch (const std::exception& e) {
            v.require(false, std::string("exception: ") + e.what());
        }
        if (!v.pass) ++failures;
        std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << index << " (" << name << "): " << v.detail.str()
                  << std::endl;
    }
    return failures == 0 ? 0 : 1;
}

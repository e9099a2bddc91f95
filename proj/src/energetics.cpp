#include "dwall/energetics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dwall {

void PhysParams::validate() const
{
    auto fail = [](const char* name, const char* rule) {
        throw InvalidArgument(std::string(name) + " out of range: " + rule);
    };
    if (!std::isfinite(eps) || eps < 0.0) fail("eps", "requires eps >= 0");
    if (!std::isfinite(gamma) || gamma <= 0.0) fail("gamma", "requires gamma > 0");
    if (!std::isfinite(mu) || mu < 0.0) fail("mu", "requires mu >= 0");
    if (!std::isfinite(alpha) || alpha < 0.0) fail("alpha", "requires alpha >= 0");
}

bool is_half_line(const Grid& grid) { return grid.x_min() == 0.0; }

namespace {

double symmetry_factor(const Grid& g) { return is_half_line(g) ? 2.0 : 1.0; }

void require_matching_eps(const PhysParams& p, const GroundState& eta)
{
    if (std::abs(p.eps - eta.eps) > 1e-12 * std::max(1.0, eta.eps))
        throw InvalidArgument("parameter eps does not match the ground state");
}

// Returns the worst node of | |theta|^2 - 1 | > 1e-8, or -1.
std::pair<int, double> worst_constraint_node(const PairField& theta)
{
    int worst = -1;
    double dev = 0.0;
    const auto a = theta.first();
    const auto b = theta.second();
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = std::abs(a[i] * a[i] + b[i] * b[i] - 1.0);
        if (d > dev) {
            dev = d;
            worst = static_cast<int>(i);
        }
    }
    return {dev > 1e-8 ? worst : -1, dev};
}

} // namespace

EnergyBreakdown energy_G(const PairField& psi, const PhysParams& p)
{
    const Grid& g = psi.grid();
    const auto a = psi.first();
    const auto b = psi.second();
    const auto da = central_gradient(g, a);
    const auto db = central_gradient(g, b);
    const std::size_t n = a.size();
    std::vector<double> kin(n), trap(n), quart(n), coup(n);
    const double e2 = p.eps * p.eps;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = g.node(static_cast<int>(i));
        const double a2 = a[i] * a[i];
        const double b2 = b[i] * b[i];
        const double rho = a2 + b2;
        kin[i] = 0.5 * e2 * (da[i] * da[i] + db[i] * db[i]);
        trap[i] = 0.5 * (x * x - 1.0) * rho;
        quart[i] = 0.25 * rho * rho;
        coup[i] = 0.5 * (p.gamma - 1.0) * (a2 * b2); // grouped so swapping is bitwise exact
    }
    const double s = symmetry_factor(g);
    EnergyBreakdown e;
    e.kinetic = s * trapezoid(g, kin);
    e.trap = s * trapezoid(g, trap);
    e.quartic = s * trapezoid(g, quart);
    e.coupling = s * trapezoid(g, coup);
    e.total = e.kinetic + e.trap + e.quartic + e.coupling;
    return e;
}

double energy_F(const ScalarField& eta, double eps)
{
    const Grid& g = eta.grid();
    const auto v = eta.values();
    const auto dv = central_gradient(g, v);
    std::vector<double> f(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double x = g.node(static_cast<int>(i));
        const double e2 = v[i] * v[i];
        f[i] = 0.5 * (eps * eps * dv[i] * dv[i] + (x * x - 1.0) * e2 + 0.5 * e2 * e2);
    }
    return symmetry_factor(g) * trapezoid(g, f);
}

namespace {

double weighted_J(const PairField& phi, double gamma, auto&& weight)
{
    const Grid& g = phi.grid();
    const auto a = phi.first();
    const auto b = phi.second();
    const auto da = central_gradient(g, a);
    const auto db = central_gradient(g, b);
    std::vector<double> f(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double w2 = std::pow(weight(g.node(static_cast<int>(i))), 2);
        const double rho = a[i] * a[i] + b[i] * b[i];
        f[i] = 0.5 * (w2 * (da[i] * da[i] + db[i] * db[i]) + 0.5 * w2 * w2 * (rho - 1.0) * (rho - 1.0) +
                      (gamma - 1.0) * w2 * w2 * a[i] * a[i] * b[i] * b[i]);
    }
    return symmetry_factor(g) * trapezoid(g, f);
}

} // namespace

double energy_J(const PairField& phi, const PhysParams& p, const GroundState& eta)
{
    require_matching_eps(p, eta);
    return weighted_J(phi, p.gamma, [&](double z) { return eta.at(eta.eps * z); });
}

double energy_J0(const PairField& phi, double gamma)
{
    return weighted_J(phi, gamma, [](double) { return 1.0; });
}

double splitting_check(const PairField& psi, const PhysParams& p, const GroundState& eta)
{
    require_matching_eps(p, eta);
    constexpr double floor = 1e-6;
    constexpr int min_nodes = 10;
    const Grid& g = psi.grid();
    const bool same_grid = g == eta.eta.grid();

    std::vector<double> w(static_cast<std::size_t>(g.size()));
    for (int i = 0; i < g.size(); ++i) w[static_cast<std::size_t>(i)] = same_grid ? eta.eta[i] : eta.at(g.node(i));

    int first = -1;
    int last = -1;
    for (int i = 0; i < g.size(); ++i) {
        if (w[static_cast<std::size_t>(i)] >= floor) {
            if (first < 0) first = i;
            last = i;
        }
    }
    const int count = first < 0 ? 0 : last - first + 1;
    if (count < min_nodes) {
        std::ostringstream os;
        os << "only " << count << " nodes have eta >= " << floor;
        throw DegenerateWindowError(os.str());
    }
    for (int i = first; i <= last; ++i)
        if (w[static_cast<std::size_t>(i)] < floor) throw DegenerateWindowError("eta window is not an interval");

    const Grid window(g.node(first), g.node(last), count);
    const Grid stretched(g.node(first) / p.eps, g.node(last) / p.eps, count);
    const auto off = static_cast<std::size_t>(first);
    const auto len = static_cast<std::size_t>(count);
    std::vector<double> a(psi.first().begin() + off, psi.first().begin() + off + len);
    std::vector<double> b(psi.second().begin() + off, psi.second().begin() + off + len);
    std::vector<double> e(w.begin() + off, w.begin() + off + len);
    std::vector<double> phi_a(len), phi_b(len);
    for (std::size_t i = 0; i < len; ++i) {
        phi_a[i] = a[i] / e[i];
        phi_b[i] = b[i] / e[i];
    }

    // Weight taken from the window samples so the three functionals see the same eta.
    const ScalarField eta_w(window, e);
    const double g_val = energy_G(PairField(window, a, b), p).total;
    const double f_val = energy_F(eta_w, p.eps);
    const double j_val = weighted_J(PairField(stretched, phi_a, phi_b), p.gamma, [&](double z) {
        return interpolate_cubic(window, e, z * p.eps);
    });
    return std::abs(g_val - f_val - p.eps * j_val);
}

double energy_I(const PairField& theta, const PhysParams& p, const GroundState& eta, LimitEnergy variant)
{
    const Grid& g = theta.grid();
    const auto a = theta.first();
    const auto b = theta.second();
    const auto da = central_gradient(g, a);
    const auto db = central_gradient(g, b);
    std::vector<double> f(a.size());

    if (variant != LimitEnergy::mu_gamma) {
        const auto [node, dev] = worst_constraint_node(theta);
        if (node >= 0) {
            std::ostringstream os;
            os << "|theta|^2 = 1 violated by " << dev << " at node " << node << " (y = " << g.node(node) << ")";
            throw ConstraintViolation(os.str(), node, dev);
        }
    }

    switch (variant) {
    case LimitEnergy::mu_gamma: {
        if (!(p.gamma > 1.0)) throw InvalidArgument("gamma must exceed 1 for the rescaled energy");
        if (!(p.mu > 0.0)) throw InvalidArgument("mu must be positive for the rescaled energy");
        const double expected = p.mu * std::sqrt(p.gamma - 1.0);
        if (std::abs(expected - eta.eps) > 1e-9 * eta.eps)
            throw InvalidArgument("rescaled energy needs eps = mu * sqrt(gamma - 1)");
        const double penalty = 1.0 / (2.0 * (p.gamma - 1.0));
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double w2 = std::pow(eta.at(p.mu * g.node(static_cast<int>(i))), 2);
            const double rho = a[i] * a[i] + b[i] * b[i];
            f[i] = 0.5 * (w2 * (da[i] * da[i] + db[i] * db[i]) + penalty * w2 * w2 * (rho - 1.0) * (rho - 1.0) +
                          w2 * w2 * a[i] * a[i] * b[i] * b[i]);
        }
        break;
    }
    case LimitEnergy::mu_one: {
        if (!(p.mu > 0.0)) throw InvalidArgument("mu must be positive");
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double s = p.mu * g.node(static_cast<int>(i));
            const double w2 = std::abs(s) < 1.0 ? 1.0 - s * s : 0.0;
            f[i] = 0.5 * (w2 * (da[i] * da[i] + db[i] * db[i]) + w2 * w2 * a[i] * a[i] * b[i] * b[i]);
        }
        break;
    }
    case LimitEnergy::zero_one:
        for (std::size_t i = 0; i < a.size(); ++i)
            f[i] = 0.5 * (da[i] * da[i] + db[i] * db[i] + a[i] * a[i] * b[i] * b[i]);
        break;
    }
    return symmetry_factor(g) * trapezoid(g, f);
}

} // namespace dwall

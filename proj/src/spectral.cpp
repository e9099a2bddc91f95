#include "dwall/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <sstream>

namespace dwall {

const char* to_string(OperatorKind kind)
{
    switch (kind) {
    case OperatorKind::L_plus: return "L_plus";
    case OperatorKind::L_minus: return "L_minus";
    case OperatorKind::L_gamma: return "L_gamma";
    case OperatorKind::L_partner: return "L_partner";
    }
    return "unknown";
}

double eta_coefficient(OperatorKind kind, double gamma)
{
    switch (kind) {
    case OperatorKind::L_plus: return 3.0;
    case OperatorKind::L_minus: return 1.0;
    case OperatorKind::L_gamma: return 1.0 + 2.0 * (1.0 - gamma) / (1.0 + gamma);
    case OperatorKind::L_partner: return gamma;
    }
    return 0.0;
}

TriDiag assemble(const OperatorSpec& spec, const GroundState& eta)
{
    if (!(spec.domain == eta.eta.grid())) throw GridMismatchError("operator domain differs from the ground-state grid");
    if (std::abs(spec.eps - eta.eps) > 1e-12 * std::max(1.0, eta.eps))
        throw GridMismatchError("operator eps differs from the ground-state eps");
    if (spec.kind == OperatorKind::L_gamma && !(spec.gamma > 0.0)) throw InvalidArgument("gamma must be positive");
    const Grid& g = spec.domain;
    const UnknownRange r = unknown_range(g, spec.bc_left, Boundary::dirichlet);
    const double c = eta_coefficient(spec.kind, spec.gamma);
    std::vector<double> v(static_cast<std::size_t>(r.count()));
    for (int i = r.first; i <= r.last; ++i) {
        const double x = g.node(i);
        const double e = eta.eta[i];
        v[static_cast<std::size_t>(i - r.first)] = x * x - 1.0 + c * e * e;
    }
    return second_derivative_matrix(g, spec.bc_left, Boundary::dirichlet).scaled(spec.eps * spec.eps).with_potential(v);
}

int count_below(const TriDiag& m, double x)
{
    const auto d = m.diag();
    const auto o = m.off();
    const auto w = m.weight();
    int count = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        q = d[i] - x * w[i] - (i > 0 ? o[i - 1] * o[i - 1] / q : 0.0);
        if (q == 0.0) q = std::numeric_limits<double>::min();
        if (q < 0.0) ++count;
    }
    return count;
}

namespace {

std::pair<double, double> gershgorin(const TriDiag& m)
{
    const auto d = m.diag();
    const auto o = m.off();
    const auto w = m.weight();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < d.size(); ++i) {
        double rad = 0.0;
        if (i > 0) rad += std::abs(o[i - 1]) / std::sqrt(w[i - 1] * w[i]);
        if (i + 1 < d.size()) rad += std::abs(o[i]) / std::sqrt(w[i] * w[i + 1]);
        lo = std::min(lo, d[i] / w[i] - rad);
        hi = std::max(hi, d[i] / w[i] + rad);
    }
    const double pad = 1e-12 * std::max(1.0, std::max(std::abs(lo), std::abs(hi)));
    return {lo - pad, hi + pad};
}

// Solves (K - s W) y = W x with pivots kept away from zero; used only for
// inverse iteration where the shift is an eigenvalue.
std::vector<double> shifted_solve(const TriDiag& m, double s, std::span<const double> x)
{
    const auto d = m.diag();
    const auto o = m.off();
    const auto w = m.weight();
    const std::size_t n = d.size();
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(d[i] - s * w[i]));
    const double tiny = std::max(scale, 1.0) * 1e-15;
    std::vector<double> piv(n), low(n > 0 ? n - 1 : 0), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double p = d[i] - s * w[i];
        if (i > 0) {
            low[i - 1] = o[i - 1] / piv[i - 1];
            p -= low[i - 1] * o[i - 1];
        }
        if (std::abs(p) < tiny) p = p < 0.0 ? -tiny : tiny;
        piv[i] = p;
        y[i] = w[i] * x[i];
    }
    for (std::size_t i = 1; i < n; ++i) y[i] -= low[i - 1] * y[i - 1];
    y[n - 1] /= piv[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) y[i] = (y[i] - o[i] * y[i + 1]) / piv[i];
    return y;
}

double weighted_dot(std::span<const double> a, std::span<const double> b, std::span<const double> w)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += w[i] * a[i] * b[i];
    return s;
}

double norm2(std::span<const double> v)
{
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

} // namespace

EigenResult low_eigenvalues(const TriDiag& m, int k)
{
    const int n = static_cast<int>(m.size());
    if (k < 1 || k > n) throw InvalidArgument("requested eigenvalue count must be in [1, size]");
    const auto [glo, ghi] = gershgorin(m);
    const auto w = m.weight();

    EigenResult res;
    res.k = k;
    double lower = glo;
    for (int j = 0; j < k; ++j) {
        double lo = lower;
        double hi = ghi;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            if (count_below(m, mid) > j)
                hi = mid;
            else
                lo = mid;
            if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(lo), std::abs(hi)))
                break;
        }
        const double lambda = 0.5 * (lo + hi);
        lower = lo;

        std::vector<double> v(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            v[static_cast<std::size_t>(i)] = 1.0 + 0.5 * std::sin(0.7 * (i + 1) * (j + 1)) + 0.25 * std::cos(1.3 * i);
        for (int it = 0; it < 4; ++it) {
            v = shifted_solve(m, lambda, v);
            for (const auto& u : res.vectors) {
                const double c = weighted_dot(u, v, w);
                for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] -= c * u[static_cast<std::size_t>(i)];
            }
            const double nrm = std::sqrt(weighted_dot(v, v, w));
            for (double& x : v) x /= nrm;
        }
        auto av = m.apply(v);
        for (int i = 0; i < n; ++i) av[static_cast<std::size_t>(i)] -= lambda * v[static_cast<std::size_t>(i)];
        res.eigenvalues.push_back(lambda);
        res.residuals.push_back(norm2(av) / norm2(v));
        res.vectors.push_back(std::move(v));
    }
    return res;
}

int StateSignature::negatives() const
{
    int s = 0;
    for (const auto& b : blocks) s += b.negatives;
    return s;
}

namespace {

OperatorSpec spec_for(OperatorKind kind, double gamma, Boundary left, const GroundState& eta)
{
    return OperatorSpec{kind, eta.eps, gamma, left, eta.eta.grid()};
}

std::vector<double> lowest_on(OperatorKind kind, double gamma, Boundary left, const GroundState& eta, int k)
{
    const auto m = assemble(spec_for(kind, gamma, left, eta), eta);
    return low_eigenvalues(m, std::min<int>(k, static_cast<int>(m.size()))).eigenvalues;
}

BlockSignature block(std::string name, std::vector<double> lowest)
{
    BlockSignature b{std::move(name), 0, std::move(lowest)};
    for (double l : b.lowest)
        if (l < -zero_eigenvalue_tolerance) ++b.negatives;
    return b;
}

} // namespace

std::vector<double> full_line_lowest(OperatorKind kind, double gamma, const GroundState& eta, int k)
{
    auto even = lowest_on(kind, gamma, Boundary::neumann, eta, k);
    auto odd = lowest_on(kind, gamma, Boundary::dirichlet, eta, k);
    std::vector<double> all;
    std::merge(even.begin(), even.end(), odd.begin(), odd.end(), std::back_inserter(all));
    all.resize(static_cast<std::size_t>(std::min<int>(k, static_cast<int>(all.size()))));
    return all;
}

HessianClassification classify_hessians(double eps, double gamma, const GroundState& eta, int lowest)
{
    if (std::abs(eps - eta.eps) > 1e-12 * std::max(1.0, eta.eps)) throw InvalidArgument("eps does not match the ground state");
    if (!(gamma > 0.0)) throw InvalidArgument("gamma must be positive");
    HessianClassification c;
    c.uncoupled.blocks.push_back(block("L_plus", full_line_lowest(OperatorKind::L_plus, gamma, eta, lowest)));
    c.uncoupled.blocks.push_back(block("L_partner", full_line_lowest(OperatorKind::L_partner, gamma, eta, lowest)));
    c.symmetric_full.blocks.push_back(block("L_plus", full_line_lowest(OperatorKind::L_plus, gamma, eta, lowest)));
    c.symmetric_full.blocks.push_back(block("L_gamma", full_line_lowest(OperatorKind::L_gamma, gamma, eta, lowest)));
    c.symmetric_Es.blocks.push_back(
        block("L_plus", lowest_on(OperatorKind::L_plus, gamma, Boundary::neumann, eta, lowest)));
    c.symmetric_Es.blocks.push_back(
        block("L_gamma", lowest_on(OperatorKind::L_gamma, gamma, Boundary::dirichlet, eta, lowest)));
    return c;
}

double kernel_residual(const GroundState& eta)
{
    const auto m = assemble(spec_for(OperatorKind::L_minus, 1.0, Boundary::neumann, eta), eta);
    const auto v = eta.eta.values();
    const auto y = m.apply(v.first(m.size()));
    return max_abs(y);
}

double lowest_L_gamma(double gamma, const GroundState& eta)
{
    return lowest_on(OperatorKind::L_gamma, gamma, Boundary::dirichlet, eta, 1).front();
}

double gamma_zero(double eps, const GroundState& eta, std::pair<double, double> bracket, double tol)
{
    if (std::abs(eps - eta.eps) > 1e-12 * std::max(1.0, eta.eps)) throw InvalidArgument("eps does not match the ground state");
    auto [a, b] = bracket;
    if (!(a > 0.0) || !(b > a)) throw InvalidArgument("gamma bracket must satisfy 0 < low < high");
    double fa = lowest_L_gamma(a, eta);
    double fb = lowest_L_gamma(b, eta);
    if (std::abs(fa) <= tol) return a;
    if (std::abs(fb) <= tol) return b;
    if ((fa > 0.0) == (fb > 0.0)) {
        std::ostringstream os;
        os << "lowest eigenvalue of L_gamma has one sign on [" << a << ", " << b << "] (eps = " << eps << ")";
        throw NoSignChangeError(os.str());
    }
    // Illinois iteration, bisection if the bracket stops shrinking.
    int side = 0;
    double c = a;
    for (int it = 0; it < 200; ++it) {
        const double w = b - a;
        c = b - fb * (b - a) / (fb - fa);
        if (!(c > a && c < b)) c = 0.5 * (a + b);
        const double fc = lowest_L_gamma(c, eta);
        if (std::abs(fc) <= tol || w <= 1e-12 * b) return c;
        if ((fc > 0.0) == (fa > 0.0)) {
            a = c;
            fa = fc;
            if (side == 1) fb *= 0.5;
            side = 1;
        } else {
            b = c;
            fb = fc;
            if (side == -1) fa *= 0.5;
            side = -1;
        }
    }
    return c;
}

std::vector<BifurcationPoint> bifurcation_curve(const std::vector<double>& eps_values, double domain_length, int n,
                                                std::pair<double, double> bracket, double tol)
{
    std::vector<std::future<BifurcationPoint>> jobs;
    jobs.reserve(eps_values.size());
    for (double eps : eps_values) {
        jobs.push_back(std::async(std::launch::async, [=] {
            BifurcationPoint bp;
            bp.eps = eps;
            try {
                const auto gs = solve_eta(eps, Grid(0.0, domain_length, n), 1e-10);
                if (!gs.report.converged) throw ConvergenceError("ground state did not converge");
                bp.gamma0 = gamma_zero(eps, gs, bracket, tol);
                bp.converged = true;
            } catch (const Error& e) {
                bp.message = e.what();
            }
            return bp;
        }));
    }
    std::vector<BifurcationPoint> out;
    out.reserve(jobs.size());
    for (auto& j : jobs) out.push_back(j.get());
    return out;
}

double ls_constraint(double theta, double delta, const GroundState& eta)
{
    const Grid& g = eta.eta.grid();
    std::vector<double> f(static_cast<std::size_t>(g.size()));
    for (int i = 0; i < g.size(); ++i) f[static_cast<std::size_t>(i)] = std::pow(eta.eta[i], 4);
    const double l4 = 2.0 * trapezoid(g, f);
    return 0.25 * delta * std::sin(4.0 * theta) * l4;
}

double trial_quadratic_form(double gamma, const GroundState& eta)
{
    const Grid& g = eta.eta.grid();
    const double coef = 2.0 * (1.0 - gamma) / (1.0 + gamma);
    const double e2 = eta.eps * eta.eps;
    std::vector<double> f(static_cast<std::size_t>(g.size()));
    for (int i = 0; i < g.size(); ++i) {
        const double x = g.node(i);
        const double v = x < 0.5 ? 4.0 * x * x : 1.0;
        const double dv = x < 0.5 ? 8.0 * x : 0.0;
        const double e = eta.eta[i];
        f[static_cast<std::size_t>(i)] = e2 * e * e * dv * dv + coef * e * e * e * e * v * v;
    }
    return trapezoid(g, f);
}

} // namespace dwall

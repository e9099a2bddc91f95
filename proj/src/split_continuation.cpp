#include "dwall/split_continuation.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>

namespace dwall {

namespace {

constexpr double split_tolerance = 1e-6;

PairField warm_from(const PairField& prev, double alpha)
{
    std::vector<double> a(prev.first().begin(), prev.first().end());
    std::vector<double> b(prev.second().begin(), prev.second().end());
    a.front() = alpha;
    b.front() = alpha;
    return PairField(prev.grid(), std::move(a), std::move(b));
}

PhysParams with_alpha(PhysParams p, double alpha)
{
    p.alpha = alpha;
    return p;
}

std::string describe(const char* what, double value)
{
    std::ostringstream os;
    os << what << " " << value;
    return os.str();
}

} // namespace

SplitEvaluation evaluate_split(const PhysParams& p, const GroundState& eta, const Grid& grid, const SolverSettings& s,
                               const PairField* warm)
{
    if (!(p.alpha > 0.0)) throw InvalidArgument("alpha must be positive");
    const PairField init =
        warm != nullptr && warm->grid() == grid ? warm_from(*warm, p.alpha) : asymmetric_seed(eta, grid, p.alpha);
    WallProfile prof = solve_coupled(p, eta, grid, init, s.tol, s.max_iter);
    const Grid& g = prof.psi.grid();
    const double h = g.spacing();
    auto one_sided = [h](std::span<const double> f) { return (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h); };
    SplitPoint pt;
    pt.alpha = p.alpha;
    pt.split = one_sided(prof.psi.first()) + one_sided(prof.psi.second());
    pt.energy = energy_G(prof.psi, p).total;
    pt.kind = prof.kind;
    pt.converged = prof.report.converged;
    return SplitEvaluation{pt, std::move(prof)};
}

SplitPoint split_function(const PhysParams& p, const GroundState& eta, const Grid& grid, double tol)
{
    auto e = evaluate_split(p, eta, grid, SolverSettings{tol, 200000});
    if (!e.point.converged) throw ConvergenceError(describe("wall solve did not converge at alpha", p.alpha));
    return e.point;
}

WallRoot find_wall_alpha(const PhysParams& p, const GroundState& eta, const Grid& grid,
                         std::pair<double, double> bracket, double tol_alpha, const SolverSettings& s,
                         const PairField* warm)
{
    auto [a, b] = bracket;
    if (!(a > 0.0) || !(b > a)) throw InvalidArgument("bracket must satisfy 0 < low < high");
    if (!(tol_alpha > 0.0)) throw InvalidArgument("alpha tolerance must be positive");

    std::optional<PairField> last;
    if (warm != nullptr) last = *warm;
    int evaluations = 0;
    auto eval = [&](double alpha) {
        auto e = evaluate_split(with_alpha(p, alpha), eta, grid, s, last ? &*last : nullptr);
        ++evaluations;
        if (!e.point.converged) throw ConvergenceError(describe("wall solve did not converge at alpha", alpha));
        last = e.profile.psi;
        return e;
    };

    SplitEvaluation ea = eval(a);
    SplitEvaluation eb = eval(b);
    auto done = [&](SplitEvaluation& e) { return WallRoot{e.point, std::move(e.profile), evaluations}; };
    if (std::abs(ea.point.split) <= split_tolerance) return done(ea);
    if (std::abs(eb.point.split) <= split_tolerance) return done(eb);
    if ((ea.point.split > 0.0) == (eb.point.split > 0.0)) {
        std::ostringstream os;
        os << "split function has no sign change on [" << a << ", " << b << "]: S = " << ea.point.split << ", "
           << eb.point.split;
        throw BracketError(os.str());
    }

    double fa = ea.point.split;
    double fb = eb.point.split;
    // Secant through the two latest iterates; bisect when it leaves the bracket
    // or when |S| fails to halve.
    double x_prev = a, f_prev = fa;
    double x_cur = b, f_cur = fb;
    if (std::abs(fa) < std::abs(fb)) {
        std::swap(x_prev, x_cur);
        std::swap(f_prev, f_cur);
    }
    bool stalled = false;
    for (int iter = 0; iter < 200 && b - a > tol_alpha; ++iter) {
        const double w = b - a;
        double c = x_cur - f_cur * (x_cur - x_prev) / (f_cur - f_prev);
        if (stalled || !(c > a + 1e-3 * w && c < b - 1e-3 * w)) c = 0.5 * (a + b);
        SplitEvaluation ec = eval(c);
        const double fc = ec.point.split;
        if (std::abs(fc) <= split_tolerance) return done(ec);
        stalled = std::abs(fc) > 0.5 * std::abs(f_cur);
        x_prev = x_cur;
        f_prev = f_cur;
        x_cur = c;
        f_cur = fc;
        if ((fc > 0.0) == (fa > 0.0)) {
            a = c;
            fa = fc;
            ea = std::move(ec);
        } else {
            b = c;
            fb = fc;
            eb = std::move(ec);
        }
    }
    // Bracket is below tol_alpha; a few secant steps inside it pin |S| down.
    SplitEvaluation& best = std::abs(ea.point.split) <= std::abs(eb.point.split) ? ea : eb;
    SplitEvaluation& other = &best == &ea ? eb : ea;
    double x0 = other.point.alpha, f0 = other.point.split;
    double x1 = best.point.alpha, f1 = best.point.split;
    std::optional<SplitEvaluation> polished;
    for (int k = 0; k < 4 && std::abs(f1) > split_tolerance && f1 != f0; ++k) {
        const double c = std::clamp(x1 - f1 * (x1 - x0) / (f1 - f0), a, b);
        SplitEvaluation ec = eval(c);
        if (std::abs(ec.point.split) >= std::abs(f1)) break;
        x0 = x1;
        f0 = f1;
        x1 = c;
        f1 = ec.point.split;
        polished = std::move(ec);
    }
    return polished ? done(*polished) : done(best);
}

std::vector<SplitPoint> alpha_scan(const PhysParams& p, const GroundState& eta, const Grid& grid, double alpha_min,
                                   double alpha_max, int steps, const SolverSettings& s, ScanMode mode)
{
    if (!(alpha_min > 0.0) || !(alpha_max > alpha_min)) throw InvalidArgument("scan needs 0 < alpha_min < alpha_max");
    if (steps < 2) throw InvalidArgument("scan needs at least 2 steps");
    std::vector<double> alphas(static_cast<std::size_t>(steps));
    for (int k = 0; k < steps; ++k)
        alphas[static_cast<std::size_t>(k)] = alpha_min + (alpha_max - alpha_min) * k / (steps - 1);
    alphas.back() = alpha_max;

    std::vector<SplitPoint> out;
    out.reserve(alphas.size());
    if (mode == ScanMode::warm) {
        std::optional<PairField> last;
        for (double al : alphas) {
            auto e = evaluate_split(with_alpha(p, al), eta, grid, s, last ? &*last : nullptr);
            if (e.point.converged) last = e.profile.psi;
            out.push_back(e.point);
        }
        return out;
    }
    std::vector<std::future<SplitPoint>> jobs;
    jobs.reserve(alphas.size());
    for (double al : alphas)
        jobs.push_back(std::async(std::launch::async,
                                  [&, al] { return evaluate_split(with_alpha(p, al), eta, grid, s).point; }));
    for (auto& j : jobs) out.push_back(j.get());
    return out;
}

// Walks from the centre in the downhill direction of S (S decreases with alpha)
// until the sign flips.
std::pair<double, double> locate_wall_bracket(const PhysParams& p, const GroundState& eta, const Grid& grid,
                                         double center, const SolverSettings& s, const PairField* warm)
{
    constexpr double step = 0.05;
    const double lo_limit = 0.01;
    const double hi_limit = 0.999 * eta.at(0.0);
    center = std::clamp(center, lo_limit, hi_limit);
    auto split_at = [&](double al) {
        auto e = evaluate_split(with_alpha(p, al), eta, grid, s, warm);
        if (!e.point.converged) throw ConvergenceError(describe("wall solve did not converge at alpha", al));
        return e.point.split;
    };
    double x0 = center;
    double f0 = split_at(x0);
    const double dir = f0 > 0.0 ? 1.0 : -1.0;
    for (int k = 1; k < 40; ++k) {
        const double x1 = std::clamp(center + dir * step * k, lo_limit, hi_limit);
        const double f1 = split_at(x1);
        if ((f1 > 0.0) != (f0 > 0.0)) return {std::min(x0, x1), std::max(x0, x1)};
        if (x1 == lo_limit || x1 == hi_limit) break;
        x0 = x1;
        f0 = f1;
    }
    throw BracketError(describe("no sign change of the split function near alpha", center));
}

std::vector<ContinuationPoint> gamma_continuation(double eps, const GroundState& eta, const Grid& grid,
                                                  const std::vector<double>& gammas, const SolverSettings& s)
{
    std::vector<ContinuationPoint> out;
    std::optional<PairField> warm;
    double center = 0.5 * eta.at(0.0);
    for (double gamma : gammas) {
        ContinuationPoint cp;
        cp.gamma = gamma;
        try {
            if (!(gamma > 1.0)) throw InvalidArgument("continuation requires gamma > 1");
            PhysParams p{eps, gamma, 0.0, center};
            const PairField* w = warm ? &*warm : nullptr;
            const auto br = locate_wall_bracket(p, eta, grid, center, s, w);
            WallRoot root = find_wall_alpha(p, eta, grid, br, 1e-4, s, w);
            cp.alpha_opt = root.point.alpha;
            cp.split = root.point.split;
            if (root.profile.kind == WallKind::symmetric) {
                cp.message = "profile collapsed to the symmetric state";
            } else {
                cp.converged = true;
                center = cp.alpha_opt;
                warm = std::move(root.profile.psi);
            }
        } catch (const Error& e) {
            cp.message = e.what();
        }
        out.push_back(std::move(cp));
    }
    return out;
}

} // namespace dwall

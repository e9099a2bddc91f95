#include "dwall/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dwall {

namespace {

void require_finite(std::span<const double> v, const char* what)
{
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i])) {
            std::ostringstream os;
            os << what << ": non-finite value at node " << i;
            throw InvalidArgument(os.str());
        }
    }
}

void require_length(std::size_t got, const Grid& grid, const char* what)
{
    if (got != static_cast<std::size_t>(grid.size())) {
        std::ostringstream os;
        os << what << ": expected " << grid.size() << " samples, got " << got;
        throw InvalidArgument(os.str());
    }
}

} // namespace

Grid::Grid(double x_min, double x_max, int n) : x_min_(x_min), x_max_(x_max), n_(n), h_(0.0)
{
    if (n < 3) throw InvalidArgument("grid needs at least 3 nodes");
    if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_max > x_min))
        throw InvalidArgument("grid needs finite endpoints with x_max > x_min");
    h_ = (x_max - x_min) / (n - 1);
}

std::vector<double> Grid::nodes() const
{
    std::vector<double> x(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) x[static_cast<std::size_t>(i)] = node(i);
    return x;
}

ScalarField::ScalarField(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values))
{
    require_length(values_.size(), grid_, "scalar field");
    require_finite(values_, "scalar field");
}

double ScalarField::max_abs() const { return dwall::max_abs(values_); }

PairField::PairField(Grid grid, std::vector<double> first, std::vector<double> second)
    : grid_(grid), first_(std::move(first)), second_(std::move(second))
{
    require_length(first_.size(), grid_, "pair field (first)");
    require_length(second_.size(), grid_, "pair field (second)");
    require_finite(first_, "pair field (first)");
    require_finite(second_, "pair field (second)");
}

TriDiag::TriDiag(std::vector<double> diag, std::vector<double> off)
    : TriDiag(diag, std::move(off), std::vector<double>(diag.size(), 1.0))
{
}

TriDiag::TriDiag(std::vector<double> diag, std::vector<double> off, std::vector<double> weight)
    : diag_(std::move(diag)), off_(std::move(off)), weight_(std::move(weight))
{
    if (diag_.empty()) throw InvalidArgument("tridiagonal operator needs at least one row");
    if (off_.size() + 1 != diag_.size()) throw InvalidArgument("off-diagonal length must be size-1");
    if (weight_.size() != diag_.size()) throw InvalidArgument("weight length must equal size");
    for (double w : weight_)
        if (!(w > 0.0)) throw InvalidArgument("tridiagonal weight must be positive");
}

std::vector<double> TriDiag::apply(std::span<const double> x) const
{
    const std::size_t m = size();
    if (x.size() != m) throw InvalidArgument("apply: length mismatch");
    std::vector<double> y(m);
    for (std::size_t i = 0; i < m; ++i) {
        double s = diag_[i] * x[i];
        if (i > 0) s += off_[i - 1] * x[i - 1];
        if (i + 1 < m) s += off_[i] * x[i + 1];
        y[i] = s / weight_[i];
    }
    return y;
}

TriDiag TriDiag::with_potential(std::span<const double> v) const
{
    if (v.size() != size()) throw InvalidArgument("with_potential: length mismatch");
    std::vector<double> d = diag_;
    for (std::size_t i = 0; i < d.size(); ++i) d[i] += weight_[i] * v[i];
    return TriDiag(std::move(d), off_, weight_);
}

TriDiag TriDiag::shifted(double c) const
{
    std::vector<double> d = diag_;
    for (std::size_t i = 0; i < d.size(); ++i) d[i] += weight_[i] * c;
    return TriDiag(std::move(d), off_, weight_);
}

TriDiag TriDiag::scaled(double s) const
{
    std::vector<double> d = diag_;
    std::vector<double> o = off_;
    for (double& v : d) v *= s;
    for (double& v : o) v *= s;
    return TriDiag(std::move(d), std::move(o), weight_);
}

UnknownRange unknown_range(const Grid& grid, Boundary left, Boundary right)
{
    return {left == Boundary::dirichlet ? 1 : 0,
            right == Boundary::dirichlet ? grid.size() - 2 : grid.size() - 1};
}

TriDiag second_derivative_matrix(const Grid& grid, Boundary left, Boundary right)
{
    const UnknownRange r = unknown_range(grid, left, right);
    const auto m = static_cast<std::size_t>(r.count());
    const double inv_h2 = 1.0 / (grid.spacing() * grid.spacing());
    std::vector<double> d(m, 2.0 * inv_h2);
    std::vector<double> o(m - 1, -inv_h2);
    std::vector<double> w(m, 1.0);
    // Ghost reflection gives the row [2, -2]/h^2; halving the row and the
    // weight keeps K symmetric without changing A.
    if (left == Boundary::neumann) {
        d.front() = inv_h2;
        w.front() = 0.5;
    }
    if (right == Boundary::neumann) {
        d.back() = inv_h2;
        w.back() = 0.5;
    }
    return TriDiag(std::move(d), std::move(o), std::move(w));
}

TriDiagFactor::TriDiagFactor(const TriDiag& m, double shift)
{
    const std::size_t n = m.size();
    const auto d = m.diag();
    const auto o = m.off();
    const auto w = m.weight();
    weight_.assign(w.begin(), w.end());
    pivot_.resize(n);
    lower_.resize(n > 0 ? n - 1 : 0);
    upper_.assign(o.begin(), o.end());

    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(d[i] - shift * w[i]));
    const double floor = 1e-14 * scale;

    for (std::size_t i = 0; i < n; ++i) {
        double p = d[i] - shift * w[i];
        if (i > 0) {
            lower_[i - 1] = o[i - 1] / pivot_[i - 1];
            p -= lower_[i - 1] * o[i - 1];
        }
        if (!(std::abs(p) >= floor) || p == 0.0) {
            std::ostringstream os;
            os << "singular pivot " << p << " at row " << i;
            throw SingularPivotError(os.str());
        }
        pivot_[i] = p;
    }
}

void TriDiagFactor::solve_in_place(std::span<double> y) const
{
    const std::size_t n = pivot_.size();
    if (y.size() != n) throw InvalidArgument("solve: length mismatch");
    for (std::size_t i = 0; i < n; ++i) y[i] *= weight_[i];
    for (std::size_t i = 1; i < n; ++i) y[i] -= lower_[i - 1] * y[i - 1];
    y[n - 1] /= pivot_[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) y[i] = (y[i] - upper_[i] * y[i + 1]) / pivot_[i];
}

std::vector<double> TriDiagFactor::solve(std::span<const double> rhs) const
{
    std::vector<double> y(rhs.begin(), rhs.end());
    solve_in_place(y);
    return y;
}

std::vector<double> thomas_solve(const TriDiag& m, double shift, std::span<const double> rhs)
{
    return TriDiagFactor(m, shift).solve(rhs);
}

double trapezoid(const Grid& grid, std::span<const double> v)
{
    if (v.size() != static_cast<std::size_t>(grid.size())) throw InvalidArgument("trapezoid: length mismatch");
    double s = 0.5 * (v.front() + v.back());
    for (std::size_t i = 1; i + 1 < v.size(); ++i) s += v[i];
    return s * grid.spacing();
}

double trapezoid(const ScalarField& field) { return trapezoid(field.grid(), field.values()); }

std::vector<double> central_gradient(const Grid& grid, std::span<const double> f)
{
    const std::size_t n = f.size();
    if (n != static_cast<std::size_t>(grid.size())) throw InvalidArgument("gradient: length mismatch");
    const double inv2h = 0.5 / grid.spacing();
    std::vector<double> g(n);
    g[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) * inv2h;
    for (std::size_t i = 1; i + 1 < n; ++i) g[i] = (f[i + 1] - f[i - 1]) * inv2h;
    g[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) * inv2h;
    return g;
}

ScalarField central_gradient(const ScalarField& field)
{
    return ScalarField(field.grid(), central_gradient(field.grid(), field.values()));
}

double interpolate_cubic(const Grid& grid, std::span<const double> v, double x)
{
    const int n = grid.size();
    if (x <= grid.x_min()) return v.front();
    if (x >= grid.x_max()) return v.back();
    const double s = (x - grid.x_min()) / grid.spacing();
    if (n < 4) {
        double acc = 0.0;
        for (int j = 0; j < 3; ++j) {
            double l = 1.0;
            for (int k = 0; k < 3; ++k)
                if (k != j) l *= (s - k) / static_cast<double>(j - k);
            acc += l * v[static_cast<std::size_t>(j)];
        }
        return acc;
    }
    const int i0 = std::clamp(static_cast<int>(std::floor(s)) - 1, 0, n - 4);
    double acc = 0.0;
    for (int j = 0; j < 4; ++j) {
        double l = 1.0;
        for (int k = 0; k < 4; ++k)
            if (k != j) l *= (s - (i0 + k)) / static_cast<double>(j - k);
        acc += l * v[static_cast<std::size_t>(i0 + j)];
    }
    return acc;
}

double max_abs(std::span<const double> v)
{
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

} // namespace dwall

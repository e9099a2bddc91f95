#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dwall {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class SingularPivotError : public Error {
public:
    using Error::Error;
};

class GridMismatchError : public Error {
public:
    using Error::Error;
};

// Uniform grid; node(i) is computed from the closed formula, never accumulated.
class Grid {
public:
    Grid(double x_min, double x_max, int n);

    double x_min() const noexcept { return x_min_; }
    double x_max() const noexcept { return x_max_; }
    int size() const noexcept { return n_; }
    double spacing() const noexcept { return h_; }
    double length() const noexcept { return x_max_ - x_min_; }
    double node(int i) const noexcept { return x_min_ + i * h_; }
    std::vector<double> nodes() const;

    // Grid with the same spacing class refined by splitting every cell in two.
    Grid refined() const { return Grid(x_min_, x_max_, 2 * n_ - 1); }

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    double x_min_;
    double x_max_;
    int n_;
    double h_;
};

class ScalarField {
public:
    ScalarField(Grid grid, std::vector<double> values);
    template <class F>
    static ScalarField sample(const Grid& grid, F&& f)
    {
        std::vector<double> v(static_cast<std::size_t>(grid.size()));
        for (int i = 0; i < grid.size(); ++i) v[static_cast<std::size_t>(i)] = f(grid.node(i));
        return ScalarField(grid, std::move(v));
    }

    const Grid& grid() const noexcept { return grid_; }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }
    double max_abs() const;

private:
    Grid grid_;
    std::vector<double> values_;
};

class PairField {
public:
    PairField(Grid grid, std::vector<double> first, std::vector<double> second);

    const Grid& grid() const noexcept { return grid_; }
    std::span<const double> first() const noexcept { return first_; }
    std::span<const double> second() const noexcept { return second_; }
    ScalarField first_field() const { return ScalarField(grid_, first_); }
    ScalarField second_field() const { return ScalarField(grid_, second_); }
    PairField swapped() const { return PairField(grid_, second_, first_); }

private:
    Grid grid_;
    std::vector<double> first_;
    std::vector<double> second_;
};

enum class Boundary { dirichlet, neumann };

// Symmetric tridiagonal pencil (K, W) with W a positive diagonal weight.
// The represented operator is A = W^{-1} K. W is the identity except where a
// Neumann end uses a half cell, which keeps K symmetric.
class TriDiag {
public:
    TriDiag(std::vector<double> diag, std::vector<double> off);
    TriDiag(std::vector<double> diag, std::vector<double> off, std::vector<double> weight);

    std::size_t size() const noexcept { return diag_.size(); }
    std::span<const double> diag() const noexcept { return diag_; }
    std::span<const double> off() const noexcept { return off_; }
    std::span<const double> weight() const noexcept { return weight_; }

    // y = A x
    std::vector<double> apply(std::span<const double> x) const;
    // A + diag(v), i.e. K + W diag(v)
    TriDiag with_potential(std::span<const double> v) const;
    // A + c
    TriDiag shifted(double c) const;
    // s A
    TriDiag scaled(double s) const;

private:
    std::vector<double> diag_;
    std::vector<double> off_;
    std::vector<double> weight_;
};

// Index range of grid nodes that are unknowns under the given boundary kinds.
struct UnknownRange {
    int first;
    int last;
    int count() const noexcept { return last - first + 1; }
};
UnknownRange unknown_range(const Grid& grid, Boundary left, Boundary right);

// -d^2/dx^2 on the unknown nodes.
TriDiag second_derivative_matrix(const Grid& grid, Boundary left, Boundary right);

// LU factors of K - shift W, reusable across right-hand sides.
class TriDiagFactor {
public:
    TriDiagFactor(const TriDiag& m, double shift);
    // Solves (A - shift) y = rhs.
    std::vector<double> solve(std::span<const double> rhs) const;
    void solve_in_place(std::span<double> rhs_then_y) const;
    std::size_t size() const noexcept { return pivot_.size(); }

private:
    std::vector<double> pivot_;
    std::vector<double> lower_;
    std::vector<double> upper_;
    std::vector<double> weight_;
};

std::vector<double> thomas_solve(const TriDiag& m, double shift, std::span<const double> rhs);

double trapezoid(const ScalarField& field);
double trapezoid(const Grid& grid, std::span<const double> values);

ScalarField central_gradient(const ScalarField& field);
std::vector<double> central_gradient(const Grid& grid, std::span<const double> values);

// Four-point Lagrange interpolation of samples on a grid; clamps at the ends.
double interpolate_cubic(const Grid& grid, std::span<const double> values, double x);

double max_abs(std::span<const double> v);

} // namespace dwall

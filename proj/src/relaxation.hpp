#pragma once

#include "dwall/numerics.hpp"
#include "dwall/report.hpp"

#include <limits>

namespace dwall::detail {

// One semi-implicit step (1/tau + A + c) u_new = u/tau + c u - N(u) + lift,
// where A is the linear part and c a stabilising shift.
class RelaxationStep {
public:
    RelaxationStep(TriDiag linear, double shift, double step = 50.0)
        : linear_(std::move(linear)), shift_(shift), step_(step), factor_(build())
    {
    }

    double shift() const noexcept { return shift_; }
    double step() const noexcept { return step_; }

    // On entry work holds c u - N(u) + lift; on exit the new iterate.
    void advance(std::span<const double> current, std::span<double> work) const
    {
        const double inv = 1.0 / step_;
        for (std::size_t i = 0; i < work.size(); ++i) work[i] += inv * current[i];
        factor_.solve_in_place(work);
    }

    void reduce()
    {
        if (++reductions_ > max_reductions) throw ConvergenceError("step-size reduction exhausted");
        step_ *= 0.5;
        factor_ = build();
    }

private:
    static constexpr int max_reductions = 40;

    TriDiagFactor build() const { return TriDiagFactor(linear_.shifted(shift_ + 1.0 / step_), 0.0); }

    TriDiag linear_;
    double shift_;
    double step_;
    TriDiagFactor factor_;
    int reductions_ = 0;
};

} // namespace dwall::detail

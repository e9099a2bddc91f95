#pragma once

#include "dwall/numerics.hpp"

namespace dwall {

struct SolveReport {
    int iterations = 0;
    double residual = 0.0;
    bool converged = false;
    double seconds = 0.0;
};

class ConvergenceError : public Error {
public:
    using Error::Error;
};

} // namespace dwall

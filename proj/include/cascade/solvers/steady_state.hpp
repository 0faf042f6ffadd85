#pragma once

#include <stdexcept>
#include <string>

#include "cascade/qcore/density_matrix.hpp"
#include "cascade/qcore/liouvillian.hpp"

namespace cascade {

class NonUniqueSteadyState : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SolverFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class SteadyMethod { Direct, Iterative };

SteadyMethod parse_steady_method(const std::string& name);
std::string to_string(SteadyMethod m);

struct SteadyStateOptions {
    SteadyMethod method = SteadyMethod::Direct;
    double iterative_tolerance = 1e-10;
    int max_iterations = 5000;
    int restart = 80;
    /// Direct solves whose reciprocal condition estimate falls below this are
    /// treated as singular.
    double min_rcond = 1e-15;
};

struct SolverStats {
    std::string method;
    int iterations = 0;
    long long fill = 0;  // LU nonzeros, 0 for iterative
    double rcond = 0.0;
    double seconds = 0.0;
};

struct SteadyStateResult {
    DensityMatrix rho_ss;
    double residual = 0.0;        // |L vec(rho_ss)|_2
    double residual_limit = 0.0;  // 1e-10 |L|_max
    StateCheck state;
    SolverStats stats;

    bool kernel_ok() const { return residual <= residual_limit; }
};

/// Unit-trace kernel vector of L by trace-row replacement.
SteadyStateResult steady_state(const Liouvillian& L, const SteadyStateOptions& options = {});

} // namespace cascade

#include "cascade/solvers/steady_state.hpp"

#include <chrono>
#include <cmath>

#include <Eigen/IterativeLinearSolvers>
#include <unsupported/Eigen/IterativeSolvers>

#include "cascade/solvers/sparse_lu.hpp"

namespace cascade {

SteadyMethod parse_steady_method(const std::string& name) {
    if (name == "direct") return SteadyMethod::Direct;
    if (name == "iterative") return SteadyMethod::Iterative;
    throw std::invalid_argument("unknown steady-state method '" + name + "' (direct | iterative)");
}

std::string to_string(SteadyMethod m) { return m == SteadyMethod::Direct ? "direct" : "iterative"; }

namespace {

// L with the row of the (0,0) population replaced by the trace functional.
SparseMatrix trace_replaced(const Liouvillian& L, int& pivot) {
    const VecLayout& layout = L.layout();
    pivot = layout.index(0, 0);
    const SparseMatrix& M = L.matrix();
    std::vector<Triplet> trips;
    trips.reserve(static_cast<std::size_t>(M.nonZeros()) + layout.dim());
    for (int k = 0; k < M.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(M, k); it; ++it)
            if (it.row() != pivot) trips.emplace_back(static_cast<int>(it.row()), k, it.value());
    for (int i = 0; i < layout.dim(); ++i) trips.emplace_back(pivot, layout.index(i, i), Complex(1.0, 0.0));
    SparseMatrix A(M.rows(), M.cols());
    A.setFromTriplets(trips.begin(), trips.end());
    A.makeCompressed();
    return A;
}

} // namespace

SteadyStateResult steady_state(const Liouvillian& L, const SteadyStateOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    int pivot = 0;
    const SparseMatrix A = trace_replaced(L, pivot);
    Vector b = Vector::Zero(A.rows());
    b[pivot] = 1.0;

    SolverStats stats;
    stats.method = to_string(options.method);
    Vector x;
    if (options.method == SteadyMethod::Direct) {
        try {
            SparseLu lu(A);
            stats.method += std::string("/") + lu.backend();
            stats.fill = lu.factor_nonzeros();
            stats.rcond = lu.rcond();
            if (std::isfinite(stats.rcond) && stats.rcond < options.min_rcond)
                throw NonUniqueSteadyState("non-unique steady state: trace-replaced Liouvillian has rcond " +
                                           std::to_string(stats.rcond));
            x = lu.solve(b);
        } catch (const SingularMatrix&) {
            throw NonUniqueSteadyState("non-unique steady state: trace-replaced Liouvillian is singular");
        }
    } else {
        Eigen::GMRES<SparseMatrix, Eigen::IncompleteLUT<Complex>> gmres;
        gmres.preconditioner().setDroptol(1e-6);
        gmres.preconditioner().setFillfactor(20);
        gmres.set_restart(options.restart);
        gmres.setTolerance(options.iterative_tolerance);
        gmres.setMaxIterations(options.max_iterations);
        gmres.compute(A);
        if (gmres.info() != Eigen::Success)
            throw NonUniqueSteadyState("non-unique steady state: preconditioner construction failed");
        x = gmres.solve(b);
        stats.iterations = static_cast<int>(gmres.iterations());
        if (gmres.info() != Eigen::Success)
            throw SolverFailure("iterative steady-state solve did not converge (relative error " +
                                std::to_string(gmres.error()) + " after " + std::to_string(gmres.iterations()) +
                                " iterations)");
    }
    if (!x.allFinite()) throw NonUniqueSteadyState("non-unique steady state: solution is not finite");

    DenseMatrix rho = L.unvec(x);
    rho = 0.5 * (rho + rho.adjoint()).eval();
    const Complex tr = rho.trace();
    if (std::abs(tr) < 1e-300) throw NonUniqueSteadyState("non-unique steady state: vanishing trace");
    rho /= tr.real();

    SteadyStateResult r{DensityMatrix(L.space_ptr(), std::move(rho)), 0.0, 1e-10 * L.max_abs(), {}, stats};
    r.residual = L.apply(L.vec(r.rho_ss.matrix())).norm();
    // A degenerate kernel shows up as a solution far off the kernel.
    if (r.residual > 1e-4 * std::max(1.0, L.max_abs()))
        throw NonUniqueSteadyState("non-unique steady state: residual " + std::to_string(r.residual));
    r.state = r.rho_ss.check();
    r.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

} // namespace cascade

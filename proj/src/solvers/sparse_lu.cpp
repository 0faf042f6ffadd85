#include "cascade/solvers/sparse_lu.hpp"

#include <cmath>
#include <limits>
#include <mutex>

#ifdef CASCADE_HAVE_UMFPACK
#include <umfpack.h>
#else
#include <Eigen/SparseLU>
#endif

namespace cascade {

#ifdef CASCADE_HAVE_UMFPACK

struct SparseLu::Impl {
    SparseMatrix A;
    void* numeric = nullptr;
    double control[UMFPACK_CONTROL];
    double info[UMFPACK_INFO];

    ~Impl() {
        if (numeric) umfpack_zi_free_numeric(&numeric);
    }
    const double* ax() const { return reinterpret_cast<const double*>(A.valuePtr()); }
};

SparseLu::SparseLu(const SparseMatrix& A) : impl_(std::make_unique<Impl>()) {
    if (A.rows() != A.cols()) throw DimensionError("LU of a non-square matrix");
    impl_->A = A;
    impl_->A.makeCompressed();
    umfpack_zi_defaults(impl_->control);
    const int n = static_cast<int>(A.rows());
    const auto& M = impl_->A;
    void* symbolic = nullptr;
    int status = umfpack_zi_symbolic(n, n, M.outerIndexPtr(), M.innerIndexPtr(), impl_->ax(), nullptr, &symbolic,
                                     impl_->control, impl_->info);
    if (status != UMFPACK_OK) {
        if (symbolic) umfpack_zi_free_symbolic(&symbolic);
        throw std::runtime_error("UMFPACK symbolic analysis failed with status " + std::to_string(status));
    }
    status = umfpack_zi_numeric(M.outerIndexPtr(), M.innerIndexPtr(), impl_->ax(), nullptr, symbolic, &impl_->numeric,
                                impl_->control, impl_->info);
    umfpack_zi_free_symbolic(&symbolic);
    if (status == UMFPACK_WARNING_singular_matrix) throw SingularMatrix("matrix is singular");
    if (status != UMFPACK_OK)
        throw std::runtime_error("UMFPACK numeric factorization failed with status " + std::to_string(status));
}

SparseLu::~SparseLu() = default;

Vector SparseLu::solve(const Vector& b) const {
    if (b.size() != impl_->A.rows()) throw DimensionError("LU solve: right-hand side length mismatch");
    Vector x(b.size());
    double control[UMFPACK_CONTROL];
    double info[UMFPACK_INFO];
    std::copy(impl_->control, impl_->control + UMFPACK_CONTROL, control);
    const auto& M = impl_->A;
    const int status = umfpack_zi_solve(UMFPACK_A, M.outerIndexPtr(), M.innerIndexPtr(), impl_->ax(), nullptr,
                                        reinterpret_cast<double*>(x.data()), nullptr,
                                        reinterpret_cast<const double*>(b.data()), nullptr, impl_->numeric, control,
                                        info);
    if (status == UMFPACK_WARNING_singular_matrix) throw SingularMatrix("matrix is singular");
    if (status != UMFPACK_OK) throw std::runtime_error("UMFPACK solve failed with status " + std::to_string(status));
    return x;
}

double SparseLu::rcond() const { return impl_->info[UMFPACK_RCOND]; }

long long SparseLu::factor_nonzeros() const {
    return static_cast<long long>(impl_->info[UMFPACK_LNZ] + impl_->info[UMFPACK_UNZ]);
}

const char* SparseLu::backend() const { return "umfpack"; }

#else

struct SparseLu::Impl {
    Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
    mutable std::mutex mutex;
};

SparseLu::SparseLu(const SparseMatrix& A) : impl_(std::make_unique<Impl>()) {
    if (A.rows() != A.cols()) throw DimensionError("LU of a non-square matrix");
    SparseMatrix M = A;
    M.makeCompressed();
    impl_->lu.analyzePattern(M);
    impl_->lu.factorize(M);
    if (impl_->lu.info() != Eigen::Success) throw SingularMatrix("sparse LU failed: " + impl_->lu.lastErrorMessage());
}

SparseLu::~SparseLu() = default;

Vector SparseLu::solve(const Vector& b) const {
    std::lock_guard lock(impl_->mutex);
    Vector x = impl_->lu.solve(b);
    if (impl_->lu.info() != Eigen::Success) throw std::runtime_error("sparse LU solve failed");
    return x;
}

double SparseLu::rcond() const { return std::numeric_limits<double>::quiet_NaN(); }

long long SparseLu::factor_nonzeros() const {
    return static_cast<long long>(impl_->lu.nnzL() + impl_->lu.nnzU());
}

const char* SparseLu::backend() const { return "eigen-sparselu"; }

#endif

} // namespace cascade

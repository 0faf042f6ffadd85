#pragma once

#include <memory>
#include <string>

#include "cascade/qcore/types.hpp"

namespace cascade {

class SingularMatrix : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Sparse LU factorization with reentrant solves. Backed by UMFPACK when
/// available, otherwise by Eigen::SparseLU (solves serialized).
class SparseLu {
public:
    explicit SparseLu(const SparseMatrix& A);
    ~SparseLu();
    SparseLu(const SparseLu&) = delete;
    SparseLu& operator=(const SparseLu&) = delete;

    Vector solve(const Vector& b) const;

    /// Reciprocal condition estimate (UMFPACK) or NaN when unavailable.
    double rcond() const;
    long long factor_nonzeros() const;
    const char* backend() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace cascade

#pragma once

#include <string>

#include "cascade/qcore/operator.hpp"

namespace cascade {

struct StateCheck {
    double trace_error = 0.0;      // |Tr rho - 1|
    double hermitian_error = 0.0;  // max |rho - rho†|
    double min_eigenvalue = 0.0;
    bool ok(double tol = 1e-8) const {
        return trace_error <= tol && hermitian_error <= tol && min_eigenvalue >= -tol;
    }
    std::string describe() const;
};

class DensityMatrix {
public:
    DensityMatrix(SpacePtr space, DenseMatrix matrix);

    static DensityMatrix pure(SpacePtr space, const Vector& psi);
    static DensityMatrix basis(SpacePtr space, int index);

    const SpacePtr& space_ptr() const { return space_; }
    const HilbertSpace& space() const { return *space_; }
    const DenseMatrix& matrix() const { return matrix_; }
    int dim() const { return space_->dim(); }

    /// Population of basis state i.
    double population(int i) const { return matrix_(i, i).real(); }

    /// Trace, Hermiticity and positivity diagnostics. The eigenvalue check
    /// uses the charge blocks of the space when it carries charges.
    StateCheck check() const;

private:
    SpacePtr space_;
    DenseMatrix matrix_;
};

/// Tr(A rho).
Complex expect(const Operator& A, const DensityMatrix& rho);

} // namespace cascade

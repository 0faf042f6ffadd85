#include "cascade/qcore/density_matrix.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace cascade {

std::string StateCheck::describe() const {
    std::ostringstream os;
    os << "trace error " << trace_error << ", hermitian error " << hermitian_error << ", min eigenvalue "
       << min_eigenvalue;
    return os.str();
}

DensityMatrix::DensityMatrix(SpacePtr space, DenseMatrix matrix) : space_(std::move(space)), matrix_(std::move(matrix)) {
    if (!space_) throw DimensionError("density matrix without a space");
    if (matrix_.rows() != space_->dim() || matrix_.cols() != space_->dim())
        throw DimensionError("density matrix shape does not match space " + space_->describe());
}

DensityMatrix DensityMatrix::pure(SpacePtr space, const Vector& psi) {
    Vector v = psi / psi.norm();
    return DensityMatrix(std::move(space), v * v.adjoint());
}

DensityMatrix DensityMatrix::basis(SpacePtr space, int index) {
    const int d = space->dim();
    if (index < 0 || index >= d) throw DimensionError("basis index out of range");
    DenseMatrix m = DenseMatrix::Zero(d, d);
    m(index, index) = 1.0;
    return DensityMatrix(std::move(space), std::move(m));
}

StateCheck DensityMatrix::check() const {
    StateCheck c;
    c.trace_error = std::abs(matrix_.trace() - Complex(1.0, 0.0));
    c.hermitian_error = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
    const DenseMatrix h = 0.5 * (matrix_ + matrix_.adjoint());

    // Off-block entries between different charges are checked separately so
    // the spectrum can be taken per block.
    std::map<int, std::vector<int>> blocks;
    const auto& q = space_->charges();
    for (int i = 0; i < dim(); ++i) blocks[q[i]].push_back(i);
    double off = 0.0;
    if (blocks.size() > 1)
        for (int j = 0; j < dim(); ++j)
            for (int i = 0; i < dim(); ++i)
                if (q[i] != q[j]) off = std::max(off, std::abs(h(i, j)));

    double lo = std::numeric_limits<double>::infinity();
    for (const auto& [charge, idx] : blocks) {
        const int n = static_cast<int>(idx.size());
        DenseMatrix b(n, n);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) b(i, j) = h(idx[i], idx[j]);
        Eigen::SelfAdjointEigenSolver<DenseMatrix> es(b, Eigen::EigenvaluesOnly);
        lo = std::min(lo, es.eigenvalues().minCoeff());
    }
    // Any coupling between blocks can lower the spectrum by at most its norm.
    c.min_eigenvalue = lo - (off > 0.0 ? off * dim() : 0.0);
    return c;
}

Complex expect(const Operator& A, const DensityMatrix& rho) {
    if (!same_space(A.space_ptr(), rho.space_ptr()))
        throw SpaceMismatch("expect: operator on " + A.space().describe() + ", state on " + rho.space().describe());
    Complex s = 0.0;
    const auto& m = rho.matrix();
    for (int k = 0; k < A.matrix().outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(A.matrix(), k); it; ++it) s += it.value() * m(it.col(), it.row());
    return s;
}

} // namespace cascade

#pragma once

#include <string>
#include <vector>

#include "cascade/qcore/hilbert_space.hpp"
#include "cascade/qcore/types.hpp"

namespace cascade {

/// Sparse complex operator tagged with the space it acts on.
class Operator {
public:
    Operator(SpacePtr space, SparseMatrix matrix, bool hermitian_hint = false);

    static Operator identity(SpacePtr space);
    static Operator zero(SpacePtr space);

    const SpacePtr& space_ptr() const { return space_; }
    const HilbertSpace& space() const { return *space_; }
    const SparseMatrix& matrix() const { return matrix_; }
    int dim() const { return space_->dim(); }
    bool hermitian_hint() const { return hermitian_; }

    Operator adjoint() const;
    DenseMatrix dense() const { return DenseMatrix(matrix_); }
    /// max |A - A†|
    double hermitian_defect() const;

    Operator& operator+=(const Operator& rhs);
    Operator& operator-=(const Operator& rhs);
    Operator& operator*=(Complex s);

private:
    SpacePtr space_;
    SparseMatrix matrix_;
    bool hermitian_ = false;
};

Operator operator+(Operator a, const Operator& b);
Operator operator-(Operator a, const Operator& b);
Operator operator*(const Operator& a, const Operator& b);
Operator operator*(Complex s, Operator a);
Operator operator*(double s, Operator a);

/// Truncated lowering operator, a[k-1,k] = sqrt(k).
Operator destroy(int n, std::string label = "mode");

/// Single entry |i><j|.
Operator transition(int dim, int i, int j, std::string label = "level");

/// Kronecker product in the given order; result space concatenates factors.
Operator tensor(const std::vector<Operator>& ops);

/// As above, checked against an existing composite space.
Operator tensor(const SpacePtr& space, const std::vector<Operator>& ops);

/// Lift an operator on one factor (matrix of that factor's dim) into `space`.
Operator embed(const SpacePtr& space, std::string_view label, const SparseMatrix& local, bool hermitian_hint = false);

/// Remove entries below the drop tolerance.
void prune(SparseMatrix& m, double tol = kDropTolerance);

SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix sparse_identity(int n);

} // namespace cascade

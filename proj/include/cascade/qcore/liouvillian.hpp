#pragma once

#include <string>
#include <vector>

#include "cascade/qcore/operator.hpp"

namespace cascade {

struct CollapseTerm {
    Operator op;
    double rate = 0.0;
    std::string name;
};

/// Map between density-matrix entries (i, j) and positions of the
/// vectorized state. Full layout is column stacking, pos = i + j*dim. A
/// sector layout keeps only pairs whose basis charges agree, in the same
/// column-stacked order.
class VecLayout {
public:
    static VecLayout full(int dim);
    static VecLayout sector(const std::vector<int>& charges);

    int dim() const { return dim_; }
    int size() const { return static_cast<int>(rows_.size()); }
    bool is_full() const { return full_; }

    /// Position of (i, j), or -1 when the pair lies outside the layout.
    int index(int i, int j) const {
        if (full_) return i + j * dim_;
        return lookup_[static_cast<std::size_t>(i) + static_cast<std::size_t>(j) * dim_];
    }
    int row(int pos) const { return rows_[pos]; }
    int col(int pos) const { return cols_[pos]; }

    Vector vec(const DenseMatrix& rho) const;
    DenseMatrix unvec(const Vector& x) const;

    /// Weights w with w.x = Tr(B X) for X = unvec(x).
    Vector functional(const SparseMatrix& B) const;
    Vector trace_functional() const;

private:
    int dim_ = 0;
    bool full_ = true;
    std::vector<int> rows_, cols_;
    std::vector<int> lookup_;
};

class Liouvillian {
public:
    Liouvillian(SpacePtr space, SparseMatrix matrix, std::vector<CollapseTerm> collapses, VecLayout layout);

    const SpacePtr& space_ptr() const { return space_; }
    const HilbertSpace& space() const { return *space_; }
    const SparseMatrix& matrix() const { return matrix_; }
    const std::vector<CollapseTerm>& collapse_terms() const { return collapses_; }
    const VecLayout& layout() const { return layout_; }
    int size() const { return layout_.size(); }
    double max_abs() const { return max_abs_; }

    Vector vec(const DenseMatrix& rho) const { return layout_.vec(rho); }
    DenseMatrix unvec(const Vector& x) const { return layout_.unvec(x); }
    Vector apply(const Vector& x) const { return matrix_ * x; }
    DenseMatrix apply(const DenseMatrix& rho) const { return unvec(apply(vec(rho))); }

private:
    SpacePtr space_;
    SparseMatrix matrix_;
    std::vector<CollapseTerm> collapses_;
    VecLayout layout_;
    double max_abs_ = 0.0;
};

struct LiouvillianOptions {
    /// Restrict to equal-charge pairs when the model conserves the charge.
    bool use_symmetry_sector = true;
};

/// rho -> -i[H, rho] + sum_k rate_k (o rho o† - 1/2 {o†o, rho}).
Liouvillian build_liouvillian(const Operator& H, std::vector<CollapseTerm> collapses,
                              const LiouvillianOptions& options = {});

/// True when every nonzero A_ij shifts charge by the same amount.
bool charge_homogeneous(const SparseMatrix& A, const std::vector<int>& charges, int* shift = nullptr);

} // namespace cascade

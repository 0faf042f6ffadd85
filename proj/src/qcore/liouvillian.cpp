#include "cascade/qcore/liouvillian.hpp"

#include <cmath>
#include <optional>

namespace cascade {

VecLayout VecLayout::full(int dim) {
    VecLayout l;
    l.dim_ = dim;
    l.full_ = true;
    l.rows_.resize(static_cast<std::size_t>(dim) * dim);
    l.cols_.resize(l.rows_.size());
    for (int j = 0; j < dim; ++j)
        for (int i = 0; i < dim; ++i) {
            l.rows_[i + static_cast<std::size_t>(j) * dim] = i;
            l.cols_[i + static_cast<std::size_t>(j) * dim] = j;
        }
    return l;
}

VecLayout VecLayout::sector(const std::vector<int>& charges) {
    VecLayout l;
    const int d = static_cast<int>(charges.size());
    l.dim_ = d;
    l.full_ = false;
    l.lookup_.assign(static_cast<std::size_t>(d) * d, -1);
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i)
            if (charges[i] == charges[j]) {
                l.lookup_[i + static_cast<std::size_t>(j) * d] = static_cast<int>(l.rows_.size());
                l.rows_.push_back(i);
                l.cols_.push_back(j);
            }
    return l;
}

Vector VecLayout::vec(const DenseMatrix& rho) const {
    if (rho.rows() != dim_ || rho.cols() != dim_) throw DimensionError("vec: matrix shape does not match layout");
    Vector x(size());
    for (int p = 0; p < size(); ++p) x[p] = rho(rows_[p], cols_[p]);
    return x;
}

DenseMatrix VecLayout::unvec(const Vector& x) const {
    if (x.size() != size()) throw DimensionError("unvec: vector length does not match layout");
    DenseMatrix rho = DenseMatrix::Zero(dim_, dim_);
    for (int p = 0; p < size(); ++p) rho(rows_[p], cols_[p]) = x[p];
    return rho;
}

Vector VecLayout::functional(const SparseMatrix& B) const {
    if (B.rows() != dim_ || B.cols() != dim_) throw DimensionError("functional: operator shape does not match layout");
    Vector w = Vector::Zero(size());
    // Tr(B X) = sum_ij B_ji X_ij
    for (int k = 0; k < B.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(B, k); it; ++it) {
            const int p = index(static_cast<int>(it.col()), static_cast<int>(it.row()));
            if (p >= 0) w[p] += it.value();
        }
    return w;
}

Vector VecLayout::trace_functional() const {
    Vector w = Vector::Zero(size());
    for (int i = 0; i < dim_; ++i) w[index(i, i)] = 1.0;
    return w;
}

Liouvillian::Liouvillian(SpacePtr space, SparseMatrix matrix, std::vector<CollapseTerm> collapses, VecLayout layout)
    : space_(std::move(space)), matrix_(std::move(matrix)), collapses_(std::move(collapses)), layout_(std::move(layout)) {
    if (matrix_.rows() != layout_.size() || matrix_.cols() != layout_.size())
        throw DimensionError("Liouvillian matrix does not match its layout");
    for (int k = 0; k < matrix_.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(matrix_, k); it; ++it) max_abs_ = std::max(max_abs_, std::abs(it.value()));
}

bool charge_homogeneous(const SparseMatrix& A, const std::vector<int>& charges, int* shift) {
    std::optional<int> s;
    for (int k = 0; k < A.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(A, k); it; ++it) {
            const int d = charges[it.row()] - charges[it.col()];
            if (!s) s = d;
            else if (*s != d) return false;
        }
    if (shift) *shift = s.value_or(0);
    return true;
}

namespace {

// Adds coeff * A rho B restricted to the layout.
void add_sandwich(std::vector<Triplet>& trips, const VecLayout& layout, const SparseMatrix& A, const SparseMatrix& B,
                  Complex coeff) {
    // (A rho B)_ij = sum_kl A_ik rho_kl B_lj
    for (int j = 0; j < B.outerSize(); ++j)
        for (SparseMatrix::InnerIterator b(B, j); b; ++b) {
            const int l = static_cast<int>(b.row());
            for (int k = 0; k < A.outerSize(); ++k) {
                const int col = layout.index(k, l);
                if (col < 0) continue;
                for (SparseMatrix::InnerIterator a(A, k); a; ++a) {
                    const int row = layout.index(static_cast<int>(a.row()), j);
                    if (row < 0) continue;
                    trips.emplace_back(row, col, coeff * a.value() * b.value());
                }
            }
        }
}

} // namespace

Liouvillian build_liouvillian(const Operator& H, std::vector<CollapseTerm> collapses, const LiouvillianOptions& options) {
    const SpacePtr& space = H.space_ptr();
    const int d = space->dim();
    double hmax = 0.0;
    for (int k = 0; k < H.matrix().outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(H.matrix(), k); it; ++it) hmax = std::max(hmax, std::abs(it.value()));
    const double defect = H.hermitian_defect();
    if (defect > kHermitianTolerance * std::max(1.0, hmax))
        throw NotHermitian("Hamiltonian is not Hermitian: |H - H^dag|_max = " + std::to_string(defect));
    for (const auto& c : collapses) {
        if (!same_space(c.op.space_ptr(), space))
            throw SpaceMismatch("collapse operator '" + c.name + "' acts on " + c.op.space().describe() +
                                ", Hamiltonian on " + space->describe());
        if (!(c.rate >= 0.0) || !std::isfinite(c.rate))
            throw std::invalid_argument("collapse rate for '" + c.name + "' must be finite and non-negative");
    }

    bool sector = options.use_symmetry_sector && space->has_charges();
    if (sector) {
        int s = 0;
        sector = charge_homogeneous(H.matrix(), space->charges(), &s) && s == 0;
        for (const auto& c : collapses) sector = sector && charge_homogeneous(c.op.matrix(), space->charges());
    }
    VecLayout layout = sector ? VecLayout::sector(space->charges()) : VecLayout::full(d);

    // K = -iH - 1/2 sum r o†o;  L rho = K rho + rho K† + sum r o rho o†
    SparseMatrix K = Complex(0.0, -1.0) * H.matrix();
    for (const auto& c : collapses) {
        if (c.rate == 0.0) continue;
        SparseMatrix od = c.op.matrix().adjoint();
        K -= Complex(0.5 * c.rate, 0.0) * SparseMatrix(od * c.op.matrix());
    }
    prune(K);
    const SparseMatrix I = sparse_identity(d);
    std::vector<Triplet> trips;
    add_sandwich(trips, layout, K, I, 1.0);
    add_sandwich(trips, layout, I, SparseMatrix(K.adjoint()), 1.0);
    for (const auto& c : collapses) {
        if (c.rate == 0.0) continue;
        add_sandwich(trips, layout, c.op.matrix(), SparseMatrix(c.op.matrix().adjoint()), c.rate);
    }
    SparseMatrix L(layout.size(), layout.size());
    L.setFromTriplets(trips.begin(), trips.end());
    trips.clear();
    trips.shrink_to_fit();
    prune(L);
    return Liouvillian(space, std::move(L), std::move(collapses), std::move(layout));
}

} // namespace cascade

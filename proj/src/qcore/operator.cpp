#include "cascade/qcore/operator.hpp"

#include <cmath>

namespace cascade {

void prune(SparseMatrix& m, double tol) {
    m.prune([tol](int, int, const Complex& v) { return std::abs(v) >= tol; });
    m.makeCompressed();
}

SparseMatrix sparse_identity(int n) {
    SparseMatrix id(n, n);
    id.setIdentity();
    return id;
}

SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b) {
    const int rb = static_cast<int>(b.rows()), cb = static_cast<int>(b.cols());
    std::vector<Triplet> trips;
    trips.reserve(static_cast<std::size_t>(a.nonZeros()) * static_cast<std::size_t>(b.nonZeros()));
    for (int ja = 0; ja < a.outerSize(); ++ja)
        for (SparseMatrix::InnerIterator ia(a, ja); ia; ++ia)
            for (int jb = 0; jb < b.outerSize(); ++jb)
                for (SparseMatrix::InnerIterator ib(b, jb); ib; ++ib)
                    trips.emplace_back(static_cast<int>(ia.row()) * rb + static_cast<int>(ib.row()),
                                       ja * cb + jb, ia.value() * ib.value());
    SparseMatrix out(a.rows() * rb, a.cols() * cb);
    out.setFromTriplets(trips.begin(), trips.end());
    return out;
}

Operator::Operator(SpacePtr space, SparseMatrix matrix, bool hermitian_hint)
    : space_(std::move(space)), matrix_(std::move(matrix)), hermitian_(hermitian_hint) {
    if (!space_) throw DimensionError("operator without a space");
    if (matrix_.rows() != space_->dim() || matrix_.cols() != space_->dim())
        throw DimensionError("matrix shape " + std::to_string(matrix_.rows()) + "x" + std::to_string(matrix_.cols()) +
                             " does not match space " + space_->describe());
    prune(matrix_);
    if (hermitian_ && hermitian_defect() > kHermitianTolerance)
        throw NotHermitian("operator flagged Hermitian has |A - A^dag| = " + std::to_string(hermitian_defect()));
}

Operator Operator::identity(SpacePtr space) {
    const int n = space->dim();
    return Operator(std::move(space), sparse_identity(n), true);
}

Operator Operator::zero(SpacePtr space) {
    const int n = space->dim();
    return Operator(std::move(space), SparseMatrix(n, n), true);
}

Operator Operator::adjoint() const {
    return Operator(space_, SparseMatrix(matrix_.adjoint()), hermitian_);
}

double Operator::hermitian_defect() const {
    SparseMatrix d = matrix_ - SparseMatrix(matrix_.adjoint());
    double m = 0.0;
    for (int k = 0; k < d.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(d, k); it; ++it) m = std::max(m, std::abs(it.value()));
    return m;
}

static void require_same(const Operator& a, const Operator& b, const char* what) {
    if (!same_space(a.space_ptr(), b.space_ptr()))
        throw SpaceMismatch(std::string(what) + ": operands act on " + a.space().describe() + " and " +
                            b.space().describe());
}

Operator& Operator::operator+=(const Operator& rhs) {
    require_same(*this, rhs, "operator+");
    matrix_ += rhs.matrix_;
    prune(matrix_);
    hermitian_ = hermitian_ && rhs.hermitian_;
    return *this;
}

Operator& Operator::operator-=(const Operator& rhs) {
    require_same(*this, rhs, "operator-");
    matrix_ -= rhs.matrix_;
    prune(matrix_);
    hermitian_ = hermitian_ && rhs.hermitian_;
    return *this;
}

Operator& Operator::operator*=(Complex s) {
    matrix_ *= s;
    prune(matrix_);
    hermitian_ = hermitian_ && s.imag() == 0.0;
    return *this;
}

Operator operator+(Operator a, const Operator& b) { return a += b; }
Operator operator-(Operator a, const Operator& b) { return a -= b; }
Operator operator*(Complex s, Operator a) { return a *= s; }
Operator operator*(double s, Operator a) { return a *= Complex(s, 0.0); }

Operator operator*(const Operator& a, const Operator& b) {
    require_same(a, b, "operator*");
    return Operator(a.space_ptr(), SparseMatrix(a.matrix() * b.matrix()));
}

Operator destroy(int n, std::string label) {
    if (n < 2) throw DimensionError("destroy needs n >= 2, got " + std::to_string(n));
    std::vector<Triplet> trips;
    for (int k = 1; k < n; ++k) trips.emplace_back(k - 1, k, std::sqrt(static_cast<double>(k)));
    SparseMatrix m(n, n);
    m.setFromTriplets(trips.begin(), trips.end());
    return Operator(HilbertSpace::single(std::move(label), n), std::move(m));
}

Operator transition(int dim, int i, int j, std::string label) {
    if (dim < 1) throw DimensionError("transition needs a positive dimension");
    if (i < 0 || i >= dim || j < 0 || j >= dim)
        throw DimensionError("transition index (" + std::to_string(i) + "," + std::to_string(j) +
                             ") out of range for dim " + std::to_string(dim));
    SparseMatrix m(dim, dim);
    m.insert(i, j) = 1.0;
    return Operator(HilbertSpace::single(std::move(label), dim), std::move(m), i == j);
}

Operator tensor(const std::vector<Operator>& ops) {
    if (ops.empty()) throw DimensionError("tensor of an empty list");
    std::vector<Factor> factors;
    SparseMatrix m = ops.front().matrix();
    bool herm = ops.front().hermitian_hint();
    for (std::size_t k = 0; k < ops.size(); ++k) {
        for (const auto& f : ops[k].space().factors()) factors.push_back(f);
        if (k > 0) {
            m = kron(m, ops[k].matrix());
            herm = herm && ops[k].hermitian_hint();
        }
    }
    return Operator(HilbertSpace::make(std::move(factors)), std::move(m), herm);
}

Operator tensor(const SpacePtr& space, const std::vector<Operator>& ops) {
    if (ops.size() != space->num_factors())
        throw DimensionError("tensor: " + std::to_string(ops.size()) + " operators for " +
                             std::to_string(space->num_factors()) + " factors");
    for (std::size_t k = 0; k < ops.size(); ++k)
        if (ops[k].dim() != space->factor(k).dim)
            throw DimensionError("tensor: operator " + std::to_string(k) + " has dim " + std::to_string(ops[k].dim()) +
                                 ", factor '" + space->factor(k).label + "' has " +
                                 std::to_string(space->factor(k).dim));
    SparseMatrix m = ops.front().matrix();
    bool herm = ops.front().hermitian_hint();
    for (std::size_t k = 1; k < ops.size(); ++k) {
        m = kron(m, ops[k].matrix());
        herm = herm && ops[k].hermitian_hint();
    }
    return Operator(space, std::move(m), herm);
}

Operator embed(const SpacePtr& space, std::string_view label, const SparseMatrix& local, bool hermitian_hint) {
    const std::size_t target = space->factor_index(label);
    const int d = space->factor(target).dim;
    if (local.rows() != d || local.cols() != d)
        throw DimensionError("embed: local operator does not match factor '" + std::string(label) + "'");
    int left = 1, right = 1;
    for (std::size_t k = 0; k < space->num_factors(); ++k) {
        if (k < target) left *= space->factor(k).dim;
        if (k > target) right *= space->factor(k).dim;
    }
    SparseMatrix m = kron(kron(sparse_identity(left), local), sparse_identity(right));
    return Operator(space, std::move(m), hermitian_hint);
}

} // namespace cascade

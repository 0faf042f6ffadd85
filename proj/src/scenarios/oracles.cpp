#include "cascade/scenarios/oracles.hpp"

#include <algorithm>
#include <stdexcept>

#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

namespace cascade {

namespace {

Vector stack(const DenseMatrix& X) {
    const int d = static_cast<int>(X.rows());
    Vector v(d * d);
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) v[i + j * d] = X(i, j);
    return v;
}

DenseMatrix unstack(const Vector& v, int d) {
    DenseMatrix X(d, d);
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) X(i, j) = v[i + j * d];
    return X;
}

DenseMatrix master_rhs(const DenseModel& m, const DenseMatrix& rho) {
    const Complex I(0.0, 1.0);
    DenseMatrix out = -I * (m.H * rho - rho * m.H);
    for (const auto& [o, r] : m.collapses) {
        const DenseMatrix od = o.adjoint();
        const DenseMatrix n = od * o;
        out += r * (o * rho * od - 0.5 * (n * rho + rho * n));
    }
    return out;
}

} // namespace

DenseModel dense_model(const ModelSystem& m) {
    DenseModel d;
    d.H = m.H.dense();
    for (const auto& c : m.collapses) d.collapses.emplace_back(c.op.dense(), c.rate);
    return d;
}

DenseMatrix dense_liouvillian(const DenseModel& m) {
    const int d = static_cast<int>(m.H.rows());
    DenseMatrix L(d * d, d * d);
    for (int l = 0; l < d; ++l)
        for (int k = 0; k < d; ++k) {
            DenseMatrix E = DenseMatrix::Zero(d, d);
            E(k, l) = 1.0;
            L.col(k + l * d) = stack(master_rhs(m, E));
        }
    return L;
}

DenseMatrix dense_steady_state(const DenseMatrix& L, double* gap_ratio) {
    const int n = static_cast<int>(L.rows());
    int d = 0;
    while (d * d < n) ++d;
    if (d * d != n) throw std::invalid_argument("dense_steady_state: superoperator size is not a square");
    Eigen::BDCSVD<DenseMatrix> svd(L, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    if (gap_ratio) *gap_ratio = n > 1 ? s[n - 1] / s[n - 2] : 0.0;
    DenseMatrix rho = unstack(svd.matrixV().col(n - 1), d);
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return rho / rho.trace();
}

Vector dense_evolve(const DenseMatrix& L, const Vector& x0, double t) {
    const DenseMatrix E = (L * t).exp();
    return E * x0;
}

std::vector<double> dense_g2(const DenseModel& m, const DenseMatrix& o1, const DenseMatrix& o2,
                             const std::vector<double>& taus) {
    const DenseMatrix L = dense_liouvillian(m);
    const DenseMatrix rho = dense_steady_state(L);
    const DenseMatrix n1 = o1.adjoint() * o1;
    const DenseMatrix n2 = o2.adjoint() * o2;
    const double denom = (n1 * rho).trace().real() * (n2 * rho).trace().real();
    if (!(denom > 0.0)) throw std::domain_error("dense_g2: vanishing occupation");
    const int d = static_cast<int>(m.H.rows());
    Vector x = stack(o1 * rho * o1.adjoint());
    // Step from one delay to the next; uniform grids reuse a single exponential.
    double last = 0.0, cached = -1.0;
    DenseMatrix step;
    std::vector<double> out;
    for (double t : taus) {
        if (t < last) throw std::invalid_argument("dense_g2: delays must ascend from zero");
        const double h = t - last;
        if (h > 0.0) {
            if (std::abs(h - cached) > 1e-12 * std::max(1.0, h)) {
                step = (L * h).exp();
                cached = h;
            }
            x = step * x;
        }
        last = t;
        out.push_back((n2 * unstack(x, d)).trace().real() / denom);
    }
    return out;
}

} // namespace cascade

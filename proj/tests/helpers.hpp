#pragma once

#include <random>

#include "cascade/qcore/operator.hpp"

namespace cascade::test {

inline DenseMatrix random_dense(int rows, int cols, std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    DenseMatrix m(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) m(i, j) = Complex(n(rng), n(rng));
    return m;
}

inline DenseMatrix random_hermitian(int d, std::mt19937_64& rng) {
    const DenseMatrix a = random_dense(d, d, rng);
    return 0.5 * (a + a.adjoint());
}

inline DenseMatrix random_state(int d, std::mt19937_64& rng) {
    const DenseMatrix a = random_dense(d, d, rng);
    DenseMatrix rho = a * a.adjoint();
    return rho / rho.trace();
}

inline Operator from_dense(const SpacePtr& space, const DenseMatrix& m, bool hermitian = false) {
    SparseMatrix s = m.sparseView();
    return Operator(space, s, hermitian);
}

inline double max_abs(const DenseMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

} // namespace cascade::test

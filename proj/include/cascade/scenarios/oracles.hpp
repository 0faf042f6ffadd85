#pragma once

#include <utility>
#include <vector>

#include "cascade/models/system.hpp"
#include "cascade/qcore/types.hpp"

namespace cascade {

/// Dense reference implementations for small systems, independent of the
/// sparse assembly and solvers.
struct DenseModel {
    DenseMatrix H;
    std::vector<std::pair<DenseMatrix, double>> collapses;  // (operator, rate)
};

DenseModel dense_model(const ModelSystem& m);

/// Full column-stacked superoperator, built column by column by applying the
/// master equation to each basis matrix.
DenseMatrix dense_liouvillian(const DenseModel& m);

/// Null vector of the dense superoperator via SVD, as a unit-trace Hermitian
/// matrix. Also returns the ratio of the two smallest singular values.
DenseMatrix dense_steady_state(const DenseMatrix& L, double* gap_ratio = nullptr);

/// exp(L t) x0 by dense matrix exponential.
Vector dense_evolve(const DenseMatrix& L, const Vector& x0, double t);

/// Tr[o2†o2 exp(L tau)(o1 rho o1†)] / (<o1†o1><o2†o2>) at each tau.
std::vector<double> dense_g2(const DenseModel& m, const DenseMatrix& o1, const DenseMatrix& o2,
                             const std::vector<double>& taus);

} // namespace cascade

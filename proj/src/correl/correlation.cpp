#include "cascade/correl/correlation.hpp"

#include <algorithm>
#include <cmath>

namespace cascade {

double CorrelationSeries::at_zero() const {
    for (std::size_t k = 0; k < taus.size(); ++k)
        if (taus[k] == 0.0) return values[k];
    throw std::out_of_range("series '" + kind + "' has no tau = 0 sample");
}

double CorrelationSeries::max_value() const { return *std::max_element(values.begin(), values.end()); }

namespace {

double require_occupation(const DensityMatrix& rho, const Operator& o, const std::string& label) {
    const double n = expect(o.adjoint() * o, rho).real();
    if (!(n > 1e-12))
        throw UndefinedCorrelation("correlation undefined: <o†o> = " + std::to_string(n) + " for mode '" + label + "'");
    return n;
}

CorrelationSeries regress(const Propagator& P, const Liouvillian& L, const DensityMatrix& rho, const Operator& o1,
                          const Operator& o2, const std::vector<double>& taus, double denominator, std::string kind) {
    if (!same_space(o1.space_ptr(), L.space_ptr()) || !same_space(o2.space_ptr(), L.space_ptr()) ||
        !same_space(rho.space_ptr(), L.space_ptr()))
        throw SpaceMismatch("correlation: operators, state and Liouvillian must share one space");
    const DenseMatrix x0m = DenseMatrix(o1.matrix() * rho.matrix()) * SparseMatrix(o1.matrix().adjoint());
    const Vector x0 = L.vec(x0m);
    const SparseMatrix n2 = o2.matrix().adjoint() * o2.matrix();
    const Vector w = L.layout().functional(n2);
    PropagationStats stats;
    const auto raw = P.expectation(x0, w, taus, &stats);

    CorrelationSeries s;
    s.kind = std::move(kind);
    s.taus = taus;
    s.denominator = denominator;
    s.krylov_dim = stats.krylov_dim;
    s.values.reserve(raw.size());
    for (const auto& z : raw) {
        s.values.push_back(z.real() / denominator);
        s.imaginary_residue = std::max(s.imaginary_residue, std::abs(z.imag()) / denominator);
    }
    const double lo = *std::min_element(s.values.begin(), s.values.end());
    if (lo < -1e-8) s.negative_excursion = lo;
    return s;
}

double horizon(const std::vector<double>& taus) {
    if (taus.empty()) throw std::invalid_argument("empty tau grid");
    return std::max(taus.back(), 1e-12);
}

} // namespace

double g2_static(const DensityMatrix& rho, const Operator& o) {
    const double n = require_occupation(rho, o, "mode");
    const Operator od = o.adjoint();
    return expect(od * od * o * o, rho).real() / (n * n);
}

double g2_cross_static(const DensityMatrix& rho, const Operator& o1, const Operator& o2) {
    const double n1 = require_occupation(rho, o1, "1");
    const double n2 = require_occupation(rho, o2, "2");
    return expect(o1.adjoint() * o2.adjoint() * o2 * o1, rho).real() / (n1 * n2);
}

CorrelationSeries g2_auto(const Propagator& P, const Liouvillian& L, const DensityMatrix& rho, const Operator& o,
                          const std::vector<double>& taus, const std::string& label) {
    const double n = require_occupation(rho, o, label);
    return regress(P, L, rho, o, o, taus, n * n, "auto:" + label);
}

CorrelationSeries g2_auto(const Liouvillian& L, const DensityMatrix& rho, const Operator& o,
                          const std::vector<double>& taus, const std::string& label) {
    Propagator P(L, horizon(taus));
    return g2_auto(P, L, rho, o, taus, label);
}

CorrelationSeries g2_cross(const Propagator& P, const Liouvillian& L, const DensityMatrix& rho, const Operator& o1,
                           const Operator& o2, const std::vector<double>& taus, const std::string& label1,
                           const std::string& label2) {
    const double n1 = require_occupation(rho, o1, label1);
    const double n2 = require_occupation(rho, o2, label2);
    return regress(P, L, rho, o1, o2, taus, n1 * n2, "cross:" + label1 + "->" + label2);
}

CorrelationSeries g2_cross(const Liouvillian& L, const DensityMatrix& rho, const Operator& o1, const Operator& o2,
                           const std::vector<double>& taus, const std::string& label1, const std::string& label2) {
    Propagator P(L, horizon(taus));
    return g2_cross(P, L, rho, o1, o2, taus, label1, label2);
}

CorrelationSeries two_sided(const CorrelationSeries& forward, const CorrelationSeries& backward) {
    if (forward.taus != backward.taus) throw std::invalid_argument("two_sided: tau grids differ");
    if (forward.taus.empty() || forward.taus.front() != 0.0)
        throw std::invalid_argument("two_sided: grids must start at tau = 0");
    CorrelationSeries s;
    s.kind = forward.kind + "|" + backward.kind;
    s.denominator = forward.denominator;
    for (std::size_t k = backward.taus.size(); k-- > 1;) {
        s.taus.push_back(-backward.taus[k]);
        s.values.push_back(backward.values[k]);
    }
    s.taus.insert(s.taus.end(), forward.taus.begin(), forward.taus.end());
    s.values.insert(s.values.end(), forward.values.begin(), forward.values.end());
    s.negative_excursion = std::min(forward.negative_excursion, backward.negative_excursion);
    s.imaginary_residue = std::max(forward.imaginary_residue, backward.imaginary_residue);
    s.krylov_dim = std::max(forward.krylov_dim, backward.krylov_dim);
    return s;
}

} // namespace cascade

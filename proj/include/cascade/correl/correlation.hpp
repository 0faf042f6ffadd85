#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "cascade/qcore/density_matrix.hpp"
#include "cascade/qcore/liouvillian.hpp"
#include "cascade/solvers/propagator.hpp"

namespace cascade {

class UndefinedCorrelation : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct CorrelationSeries {
    std::string kind;  // "auto:<mode>" or "cross:<trigger>-><detected>"
    std::vector<double> taus;
    std::vector<double> values;
    double denominator = 0.0;
    /// Most negative sample when below -1e-8, else 0. Values are never clipped.
    double negative_excursion = 0.0;
    /// Largest |Im| of the unnormalized samples relative to the denominator.
    double imaginary_residue = 0.0;
    int krylov_dim = 0;

    double at_zero() const;
    double max_value() const;
    /// Sample at the largest tau.
    double tail() const { return values.back(); }
};

/// <o†o†oo> / <o†o>^2 from the state alone.
double g2_static(const DensityMatrix& rho, const Operator& o);
/// <o1† o2† o2 o1> / (<o1†o1><o2†o2>).
double g2_cross_static(const DensityMatrix& rho, const Operator& o1, const Operator& o2);

/// g2(tau) = Tr[o†o e^{L tau}(o rho o†)] / <o†o>^2.
CorrelationSeries g2_auto(const Propagator& P, const Liouvillian& L, const DensityMatrix& rho, const Operator& o,
                          const std::vector<double>& taus, const std::string& label = "mode");
CorrelationSeries g2_auto(const Liouvillian& L, const DensityMatrix& rho, const Operator& o,
                          const std::vector<double>& taus, const std::string& label = "mode");

/// g2_12(tau) = Tr[o2†o2 e^{L tau}(o1 rho o1†)] / (<o1†o1><o2†o2>): detection
/// in mode 1 at time 0, in mode 2 at time tau.
CorrelationSeries g2_cross(const Propagator& P, const Liouvillian& L, const DensityMatrix& rho, const Operator& o1,
                           const Operator& o2, const std::vector<double>& taus, const std::string& label1 = "1",
                           const std::string& label2 = "2");
CorrelationSeries g2_cross(const Liouvillian& L, const DensityMatrix& rho, const Operator& o1, const Operator& o2,
                           const std::vector<double>& taus, const std::string& label1 = "1",
                           const std::string& label2 = "2");

/// Two one-sided runs joined on a signed axis: tau >= 0 is g2_12(tau),
/// tau < 0 is g2_21(|tau|). The tau = 0 sample appears once.
CorrelationSeries two_sided(const CorrelationSeries& forward, const CorrelationSeries& backward);

} // namespace cascade

#pragma once

#include <optional>
#include <string>

#include "cascade/correl/correlation.hpp"

namespace cascade {

struct Inequality {
    /// Set when the margin exceeds 1e-6 max(1, |bound|).
    bool violated = false;
    double margin = 0.0;  // positive amount by which the classical bound is exceeded
};

/// Classical-field bounds on coincidence values and on the tau dependence.
struct CauchySchwarzReport {
    double g2_t0 = 0.0;
    double g2_c0 = 0.0;
    std::optional<double> g2_cross0;
    double coincidence_bound = 0.0;  // sqrt(g2_t0 g2_c0)

    double max_auto_t = 0.0;
    double max_auto_c = 0.0;
    std::optional<double> max_cross;

    Inequality one_mode_t;      // g2_t(0) >= 1
    Inequality one_mode_c;      // g2_c(0) >= 1
    Inequality two_mode;        // g2_tc(0) <= bound
    Inequality time_one_mode_t; // g2_t(tau) <= g2_t(0)
    Inequality time_one_mode_c; // g2_c(tau) <= g2_c(0)
    Inequality time_two_mode;   // g2_tc(tau) <= bound

    std::string summary() const;
};

/// Cross series may be one-sided or two-sided; its tau >= 0 samples must match
/// the auto grids.
CauchySchwarzReport cauchy_schwarz(const CorrelationSeries& auto_t, const CorrelationSeries& auto_c,
                                   const CorrelationSeries& cross);

/// Coincidence-only report from static values.
CauchySchwarzReport cauchy_schwarz(double g2_t0, double g2_c0, double g2_cross0);

} // namespace cascade

#include "cascade/correl/cauchy_schwarz.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cascade {

namespace {

// Margins at the level of propagation and truncation error are not violations.
constexpr double kResolution = 1e-6;

Inequality upper(double value, double bound) {
    return {value - bound > kResolution * std::max(1.0, std::abs(bound)), value - bound};
}

void coincidences(CauchySchwarzReport& r) {
    r.coincidence_bound = std::sqrt(r.g2_t0 * r.g2_c0);
    r.one_mode_t = upper(1.0, r.g2_t0);
    r.one_mode_c = upper(1.0, r.g2_c0);
    if (r.g2_cross0) r.two_mode = upper(*r.g2_cross0, r.coincidence_bound);
}

} // namespace

std::string CauchySchwarzReport::summary() const {
    std::ostringstream os;
    os << "g2_t(0)=" << g2_t0 << " g2_c(0)=" << g2_c0;
    if (g2_cross0) os << " g2_tc(0)=" << *g2_cross0;
    os << " bound=" << coincidence_bound << " one-mode[t,c]=" << one_mode_t.violated << one_mode_c.violated
       << " two-mode=" << two_mode.violated;
    return os.str();
}

CauchySchwarzReport cauchy_schwarz(double g2_t0, double g2_c0, double g2_cross0) {
    CauchySchwarzReport r;
    r.g2_t0 = g2_t0;
    r.g2_c0 = g2_c0;
    r.g2_cross0 = g2_cross0;
    r.max_auto_t = g2_t0;
    r.max_auto_c = g2_c0;
    r.max_cross = g2_cross0;
    coincidences(r);
    return r;
}

CauchySchwarzReport cauchy_schwarz(const CorrelationSeries& auto_t, const CorrelationSeries& auto_c,
                                   const CorrelationSeries& cross) {
    if (auto_t.taus != auto_c.taus) throw std::invalid_argument("cauchy_schwarz: auto series grids differ");
    std::vector<double> nonneg;
    for (double t : cross.taus)
        if (t >= 0.0) nonneg.push_back(t);
    if (nonneg != auto_t.taus) throw std::invalid_argument("cauchy_schwarz: cross grid does not match auto grid");

    CauchySchwarzReport r;
    r.g2_t0 = auto_t.at_zero();
    r.g2_c0 = auto_c.at_zero();
    r.g2_cross0 = cross.at_zero();
    r.max_auto_t = auto_t.max_value();
    r.max_auto_c = auto_c.max_value();
    r.max_cross = cross.max_value();
    coincidences(r);
    r.time_one_mode_t = upper(r.max_auto_t, r.g2_t0);
    r.time_one_mode_c = upper(r.max_auto_c, r.g2_c0);
    r.time_two_mode = upper(*r.max_cross, r.coincidence_bound);
    return r;
}

} // namespace cascade

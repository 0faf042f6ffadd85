#include "cascade/correl/flux.hpp"

#include <stdexcept>

namespace cascade {

double occupation(const DensityMatrix& rho_ss, const Operator& mode) {
    const double n = expect(mode.adjoint() * mode, rho_ss).real();
    if (n < -1e-10) throw std::domain_error("negative mode occupation " + std::to_string(n));
    return n;
}

double flux(const DensityMatrix& rho_ss, const Operator& mode, double kappa) {
    if (kappa < 0.0) throw std::invalid_argument("negative cavity decay rate");
    return 2.0 * kappa * occupation(rho_ss, mode);
}

double cooperativity(double g, double kappa, double gamma_t) {
    if (kappa < 0.0 || gamma_t < 0.0) throw std::invalid_argument("cooperativity needs non-negative rates");
    if (kappa * gamma_t == 0.0) throw std::domain_error("cooperativity with zero denominator");
    return 2.0 * g * g / (kappa * gamma_t);
}

} // namespace cascade

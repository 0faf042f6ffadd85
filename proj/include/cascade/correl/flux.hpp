#pragma once

#include "cascade/qcore/density_matrix.hpp"

namespace cascade {

/// Output flux 2 kappa <o† o>.
double flux(const DensityMatrix& rho_ss, const Operator& mode, double kappa);

/// Mean occupation <o† o>; throws when below -1e-10.
double occupation(const DensityMatrix& rho_ss, const Operator& mode);

/// C = 2 g^2 / (kappa gamma_t).
double cooperativity(double g, double kappa, double gamma_t);

} // namespace cascade

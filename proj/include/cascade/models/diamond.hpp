#pragma once

#include <string>
#include <vector>

#include "cascade/models/system.hpp"
#include "cascade/qcore/density_matrix.hpp"

namespace cascade {

/// Five-level double-diamond atom, basis order g1, g2, e1, e2, f.
enum DiamondLevel : int { kG1 = 0, kG2 = 1, kE1 = 2, kE2 = 3, kF = 4 };

/// Rates in units of the total linewidth gamma. Partial linewidths follow
/// 2 gamma_p = 2 gamma_S = 2 gamma_t = gamma_c = gamma.
struct DiamondParams {
    double omega_g = 1000.0;
    double delta_p = -1000.0;
    double delta_s = 1000.0;
    double omega_p = 0.0;
    double omega_s = 0.0;
    double g_t = 0.0;
    double g_c = 0.0;
    double kappa_t = 0.0;
    double kappa_c = 0.0;
    double gamma = 1.0;
    int n_t = 3;
    int n_c = 3;
    bool telecom_cavity = true;
    bool control_cavity = true;

    double gamma_p() const { return 0.5 * gamma; }
    double gamma_s() const { return 0.5 * gamma; }
    double gamma_t() const { return 0.5 * gamma; }
    double gamma_c() const { return gamma; }

    /// Throws std::invalid_argument on invalid values; returns warnings.
    std::vector<std::string> validate() const;
};

enum class DriveMode { OffResonant, Resonant };

DriveMode parse_drive_mode(const std::string& name);

/// Off-resonant: (Omega_p/2)(Omega_S/2)/Delta_S. Resonant:
/// sqrt(2 (Omega_p/2)(Omega_S/2)). Rabi frequencies enter H as Omega/2.
double effective_two_photon_rate(const DiamondParams& p, DriveMode mode);

/// Equal Rabi frequencies Omega_p = Omega_S giving the target rate.
double rabi_for_effective_rate(double target, DriveMode mode, double delta_s);

ModelSystem build_diamond(const DiamondParams& p);

/// gamma_t <f|rho|f>: free-space telecom emission rate.
double diamond_telecom_emission(const ModelSystem& m, const DensityMatrix& rho, const DiamondParams& p);

} // namespace cascade

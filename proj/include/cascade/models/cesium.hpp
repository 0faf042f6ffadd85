#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cascade/angular/level_scheme.hpp"
#include "cascade/models/constants.hpp"
#include "cascade/models/system.hpp"
#include "cascade/qcore/density_matrix.hpp"

namespace cascade {

inline constexpr const char* kGround = "6S1/2";
inline constexpr const char* kPumpUpper = "6P1/2";
inline constexpr const char* kControlUpper = "6P3/2";
inline constexpr const char* kTop = "7S1/2";

/// Interaction-picture detuning of every hyperfine level, rad/us.
class DetuningTable {
public:
    void set(int manifold, HalfInteger F, double value) { values_[{manifold, F.twice()}] = value; }
    double at(int manifold, HalfInteger F) const;
    double at(const LevelScheme& s, const std::string& manifold, int F) const;
    bool has(int manifold, HalfInteger F) const { return values_.count({manifold, F.twice()}) > 0; }

private:
    std::map<std::pair<int, int>, double> values_;
};

enum class ResonancePreset { Standard, Custom };
ResonancePreset parse_resonance_preset(const std::string& name);

/// Laser and cavity frequencies, rad/us, measured from the 6S1/2 F=4 level.
struct FieldFrequencies {
    double pump = 0.0;
    double stokes = 0.0;
    double control = 0.0;
};

/// Frequencies meeting the resonance conditions: Delta(6P1/2,4) = -omega_g,
/// Delta(7S1/2,4) = 0, Delta(6P3/2,5) = 0.
FieldFrequencies standard_frequencies(const LevelScheme& scheme);

/// Standard preset derives the frequencies and rejects supplied ones that
/// disagree by more than 2 pi kHz; custom requires all three.
DetuningTable cesium_detunings(const LevelScheme& scheme, std::optional<double> pump, std::optional<double> stokes,
                               ResonancePreset preset, std::optional<double> control = std::nullopt);

struct CesiumParams {
    std::shared_ptr<const LevelScheme> scheme;
    double gamma_p = 0.0, gamma_s = 0.0, gamma_t = 0.0, gamma_c = 0.0;
    double gamma_top_total = 0.0;  // 7S1/2 total linewidth
    double rabi_p = 0.0, rabi_s = 0.0;
    FieldFrequencies fields;
    ResonancePreset preset = ResonancePreset::Standard;
    DetuningTable detunings;
    double g_t = 0.0, g_c = 0.0, kappa_t = 0.0, kappa_c = 0.0;
    int polarization = 0;
    int n_t = 3, n_c = 3;
    bool telecom_cavity = true;
    bool control_cavity = true;

    std::vector<std::string> validate() const;
};

/// Parameters of the co-polarized configuration with the constants-file
/// linewidths, standard detunings, Omega = 2 pi 1450 MHz,
/// g = 1.5 * 4 (gamma_S + gamma_t) and kappa = 8 (gamma_S + gamma_t).
CesiumParams cesium_defaults(const AtomConstants& constants);

ModelSystem build_cesium(const CesiumParams& p);

/// Omega_p Omega_S (1/omega_g - 1/(omega_g + omega_D1)) / (gamma_S + gamma_t).
double interference_margin(const CesiumParams& p);

/// gamma_t sum_q <D_tq† D_tq>.
double cesium_telecom_emission(const ModelSystem& m, const DensityMatrix& rho, const CesiumParams& p);

struct ManifoldPopulation {
    std::string manifold;
    double total = 0.0;
    double targeted = 0.0;
    double stray = 0.0;
    std::map<int, double> by_F;  // 2F -> population
};

struct TargetReport {
    std::vector<ManifoldPopulation> manifolds;
    /// Conceptual-level populations g1, g2, e1, e2, f.
    std::map<std::string, double> levels;
    double targeted_fraction = 0.0;
};

/// Targeted levels: g1 = (6S1/2, 3), g2 = (6S1/2, 4), e1 = (6P1/2, 4),
/// e2 = (6P3/2, 5), f = (7S1/2, 4), each summed over m_F.
TargetReport target_populations(const DensityMatrix& rho, const LevelScheme& scheme);

/// Dipole operator of a named transition (p, S, t, c) on the atom factor.
Operator cesium_dipole(const LevelScheme& scheme, char transition, int q);

} // namespace cascade

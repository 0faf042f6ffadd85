#pragma once

#include <map>
#include <string>
#include <vector>

#include "cascade/angular/level_scheme.hpp"

namespace cascade {

struct SourcedValue {
    double value = 0.0;
    std::string source;
};

struct ManifoldConstants {
    std::string label;
    HalfInteger J;
    double centroid_mhz = 0.0;
    double a_mhz = 0.0;
    double b_mhz = 0.0;
    std::string source;
};

/// Versioned physical constants for one atomic species.
struct AtomConstants {
    std::string name;
    std::string version;
    std::string path;
    std::string digest;  // FNV-1a of the file bytes
    HalfInteger nuclear_spin;
    std::string nuclear_spin_source;
    std::vector<ManifoldConstants> manifolds;
    std::map<std::string, SourcedValue> linewidths_mhz;

    const ManifoldConstants& manifold(const std::string& label) const;
    double linewidth_mhz(const std::string& key) const;
};

/// Path from CASCADE_CONSTANTS if set, otherwise the bundled file.
std::string default_constants_path();
AtomConstants load_constants(const std::string& path);
AtomConstants load_default_constants();

/// Problems found in a constants set; empty when consistent.
std::vector<std::string> verify_constants(const AtomConstants& c);

/// Magnetic-dipole plus electric-quadrupole hyperfine shift (MHz).
double hyperfine_shift(double a_mhz, double b_mhz, HalfInteger I, HalfInteger J, HalfInteger F);

/// Level scheme with absolute energies in rad/us (2 pi MHz).
LevelScheme make_level_scheme(const AtomConstants& c);

} // namespace cascade

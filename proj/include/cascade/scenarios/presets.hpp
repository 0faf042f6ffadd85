#pragma once

#include <string>
#include <vector>

#include "cascade/scenarios/config.hpp"

namespace cascade {

class UnknownPreset : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

std::vector<std::string> preset_names();

/// Resolved configuration of a named scenario.
ScenarioConfig preset(const std::string& name);

/// Preset followed by "key=value" overrides.
ScenarioConfig preset(const std::string& name, const std::vector<std::string>& overrides);

struct SweepAxis {
    std::string path;
    std::vector<double> values;
};

/// Default sweep axis of a preset; throws for presets without one.
SweepAxis default_sweep(const std::string& name);

/// n points geometrically spaced over [lo, hi].
std::vector<double> geometric_grid(double lo, double hi, int n);

} // namespace cascade

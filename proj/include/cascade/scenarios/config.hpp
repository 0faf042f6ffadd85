#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cascade/models/cesium.hpp"
#include "cascade/models/diamond.hpp"
#include "cascade/solvers/propagator.hpp"
#include "cascade/solvers/steady_state.hpp"

namespace cascade {

using Json = nlohmann::json;

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Fully resolved run configuration. Every key is fixed by the model's
/// default template; values are type-checked against it.
class ScenarioConfig {
public:
    ScenarioConfig() = default;
    /// Merges `patch` onto the template of its "model" and validates.
    explicit ScenarioConfig(const Json& patch);

    const Json& json() const { return data_; }
    std::string model() const { return text("model"); }
    std::string preset() const { return text("preset"); }

    double number(const std::string& path) const;
    int integer(const std::string& path) const;
    bool flag(const std::string& path) const;
    std::string text(const std::string& path) const;
    std::vector<std::string> list(const std::string& path) const;
    bool has(const std::string& path) const;

    /// Sets a leaf from its textual form, parsed by the leaf's type.
    void set(const std::string& path, const std::string& value);
    /// "key=value" form used by the command line.
    void apply_override(const std::string& assignment);
    void merge(const Json& patch);

    /// FNV-1a over the canonical dump, output directory excluded.
    std::string hash() const;
    std::string dump(int indent = 2) const { return data_.dump(indent); }

private:
    Json data_;
};

/// Default template for "diamond" or "cesium".
Json config_template(const std::string& model);

/// Throws ConfigError on unknown keys, type mismatches or invalid values.
void validate_config(const Json& cfg);

DiamondParams diamond_params(const ScenarioConfig& cfg);
CesiumParams cesium_params(const ScenarioConfig& cfg, const AtomConstants& constants);
std::string constants_path(const ScenarioConfig& cfg);

SteadyStateOptions solver_options(const ScenarioConfig& cfg);

struct CorrelationSettings {
    bool enabled = false;
    std::vector<double> taus;
    std::vector<std::string> series;
    PropagatorOptions propagator;
};

CorrelationSettings correlation_settings(const ScenarioConfig& cfg);

std::string fnv1a64(const std::string& bytes);

} // namespace cascade

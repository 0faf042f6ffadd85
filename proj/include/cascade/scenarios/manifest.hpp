#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cascade/solvers/convergence.hpp"

namespace cascade {

struct ConstantsInfo {
    std::string path;
    std::string version;
    std::string digest;
};

struct GateSummary {
    bool applicable = false;  // false when the model has no cavity modes
    bool converged = false;
    double tolerance = 0.0;
    Truncation accepted;
    std::string verdict;
    Observables changes;
    std::vector<ScanPoint> points;
};

struct SeriesSummary {
    std::string kind;
    double at_zero = 0.0;
    double tail = 0.0;
    double max_value = 0.0;
    double negative_excursion = 0.0;
    int krylov_dim = 0;
};

enum class RunStatus { Ok, NonUniqueSteadyState, Failed };
std::string to_string(RunStatus s);
RunStatus parse_run_status(const std::string& s);

struct RunManifest {
    std::string preset;
    std::string config_hash;
    std::string tool_version;
    std::optional<ConstantsInfo> constants;
    double wall_seconds = 0.0;
    double steady_state_seconds = 0.0;
    RunStatus status = RunStatus::Ok;
    std::string message;
    Observables observables;
    std::map<std::string, bool> flags;
    GateSummary convergence;
    std::vector<SeriesSummary> series;
    std::vector<std::string> warnings;
    std::vector<std::string> files;
    std::string directory;
    nlohmann::json config;

    bool ok() const { return status == RunStatus::Ok; }
    /// Throws std::out_of_range naming the missing key.
    double value(const std::string& key) const;
    bool flag(const std::string& key) const;

    nlohmann::json to_json() const;
    static RunManifest from_json(const nlohmann::json& j);
    void save(const std::string& path) const;
    static RunManifest load(const std::string& path);
};

std::string tool_version();

} // namespace cascade

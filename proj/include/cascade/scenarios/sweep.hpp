#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cascade/scenarios/csv.hpp"
#include "cascade/scenarios/runner.hpp"

namespace cascade {

struct SweepPoint {
    double value = 0.0;
    std::optional<RunManifest> run;
    /// Same point with the control cavity removed.
    std::optional<RunManifest> no_control;
    std::string error;
};

struct SweepResult {
    std::string preset;
    std::string axis;
    std::vector<SweepPoint> points;
    /// value, flux_t, flux_c, flux_t_no_control, status
    CsvTable table;
    std::string directory;
};

/// Flux observable of the config's model: flux_t or flux_t_per_gamma_t.
std::string flux_key(const ScenarioConfig& cfg, char mode);

std::string sweep_directory(const std::string& root, const ScenarioConfig& base, const std::string& axis,
                            const std::vector<double>& values);

/// Independent runs per axis value on a worker pool (options.jobs threads,
/// 0 = hardware concurrency). Failed points are recorded and skipped.
SweepResult sweep(const ScenarioConfig& base, const std::string& axis, const std::vector<double>& values,
                  const RunOptions& options = {});

} // namespace cascade

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cascade/correl/correlation.hpp"
#include "cascade/scenarios/config.hpp"
#include "cascade/scenarios/manifest.hpp"

namespace cascade {

struct RunOptions {
    /// Root of the output tree; empty uses the config's output.dir.
    std::string output_root;
    bool write = true;
    /// Worker threads for correlation series; 0 picks one per series.
    int jobs = 0;
    std::function<void(const std::string&)> log;
};

struct RunResult {
    RunManifest manifest;
    std::vector<CorrelationSeries> series;
    std::optional<DensityMatrix> rho;
};

/// results/<preset>/<config hash>
std::string run_directory(const std::string& root, const ScenarioConfig& cfg);

/// Convergence gate, steady state, fluxes, requested correlation series and
/// Cauchy-Schwarz checks. A degenerate steady state is reported in the
/// manifest rather than thrown.
RunResult run_config(const ScenarioConfig& cfg, const RunOptions& options = {});

RunManifest run_scenario(const std::string& name, const std::vector<std::string>& overrides,
                         const RunOptions& options = {});

} // namespace cascade

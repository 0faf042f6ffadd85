#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cascade/scenarios/csv.hpp"
#include "cascade/scenarios/manifest.hpp"
#include "cascade/scenarios/runner.hpp"

namespace cascade {

/// One scenario run needed by the acceptance table.
struct AcceptanceRun {
    std::string id;
    std::string preset;
    std::vector<std::string> overrides;
    /// Counts toward the convergence-gate criterion.
    bool quoted = false;
};

const std::vector<AcceptanceRun>& acceptance_runs();

struct PropertyCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Randomized and oracle-backed checks that do not depend on scenario runs.
std::vector<PropertyCheck> property_suite(unsigned seed = 0);

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::vector<std::string> details;
};

struct AcceptanceReport {
    std::vector<CriterionResult> criteria;
    /// Run ids or artifacts that could not be found.
    std::vector<std::string> missing;

    bool passed() const;
    /// One PASS/FAIL line per criterion followed by indented details.
    std::string text(bool verbose = true) const;
};

struct AcceptanceInputs {
    std::map<std::string, RunManifest> runs;
    std::optional<CsvTable> sweep;
    std::optional<std::vector<PropertyCheck>> properties;
    /// Digest of the constants file in effect; cesium manifests made with a
    /// different file are flagged.
    std::string constants_digest;
};

AcceptanceReport evaluate_acceptance(const AcceptanceInputs& in);

/// Runs every acceptance scenario, the fig4 sweep and the property suite,
/// writing manifests under options.output_root, then evaluates.
AcceptanceReport run_acceptance(const RunOptions& options);

void save_properties(const std::string& path, const std::vector<PropertyCheck>& checks);
std::vector<PropertyCheck> load_properties(const std::string& path);

} // namespace cascade

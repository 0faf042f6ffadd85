#include "cascade/scenarios/report.hpp"

#include <filesystem>

#include "cascade/models/constants.hpp"
#include "cascade/scenarios/presets.hpp"
#include "cascade/scenarios/sweep.hpp"

namespace cascade {

namespace fs = std::filesystem;

AcceptanceInputs load_acceptance_inputs(const std::string& root, std::vector<std::string>* missing) {
    AcceptanceInputs in;
    auto lost = [&](const std::string& what) {
        if (missing) missing->push_back(what);
    };
    try {
        in.constants_digest = load_default_constants().digest;
    } catch (const std::exception& e) {
        lost(std::string("constants file (") + e.what() + ")");
    }
    for (const auto& r : acceptance_runs()) {
        const std::string path = run_directory(root, preset(r.preset, r.overrides)) + "/manifest.json";
        if (!fs::exists(path)) {
            lost(r.id + " (" + path + ")");
            continue;
        }
        try {
            in.runs[r.id] = RunManifest::load(path);
        } catch (const std::exception& e) {
            lost(r.id + " (" + e.what() + ")");
        }
    }
    const SweepAxis axis = default_sweep("fig4");
    const std::string sweep_csv = sweep_directory(root, preset("fig4"), axis.path, axis.values) + "/sweep.csv";
    if (fs::exists(sweep_csv))
        in.sweep = read_csv(sweep_csv);
    else
        lost("fig4 sweep (" + sweep_csv + ")");
    const std::string props = root + "/properties/manifest.json";
    if (fs::exists(props))
        in.properties = load_properties(props);
    else
        lost("property suite (" + props + ")");
    return in;
}

AcceptanceReport report_directory(const std::string& root) {
    std::vector<std::string> missing;
    const AcceptanceInputs in = load_acceptance_inputs(root, &missing);
    AcceptanceReport rep = evaluate_acceptance(in);
    rep.missing = std::move(missing);
    return rep;
}

} // namespace cascade

#include "cascade/scenarios/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <limits>
#include <mutex>
#include <thread>

namespace cascade {

std::string flux_key(const ScenarioConfig& cfg, char mode) {
    const std::string m(1, mode);
    return cfg.model() == "cesium" ? "flux_" + m + "_per_gamma_t" : "flux_" + m;
}

std::string sweep_directory(const std::string& root, const ScenarioConfig& base, const std::string& axis,
                            const std::vector<double>& values) {
    std::string key = base.hash() + "|" + axis;
    for (double v : values) key += "|" + format_number(v);
    const std::string name = base.preset().empty() ? "custom" : base.preset();
    return root + "/" + name + "/sweep_" + fnv1a64(key);
}

SweepResult sweep(const ScenarioConfig& base, const std::string& axis, const std::vector<double>& values,
                  const RunOptions& options) {
    if (values.empty()) throw std::invalid_argument("sweep needs at least one value");
    if (!base.has(axis)) throw ConfigError("unknown sweep axis '" + axis + "'");
    std::string pointer = "/" + axis;
    std::replace(pointer.begin(), pointer.end(), '.', '/');
    if (!base.json().at(nlohmann::json::json_pointer(pointer)).is_number())
        throw ConfigError("sweep axis '" + axis + "' is not numeric");
    const bool reference = base.flag("control.enabled") && base.flag("telecom.enabled");

    SweepResult res;
    res.preset = base.preset();
    res.axis = axis;
    res.points.resize(values.size());
    const std::string root = options.output_root.empty() ? base.text("output.dir") : options.output_root;

    RunOptions inner = options;
    inner.output_root = root;
    inner.jobs = 1;
    std::mutex log_mutex;
    if (options.log)
        inner.log = [&](const std::string& s) {
            std::lock_guard<std::mutex> lock(log_mutex);
            options.log(s);
        };

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < values.size(); k = next++) {
            SweepPoint& p = res.points[k];
            p.value = values[k];
            try {
                ScenarioConfig cfg = base;
                cfg.set(axis, format_number(values[k]));
                p.run = run_config(cfg, inner).manifest;
                if (reference) {
                    cfg.set("control.enabled", "false");
                    p.no_control = run_config(cfg, inner).manifest;
                }
            } catch (const std::exception& e) {
                p.error = e.what();
            }
            if (inner.log) inner.log(axis + "=" + format_number(values[k]) + (p.error.empty() ? " done" : " failed: " + p.error));
        }
    };
    int jobs = options.jobs > 0 ? options.jobs : static_cast<int>(std::thread::hardware_concurrency());
    jobs = std::max(1, std::min<int>(jobs, static_cast<int>(values.size())));
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    const double nan = std::numeric_limits<double>::quiet_NaN();
    auto pick = [&](const std::optional<RunManifest>& m, const std::string& key) {
        if (!m || !m->ok()) return nan;
        auto it = m->observables.find(key);
        return it == m->observables.end() ? nan : it->second;
    };
    res.table.header = {"value", "flux_t", "flux_c", "flux_t_no_control", "status"};
    for (const auto& p : res.points) {
        std::string status = "ok";
        if (!p.error.empty()) status = "error";
        else if (!p.run->ok()) status = to_string(p.run->status);
        else if (p.run->convergence.applicable && !p.run->convergence.converged) status = "unconverged";
        const double ft = pick(p.run, flux_key(base, 't'));
        res.table.rows.push_back({format_number(p.value), format_number(ft), format_number(pick(p.run, flux_key(base, 'c'))),
                                  format_number(reference ? pick(p.no_control, flux_key(base, 't')) : ft), status});
    }
    if (options.write) {
        res.directory = sweep_directory(root, base, axis, values);
        std::filesystem::create_directories(res.directory);
        write_csv(res.directory + "/sweep.csv", res.table);
    }
    return res;
}

} // namespace cascade

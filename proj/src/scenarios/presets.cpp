#include "cascade/scenarios/presets.hpp"

#include <cmath>

namespace cascade {

namespace {

Json diamond_base(const std::string& name) {
    return {{"model", "diamond"}, {"preset", name}};
}

Json linked(double g, double cooperativity) {
    return {{"enabled", true}, {"g", g}, {"cooperativity", cooperativity}};
}

Json cesium_base(const std::string& name) {
    return {{"model", "cesium"}, {"preset", name}};
}

Json build(const std::string& name) {
    if (name == "fig2") {
        Json j = diamond_base(name);
        j["telecom"] = {{"enabled", false}};
        j["control"] = {{"enabled", false}};
        return j;
    }
    if (name == "fig3a") {
        Json j = diamond_base(name);
        j["control"] = {{"enabled", false}};
        j["link"] = linked(2.0, 8.0);
        return j;
    }
    if (name == "fig4") {
        Json j = diamond_base(name);
        j["link"] = linked(1.0, 8.0);
        return j;
    }
    if (name == "fig5_left" || name == "fig5_right") {
        Json j = diamond_base(name);
        // kappa = 8 gives C_t = 8, kappa = 16 gives C_t = 4.
        j["link"] = linked(4.0, name == "fig5_left" ? 8.0 : 4.0);
        j["correlations"] = {{"enabled", true}};
        return j;
    }
    if (name == "sec2b_numbers") {
        Json j = diamond_base(name);
        j["link"] = linked(1.0, 8.0);
        return j;
    }
    if (name == "cs_populations" || name == "sec3b_numbers") return cesium_base(name);
    if (name == "cs_correlations") {
        Json j = cesium_base(name);
        j["correlations"] = {{"enabled", true}};
        return j;
    }
    throw UnknownPreset("unknown preset '" + name + "'");
}

} // namespace

std::vector<std::string> preset_names() {
    return {"fig2",           "fig3a",           "fig4",          "fig5_left",    "fig5_right",
            "cs_populations", "cs_correlations", "sec2b_numbers", "sec3b_numbers"};
}

ScenarioConfig preset(const std::string& name) { return ScenarioConfig(build(name)); }

ScenarioConfig preset(const std::string& name, const std::vector<std::string>& overrides) {
    ScenarioConfig cfg = preset(name);
    for (const auto& o : overrides) cfg.apply_override(o);
    return cfg;
}

std::vector<double> geometric_grid(double lo, double hi, int n) {
    if (!(lo > 0.0) || !(hi > lo) || n < 2) throw std::invalid_argument("geometric_grid needs 0 < lo < hi, n >= 2");
    std::vector<double> v(n);
    const double r = std::log(hi / lo);
    for (int k = 0; k < n; ++k) v[k] = lo * std::exp(r * k / (n - 1));
    v.front() = lo;
    v.back() = hi;
    return v;
}

SweepAxis default_sweep(const std::string& name) {
    if (name == "fig4") return {"link.g", geometric_grid(0.5, 8.0, 25)};
    build(name);
    throw std::invalid_argument("preset '" + name + "' has no default sweep axis");
}

} // namespace cascade

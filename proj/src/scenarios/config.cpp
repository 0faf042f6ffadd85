#include "cascade/scenarios/config.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace cascade {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Json cavity_block(bool cesium) {
    if (cesium) return {{"enabled", true}, {"g_scale", 6.0}, {"kappa_scale", 8.0}, {"n", 3}};
    return {{"enabled", true}, {"g", 1.0}, {"kappa", 0.5}, {"n", 3}};
}

Json common_blocks(bool cesium) {
    Json j;
    j["preset"] = "";
    j["seed"] = 0;
    j["telecom"] = cavity_block(cesium);
    j["control"] = cavity_block(cesium);
    j["solver"] = {{"method", "direct"}, {"iterative_tolerance", 1e-10}, {"max_iterations", 5000}};
    j["convergence"] = {{"enabled", true}, {"tolerance", 0.005}, {"max_n", cesium ? 5 : 10}};
    j["correlations"] = {{"enabled", false},
                         {"tau_max", 10.0},
                         {"points", 400},
                         {"tail_tau", 15.0},
                         {"series", {"auto_t", "auto_c", "cross_tc", "cross_ct"}},
                         {"krylov_tolerance", cesium ? 1e-4 : 1e-6},
                         {"krylov_shift", cesium ? 0.01 : 0.0},
                         {"max_krylov", 240}};
    j["output"] = {{"dir", "results"}};
    return j;
}

// Split "a.b.c" into keys.
std::vector<std::string> split_path(const std::string& path) {
    std::vector<std::string> keys;
    std::string cur;
    for (char ch : path) {
        if (ch == '.') {
            keys.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    keys.push_back(cur);
    for (const auto& k : keys)
        if (k.empty()) throw ConfigError("malformed config path '" + path + "'");
    return keys;
}

const Json* find(const Json& root, const std::string& path) {
    const Json* node = &root;
    for (const auto& k : split_path(path)) {
        if (!node->is_object() || !node->contains(k)) return nullptr;
        node = &(*node)[k];
    }
    return node;
}

const Json& leaf(const Json& root, const std::string& path) {
    const Json* node = find(root, path);
    if (!node) throw ConfigError("unknown config key '" + path + "'");
    return *node;
}

bool same_kind(const Json& tmpl, const Json& value) {
    if (tmpl.is_boolean()) return value.is_boolean();
    if (tmpl.is_number_integer()) return value.is_number_integer();
    if (tmpl.is_number()) return value.is_number();
    if (tmpl.is_string()) return value.is_string();
    if (tmpl.is_array()) {
        if (!value.is_array()) return false;
        for (const auto& v : value)
            if (!v.is_string()) return false;
        return true;
    }
    if (tmpl.is_object()) return value.is_object();
    return false;
}

std::string kind_name(const Json& tmpl) {
    if (tmpl.is_boolean()) return "boolean";
    if (tmpl.is_number_integer()) return "integer";
    if (tmpl.is_number()) return "number";
    if (tmpl.is_string()) return "string";
    if (tmpl.is_array()) return "list of strings";
    return "object";
}

void check_shape(const Json& tmpl, const Json& value, const std::string& where) {
    for (auto it = value.begin(); it != value.end(); ++it) {
        const std::string path = where.empty() ? it.key() : where + "." + it.key();
        if (!tmpl.contains(it.key())) throw ConfigError("unknown config key '" + path + "'");
        const Json& t = tmpl[it.key()];
        if (!same_kind(t, it.value()))
            throw ConfigError("config key '" + path + "' must be a " + kind_name(t));
        if (t.is_object()) check_shape(t, it.value(), path);
    }
}

void merge_into(Json& target, const Json& patch) {
    for (auto it = patch.begin(); it != patch.end(); ++it) {
        if (it.value().is_object() && target.contains(it.key()) && target[it.key()].is_object())
            merge_into(target[it.key()], it.value());
        else
            target[it.key()] = it.value();
    }
}

void require(bool ok, const std::string& message) {
    if (!ok) throw ConfigError(message);
}

void check_one_of(const Json& cfg, const std::string& path, std::initializer_list<const char*> allowed) {
    const std::string v = leaf(cfg, path).get<std::string>();
    for (const char* a : allowed)
        if (v == a) return;
    std::string msg = "config key '" + path + "' must be one of";
    for (const char* a : allowed) msg += std::string(" ") + a;
    throw ConfigError(msg + " (got '" + v + "')");
}

double num(const Json& cfg, const std::string& path) { return leaf(cfg, path).get<double>(); }

} // namespace

std::string fnv1a64(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Json config_template(const std::string& model) {
    if (model == "diamond") {
        Json j = common_blocks(false);
        j["model"] = "diamond";
        j["atom"] = {{"omega_g", 1000.0}, {"delta_p", -1000.0}, {"delta_s", 1000.0}, {"gamma", 1.0}};
        j["drive"] = {{"mode", "off_resonant"}, {"effective_rate", 4.0}, {"omega_p", 0.0}, {"omega_s", 0.0}};
        j["link"] = {{"enabled", false}, {"g", 1.0}, {"cooperativity", 8.0}};
        return j;
    }
    if (model == "cesium") {
        Json j = common_blocks(true);
        j["model"] = "cesium";
        j["atom"] = {{"constants", ""},   {"rabi_p_mhz", 1450.0}, {"rabi_s_mhz", 1450.0}, {"resonance", "standard"},
                     {"pump_mhz", 0.0},   {"stokes_mhz", 0.0},    {"control_mhz", 0.0},   {"polarization", 0}};
        return j;
    }
    throw ConfigError("unknown model '" + model + "' (expected diamond or cesium)");
}

void validate_config(const Json& cfg) {
    require(cfg.is_object(), "config must be an object");
    require(cfg.contains("model") && cfg["model"].is_string(), "config needs a string 'model'");
    const Json tmpl = config_template(cfg["model"].get<std::string>());
    check_shape(tmpl, cfg, "");
    for (auto it = tmpl.begin(); it != tmpl.end(); ++it)
        require(cfg.contains(it.key()), "config is missing '" + it.key() + "'");

    const bool cesium = cfg["model"] == "cesium";
    check_one_of(cfg, "solver.method", {"direct", "iterative"});
    require(num(cfg, "solver.iterative_tolerance") > 0.0, "solver.iterative_tolerance must be positive");
    require(leaf(cfg, "solver.max_iterations").get<int>() > 0, "solver.max_iterations must be positive");
    require(num(cfg, "convergence.tolerance") > 0.0, "convergence.tolerance must be positive");
    for (const char* cav : {"telecom", "control"}) {
        const std::string c = cav;
        const int n = leaf(cfg, c + ".n").get<int>();
        require(n >= 2, c + ".n must be at least 2");
        require(leaf(cfg, "convergence.max_n").get<int>() >= n, "convergence.max_n must be >= " + c + ".n");
        if (cesium) {
            require(num(cfg, c + ".g_scale") >= 0.0, c + ".g_scale must be non-negative");
            require(num(cfg, c + ".kappa_scale") >= 0.0, c + ".kappa_scale must be non-negative");
        } else {
            require(num(cfg, c + ".g") >= 0.0, c + ".g must be non-negative");
            require(num(cfg, c + ".kappa") >= 0.0, c + ".kappa must be non-negative");
        }
    }
    require(num(cfg, "correlations.tau_max") > 0.0, "correlations.tau_max must be positive");
    require(leaf(cfg, "correlations.points").get<int>() >= 2, "correlations.points must be at least 2");
    require(num(cfg, "correlations.tail_tau") >= 0.0, "correlations.tail_tau must be non-negative");
    require(num(cfg, "correlations.krylov_tolerance") > 0.0, "correlations.krylov_tolerance must be positive");
    require(num(cfg, "correlations.krylov_shift") >= 0.0, "correlations.krylov_shift must be non-negative");
    require(leaf(cfg, "correlations.max_krylov").get<int>() >= 10, "correlations.max_krylov must be at least 10");
    for (const auto& s : cfg["correlations"]["series"]) {
        const std::string v = s.get<std::string>();
        require(v == "auto_t" || v == "auto_c" || v == "cross_tc" || v == "cross_ct",
                "unknown correlation series '" + v + "'");
    }
    if (cesium) {
        check_one_of(cfg, "atom.resonance", {"standard", "custom"});
        require(num(cfg, "atom.rabi_p_mhz") >= 0.0 && num(cfg, "atom.rabi_s_mhz") >= 0.0,
                "Rabi frequencies must be non-negative");
        const int q = leaf(cfg, "atom.polarization").get<int>();
        require(q >= -1 && q <= 1, "atom.polarization must be -1, 0 or 1");
    } else {
        check_one_of(cfg, "drive.mode", {"off_resonant", "resonant", "explicit"});
        require(num(cfg, "atom.gamma") > 0.0, "atom.gamma must be positive");
        require(num(cfg, "drive.effective_rate") >= 0.0, "drive.effective_rate must be non-negative");
        require(num(cfg, "link.g") >= 0.0, "link.g must be non-negative");
        require(num(cfg, "link.cooperativity") > 0.0, "link.cooperativity must be positive");
    }
}

ScenarioConfig::ScenarioConfig(const Json& patch) {
    if (!patch.is_object() || !patch.contains("model") || !patch["model"].is_string())
        throw ConfigError("config needs a string 'model'");
    data_ = config_template(patch["model"].get<std::string>());
    merge(patch);
}

void ScenarioConfig::merge(const Json& patch) {
    if (patch.contains("model") && patch["model"] != data_["model"]) throw ConfigError("cannot change 'model'");
    check_shape(config_template(model()), patch, "");
    Json next = data_;
    merge_into(next, patch);
    validate_config(next);
    data_ = std::move(next);
}

bool ScenarioConfig::has(const std::string& path) const { return find(data_, path) != nullptr; }

double ScenarioConfig::number(const std::string& path) const { return leaf(data_, path).get<double>(); }
int ScenarioConfig::integer(const std::string& path) const { return leaf(data_, path).get<int>(); }
bool ScenarioConfig::flag(const std::string& path) const { return leaf(data_, path).get<bool>(); }
std::string ScenarioConfig::text(const std::string& path) const { return leaf(data_, path).get<std::string>(); }
std::vector<std::string> ScenarioConfig::list(const std::string& path) const {
    return leaf(data_, path).get<std::vector<std::string>>();
}

void ScenarioConfig::set(const std::string& path, const std::string& value) {
    const Json t = leaf(config_template(model()), path);
    Json v;
    try {
        if (t.is_boolean()) {
            if (value == "true" || value == "1") v = true;
            else if (value == "false" || value == "0") v = false;
            else throw ConfigError("");
        } else if (t.is_number_integer()) {
            std::size_t used = 0;
            const long long x = std::stoll(value, &used);
            if (used != value.size()) throw ConfigError("");
            v = x;
        } else if (t.is_number()) {
            std::size_t used = 0;
            const double x = std::stod(value, &used);
            if (used != value.size() || !std::isfinite(x)) throw ConfigError("");
            v = x;
        } else if (t.is_string()) {
            v = value;
        } else if (t.is_array()) {
            v = Json::array();
            std::stringstream ss(value);
            std::string item;
            while (std::getline(ss, item, ','))
                if (!item.empty()) v.push_back(item);
        } else {
            throw ConfigError("");
        }
    } catch (const std::exception&) {
        throw ConfigError("cannot set '" + path + "' to '" + value + "': expected " + kind_name(t));
    }
    Json patch = Json::object();
    Json* node = &patch;
    const auto keys = split_path(path);
    for (std::size_t k = 0; k + 1 < keys.size(); ++k) node = &(*node)[keys[k]];
    (*node)[keys.back()] = v;
    merge(patch);
}

void ScenarioConfig::apply_override(const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("override '" + assignment + "' is not key=value");
    set(assignment.substr(0, eq), assignment.substr(eq + 1));
}

std::string ScenarioConfig::hash() const {
    Json j = data_;
    j.erase("output");
    return fnv1a64(j.dump());
}

DiamondParams diamond_params(const ScenarioConfig& cfg) {
    if (cfg.model() != "diamond") throw ConfigError("not a diamond config");
    DiamondParams p;
    p.omega_g = cfg.number("atom.omega_g");
    p.delta_p = cfg.number("atom.delta_p");
    p.delta_s = cfg.number("atom.delta_s");
    p.gamma = cfg.number("atom.gamma");
    p.telecom_cavity = cfg.flag("telecom.enabled");
    p.control_cavity = cfg.flag("control.enabled");
    p.n_t = cfg.integer("telecom.n");
    p.n_c = cfg.integer("control.n");
    if (cfg.flag("link.enabled")) {
        // g_t = g_c = g and kappa_t = kappa_c from C_t = 2 g^2 / (kappa gamma_t).
        const double g = cfg.number("link.g");
        p.g_t = p.g_c = g;
        p.kappa_t = p.kappa_c = 2.0 * g * g / (cfg.number("link.cooperativity") * p.gamma_t());
    } else {
        p.g_t = cfg.number("telecom.g");
        p.kappa_t = cfg.number("telecom.kappa");
        p.g_c = cfg.number("control.g");
        p.kappa_c = cfg.number("control.kappa");
    }
    const std::string mode = cfg.text("drive.mode");
    if (mode == "explicit") {
        p.omega_p = cfg.number("drive.omega_p");
        p.omega_s = cfg.number("drive.omega_s");
    } else {
        const DriveMode m = parse_drive_mode(mode);
        const double rate = cfg.number("drive.effective_rate") * p.gamma;
        p.omega_p = p.omega_s = rate == 0.0 ? 0.0 : rabi_for_effective_rate(rate, m, p.delta_s);
    }
    return p;
}

std::string constants_path(const ScenarioConfig& cfg) {
    const std::string path = cfg.text("atom.constants");
    return path.empty() ? default_constants_path() : path;
}

CesiumParams cesium_params(const ScenarioConfig& cfg, const AtomConstants& constants) {
    if (cfg.model() != "cesium") throw ConfigError("not a cesium config");
    CesiumParams p = cesium_defaults(constants);
    p.rabi_p = kTwoPi * cfg.number("atom.rabi_p_mhz");
    p.rabi_s = kTwoPi * cfg.number("atom.rabi_s_mhz");
    p.polarization = cfg.integer("atom.polarization");
    p.preset = parse_resonance_preset(cfg.text("atom.resonance"));
    auto given = [&](const char* key) -> std::optional<double> {
        const double v = cfg.number(std::string("atom.") + key);
        if (v == 0.0) return std::nullopt;
        return kTwoPi * v;
    };
    p.detunings = cesium_detunings(*p.scheme, given("pump_mhz"), given("stokes_mhz"), p.preset, given("control_mhz"));
    if (p.preset == ResonancePreset::Custom)
        p.fields = {*given("pump_mhz"), *given("stokes_mhz"), *given("control_mhz")};
    const double sum = p.gamma_s + p.gamma_t;
    p.telecom_cavity = cfg.flag("telecom.enabled");
    p.control_cavity = cfg.flag("control.enabled");
    p.g_t = cfg.number("telecom.g_scale") * sum;
    p.kappa_t = cfg.number("telecom.kappa_scale") * sum;
    p.g_c = cfg.number("control.g_scale") * sum;
    p.kappa_c = cfg.number("control.kappa_scale") * sum;
    p.n_t = cfg.integer("telecom.n");
    p.n_c = cfg.integer("control.n");
    return p;
}

SteadyStateOptions solver_options(const ScenarioConfig& cfg) {
    SteadyStateOptions o;
    o.method = parse_steady_method(cfg.text("solver.method"));
    o.iterative_tolerance = cfg.number("solver.iterative_tolerance");
    o.max_iterations = cfg.integer("solver.max_iterations");
    return o;
}

CorrelationSettings correlation_settings(const ScenarioConfig& cfg) {
    CorrelationSettings s;
    s.enabled = cfg.flag("correlations.enabled");
    s.series = cfg.list("correlations.series");
    const double tmax = cfg.number("correlations.tau_max");
    s.taus = uniform_grid(tmax, cfg.integer("correlations.points"));
    const double tail = cfg.number("correlations.tail_tau");
    if (tail > tmax) s.taus.push_back(tail);
    s.propagator.tolerance = cfg.number("correlations.krylov_tolerance");
    s.propagator.shift = cfg.number("correlations.krylov_shift");
    s.propagator.max_krylov = cfg.integer("correlations.max_krylov");
    return s;
}

} // namespace cascade

#include "cascade/scenarios/manifest.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cascade {

using nlohmann::json;

std::string tool_version() { return CASCADE_VERSION; }

std::string to_string(RunStatus s) {
    switch (s) {
    case RunStatus::Ok: return "ok";
    case RunStatus::NonUniqueSteadyState: return "non_unique_steady_state";
    case RunStatus::Failed: return "failed";
    }
    return "failed";
}

RunStatus parse_run_status(const std::string& s) {
    if (s == "ok") return RunStatus::Ok;
    if (s == "non_unique_steady_state") return RunStatus::NonUniqueSteadyState;
    if (s == "failed") return RunStatus::Failed;
    throw std::invalid_argument("unknown run status '" + s + "'");
}

double RunManifest::value(const std::string& key) const {
    auto it = observables.find(key);
    if (it == observables.end()) throw std::out_of_range("manifest of '" + preset + "' has no observable '" + key + "'");
    return it->second;
}

bool RunManifest::flag(const std::string& key) const {
    auto it = flags.find(key);
    if (it == flags.end()) throw std::out_of_range("manifest of '" + preset + "' has no flag '" + key + "'");
    return it->second;
}

namespace {

json truncation_json(const Truncation& t) { return {{"n_t", t.n_t}, {"n_c", t.n_c}}; }
Truncation truncation_from(const json& j) { return {j.at("n_t").get<int>(), j.at("n_c").get<int>()}; }

} // namespace

json RunManifest::to_json() const {
    json j;
    j["preset"] = preset;
    j["config_hash"] = config_hash;
    j["tool_version"] = tool_version;
    j["constants"] = constants ? json{{"path", constants->path}, {"version", constants->version},
                                      {"digest", constants->digest}}
                               : json(nullptr);
    j["wall_seconds"] = wall_seconds;
    j["steady_state_seconds"] = steady_state_seconds;
    j["status"] = to_string(status);
    j["message"] = message;
    j["observables"] = observables;
    j["flags"] = flags;
    json gate;
    gate["applicable"] = convergence.applicable;
    gate["converged"] = convergence.converged;
    gate["tolerance"] = convergence.tolerance;
    gate["accepted"] = truncation_json(convergence.accepted);
    gate["verdict"] = convergence.verdict;
    gate["changes"] = convergence.changes;
    gate["points"] = json::array();
    for (const auto& p : convergence.points)
        gate["points"].push_back(
            {{"truncation", truncation_json(p.truncation)}, {"observables", p.observables}, {"error", p.error}});
    j["convergence"] = gate;
    j["series"] = json::array();
    for (const auto& s : series)
        j["series"].push_back({{"kind", s.kind},
                               {"at_zero", s.at_zero},
                               {"tail", s.tail},
                               {"max", s.max_value},
                               {"negative_excursion", s.negative_excursion},
                               {"krylov_dim", s.krylov_dim}});
    j["warnings"] = warnings;
    j["files"] = files;
    j["config"] = config;
    return j;
}

RunManifest RunManifest::from_json(const json& j) {
    RunManifest m;
    m.preset = j.at("preset").get<std::string>();
    m.config_hash = j.at("config_hash").get<std::string>();
    m.tool_version = j.at("tool_version").get<std::string>();
    if (!j.at("constants").is_null()) {
        const auto& c = j.at("constants");
        m.constants = ConstantsInfo{c.at("path").get<std::string>(), c.at("version").get<std::string>(),
                                    c.at("digest").get<std::string>()};
    }
    m.wall_seconds = j.at("wall_seconds").get<double>();
    m.steady_state_seconds = j.value("steady_state_seconds", 0.0);
    m.status = parse_run_status(j.at("status").get<std::string>());
    m.message = j.at("message").get<std::string>();
    m.observables = j.at("observables").get<Observables>();
    m.flags = j.at("flags").get<std::map<std::string, bool>>();
    const auto& g = j.at("convergence");
    m.convergence.applicable = g.at("applicable").get<bool>();
    m.convergence.converged = g.at("converged").get<bool>();
    m.convergence.tolerance = g.at("tolerance").get<double>();
    m.convergence.accepted = truncation_from(g.at("accepted"));
    m.convergence.verdict = g.at("verdict").get<std::string>();
    m.convergence.changes = g.at("changes").get<Observables>();
    for (const auto& p : g.at("points"))
        m.convergence.points.push_back({truncation_from(p.at("truncation")), p.at("observables").get<Observables>(),
                                        p.at("error").get<std::string>()});
    for (const auto& s : j.at("series"))
        m.series.push_back({s.at("kind").get<std::string>(), s.at("at_zero").get<double>(), s.at("tail").get<double>(),
                            s.at("max").get<double>(), s.at("negative_excursion").get<double>(),
                            s.at("krylov_dim").get<int>()});
    m.warnings = j.at("warnings").get<std::vector<std::string>>();
    m.files = j.at("files").get<std::vector<std::string>>();
    m.config = j.at("config");
    return m;
}

void RunManifest::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write manifest '" + path + "'");
    out << to_json().dump(2) << '\n';
}

RunManifest RunManifest::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read manifest '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::runtime_error("manifest '" + path + "' is malformed: " + e.what());
    }
    RunManifest m = from_json(j);
    m.directory = path.substr(0, path.find_last_of('/'));
    return m;
}

} // namespace cascade

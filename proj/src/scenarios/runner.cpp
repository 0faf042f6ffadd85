#include "cascade/scenarios/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <map>
#include <numbers>
#include <thread>

#include "cascade/correl/cauchy_schwarz.hpp"
#include "cascade/correl/flux.hpp"
#include "cascade/scenarios/csv.hpp"
#include "cascade/scenarios/presets.hpp"

namespace cascade {

namespace fs = std::filesystem;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Adapter {
    std::function<ModelSystem(const Truncation&)> build;
    // Observables compared by the convergence gate.
    std::function<void(const ModelSystem&, const DensityMatrix&, Observables&)> core;
    // Remaining observables and the population table.
    std::function<void(const ModelSystem&, const DensityMatrix&, Observables&, CsvTable&)> details;
    Truncation start;
    std::optional<ConstantsInfo> constants;
    std::vector<std::string> warnings;
};

void mode_statistics(const ModelSystem& m, const DensityMatrix& rho, Observables& obs) {
    const double tiny = 1e-12;
    std::optional<double> nt, nc;
    if (m.telecom) nt = occupation(rho, *m.telecom);
    if (m.control) nc = occupation(rho, *m.control);
    if (nt && *nt > tiny) obs["g2_t0"] = g2_static(rho, *m.telecom);
    if (nc && *nc > tiny) obs["g2_c0"] = g2_static(rho, *m.control);
    if (nt && nc && *nt > tiny && *nc > tiny) obs["g2_tc0"] = g2_cross_static(rho, *m.telecom, *m.control);
}

Adapter diamond_adapter(const ScenarioConfig& cfg) {
    const DiamondParams base = diamond_params(cfg);
    Adapter a;
    a.start = {base.telecom_cavity ? base.n_t : 0, base.control_cavity ? base.n_c : 0};
    a.warnings = base.validate();
    a.build = [base](const Truncation& t) {
        DiamondParams p = base;
        if (p.telecom_cavity) p.n_t = t.n_t;
        if (p.control_cavity) p.n_c = t.n_c;
        return build_diamond(p);
    };
    a.core = [base](const ModelSystem& m, const DensityMatrix& rho, Observables& obs) {
        if (m.telecom) obs["flux_t"] = flux(rho, *m.telecom, m.kappa_t);
        if (m.control) obs["flux_c"] = flux(rho, *m.control, m.kappa_c);
        obs["emission_free"] = diamond_telecom_emission(m, rho, base);
        mode_statistics(m, rho, obs);
    };
    a.details = [base](const ModelSystem& m, const DensityMatrix& rho, Observables& obs, CsvTable& pops) {
        static const char* names[] = {"g1", "g2", "e1", "e2", "f"};
        pops.header = {"level", "population"};
        for (int k = 0; k < 5; ++k) {
            const double p = expect(m.atom_projector(k), rho).real();
            obs[std::string("pop_") + names[k]] = p;
            pops.rows.push_back({names[k], format_number(p)});
        }
        obs["omega_p"] = base.omega_p;
        obs["omega_s"] = base.omega_s;
        if (m.telecom) {
            obs["occupation_t"] = occupation(rho, *m.telecom);
            obs["g_t"] = base.g_t;
            obs["kappa_t"] = base.kappa_t;
            if (base.kappa_t > 0.0) obs["cooperativity_t"] = cooperativity(base.g_t, base.kappa_t, base.gamma_t());
        }
        if (m.control) {
            obs["occupation_c"] = occupation(rho, *m.control);
            obs["g_c"] = base.g_c;
            obs["kappa_c"] = base.kappa_c;
        }
    };
    return a;
}

Adapter cesium_adapter(const ScenarioConfig& cfg) {
    const std::string path = constants_path(cfg);
    const AtomConstants constants = load_constants(path);
    const CesiumParams base = cesium_params(cfg, constants);
    Adapter a;
    a.start = {base.telecom_cavity ? base.n_t : 0, base.control_cavity ? base.n_c : 0};
    a.constants = ConstantsInfo{constants.path, constants.version, constants.digest};
    a.warnings = base.validate();
    for (const auto& problem : verify_constants(constants)) a.warnings.push_back("constants: " + problem);
    const double margin = interference_margin(base);
    if (margin < 10.0)
        a.warnings.push_back("two-photon interference margin " + format_number(margin) + " is below 10");
    a.build = [base](const Truncation& t) {
        CesiumParams p = base;
        if (p.telecom_cavity) p.n_t = t.n_t;
        if (p.control_cavity) p.n_c = t.n_c;
        return build_cesium(p);
    };
    a.core = [base](const ModelSystem& m, const DensityMatrix& rho, Observables& obs) {
        if (m.telecom) obs["flux_t_per_gamma_t"] = flux(rho, *m.telecom, m.kappa_t) / base.gamma_t;
        if (m.control) obs["flux_c_per_gamma_t"] = flux(rho, *m.control, m.kappa_c) / base.gamma_t;
        obs["emission_free_per_gamma_t"] = cesium_telecom_emission(m, rho, base) / base.gamma_t;
        mode_statistics(m, rho, obs);
    };
    a.details = [base, margin](const ModelSystem& m, const DensityMatrix& rho, Observables& obs, CsvTable& pops) {
        const TargetReport r = target_populations(rho, *base.scheme);
        pops.header = {"manifold", "F", "population", "targeted"};
        const std::map<std::string, int> target{{kPumpUpper, 4}, {kControlUpper, 5}, {kTop, 4}};
        for (const auto& mp : r.manifolds) {
            obs["pop_" + mp.manifold] = mp.total;
            obs["targeted_" + mp.manifold] = mp.targeted;
            for (const auto& [twoF, p] : mp.by_F) {
                auto it = target.find(mp.manifold);
                const bool targeted = it == target.end() || it->second * 2 == twoF;
                pops.rows.push_back({mp.manifold, std::to_string(twoF / 2), format_number(p), targeted ? "1" : "0"});
            }
        }
        for (const auto& [name, p] : r.levels) obs["pop_" + name] = p;
        obs["targeted_fraction"] = r.targeted_fraction;
        obs["interference_margin"] = margin;
        obs["emission_free_mhz"] = cesium_telecom_emission(m, rho, base) / kTwoPi;
        obs["rabi_p_mhz"] = base.rabi_p / kTwoPi;
        obs["rabi_s_mhz"] = base.rabi_s / kTwoPi;
        if (m.telecom) {
            obs["flux_t_mhz"] = flux(rho, *m.telecom, m.kappa_t) / kTwoPi;
            obs["occupation_t"] = occupation(rho, *m.telecom);
            obs["g_t_mhz"] = base.g_t / kTwoPi;
            obs["kappa_t_mhz"] = base.kappa_t / kTwoPi;
        }
        if (m.control) {
            obs["flux_c_mhz"] = flux(rho, *m.control, m.kappa_c) / kTwoPi;
            obs["occupation_c"] = occupation(rho, *m.control);
            obs["g_c_mhz"] = base.g_c / kTwoPi;
            obs["kappa_c_mhz"] = base.kappa_c / kTwoPi;
        }
    };
    return a;
}

struct Solved {
    ModelSystem system;
    std::shared_ptr<Liouvillian> L;
    SteadyStateResult ss;
};

std::string key_of(const Truncation& t) { return std::to_string(t.n_t) + "," + std::to_string(t.n_c); }

// First local maximum of a one-sided series after tau = 0.
std::optional<std::size_t> first_peak(const CorrelationSeries& s) {
    for (std::size_t k = 1; k + 1 < s.values.size(); ++k)
        if (s.values[k] > s.values[k - 1] && s.values[k] >= s.values[k + 1]) return k;
    return std::nullopt;
}

void record_flags(const CauchySchwarzReport& r, bool time_resolved, RunManifest& m) {
    m.flags["cs_one_mode_t"] = r.one_mode_t.violated;
    m.flags["cs_one_mode_c"] = r.one_mode_c.violated;
    if (r.g2_cross0) m.flags["cs_two_mode"] = r.two_mode.violated;
    if (time_resolved) {
        m.flags["cs_time_one_mode_t"] = r.time_one_mode_t.violated;
        m.flags["cs_time_one_mode_c"] = r.time_one_mode_c.violated;
        m.flags["cs_time_two_mode"] = r.time_two_mode.violated;
    }
}

void write_outputs(const std::string& dir, const ScenarioConfig& cfg, RunManifest& m, const CsvTable& pops,
                   const std::vector<CorrelationSeries>& series) {
    fs::create_directories(dir);
    {
        std::ofstream out(dir + "/config.json", std::ios::binary);
        out << cfg.dump() << '\n';
    }
    m.files = {"config.json", "manifest.json"};
    if (!pops.header.empty()) {
        write_csv(dir + "/populations.csv", pops);
        m.files.push_back("populations.csv");
    }
    if (!series.empty()) {
        write_csv(dir + "/series.csv", series_table(series));
        m.files.push_back("series.csv");
    }
    if (!m.convergence.points.empty()) {
        CsvTable t{{"n_t", "n_c", "observable", "value"}, {}};
        for (const auto& p : m.convergence.points)
            for (const auto& [k, v] : p.observables)
                t.rows.push_back({std::to_string(p.truncation.n_t), std::to_string(p.truncation.n_c), k,
                                  format_number(v)});
        write_csv(dir + "/convergence.csv", t);
        m.files.push_back("convergence.csv");
    }
    m.directory = dir;
    m.save(dir + "/manifest.json");
}

} // namespace

std::string run_directory(const std::string& root, const ScenarioConfig& cfg) {
    const std::string name = cfg.preset().empty() ? "custom" : cfg.preset();
    return root + "/" + name + "/" + cfg.hash();
}

RunResult run_config(const ScenarioConfig& cfg, const RunOptions& options) {
    const auto t0 = std::chrono::steady_clock::now();
    auto log = [&](const std::string& s) {
        if (options.log) options.log(s);
    };
    RunResult result;
    RunManifest& man = result.manifest;
    man.preset = cfg.preset();
    man.config_hash = cfg.hash();
    man.tool_version = tool_version();
    man.config = cfg.json();
    const std::string root = options.output_root.empty() ? cfg.text("output.dir") : options.output_root;
    CsvTable pops;

    auto finish = [&]() -> RunResult& {
        man.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (options.write) write_outputs(run_directory(root, cfg), cfg, man, pops, result.series);
        return result;
    };

    Adapter ad;
    try {
        ad = cfg.model() == "diamond" ? diamond_adapter(cfg) : cesium_adapter(cfg);
    } catch (const std::exception& e) {
        man.status = RunStatus::Failed;
        man.message = e.what();
        return finish();
    }
    man.constants = ad.constants;
    man.warnings = ad.warnings;
    const SteadyStateOptions solver = solver_options(cfg);

    std::map<std::string, std::shared_ptr<Solved>> cache;
    auto solve_at = [&](const Truncation& t) -> std::shared_ptr<Solved> {
        const std::string key = key_of(t);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
        ModelSystem system = ad.build(t);
        auto L = std::make_shared<Liouvillian>(build_liouvillian(system.H, system.collapses));
        log("solving n_t=" + std::to_string(t.n_t) + " n_c=" + std::to_string(t.n_c) + " (" +
            std::to_string(L->size()) + " unknowns)");
        SteadyStateResult ss = steady_state(*L, solver);
        auto s = std::make_shared<Solved>(Solved{std::move(system), L, std::move(ss)});
        cache[key] = s;
        return s;
    };

    // Convergence gate over the Fock truncations of the present modes.
    Truncation use = ad.start;
    man.convergence.tolerance = cfg.number("convergence.tolerance");
    const bool any_cavity = ad.start.n_t > 0 || ad.start.n_c > 0;
    if (any_cavity && cfg.flag("convergence.enabled")) {
        man.convergence.applicable = true;
        auto fn = [&](const Truncation& t) {
            auto s = solve_at(t);
            Observables obs;
            ad.core(s->system, s->ss.rho_ss, obs);
            return obs;
        };
        const ConvergenceReport r =
            convergence_gate(fn, ad.start, cfg.integer("convergence.max_n"), man.convergence.tolerance);
        man.convergence.converged = r.converged;
        man.convergence.accepted = r.accepted;
        man.convergence.verdict = r.verdict();
        man.convergence.changes = r.changes;
        man.convergence.points = r.points;
        use = r.accepted;
        if (!r.converged) man.warnings.push_back("convergence gate failed: " + r.verdict());
    } else {
        man.convergence.verdict = any_cavity ? "gate disabled" : "no cavity modes";
        man.convergence.accepted = ad.start;
    }

    std::shared_ptr<Solved> s;
    try {
        auto it = cache.find(key_of(use));
        if (it != cache.end()) {
            s = it->second;
        } else {
            s = solve_at(use);
        }
    } catch (const NonUniqueSteadyState& e) {
        man.status = RunStatus::NonUniqueSteadyState;
        man.message = e.what();
        return finish();
    } catch (const std::exception& e) {
        man.status = RunStatus::Failed;
        man.message = e.what();
        return finish();
    }
    cache.clear();
    cache[key_of(use)] = s;

    const DensityMatrix& rho = s->ss.rho_ss;
    result.rho = rho;
    Observables& obs = man.observables;
    try {
        ad.core(s->system, rho, obs);
        ad.details(s->system, rho, obs, pops);
    } catch (const std::exception& e) {
        man.status = RunStatus::Failed;
        man.message = e.what();
        return finish();
    }
    obs["n_t"] = use.n_t;
    obs["n_c"] = use.n_c;
    obs["ss_residual"] = s->ss.residual;
    obs["ss_residual_limit"] = s->ss.residual_limit;
    obs["ss_min_eigenvalue"] = s->ss.state.min_eigenvalue;
    obs["ss_trace_error"] = s->ss.state.trace_error;
    man.steady_state_seconds = s->ss.stats.seconds;
    if (!s->ss.kernel_ok()) man.warnings.push_back("steady-state residual above 1e-10 |L|_max");
    if (s->ss.state.min_eigenvalue < -1e-8) man.warnings.push_back("steady state has a negative eigenvalue");
    for (const auto& w : s->system.warnings)
        if (std::find(man.warnings.begin(), man.warnings.end(), w) == man.warnings.end()) man.warnings.push_back(w);

    // Correlation series.
    const CorrelationSettings cs = correlation_settings(cfg);
    std::map<std::string, CorrelationSeries> done;
    if (cs.enabled) {
        const ModelSystem& m = s->system;
        std::vector<std::string> names;
        for (const auto& name : cs.series) {
            const bool needs_t = name != "auto_c";
            const bool needs_c = name != "auto_t";
            if ((needs_t && !m.telecom) || (needs_c && !m.control)) {
                man.warnings.push_back("series " + name + " skipped: cavity mode disabled");
                continue;
            }
            names.push_back(name);
        }
        try {
            if (!names.empty()) {
                log("correlations on " + std::to_string(cs.taus.size()) + " delays");
                const Propagator P(*s->L, cs.taus.back(), cs.propagator);
                auto compute = [&](const std::string& name) {
                    if (name == "auto_t") return g2_auto(P, *s->L, rho, *m.telecom, cs.taus, "t");
                    if (name == "auto_c") return g2_auto(P, *s->L, rho, *m.control, cs.taus, "c");
                    if (name == "cross_tc") return g2_cross(P, *s->L, rho, *m.telecom, *m.control, cs.taus, "t", "c");
                    return g2_cross(P, *s->L, rho, *m.control, *m.telecom, cs.taus, "c", "t");
                };
                const int jobs = options.jobs > 0 ? options.jobs : static_cast<int>(names.size());
                for (std::size_t k = 0; k < names.size(); k += jobs) {
                    std::vector<std::future<CorrelationSeries>> work;
                    for (std::size_t j = k; j < std::min(names.size(), k + jobs); ++j)
                        work.push_back(std::async(std::launch::async, compute, names[j]));
                    for (std::size_t j = 0; j < work.size(); ++j) done[names[k + j]] = work[j].get();
                }
            }
        } catch (const UndefinedCorrelation& e) {
            man.warnings.push_back(std::string("correlations skipped: ") + e.what());
            done.clear();
        } catch (const std::exception& e) {
            man.status = RunStatus::Failed;
            man.message = std::string("correlation failure: ") + e.what();
            return finish();
        }
        for (const auto& name : names) {
            if (!done.count(name)) continue;
            const CorrelationSeries& c = done[name];
            result.series.push_back(c);
            man.series.push_back({c.kind, c.at_zero(), c.tail(), c.max_value(), c.negative_excursion, c.krylov_dim});
            obs["tail_" + name] = c.tail();
            obs["max_" + name] = c.max_value();
            if (c.negative_excursion < 0.0)
                man.warnings.push_back("series " + c.kind + " dips to " + format_number(c.negative_excursion));
            if (std::abs(c.tail() - 1.0) > 0.01)
                man.warnings.push_back("series " + c.kind + " tail " + format_number(c.tail()) + " is not within 1% of 1");
        }
        if (done.count("cross_tc") && done.count("cross_ct")) {
            result.series.push_back(two_sided(done["cross_tc"], done["cross_ct"]));
            if (auto k = first_peak(done["cross_tc"])) {
                obs["cross_peak_tau"] = done["cross_tc"].taus[*k];
                obs["cross_tc_at_peak"] = done["cross_tc"].values[*k];
                obs["cross_ct_at_peak"] = done["cross_ct"].values[*k];
            }
        }
    }

    // Classical-field inequalities.
    if (done.count("auto_t") && done.count("auto_c") && done.count("cross_tc")) {
        record_flags(cauchy_schwarz(done["auto_t"], done["auto_c"], done["cross_tc"]), true, man);
    } else if (obs.count("g2_t0") && obs.count("g2_c0") && obs.count("g2_tc0")) {
        record_flags(cauchy_schwarz(obs["g2_t0"], obs["g2_c0"], obs["g2_tc0"]), false, man);
    } else {
        if (obs.count("g2_t0")) man.flags["cs_one_mode_t"] = obs["g2_t0"] < 1.0;
        if (obs.count("g2_c0")) man.flags["cs_one_mode_c"] = obs["g2_c0"] < 1.0;
    }
    return finish();
}

RunManifest run_scenario(const std::string& name, const std::vector<std::string>& overrides,
                         const RunOptions& options) {
    return run_config(preset(name, overrides), options).manifest;
}

} // namespace cascade

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "cascade/models/constants.hpp"
#include "cascade/scenarios/acceptance.hpp"
#include "cascade/scenarios/presets.hpp"
#include "cascade/scenarios/report.hpp"
#include "cascade/scenarios/sweep.hpp"

using namespace cascade;

namespace {

RunOptions options(const std::string& out, int jobs, bool quiet) {
    RunOptions o;
    o.output_root = out;
    o.jobs = jobs;
    if (!quiet) o.log = [](const std::string& s) { std::cerr << s << '\n'; };
    return o;
}

void print_manifest(const RunManifest& m) {
    std::cout << "status     " << to_string(m.status);
    if (!m.message.empty()) std::cout << " (" << m.message << ')';
    std::cout << "\ndirectory  " << m.directory << "\nwall       " << format_number(m.wall_seconds) << " s\n";
    for (const auto& [k, v] : m.observables) std::cout << "  " << k << " = " << format_number(v) << '\n';
    for (const auto& [k, v] : m.flags) std::cout << "  " << k << ": " << (v ? "violated" : "satisfied") << '\n';
    if (m.convergence.applicable) std::cout << "convergence " << m.convergence.verdict << '\n';
    for (const auto& w : m.warnings) std::cout << "warning: " << w << '\n';
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cascaded two-cavity photon-pair source simulator"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string out = "results";
    int jobs = 0;
    bool quiet = false;
    app.add_option("--out", out, "output root")->capture_default_str();
    app.add_option("--jobs", jobs, "worker threads (0 = automatic)");
    app.add_flag("-q,--quiet", quiet, "no progress on stderr");

    auto* run = app.add_subcommand("run", "run one preset");
    std::string name;
    std::vector<std::string> sets;
    std::string config_file;
    run->add_option("preset", name, "preset name")->required();
    run->add_option("--set", sets, "override key=value (dotted path)");
    run->add_option("--config", config_file, "JSON patch applied before --set")->check(CLI::ExistingFile);

    auto* sw = app.add_subcommand("sweep", "sweep one numeric key");
    std::string sweep_preset, axis;
    std::vector<double> values;
    std::vector<std::string> sweep_sets;
    sw->add_option("preset", sweep_preset, "preset name")->required();
    sw->add_option("--axis", axis, "dotted config path");
    sw->add_option("--values", values, "axis values")->delimiter(',');
    sw->add_option("--set", sweep_sets, "override key=value");

    auto* acc = app.add_subcommand("accept", "run the acceptance scenarios and evaluate");
    auto* rep = app.add_subcommand("report", "evaluate acceptance from an existing output tree");
    std::string report_dir = "results";
    rep->add_option("dir", report_dir, "output root")->capture_default_str();

    auto* cons = app.add_subcommand("constants", "show or verify the atomic constants file");
    bool verify = false;
    cons->add_flag("--verify", verify, "check consistency and exit nonzero on problems");

    auto* list = app.add_subcommand("presets", "list preset names");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            ScenarioConfig cfg = preset(name);
            if (!config_file.empty()) {
                std::ifstream in(config_file);
                cfg.merge(Json::parse(in));
            }
            for (const auto& s : sets) cfg.apply_override(s);
            validate_config(cfg.json());
            const RunResult r = run_config(cfg, options(out, jobs, quiet));
            print_manifest(r.manifest);
            return r.manifest.ok() ? 0 : 2;
        }
        if (*sw) {
            ScenarioConfig cfg = preset(sweep_preset, sweep_sets);
            if (axis.empty()) {
                const SweepAxis d = default_sweep(sweep_preset);
                axis = d.path;
                if (values.empty()) values = d.values;
            }
            if (values.empty()) throw std::invalid_argument("sweep needs --values");
            const SweepResult r = sweep(cfg, axis, values, options(out, jobs, quiet));
            std::cout << to_csv_text(r.table) << "written to " << r.directory << '\n';
            for (const auto& p : r.points)
                if (!p.error.empty()) return 2;
            return 0;
        }
        if (*acc) {
            const AcceptanceReport r = run_acceptance(options(out, jobs, quiet));
            std::cout << r.text();
            return r.passed() ? 0 : 1;
        }
        if (*rep) {
            const AcceptanceReport r = report_directory(report_dir);
            std::cout << r.text();
            return r.passed() ? 0 : 1;
        }
        if (*cons) {
            const AtomConstants c = load_default_constants();
            std::cout << c.name << ' ' << c.version << "\npath   " << c.path << "\ndigest " << c.digest << '\n';
            const auto problems = verify_constants(c);
            for (const auto& p : problems) std::cout << "problem: " << p << '\n';
            if (verify) std::cout << (problems.empty() ? "constants ok\n" : "constants inconsistent\n");
            return problems.empty() || !verify ? 0 : 1;
        }
        if (*list) {
            for (const auto& n : preset_names()) std::cout << n << '\n';
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

#include <CLI11.hpp>

#include <iostream>

#include "cascade/scenarios/acceptance.hpp"
#include "cascade/scenarios/report.hpp"

using namespace cascade;

int main(int argc, char** argv) {
    CLI::App app{"Acceptance table: one PASS/FAIL line per criterion"};
    std::string out = "acceptance_results";
    bool report_only = false;
    bool quiet = false;
    int jobs = 0;
    app.add_option("--out", out, "output root")->capture_default_str();
    app.add_option("--jobs", jobs, "worker threads (0 = automatic)");
    app.add_flag("--report-only", report_only, "evaluate an existing output tree without running models");
    app.add_flag("-q,--quiet", quiet, "no progress on stderr");
    CLI11_PARSE(app, argc, argv);

    AcceptanceReport report;
    try {
        if (report_only) {
            report = report_directory(out);
        } else {
            RunOptions o;
            o.output_root = out;
            o.jobs = jobs;
            if (!quiet) o.log = [](const std::string& s) { std::cerr << "[acceptance] " << s << '\n'; };
            report = run_acceptance(o);
        }
    } catch (const std::exception& e) {
        std::cerr << "acceptance: " << e.what() << '\n';
        return 2;
    }
    std::cout << report.text();
    return report.passed() ? 0 : 1;
}

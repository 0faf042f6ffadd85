#include "cascade/models/constants.hpp"

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace cascade {

using nlohmann::json;

namespace {

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

const json& field(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key)) throw std::runtime_error("constants file: missing '" + std::string(key) + "' in " + where);
    return j.at(key);
}

} // namespace

const ManifoldConstants& AtomConstants::manifold(const std::string& label) const {
    for (const auto& m : manifolds)
        if (m.label == label) return m;
    throw std::out_of_range("constants: no manifold '" + label + "'");
}

double AtomConstants::linewidth_mhz(const std::string& key) const {
    auto it = linewidths_mhz.find(key);
    if (it == linewidths_mhz.end()) throw std::out_of_range("constants: no linewidth '" + key + "'");
    return it->second.value;
}

std::string default_constants_path() {
    if (const char* env = std::getenv("CASCADE_CONSTANTS"); env && *env) return env;
    return CASCADE_DEFAULT_CONSTANTS;
}

AtomConstants load_constants(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open constants file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error("constants file '" + path + "' is not valid JSON: " + e.what());
    }

    AtomConstants c;
    c.path = path;
    c.digest = fnv1a_hex(text);
    c.name = field(j, "name", "root").get<std::string>();
    c.version = field(j, "version", "root").get<std::string>();
    const auto& ns = field(j, "nuclear_spin", "root");
    c.nuclear_spin = HalfInteger::parse(field(ns, "value", "nuclear_spin").get<std::string>());
    c.nuclear_spin_source = field(ns, "source", "nuclear_spin").get<std::string>();
    for (const auto& m : field(j, "manifolds", "root")) {
        ManifoldConstants mc;
        mc.label = field(m, "label", "manifold").get<std::string>();
        mc.J = HalfInteger::parse(field(m, "J", mc.label).get<std::string>());
        mc.centroid_mhz = field(m, "centroid_MHz", mc.label).get<double>();
        mc.a_mhz = field(m, "A_MHz", mc.label).get<double>();
        mc.b_mhz = m.value("B_MHz", 0.0);
        mc.source = field(m, "source", mc.label).get<std::string>();
        c.manifolds.push_back(std::move(mc));
    }
    for (const auto& [key, v] : field(j, "linewidths_MHz", "root").items())
        c.linewidths_mhz[key] = {field(v, "value", key).get<double>(), field(v, "source", key).get<std::string>()};
    return c;
}

AtomConstants load_default_constants() { return load_constants(default_constants_path()); }

double hyperfine_shift(double a_mhz, double b_mhz, HalfInteger I, HalfInteger J, HalfInteger F) {
    const double i = I.value(), jj = J.value(), f = F.value();
    const double K = f * (f + 1) - i * (i + 1) - jj * (jj + 1);
    double e = 0.5 * a_mhz * K;
    if (b_mhz != 0.0 && I.twice() > 1 && J.twice() > 1)
        e += b_mhz * (1.5 * K * (K + 1) - 2.0 * i * (i + 1) * jj * (jj + 1)) /
             (2.0 * i * (2 * i - 1) * 2.0 * jj * (2 * jj - 1));
    return e;
}

LevelScheme make_level_scheme(const AtomConstants& c) {
    const double two_pi = 2.0 * std::numbers::pi;
    std::vector<Manifold> ms;
    for (const auto& mc : c.manifolds) {
        Manifold m;
        m.label = mc.label;
        m.J = mc.J;
        const int lo = std::abs(mc.J.twice() - c.nuclear_spin.twice()), hi = mc.J.twice() + c.nuclear_spin.twice();
        for (int tf = lo; tf <= hi; tf += 2) {
            const HalfInteger F = HalfInteger::from_twice(tf);
            m.levels.push_back({F, two_pi * (mc.centroid_mhz + hyperfine_shift(mc.a_mhz, mc.b_mhz, c.nuclear_spin, mc.J, F))});
        }
        ms.push_back(std::move(m));
    }
    return LevelScheme(c.nuclear_spin, std::move(ms));
}

std::vector<std::string> verify_constants(const AtomConstants& c) {
    std::vector<std::string> problems;
    if (c.version.empty()) problems.push_back("missing version");
    if (c.nuclear_spin.twice() <= 0) problems.push_back("nuclear spin must be positive");
    if (c.nuclear_spin_source.empty()) problems.push_back("nuclear spin has no source");
    for (const char* label : {"6S1/2", "6P1/2", "6P3/2", "7S1/2"}) {
        bool found = false;
        for (const auto& m : c.manifolds)
            if (m.label == label) found = true;
        if (!found) problems.push_back(std::string("missing manifold ") + label);
    }
    for (const auto& m : c.manifolds) {
        if (m.source.empty()) problems.push_back("manifold " + m.label + " has no source");
        if (m.J.twice() <= 0) problems.push_back("manifold " + m.label + " has non-positive J");
    }
    for (const char* key : {"gamma_p", "gamma_c", "gamma_S", "gamma_t", "gamma_7S_total"}) {
        auto it = c.linewidths_mhz.find(key);
        if (it == c.linewidths_mhz.end()) {
            problems.push_back(std::string("missing linewidth ") + key);
            continue;
        }
        if (!(it->second.value > 0.0)) problems.push_back(std::string("non-positive linewidth ") + key);
        if (it->second.source.empty()) problems.push_back(std::string("linewidth ") + key + " has no source");
    }
    if (problems.empty()) {
        const double total = c.linewidth_mhz("gamma_7S_total");
        const double sum = c.linewidth_mhz("gamma_S") + c.linewidth_mhz("gamma_t");
        if (std::abs(sum - total) > 1e-6 * total)
            problems.push_back("gamma_S + gamma_t does not equal the 7S1/2 total linewidth");
        try {
            const LevelScheme s = make_level_scheme(c);
            for (const auto& m : s.manifolds())
                for (std::size_t k = 1; k < m.levels.size(); ++k)
                    if (!(m.levels[k].energy > m.levels[k - 1].energy))
                        problems.push_back("hyperfine levels of " + m.label + " are not ordered by F");
            const double ground = s.manifold(s.manifold_index("6S1/2")).levels.back().energy;
            for (const char* label : {"6P1/2", "6P3/2", "7S1/2"})
                if (!(s.manifold(s.manifold_index(label)).levels.front().energy > ground))
                    problems.push_back(std::string(label) + " lies below the ground manifold");
        } catch (const std::exception& e) {
            problems.push_back(std::string("level scheme: ") + e.what());
        }
    }
    return problems;
}

} // namespace cascade

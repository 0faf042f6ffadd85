#include "cascade/models/cesium.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "cascade/angular/dipole.hpp"

namespace cascade {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

HalfInteger F_(int f) { return HalfInteger::from_int(f); }

double energy(const LevelScheme& s, const char* manifold, int F) {
    return s.level(s.manifold_index(manifold), F_(F)).energy;
}

} // namespace

double DetuningTable::at(int manifold, HalfInteger F) const {
    auto it = values_.find({manifold, F.twice()});
    if (it == values_.end())
        throw std::out_of_range("no detuning for manifold " + std::to_string(manifold) + ", F = " + F.str());
    return it->second;
}

double DetuningTable::at(const LevelScheme& s, const std::string& manifold, int F) const {
    return at(s.manifold_index(manifold), F_(F));
}

ResonancePreset parse_resonance_preset(const std::string& name) {
    if (name == "standard") return ResonancePreset::Standard;
    if (name == "custom") return ResonancePreset::Custom;
    throw std::invalid_argument("unknown resonance preset '" + name + "' (standard | custom)");
}

FieldFrequencies standard_frequencies(const LevelScheme& s) {
    const double ref = energy(s, kGround, 4);
    FieldFrequencies f;
    f.pump = energy(s, kPumpUpper, 4) - energy(s, kGround, 3);
    f.stokes = energy(s, kTop, 4) - ref - f.pump;
    f.control = energy(s, kControlUpper, 5) - ref;
    return f;
}

DetuningTable cesium_detunings(const LevelScheme& s, std::optional<double> pump, std::optional<double> stokes,
                               ResonancePreset preset, std::optional<double> control) {
    FieldFrequencies f;
    if (preset == ResonancePreset::Standard) {
        f = standard_frequencies(s);
        const double tol = kTwoPi * 1e-3;  // 1 kHz
        auto check = [&](const std::optional<double>& given, double expected, const char* name) {
            if (given && std::abs(*given - expected) > tol) {
                std::ostringstream os;
                os << "standard resonance preset inconsistent with provided " << name << " frequency (" << *given
                   << " vs " << expected << " rad/us)";
                throw std::invalid_argument(os.str());
            }
        };
        check(pump, f.pump, "pump");
        check(stokes, f.stokes, "Stokes");
        check(control, f.control, "control");
    } else {
        if (!pump || !stokes || !control)
            throw std::invalid_argument("custom resonance preset needs pump, Stokes and control frequencies");
        f = {*pump, *stokes, *control};
    }
    const double ref = energy(s, kGround, 4);
    DetuningTable t;
    for (int k = 0; k < static_cast<int>(s.manifolds().size()); ++k) {
        const auto& m = s.manifold(k);
        double shift = 0.0;
        if (m.label == kPumpUpper) shift = f.pump;
        else if (m.label == kControlUpper) shift = f.control;
        else if (m.label == kTop) shift = f.pump + f.stokes;
        else if (m.label != kGround) throw std::invalid_argument("no frame assignment for manifold '" + m.label + "'");
        for (const auto& lv : m.levels) t.set(k, lv.F, lv.energy - ref - shift);
    }
    return t;
}

std::vector<std::string> CesiumParams::validate() const {
    if (!scheme) throw std::invalid_argument("cesium parameters need a level scheme");
    for (const char* m : {kGround, kPumpUpper, kControlUpper, kTop}) scheme->manifold_index(m);
    for (double v : {gamma_p, gamma_s, gamma_t, gamma_c, kappa_t, kappa_c})
        if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("cesium rates must be finite and non-negative");
    if (polarization < -1 || polarization > 1) throw std::invalid_argument("polarization must be -1, 0 or +1");
    if (telecom_cavity && n_t < 2) throw std::invalid_argument("telecom truncation n_t must be >= 2");
    if (control_cavity && n_c < 2) throw std::invalid_argument("control truncation n_c must be >= 2");
    if (gamma_top_total > 0.0 && std::abs(gamma_s + gamma_t - gamma_top_total) > 1e-6 * gamma_top_total)
        throw std::invalid_argument("gamma_S + gamma_t must equal the 7S1/2 total linewidth");
    for (int k = 0; k < static_cast<int>(scheme->manifolds().size()); ++k)
        for (const auto& lv : scheme->manifold(k).levels)
            if (!detunings.has(k, lv.F))
                throw std::invalid_argument("missing detuning for " + scheme->manifold(k).label + " F=" + lv.F.str());
    std::vector<std::string> warnings;
    if (preset == ResonancePreset::Standard) {
        const double d1 = detunings.at(*scheme, kPumpUpper, 4);
        const double wg = energy(*scheme, kGround, 4) - energy(*scheme, kGround, 3);
        if (std::abs(d1 + wg) > 1e-6 * wg || std::abs(detunings.at(*scheme, kTop, 4)) > 1e-6 * wg ||
            std::abs(detunings.at(*scheme, kControlUpper, 5)) > 1e-6 * wg)
            throw std::invalid_argument("detunings do not satisfy the standard resonance conditions");
    }
    return warnings;
}

CesiumParams cesium_defaults(const AtomConstants& c) {
    CesiumParams p;
    p.scheme = std::make_shared<const LevelScheme>(make_level_scheme(c));
    p.gamma_p = kTwoPi * c.linewidth_mhz("gamma_p");
    p.gamma_s = kTwoPi * c.linewidth_mhz("gamma_S");
    p.gamma_t = kTwoPi * c.linewidth_mhz("gamma_t");
    p.gamma_c = kTwoPi * c.linewidth_mhz("gamma_c");
    p.gamma_top_total = kTwoPi * c.linewidth_mhz("gamma_7S_total");
    p.rabi_p = p.rabi_s = kTwoPi * 1450.0;
    p.fields = standard_frequencies(*p.scheme);
    p.preset = ResonancePreset::Standard;
    p.detunings = cesium_detunings(*p.scheme, std::nullopt, std::nullopt, ResonancePreset::Standard);
    p.g_t = p.g_c = 1.5 * 4.0 * (p.gamma_s + p.gamma_t);
    p.kappa_t = p.kappa_c = 8.0 * (p.gamma_s + p.gamma_t);
    return p;
}

Operator cesium_dipole(const LevelScheme& s, char transition, int q) {
    switch (transition) {
    case 'p': return dipole_operator(s, kGround, kPumpUpper, q);
    case 'S': return dipole_operator(s, kPumpUpper, kTop, q);
    case 't': return dipole_operator(s, kControlUpper, kTop, q);
    case 'c': return dipole_operator(s, kGround, kControlUpper, q);
    default: throw std::invalid_argument(std::string("unknown transition '") + transition + "'");
    }
}

ModelSystem build_cesium(const CesiumParams& p) {
    std::vector<std::string> warnings = p.validate();
    const LevelScheme& s = *p.scheme;
    const int na = s.dim();
    const SpacePtr space = model_space(Factor{"atom", na, s.charges()}, p.telecom_cavity, p.n_t, p.control_cavity, p.n_c);
    ModelSystem m{space, Operator::zero(space), {}, std::nullopt, std::nullopt, 0.0, 0.0, std::move(warnings)};

    std::vector<Triplet> diag;
    for (int i = 0; i < na; ++i) {
        const auto& st = s.state(i);
        diag.emplace_back(i, i, p.detunings.at(st.manifold, st.F));
    }
    SparseMatrix local(na, na);
    local.setFromTriplets(diag.begin(), diag.end());
    const int q = p.polarization;
    const SparseMatrix Dp = cesium_dipole(s, 'p', q).matrix();
    const SparseMatrix Ds = cesium_dipole(s, 'S', q).matrix();
    local += 0.5 * p.rabi_p * SparseMatrix(Dp + SparseMatrix(Dp.adjoint()));
    local += 0.5 * p.rabi_s * SparseMatrix(Ds + SparseMatrix(Ds.adjoint()));
    Operator H = m.lift_atom(local, true);

    if (p.telecom_cavity) {
        const Operator t = embed(space, "telecom", destroy(p.n_t).matrix());
        const Operator dt = m.lift_atom(cesium_dipole(s, 't', q).matrix());
        H += p.g_t * (dt * t.adjoint() + t * dt.adjoint());
        m.telecom = t;
        m.kappa_t = p.kappa_t;
        m.collapses.push_back({t, 2.0 * p.kappa_t, "telecom"});
    }
    if (p.control_cavity) {
        const Operator c = embed(space, "control", destroy(p.n_c).matrix());
        const Operator dc = m.lift_atom(cesium_dipole(s, 'c', q).matrix());
        H += p.g_c * (dc * c.adjoint() + c * dc.adjoint());
        m.control = c;
        m.kappa_c = p.kappa_c;
        m.collapses.push_back({c, 2.0 * p.kappa_c, "control"});
    }
    m.H = Operator(space, H.matrix(), true);

    const std::pair<char, double> channels[] = {{'p', p.gamma_p}, {'S', p.gamma_s}, {'t', p.gamma_t}, {'c', p.gamma_c}};
    for (const auto& [name, rate] : channels)
        for (int qq = -1; qq <= 1; ++qq)
            m.collapses.push_back({m.lift_atom(cesium_dipole(s, name, qq).matrix()), rate,
                                   std::string("D_") + name + "," + std::to_string(qq)});
    return m;
}

double interference_margin(const CesiumParams& p) {
    const LevelScheme& s = *p.scheme;
    const double wg = energy(s, kGround, 4) - energy(s, kGround, 3);
    const double wd1 = energy(s, kPumpUpper, 4) - energy(s, kPumpUpper, 3);
    if (!(wg > 0.0) || !(wd1 >= 0.0)) throw std::domain_error("interference margin needs positive splittings");
    return p.rabi_p * p.rabi_s * (1.0 / wg - 1.0 / (wg + wd1)) / (p.gamma_s + p.gamma_t);
}

double cesium_telecom_emission(const ModelSystem& m, const DensityMatrix& rho, const CesiumParams& p) {
    double total = 0.0;
    for (int q = -1; q <= 1; ++q) {
        const Operator d = m.lift_atom(cesium_dipole(*p.scheme, 't', q).matrix());
        total += expect(d.adjoint() * d, rho).real();
    }
    return p.gamma_t * total;
}

TargetReport target_populations(const DensityMatrix& rho, const LevelScheme& s) {
    const HilbertSpace& space = rho.space();
    const std::size_t ai = space.factor_index("atom");
    if (space.factor(ai).dim != s.dim()) throw DimensionError("state does not carry the cesium atom factor");
    std::vector<double> atom(s.dim(), 0.0);
    for (int i = 0; i < space.dim(); ++i) atom[space.unflatten(i)[ai]] += rho.population(i);

    const std::map<std::string, int> target{{kPumpUpper, 4}, {kControlUpper, 5}, {kTop, 4}};
    TargetReport r;
    for (int k = 0; k < static_cast<int>(s.manifolds().size()); ++k) {
        ManifoldPopulation mp;
        mp.manifold = s.manifold(k).label;
        for (int i = 0; i < s.dim(); ++i) {
            const auto& st = s.state(i);
            if (st.manifold != k) continue;
            mp.total += atom[i];
            mp.by_F[st.F.twice()] += atom[i];
            auto it = target.find(mp.manifold);
            // Both ground levels are targeted (g1 and g2).
            const bool targeted = it == target.end() || st.F == F_(it->second);
            (targeted ? mp.targeted : mp.stray) += atom[i];
        }
        r.targeted_fraction += mp.targeted;
        r.manifolds.push_back(std::move(mp));
    }
    auto level = [&](const char* manifold, int F) {
        const int k = s.manifold_index(manifold);
        for (const auto& mp : r.manifolds)
            if (mp.manifold == s.manifold(k).label) {
                auto it = mp.by_F.find(2 * F);
                return it == mp.by_F.end() ? 0.0 : it->second;
            }
        return 0.0;
    };
    r.levels = {{"g1", level(kGround, 3)}, {"g2", level(kGround, 4)}, {"e1", level(kPumpUpper, 4)},
                {"e2", level(kControlUpper, 5)}, {"f", level(kTop, 4)}};
    return r;
}

} // namespace cascade

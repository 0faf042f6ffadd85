#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cascade/angular/dipole.hpp"
#include "cascade/models/cesium.hpp"
#include "cascade/models/constants.hpp"
#include "cascade/models/diamond.hpp"
#include "cascade/solvers/steady_state.hpp"

using namespace cascade;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double hermitian_defect(const Operator& H) { return H.hermitian_defect(); }

const AtomConstants& constants() {
    static const AtomConstants c = load_default_constants();
    return c;
}

} // namespace

TEST_CASE("effective two-photon rate inversion") {
    // Drive enters as Omega/2, so the off-resonant rate is Omega^2 / (4 Delta_S).
    const double om = rabi_for_effective_rate(4.0, DriveMode::OffResonant, 1000.0);
    CHECK(om == doctest::Approx(2.0 * std::sqrt(4000.0)));
    const double res = rabi_for_effective_rate(4.0, DriveMode::Resonant, 0.0);
    CHECK(res == doctest::Approx(std::sqrt(32.0)));

    DiamondParams p;
    p.omega_p = p.omega_s = om;
    CHECK(effective_two_photon_rate(p, DriveMode::OffResonant) == doctest::Approx(4.0));
    p.omega_p = p.omega_s = res;
    CHECK(effective_two_photon_rate(p, DriveMode::Resonant) == doctest::Approx(4.0));
    p.omega_p = 0.0;
    CHECK(effective_two_photon_rate(p, DriveMode::OffResonant) == 0.0);
    p.delta_s = 0.0;
    CHECK_THROWS(effective_two_photon_rate(p, DriveMode::OffResonant));
}

TEST_CASE("diamond builder structure") {
    DiamondParams p;
    p.omega_p = p.omega_s = 50.0;
    p.g_t = p.g_c = 1.0;
    p.kappa_t = p.kappa_c = 0.5;
    const ModelSystem m = build_diamond(p);
    CHECK(m.space->dim() == 5 * 3 * 3);
    CHECK(hermitian_defect(m.H) <= 1e-12);
    CHECK(m.collapses.size() == 6);
    CHECK(m.telecom.has_value());
    CHECK(m.control.has_value());
    CHECK(p.gamma_p() == p.gamma_s());
    CHECK(2 * p.gamma_t() == p.gamma_c());

    p.control_cavity = false;
    const ModelSystem t = build_diamond(p);
    CHECK(t.space->dim() == 15);
    CHECK(t.collapses.size() == 5);
    CHECK_FALSE(t.control.has_value());

    DiamondParams bad;
    bad.kappa_t = -1.0;
    CHECK_THROWS_AS(build_diamond(bad), std::invalid_argument);
    DiamondParams warn;
    warn.omega_p = 500.0;
    CHECK_FALSE(warn.validate().empty());
}

TEST_CASE("undriven diamond keeps ground states and vacuum stationary") {
    DiamondParams p;
    p.g_t = p.g_c = 1.0;
    p.kappa_t = p.kappa_c = 0.5;
    const ModelSystem m = build_diamond(p);
    const Liouvillian L = build_liouvillian(m.H, m.collapses);
    for (int level : {kG1, kG2}) {
        const Operator proj = m.atom_projector(level);
        DenseMatrix rho = DenseMatrix::Zero(m.space->dim(), m.space->dim());
        const int i = m.space->flatten({level, 0, 0});
        rho(i, i) = 1.0;
        CHECK(L.apply(rho).cwiseAbs().maxCoeff() < 1e-14);
        CHECK(expect(proj, DensityMatrix(m.space, rho)).real() == doctest::Approx(1.0));
    }
    CHECK_THROWS_AS(steady_state(L), NonUniqueSteadyState);
}

TEST_CASE("resonant two-photon drive confines population to g2") {
    DiamondParams p;
    p.delta_p = -p.omega_g;
    p.delta_s = 0.0;
    p.omega_p = p.omega_s = rabi_for_effective_rate(4.0, DriveMode::Resonant, 0.0);
    p.telecom_cavity = p.control_cavity = false;
    const ModelSystem m = build_diamond(p);
    const SteadyStateResult r = steady_state(build_liouvillian(m.H, m.collapses));
    CHECK(r.rho_ss.population(kG2) > 0.99);
}

TEST_CASE("off-resonant drive spreads population over all levels") {
    DiamondParams p;
    p.omega_p = p.omega_s = rabi_for_effective_rate(4.0, DriveMode::OffResonant, p.delta_s);
    p.telecom_cavity = p.control_cavity = false;
    const ModelSystem m = build_diamond(p);
    const SteadyStateResult r = steady_state(build_liouvillian(m.H, m.collapses));
    for (int k = 0; k < 5; ++k) CHECK(r.rho_ss.population(k) > 1e-4);
    CHECK(diamond_telecom_emission(m, r.rho_ss, p) == doctest::Approx(p.gamma_t() * r.rho_ss.population(kF)));
}

TEST_CASE("constants file") {
    const AtomConstants& c = constants();
    CHECK(c.name == "cesium-133");
    CHECK(c.nuclear_spin.twice() == 7);
    CHECK(verify_constants(c).empty());
    CHECK(c.digest.size() == 16);
    CHECK(c.linewidth_mhz("gamma_p") == doctest::Approx(4.575));
    CHECK(c.linewidth_mhz("gamma_c") == doctest::Approx(5.234));
    CHECK(c.linewidth_mhz("gamma_S") + c.linewidth_mhz("gamma_t") ==
          doctest::Approx(c.linewidth_mhz("gamma_7S_total")).epsilon(1e-6));
    // Ground hyperfine splitting 4A
    const LevelScheme s = make_level_scheme(c);
    const double wg = s.level(s.manifold_index(kGround), HalfInteger::from_int(4)).energy -
                      s.level(s.manifold_index(kGround), HalfInteger::from_int(3)).energy;
    CHECK(wg / kTwoPi == doctest::Approx(9192.631770).epsilon(1e-9));
    CHECK_THROWS(load_constants("/nonexistent/constants.json"));
}

TEST_CASE("hyperfine shifts") {
    // Interval rule: E(F) - E(F-1) = A F for B = 0
    const HalfInteger I = HalfInteger::from_twice(7), J = HalfInteger::from_twice(1);
    CHECK(hyperfine_shift(100.0, 0.0, I, J, HalfInteger::from_int(4)) -
              hyperfine_shift(100.0, 0.0, I, J, HalfInteger::from_int(3)) ==
          doctest::Approx(400.0));
}

TEST_CASE("standard cesium detunings") {
    const LevelScheme s = make_level_scheme(constants());
    const DetuningTable d = cesium_detunings(s, std::nullopt, std::nullopt, ResonancePreset::Standard);
    const double wg = s.level(s.manifold_index(kGround), HalfInteger::from_int(4)).energy -
                      s.level(s.manifold_index(kGround), HalfInteger::from_int(3)).energy;
    const double wd1 = s.level(s.manifold_index(kPumpUpper), HalfInteger::from_int(4)).energy -
                       s.level(s.manifold_index(kPumpUpper), HalfInteger::from_int(3)).energy;
    CHECK(d.at(s, kPumpUpper, 4) == doctest::Approx(-wg).epsilon(1e-9));
    CHECK(std::abs(d.at(s, kTop, 4)) < 1e-6);
    CHECK(std::abs(d.at(s, kControlUpper, 5)) < 1e-6);
    CHECK(d.at(s, kPumpUpper, 3) == doctest::Approx(d.at(s, kPumpUpper, 4) - wd1).epsilon(1e-9));
    CHECK(d.at(s, kGround, 3) == doctest::Approx(-wg).epsilon(1e-12));

    const FieldFrequencies f = standard_frequencies(s);
    CHECK_THROWS(cesium_detunings(s, f.pump + kTwoPi * 1.0, std::nullopt, ResonancePreset::Standard));
    CHECK_NOTHROW(cesium_detunings(s, f.pump, f.stokes, ResonancePreset::Standard));
    CHECK_THROWS(cesium_detunings(s, std::nullopt, std::nullopt, ResonancePreset::Custom));
}

TEST_CASE("cesium parameters and builder") {
    CesiumParams p = cesium_defaults(constants());
    CHECK(p.gamma_s + p.gamma_t == doctest::Approx(p.gamma_top_total).epsilon(1e-6));
    CHECK(p.rabi_p / kTwoPi == doctest::Approx(1450.0));
    CHECK(p.kappa_t / kTwoPi == doctest::Approx(8 * 3.296).epsilon(1e-3));
    CHECK(p.g_t / kTwoPi == doctest::Approx(1.5 * 4 * 3.296).epsilon(1e-3));
    CHECK(p.validate().empty());

    p.n_t = p.n_c = 2;
    const ModelSystem m = build_cesium(p);
    CHECK(m.space->dim() == 80 * 2 * 2);
    CHECK(m.collapses.size() == 14);
    CHECK(hermitian_defect(m.H) <= 1e-12 * m.H.dense().cwiseAbs().maxCoeff());

    // The strongest telecom-cavity coupling element is g_t times the largest coefficient.
    const DenseMatrix Dt = cesium_dipole(*p.scheme, 't', 0).dense();
    const double largest = Dt.cwiseAbs().maxCoeff();
    const Operator t = *m.telecom;
    const Operator coupling = p.g_t * (m.lift_atom(cesium_dipole(*p.scheme, 't', 0).matrix()) * t.adjoint());
    CHECK(coupling.dense().cwiseAbs().maxCoeff() == doctest::Approx(p.g_t * largest));
}

TEST_CASE("interference margin") {
    CesiumParams p = cesium_defaults(constants());
    const double margin = interference_margin(p);
    CHECK(margin == doctest::Approx(7.8210).epsilon(1e-4));
    p.rabi_p = 0.0;
    CHECK(interference_margin(p) == 0.0);
}

TEST_CASE("undriven cesium atom has no unique steady state") {
    CesiumParams p = cesium_defaults(constants());
    p.rabi_p = p.rabi_s = 0.0;
    p.telecom_cavity = p.control_cavity = false;
    const ModelSystem m = build_cesium(p);
    CHECK_THROWS_AS(steady_state(build_liouvillian(m.H, m.collapses)), NonUniqueSteadyState);
}

TEST_CASE("targeted populations") {
    const LevelScheme s = make_level_scheme(constants());
    const SpacePtr space = atom_space(s);
    const TargetReport r = target_populations(DensityMatrix::basis(space, s.index(kGround, 4, 0)), s);
    CHECK(r.levels.at("g2") == 1.0);
    CHECK(r.levels.at("g1") == 0.0);
    CHECK(r.levels.at("f") == 0.0);
    CHECK(r.targeted_fraction == 1.0);
    const TargetReport stray = target_populations(DensityMatrix::basis(space, s.index(kTop, 3, 1)), s);
    CHECK(stray.targeted_fraction == 0.0);
}

TEST_CASE("free cesium atom keeps most population in targeted levels") {
    CesiumParams p = cesium_defaults(constants());
    p.telecom_cavity = p.control_cavity = false;
    const ModelSystem m = build_cesium(p);
    const SteadyStateResult r = steady_state(build_liouvillian(m.H, m.collapses));
    CHECK(r.kernel_ok());
    CHECK(r.rho_ss.check().ok());
    const TargetReport t = target_populations(r.rho_ss, *p.scheme);
    CHECK(t.targeted_fraction > 0.85);
    CHECK(cesium_telecom_emission(m, r.rho_ss, p) > 0.0);
}

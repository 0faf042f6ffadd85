#include <doctest.h>

#include <cmath>

#include "cascade/correl/cauchy_schwarz.hpp"
#include "cascade/correl/correlation.hpp"
#include "cascade/correl/flux.hpp"
#include "cascade/models/diamond.hpp"
#include "cascade/scenarios/oracles.hpp"
#include "cascade/solvers/steady_state.hpp"
#include "helpers.hpp"

using namespace cascade;

namespace {

DiamondParams diamond(double g, double kappa, int n, bool control) {
    DiamondParams p;
    p.omega_p = p.omega_s = rabi_for_effective_rate(4.0, DriveMode::OffResonant, p.delta_s);
    p.g_t = p.g_c = g;
    p.kappa_t = p.kappa_c = kappa;
    p.n_t = p.n_c = n;
    p.control_cavity = control;
    return p;
}

struct Solved {
    ModelSystem m;
    Liouvillian L;
    DensityMatrix rho;
};

Solved solve(const ModelSystem& m) {
    Liouvillian L = build_liouvillian(m.H, m.collapses);
    DensityMatrix rho = steady_state(L).rho_ss;
    return {m, std::move(L), std::move(rho)};
}

// Coherently driven empty cavities, one per label.
Solved driven_modes(int n, std::vector<double> drives) {
    std::vector<Factor> f;
    for (std::size_t k = 0; k < drives.size(); ++k) f.push_back({"m" + std::to_string(k), n, {}});
    const SpacePtr s = HilbertSpace::make(f);
    Operator H = Operator::zero(s);
    std::vector<CollapseTerm> c;
    ModelSystem m{s, H, {}, {}, {}, 1.0, 1.0, {}};
    for (std::size_t k = 0; k < drives.size(); ++k) {
        const Operator a = embed(s, "m" + std::to_string(k), destroy(n).matrix());
        H += drives[k] * (a + a.adjoint());
        c.push_back({a, 2.0, "kappa"});
        (k == 0 ? m.telecom : m.control) = a;
    }
    m.H = H;
    m.collapses = c;
    return solve(m);
}

} // namespace

TEST_CASE("single-cavity output fluxes") {
    const DiamondParams a = diamond(1.0, 0.5, 4, false);
    const Solved sa = solve(build_diamond(a));
    CHECK(flux(sa.rho, *sa.m.telecom, a.kappa_t) == doctest::Approx(0.086).epsilon(0.03));

    const DiamondParams b = diamond(4.0, 8.0, 3, false);
    const Solved sb = solve(build_diamond(b));
    CHECK(flux(sb.rho, *sb.m.telecom, b.kappa_t) == doctest::Approx(0.366).epsilon(0.03));

    const DiamondParams z = diamond(0.0, 0.5, 3, false);
    const Solved sz = solve(build_diamond(z));
    CHECK(std::abs(flux(sz.rho, *sz.m.telecom, z.kappa_t)) < 1e-12);
}

TEST_CASE("cooperativity") {
    CHECK(cooperativity(2.0, 2.0, 0.5) == doctest::Approx(8.0));
    CHECK(cooperativity(1.0, 0.5, 0.5) == doctest::Approx(8.0));
    CHECK(cooperativity(4.0, 8.0, 0.5) == doctest::Approx(8.0));
    CHECK(cooperativity(0.0, 1.0, 0.5) == 0.0);
    CHECK_THROWS(cooperativity(1.0, 0.0, 0.5));
}

TEST_CASE("coherent fields are uncorrelated") {
    const Solved s = driven_modes(8, {0.3, 0.2});
    const std::vector<double> taus = uniform_grid(5.0, 11);
    const CorrelationSeries ga = g2_auto(s.L, s.rho, *s.m.telecom, taus);
    const CorrelationSeries gx = g2_cross(s.L, s.rho, *s.m.telecom, *s.m.control, taus);
    for (double v : ga.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-6));
    for (double v : gx.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-6));
    const CauchySchwarzReport r = cauchy_schwarz(ga, ga, gx);
    CHECK_FALSE(r.one_mode_t.violated);
    CHECK_FALSE(r.two_mode.violated);
    CHECK_FALSE(r.time_two_mode.violated);
}

TEST_CASE("correlations need a populated mode") {
    const Operator a = destroy(3);
    const Liouvillian L = build_liouvillian(Operator::zero(a.space_ptr()), {{a, 1.0, "kappa"}});
    const DensityMatrix vac = DensityMatrix::basis(a.space_ptr(), 0);
    CHECK_THROWS_AS(g2_auto(L, vac, a, {0.0, 1.0}), UndefinedCorrelation);
    CHECK_THROWS_AS(g2_static(vac, a), UndefinedCorrelation);
}

TEST_CASE("regression at zero delay equals the static moment") {
    const Solved s = solve(build_diamond(diamond(4.0, 8.0, 3, true)));
    const std::vector<double> taus{0.0, 0.5};
    const CorrelationSeries t = g2_auto(s.L, s.rho, *s.m.telecom, taus);
    const CorrelationSeries x = g2_cross(s.L, s.rho, *s.m.telecom, *s.m.control, taus);
    CHECK(t.at_zero() == doctest::Approx(g2_static(s.rho, *s.m.telecom)).epsilon(1e-6));
    CHECK(x.at_zero() == doctest::Approx(g2_cross_static(s.rho, *s.m.telecom, *s.m.control)).epsilon(1e-6));
}

TEST_CASE("two-cavity coincidence values") {
    SUBCASE("g = gamma, kappa = gamma/2") {
        const Solved s = solve(build_diamond(diamond(1.0, 0.5, 6, true)));
        const double t = g2_static(s.rho, *s.m.telecom), c = g2_static(s.rho, *s.m.control);
        const double x = g2_cross_static(s.rho, *s.m.telecom, *s.m.control);
        CHECK(std::abs(t - 1.75) <= 0.05);
        CHECK(std::abs(c - 1.86) <= 0.05);
        CHECK(std::abs(x - 3.31) <= 0.08);
        const CauchySchwarzReport r = cauchy_schwarz(t, c, x);
        CHECK_FALSE(r.one_mode_t.violated);
        CHECK_FALSE(r.one_mode_c.violated);
        CHECK(r.two_mode.violated);
    }
    SUBCASE("g = 4 gamma, kappa = 8 gamma") {
        const Solved s = solve(build_diamond(diamond(4.0, 8.0, 3, true)));
        const double t = g2_static(s.rho, *s.m.telecom), c = g2_static(s.rho, *s.m.control);
        const double x = g2_cross_static(s.rho, *s.m.telecom, *s.m.control);
        CHECK(std::abs(t - 0.083) <= 0.005);
        CHECK(std::abs(c - 0.091) <= 0.005);
        CHECK(std::abs(x - 1.84) <= 0.05);
        const CauchySchwarzReport r = cauchy_schwarz(t, c, x);
        CHECK(r.one_mode_t.violated);
        CHECK(r.one_mode_c.violated);
        CHECK(r.two_mode.violated);
    }
}

TEST_CASE("Cauchy-Schwarz bound arithmetic") {
    const CauchySchwarzReport a = cauchy_schwarz(1.75, 1.86, 3.31);
    CHECK(a.coincidence_bound == doctest::Approx(std::sqrt(1.75 * 1.86)));
    CHECK(a.two_mode.violated);
    CHECK(a.two_mode.margin == doctest::Approx(3.31 - std::sqrt(1.75 * 1.86)));
    const CauchySchwarzReport b = cauchy_schwarz(0.097, 0.110, 1.714);
    CHECK(b.coincidence_bound == doctest::Approx(0.1033).epsilon(1e-3));
    CHECK(b.two_mode.violated);
    CHECK(b.one_mode_t.violated);
    const CauchySchwarzReport c = cauchy_schwarz(1.0, 1.0, 1.0);
    CHECK_FALSE(c.one_mode_t.violated);
    CHECK_FALSE(c.two_mode.violated);
}

TEST_CASE("regression series match a dense propagator") {
    DiamondParams p = diamond(2.0, 2.0, 2, true);
    p.omega_g = 50.0;
    p.delta_p = -50.0;
    p.delta_s = 50.0;
    p.omega_p = p.omega_s = rabi_for_effective_rate(4.0, DriveMode::OffResonant, p.delta_s);
    const Solved s = solve(build_diamond(p));
    CHECK(s.m.space->dim() == 20);
    const std::vector<double> taus = uniform_grid(3.0, 13);
    PropagatorOptions o;
    o.tolerance = 1e-11;
    const Propagator P(s.L, taus.back(), o);
    const DenseModel dm = dense_model(s.m);
    const CorrelationSeries t = g2_auto(P, s.L, s.rho, *s.m.telecom, taus);
    const CorrelationSeries x = g2_cross(P, s.L, s.rho, *s.m.telecom, *s.m.control, taus);
    const auto rt = dense_g2(dm, s.m.telecom->dense(), s.m.telecom->dense(), taus);
    const auto rx = dense_g2(dm, s.m.telecom->dense(), s.m.control->dense(), taus);
    for (std::size_t k = 0; k < taus.size(); ++k) {
        CHECK(std::abs(t.values[k] - rt[k]) < 1e-8);
        CHECK(std::abs(x.values[k] - rx[k]) < 1e-8);
    }
}

TEST_CASE("two-sided cross series and detection ordering") {
    const Solved s = solve(build_diamond(diamond(4.0, 8.0, 3, true)));
    const std::vector<double> taus = uniform_grid(3.0, 121);
    const Propagator P(s.L, taus.back());
    const CorrelationSeries fwd = g2_cross(P, s.L, s.rho, *s.m.telecom, *s.m.control, taus, "t", "c");
    const CorrelationSeries bwd = g2_cross(P, s.L, s.rho, *s.m.control, *s.m.telecom, taus, "c", "t");
    const CorrelationSeries both = two_sided(fwd, bwd);
    CHECK(both.taus.size() == 2 * taus.size() - 1);
    CHECK(both.taus.front() == doctest::Approx(-3.0));
    CHECK(both.taus.back() == doctest::Approx(3.0));
    // negative delay is the reversed ordering at |tau|
    CHECK(both.values.front() == doctest::Approx(bwd.values.back()));
    CHECK(both.values[taus.size() - 1] == doctest::Approx(fwd.values.front()));
    CHECK(fwd.at_zero() == doctest::Approx(bwd.at_zero()).epsilon(1e-6));

    std::size_t peak = 0;
    for (std::size_t k = 1; k + 1 < taus.size(); ++k)
        if (fwd.values[k] > fwd.values[k - 1] && fwd.values[k] >= fwd.values[k + 1]) {
            peak = k;
            break;
        }
    REQUIRE(peak > 0);
    CHECK(fwd.values[peak] > bwd.values[peak]);
}

TEST_CASE("series settle to one at long delay") {
    const Solved s = solve(build_diamond(diamond(4.0, 8.0, 3, true)));
    const std::vector<double> taus{0.0, 5.0, 10.0, 15.0};
    for (const auto& series : {g2_auto(s.L, s.rho, *s.m.telecom, taus), g2_auto(s.L, s.rho, *s.m.control, taus),
                               g2_cross(s.L, s.rho, *s.m.telecom, *s.m.control, taus)}) {
        CHECK(std::abs(series.tail() - 1.0) < 0.01);
        CHECK(series.negative_excursion == 0.0);
    }
}

#include <doctest.h>

#include <cmath>

#include "cascade/correl/flux.hpp"
#include "cascade/models/diamond.hpp"
#include "cascade/scenarios/oracles.hpp"
#include "cascade/solvers/convergence.hpp"
#include "cascade/solvers/propagator.hpp"
#include "cascade/solvers/steady_state.hpp"
#include "helpers.hpp"

using namespace cascade;
using test::max_abs;

namespace {

Liouvillian two_level(double omega, double gamma) {
    const Operator sm = transition(2, 0, 1, "atom");
    const Operator H = 0.5 * omega * (sm + sm.adjoint());
    return build_liouvillian(H, {{sm, gamma, "gamma"}});
}

DiamondParams free_atom() {
    DiamondParams p;
    p.omega_p = p.omega_s = rabi_for_effective_rate(4.0, DriveMode::OffResonant, p.delta_s);
    p.telecom_cavity = p.control_cavity = false;
    return p;
}

Liouvillian random_liouvillian(int d, std::mt19937_64& rng) {
    const SpacePtr s = HilbertSpace::single("x", d);
    std::vector<CollapseTerm> c;
    for (int k = 0; k < 3; ++k) c.push_back({test::from_dense(s, test::random_dense(d, d, rng)), 0.3 + 0.4 * k, "c"});
    return build_liouvillian(test::from_dense(s, test::random_hermitian(d, rng), true), c);
}

} // namespace

TEST_CASE("damped cavity relaxes to vacuum") {
    const Operator a = destroy(4);
    const Liouvillian L = build_liouvillian(Operator::zero(a.space_ptr()), {{a, 1.0, "kappa"}});
    const SteadyStateResult r = steady_state(L);
    CHECK(max_abs(r.rho_ss.matrix() - DensityMatrix::basis(a.space_ptr(), 0).matrix()) < 1e-12);
    CHECK(r.kernel_ok());
}

TEST_CASE("resonantly driven two-level atom") {
    const SteadyStateResult r = steady_state(two_level(1.0, 1.0));
    CHECK(r.rho_ss.population(1) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    for (double om : {0.3, 2.0, 5.0}) {
        const SteadyStateResult s = steady_state(two_level(om, 1.0));
        CHECK(s.rho_ss.population(1) == doctest::Approx(om * om / (1.0 + 2 * om * om)).epsilon(1e-12));
    }
}

TEST_CASE("free double-diamond atom emits telecom light at 0.11 gamma") {
    const DiamondParams p = free_atom();
    const ModelSystem m = build_diamond(p);
    const SteadyStateResult r = steady_state(build_liouvillian(m.H, m.collapses));
    const double rate = diamond_telecom_emission(m, r.rho_ss, p);
    CHECK(std::abs(rate - 0.11) <= 0.01);
    CHECK(r.kernel_ok());
    CHECK(r.rho_ss.check().ok());
}

TEST_CASE("undriven atom has no unique steady state") {
    DiamondParams p = free_atom();
    p.omega_p = p.omega_s = 0.0;
    const ModelSystem m = build_diamond(p);
    CHECK_THROWS_AS(steady_state(build_liouvillian(m.H, m.collapses)), NonUniqueSteadyState);
}

TEST_CASE("iterative solver agrees with the direct one") {
    DiamondParams p = free_atom();
    p.telecom_cavity = true;
    p.g_t = 1.0;
    p.kappa_t = 0.5;
    const ModelSystem m = build_diamond(p);
    const Liouvillian L = build_liouvillian(m.H, m.collapses);
    SteadyStateOptions it;
    it.method = SteadyMethod::Iterative;
    const SteadyStateResult a = steady_state(L), b = steady_state(L, it);
    CHECK(max_abs(a.rho_ss.matrix() - b.rho_ss.matrix()) < 1e-8);
    CHECK(b.stats.iterations > 0);
}

TEST_CASE("sparse steady state equals the dense null space") {
    std::mt19937_64 rng(21);
    for (int d : {3, 5, 6}) {
        const Liouvillian L = random_liouvillian(d, rng);
        double gap = 0.0;
        const DenseMatrix ref = dense_steady_state(DenseMatrix(L.matrix()), &gap);
        CHECK(gap < 1e-8);
        CHECK(max_abs(steady_state(L).rho_ss.matrix() - ref) < 1e-8);
    }
    DiamondParams p = free_atom();
    p.telecom_cavity = true;
    p.g_t = 2.0;
    p.kappa_t = 2.0;
    p.n_t = 4;
    p.omega_g = 50.0;
    p.delta_p = -50.0;
    p.delta_s = 50.0;
    p.omega_p = p.omega_s = rabi_for_effective_rate(4.0, DriveMode::OffResonant, p.delta_s);
    const ModelSystem m = build_diamond(p);  // dim 20
    const DenseMatrix ref = dense_steady_state(dense_liouvillian(dense_model(m)));
    CHECK(max_abs(steady_state(build_liouvillian(m.H, m.collapses)).rho_ss.matrix() - ref) < 1e-8);
}

TEST_CASE("exponential decay of an excited atom") {
    const Operator sm = transition(2, 0, 1, "atom");
    const Liouvillian L = build_liouvillian(Operator::zero(sm.space_ptr()), {{sm, 1.0, "gamma"}});
    const Vector x0 = L.vec(DensityMatrix::basis(sm.space_ptr(), 1).matrix());
    const Trajectory tr = evolve(L, x0, {0.0, 1.0, 2.0, 3.0});
    for (std::size_t k = 0; k < tr.times.size(); ++k)
        CHECK(std::abs(L.unvec(tr.states[k])(1, 1).real() - std::exp(-tr.times[k])) < 1e-6);
}

TEST_CASE("steady state is a fixed point of the propagator") {
    const Liouvillian L = two_level(2.0, 1.0);
    const SteadyStateResult r = steady_state(L);
    const Vector x = L.vec(r.rho_ss.matrix());
    PropagatorOptions o;
    o.tolerance = 1e-10;
    const Trajectory tr = evolve(L, x, uniform_grid(10.0, 21), o);
    for (const auto& s : tr.states) CHECK((s - x).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("propagator matches dense matrix exponential") {
    std::mt19937_64 rng(22);
    for (int d : {2, 3}) {  // superoperator dims 4 and 9; d = 6 below
        const Liouvillian L = random_liouvillian(d, rng);
        const Vector x0 = L.vec(test::random_state(d, rng));
        PropagatorOptions o;
        o.tolerance = 1e-11;
        const std::vector<double> ts{0.0, 0.1, 0.5, 1.0, 3.0};
        const Trajectory tr = evolve(L, x0, ts, o);
        for (std::size_t k = 0; k < ts.size(); ++k)
            CHECK((tr.states[k] - dense_evolve(DenseMatrix(L.matrix()), x0, ts[k])).cwiseAbs().maxCoeff() < 1e-8);
    }
    const Liouvillian L = random_liouvillian(6, rng);
    const Vector x0 = L.vec(test::random_state(6, rng));
    PropagatorOptions o;
    o.tolerance = 1e-11;
    const std::vector<double> ts = uniform_grid(4.0, 41);
    const Trajectory tr = evolve(L, x0, ts, o);
    double worst = 0.0;
    for (std::size_t k = 0; k < ts.size(); ++k)
        worst = std::max(worst,
                         (tr.states[k] - dense_evolve(DenseMatrix(L.matrix()), x0, ts[k])).cwiseAbs().maxCoeff());
    CHECK(worst < 1e-8);
}

TEST_CASE("propagation composes over consecutive intervals") {
    std::mt19937_64 rng(23);
    const Liouvillian L = random_liouvillian(4, rng);
    const Vector x0 = L.vec(test::random_state(4, rng));
    PropagatorOptions o;
    o.tolerance = 1e-10;
    const Propagator P(L, 3.0, o);
    const Vector at1 = P.evolve(x0, {0.0, 1.0}).states.back();
    const Vector at3 = P.evolve(x0, {0.0, 3.0}).states.back();
    const Vector chained = P.evolve(at1, {0.0, 2.0}).states.back();
    CHECK((chained - at3).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("expectation path agrees with full states") {
    std::mt19937_64 rng(24);
    const Liouvillian L = random_liouvillian(5, rng);
    const Vector x0 = L.vec(test::random_state(5, rng));
    const Vector w = L.layout().trace_functional();
    PropagatorOptions o;
    o.tolerance = 1e-10;
    const Propagator P(L, 2.0, o);
    const std::vector<double> ts = uniform_grid(2.0, 11);
    const auto vals = P.expectation(x0, w, ts);
    for (const auto& v : vals) CHECK(std::abs(v - 1.0) < 1e-8);
}

TEST_CASE("time grid must start at zero") {
    const Liouvillian L = two_level(1.0, 1.0);
    CHECK_THROWS(evolve(L, L.vec(DensityMatrix::basis(L.space_ptr(), 0).matrix()), {0.5, 1.0}));
}

TEST_CASE("Fock truncation scan") {
    SUBCASE("weak drive converges already at two photons") {
        DiamondParams p = free_atom();
        p.omega_p = p.omega_s = rabi_for_effective_rate(0.02, DriveMode::OffResonant, p.delta_s);
        p.telecom_cavity = true;
        p.g_t = 1.0;
        p.kappa_t = 0.5;
        auto fn = [&](const Truncation& t) {
            DiamondParams q = p;
            q.n_t = t.n_t;
            const ModelSystem m = build_diamond(q);
            const auto r = steady_state(build_liouvillian(m.H, m.collapses));
            return Observables{{"flux_t", flux(r.rho_ss, *m.telecom, q.kappa_t)}};
        };
        const ConvergenceReport rep = convergence_scan(fn, {{2, 0}, {3, 0}});
        CHECK(rep.converged);
        CHECK(rep.accepted == Truncation{2, 0});
        CHECK(relative_change(rep.points[0].observables.at("flux_t"), rep.points[1].observables.at("flux_t")) < 1e-3);
    }
    SUBCASE("zero flux at every truncation without drive") {
        auto fn = [](const Truncation&) { return Observables{{"flux_t", 0.0}}; };
        const ConvergenceReport rep = convergence_scan(fn, {{2, 0}, {3, 0}, {4, 0}});
        CHECK(rep.converged);
        for (const auto& pt : rep.points) CHECK(pt.observables.at("flux_t") == 0.0);
    }
    SUBCASE("gate escalates the mode that moves") {
        auto fn = [](const Truncation& t) {
            return Observables{{"x", 1.0 - std::pow(0.1, t.n_t)}, {"y", 1.0 + 1e-6 * t.n_c}};
        };
        const ConvergenceReport rep = convergence_gate(fn, {2, 2}, 8, 0.005);
        CHECK(rep.converged);
        CHECK(rep.accepted.n_t == 3);
        CHECK(rep.accepted.n_c == 2);
    }
    SUBCASE("gate reports failure at the cap") {
        auto fn = [](const Truncation& t) { return Observables{{"x", static_cast<double>(t.n_t)}}; };
        const ConvergenceReport rep = convergence_gate(fn, {2, 0}, 4, 0.005);
        CHECK_FALSE(rep.converged);
        CHECK_FALSE(rep.verdict().empty());
    }
}

#include <doctest.h>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_coupling.h>

#include <cmath>
#include <random>

#include "cascade/angular/dipole.hpp"
#include "cascade/angular/wigner.hpp"
#include "cascade/models/cesium.hpp"
#include "cascade/models/constants.hpp"

using namespace cascade;

namespace {

HalfInteger h(int twice) { return HalfInteger::from_twice(twice); }

const LevelScheme& cesium() {
    static const LevelScheme s = make_level_scheme(load_default_constants());
    return s;
}

} // namespace

TEST_CASE("half-integer parsing") {
    CHECK(HalfInteger::parse("7/2").twice() == 7);
    CHECK(HalfInteger::parse("-1/2").twice() == -1);
    CHECK(HalfInteger::parse("3").twice() == 6);
    CHECK_THROWS(HalfInteger::parse("3/4"));
    CHECK_THROWS(h(3).as_int());
}

TEST_CASE("3j special values") {
    CHECK(wigner_3j_twice(2, 2, 0, 2, 0, 0) == 0.0);
    CHECK(wigner_3j_twice(3, 3, 0, 1, -1, 0) == doctest::Approx(-0.5).epsilon(1e-14));
    // odd j1 + j2 + j3 with all m = 0
    CHECK(wigner_3j_twice(8, 2, 8, 0, 0, 0) == 0.0);
    CHECK(wigner_3j_twice(8, 4, 8, 0, 0, 0) ==
          doctest::Approx(gsl_sf_coupling_3j(8, 4, 8, 0, 0, 0)).epsilon(1e-14));
    CHECK(wigner_3j_twice(2, 2, 6, 0, 0, 0) == 0.0);  // triangle
    CHECK_THROWS_AS(wigner_3j_twice(2, 2, 2, 1, -1, 0), MalformedAngularMomentum);
    CHECK_THROWS_AS(wigner_3j_twice(-2, 2, 2, 0, 0, 0), MalformedAngularMomentum);
}

TEST_CASE("3j agrees with GSL for j up to 5") {
    gsl_set_error_handler_off();
    double worst = 0.0;
    int count = 0;
    for (int a = 0; a <= 10; ++a)
        for (int b = 0; b <= 10; ++b)
            for (int c = std::abs(a - b); c <= a + b && c <= 10; c += 2)
                for (int ma = -a; ma <= a; ma += 2)
                    for (int mb = -b; mb <= b; mb += 2) {
                        const int mc = -ma - mb;
                        if (std::abs(mc) > c) continue;
                        const double ref = gsl_sf_coupling_3j(a, b, c, ma, mb, mc);
                        worst = std::max(worst, std::abs(wigner_3j_twice(a, b, c, ma, mb, mc) - ref));
                        ++count;
                    }
    CHECK(count > 10000);
    CHECK(worst < 1e-12);
}

TEST_CASE("6j agrees with GSL") {
    CHECK(wigner_6j_twice(2, 2, 2, 2, 2, 2) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    CHECK(wigner_6j_twice(2, 2, 8, 2, 2, 2) == 0.0);
    CHECK_THROWS_AS(wigner_6j_twice(1, 1, 1, 1, 1, 1), MalformedAngularMomentum);
    double worst = 0.0;
    for (int a = 0; a <= 7; ++a)
        for (int b = 0; b <= 7; ++b)
            for (int c = std::abs(a - b); c <= a + b; c += 2)
                for (int d = 0; d <= 7; ++d)
                    for (int e = 0; e <= 7; ++e)
                        for (int f = 0; f <= 7; ++f) {
                            if ((d + e + c) % 2 || (a + e + f) % 2 || (d + b + f) % 2) continue;
                            const double ref = gsl_sf_coupling_6j(a, b, c, d, e, f);
                            worst = std::max(worst, std::abs(wigner_6j_twice(a, b, c, d, e, f) - ref));
                        }
    CHECK(worst < 1e-12);
}

TEST_CASE("6j orthogonality for half-integer arguments") {
    // sum_x (2x+1)(2f+1) {1/2 1/2 x; 1/2 1/2 f}{1/2 1/2 x; 1/2 1/2 f'} = delta
    for (int f = 0; f <= 2; f += 2)
        for (int f2 = 0; f2 <= 2; f2 += 2) {
            double s = 0.0;
            for (int x = 0; x <= 2; x += 2)
                s += (x + 1) * (f + 1) * wigner_6j_twice(1, 1, x, 1, 1, f) * wigner_6j_twice(1, 1, x, 1, 1, f2);
            CHECK(s == doctest::Approx(f == f2 ? 1.0 : 0.0).epsilon(1e-14));
        }
    CHECK(wigner_6j(h(1), h(1), h(2), h(1), h(1), h(2)) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
}

TEST_CASE("3j symmetries on random samples") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> J(0, 12);
    int tested = 0;
    while (tested < 500) {
        const int a = J(rng), b = J(rng), c = J(rng);
        if ((a + b + c) % 2 || c < std::abs(a - b) || c > a + b) continue;
        std::uniform_int_distribution<int> MA(0, a), MB(0, b);
        const int ma = 2 * MA(rng) - a, mb = 2 * MB(rng) - b, mc = -ma - mb;
        if (std::abs(mc) > c) continue;
        const double v = wigner_3j_twice(a, b, c, ma, mb, mc);
        const double phase = ((a + b + c) / 2) % 2 ? -1.0 : 1.0;
        CHECK(wigner_3j_twice(b, c, a, mb, mc, ma) == doctest::Approx(v).epsilon(1e-12));
        CHECK(wigner_3j_twice(c, a, b, mc, ma, mb) == doctest::Approx(v).epsilon(1e-12));
        CHECK(wigner_3j_twice(b, a, c, mb, ma, mc) == doctest::Approx(phase * v).epsilon(1e-12));
        CHECK(wigner_3j_twice(a, b, c, -ma, -mb, -mc) == doctest::Approx(phase * v).epsilon(1e-12));
        ++tested;
    }
}

TEST_CASE("3j orthogonality sum") {
    for (int a = 0; a <= 8; ++a)
        for (int b = 0; b <= 8; ++b)
            for (int c = std::abs(a - b); c <= a + b; c += 2)
                for (int mc = -c; mc <= c; mc += 2) {
                    double s = 0.0;
                    for (int ma = -a; ma <= a; ma += 2) {
                        const int mb = -mc - ma;
                        if (std::abs(mb) > b) continue;
                        const double v = wigner_3j_twice(a, b, c, ma, mb, mc);
                        s += (c + 1) * v * v;
                    }
                    CHECK(std::abs(s - 1.0) < 1e-12);
                }
}

TEST_CASE("cesium level scheme") {
    const LevelScheme& s = cesium();
    CHECK(s.dim() == 80);
    CHECK(s.nuclear_spin() == h(7));
    int expect_dims[] = {16, 16, 32, 16};
    const char* labels[] = {kGround, kPumpUpper, kControlUpper, kTop};
    for (int k = 0; k < 4; ++k) {
        const Manifold& m = s.manifold(s.manifold_index(labels[k]));
        int n = 0;
        for (const auto& l : m.levels) n += l.F.twice() + 1;
        CHECK(n == expect_dims[k]);
        // F from |J - I| to J + I
        CHECK(m.levels.front().F.twice() == std::abs(m.J.twice() - 7));
        CHECK(m.levels.back().F.twice() == m.J.twice() + 7);
    }
    for (int i = 0; i < s.dim(); ++i) {
        const AtomicState& st = s.state(i);
        CHECK(s.index(st.manifold, st.F, st.mF) == i);
    }
}

namespace {

// Uncoupled-basis route: |F m> = sum CG(J mJ; I mI | F m) |J mJ>|I mI> with
// <J mJ| d_q |J' mJ'> = (-1)^(J - mJ) (J 1 J'; -mJ q mJ') sqrt(2J' + 1).
double clebsch(int j1, int m1, int j2, int m2, int J, int M) {
    const int p = (j1 - j2 + M) / 2;
    return (p % 2 ? -1.0 : 1.0) * std::sqrt(J + 1.0) * gsl_sf_coupling_3j(j1, j2, J, m1, m2, -M);
}

double uncoupled(int J, int F, int m, int Jp, int Fp, int mp, int I, int q) {
    double sum = 0.0;
    for (int mI = -I; mI <= I; mI += 2) {
        const int mJ = m - mI, mJp = mp - mI;
        if (std::abs(mJ) > J || std::abs(mJp) > Jp) continue;
        const double a = clebsch(J, mJ, I, mI, F, m);
        const double b = clebsch(Jp, mJp, I, mI, Fp, mp);
        if (a == 0.0 || b == 0.0) continue;
        const double phase = ((J - mJ) / 2) % 2 ? -1.0 : 1.0;
        sum += a * b * phase * gsl_sf_coupling_3j(J, 2, Jp, -mJ, 2 * q, mJp) * std::sqrt(Jp + 1.0);
    }
    return sum;
}

void check_against_uncoupled(const char* lower, const char* upper) {
    const LevelScheme& s = cesium();
    const Manifold& lo = s.manifold(s.manifold_index(lower));
    const Manifold& up = s.manifold(s.manifold_index(upper));
    const int I = s.nuclear_spin().twice();
    double worst = 0.0;
    for (int q = -1; q <= 1; ++q) {
        const DenseMatrix D = dipole_operator(s, lower, upper, q).dense();
        for (int i = 0; i < s.dim(); ++i)
            for (int j = 0; j < s.dim(); ++j) {
                const AtomicState& a = s.state(i);
                const AtomicState& b = s.state(j);
                const bool in = &s.manifold(a.manifold) == &lo && &s.manifold(b.manifold) == &up;
                const double ref = in ? uncoupled(lo.J.twice(), a.F.twice(), a.mF.twice(), up.J.twice(),
                                                  b.F.twice(), b.mF.twice(), I, q)
                                      : 0.0;
                worst = std::max(worst, std::abs(D(i, j) - ref));
            }
    }
    CHECK(worst < 1e-12);
}

} // namespace

TEST_CASE("dipole operators match the uncoupled Clebsch-Gordan route") {
    check_against_uncoupled(kGround, kPumpUpper);
    check_against_uncoupled(kPumpUpper, kTop);
    check_against_uncoupled(kControlUpper, kTop);
    check_against_uncoupled(kGround, kControlUpper);
}

TEST_CASE("dipole selection rules and forbidden transitions") {
    const LevelScheme& s = cesium();
    for (int q = -1; q <= 1; ++q) {
        const SparseMatrix D = dipole_operator(s, kControlUpper, kTop, q).matrix();
        for (int k = 0; k < D.outerSize(); ++k)
            for (SparseMatrix::InnerIterator it(D, k); it; ++it)
                CHECK(s.state(static_cast<int>(it.row())).mF.twice() ==
                      s.state(static_cast<int>(it.col())).mF.twice() + 2 * q);
    }
    const DenseMatrix Dp = dipole_operator(s, kGround, kPumpUpper, 0).dense();
    CHECK(Dp(s.index(kGround, 3, 0), s.index(kPumpUpper, 3, 0)) == Complex(0.0));
    CHECK(Dp(s.index(kGround, 4, 0), s.index(kPumpUpper, 4, 0)) == Complex(0.0));
    CHECK(std::abs(Dp(s.index(kGround, 3, 0), s.index(kPumpUpper, 4, 0))) > 0.1);
    const DenseMatrix Ds = dipole_operator(s, kPumpUpper, kTop, 0).dense();
    CHECK(Ds(s.index(kPumpUpper, 4, 0), s.index(kTop, 4, 0)) == Complex(0.0));
    CHECK_THROWS(dipole_operator(s, kGround, kPumpUpper, 2));
    CHECK_THROWS(dipole_operator(s, "5D5/2", kPumpUpper, 0));
}

TEST_CASE("dipole strengths sum to the upper-manifold projector") {
    const LevelScheme& s = cesium();
    for (auto [lo, up] : {std::pair{kGround, kPumpUpper}, std::pair{kPumpUpper, kTop}, std::pair{kControlUpper, kTop},
                          std::pair{kGround, kControlUpper}}) {
        DenseMatrix sum = DenseMatrix::Zero(80, 80);
        for (int q = -1; q <= 1; ++q) {
            const DenseMatrix D = dipole_operator(s, lo, up, q).dense();
            sum += D.adjoint() * D;
        }
        DenseMatrix proj = DenseMatrix::Zero(80, 80);
        const int mu = s.manifold_index(up);
        for (int i = 0; i < 80; ++i)
            if (s.state(i).manifold == mu) proj(i, i) = 1.0;
        CHECK((sum - proj).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("largest pi-polarized control coefficient") {
    const DenseMatrix D = dipole_operator(cesium(), kGround, kControlUpper, 0).dense();
    const double largest = D.cwiseAbs().maxCoeff();
    // (6S1/2 F=3 m=+-3) - (6P3/2 F'=3 m=+-3)
    CHECK(largest == doctest::Approx(0.75).epsilon(1e-12));
    const LevelScheme& s = cesium();
    CHECK(std::abs(D(s.index(kGround, 4, 0), s.index(kControlUpper, 5, 0))) ==
          doctest::Approx(std::sqrt(5.0 / 9.0)).epsilon(1e-12));
}

TEST_CASE("coefficient routine agrees with the assembled operator") {
    const LevelScheme& s = cesium();
    const int lo = s.manifold_index(kPumpUpper), up = s.manifold_index(kTop);
    const DenseMatrix D = dipole_operator(s, kPumpUpper, kTop, 1).dense();
    for (int F : {3, 4})
        for (int Fp : {3, 4})
            for (int m = -F; m <= F; ++m) {
                const int mp = m - 1;
                if (std::abs(mp) > Fp) continue;
                const double c = dipole_coefficient(s, lo, HalfInteger::from_int(F), HalfInteger::from_int(m), up,
                                                    HalfInteger::from_int(Fp), HalfInteger::from_int(mp), 1);
                CHECK(std::abs(D(s.index(kPumpUpper, F, m), s.index(kTop, Fp, mp)) - c) < 1e-15);
            }
}

TEST_CASE("clebsch-gordan helper") {
    // <1/2 1/2; 1/2 -1/2 | 1 0> = 1/sqrt(2)
    CHECK(clebsch_gordan(h(1), h(1), h(1), h(-1), h(2), h(0)) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
    CHECK(clebsch_gordan(h(1), h(1), h(1), h(-1), h(0), h(0)) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
    CHECK(clebsch_gordan(h(2), h(2), h(2), h(0), h(2), h(2)) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
}

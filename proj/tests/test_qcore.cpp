#include <doctest.h>

#include <unsupported/Eigen/KroneckerProduct>

#include "cascade/qcore/density_matrix.hpp"
#include "cascade/qcore/liouvillian.hpp"
#include "cascade/scenarios/oracles.hpp"
#include "helpers.hpp"

using namespace cascade;
using test::max_abs;

TEST_CASE("tensor products follow factor order") {
    const Operator i2 = Operator::identity(HilbertSpace::single("a", 2));
    const Operator i3 = Operator::identity(HilbertSpace::single("b", 3));
    const Operator i6 = tensor({i2, i3});
    CHECK(i6.dim() == 6);
    CHECK(max_abs(i6.dense() - DenseMatrix::Identity(6, 6)) == 0.0);

    // sigma = |g><e| with g = 0, e = 1 on the first factor
    const Operator sigma = transition(2, 0, 1, "atom");
    const Operator lifted = tensor({sigma, Operator::identity(HilbertSpace::single("mode", 3))});
    Vector e0 = Vector::Zero(6);
    e0[1 * 3 + 0] = 1.0;
    const Vector out = lifted.matrix() * e0;
    CHECK(std::abs(out[0] - Complex(1.0)) < 1e-15);
    CHECK(out.norm() == doctest::Approx(1.0));
}

TEST_CASE("mixed product rule against a dense Kronecker oracle") {
    std::mt19937_64 rng(7);
    const SpacePtr s2 = HilbertSpace::single("a", 2), s3 = HilbertSpace::single("b", 3);
    const DenseMatrix A = test::random_dense(2, 2, rng), B = test::random_dense(3, 3, rng);
    const DenseMatrix C = test::random_dense(2, 2, rng), D = test::random_dense(3, 3, rng);
    const Operator AB = tensor({test::from_dense(s2, A), test::from_dense(s3, B)});
    const Operator CD = tensor({test::from_dense(s2, C), test::from_dense(s3, D)});
    const DenseMatrix lhs = (AB * CD).dense();
    const DenseMatrix rhs = Eigen::kroneckerProduct(DenseMatrix(A * C), DenseMatrix(B * D));
    CHECK(max_abs(lhs - rhs) < 1e-12);
    CHECK(max_abs(AB.dense() - DenseMatrix(Eigen::kroneckerProduct(A, B))) < 1e-15);
}

TEST_CASE("tensor rejects mismatched factor lists") {
    const SpacePtr space = HilbertSpace::make({{"a", 2, {}}, {"b", 3, {}}});
    CHECK_THROWS_AS(tensor(space, {Operator::identity(HilbertSpace::single("a", 2))}), DimensionError);
    CHECK_THROWS_AS(tensor(space, {Operator::identity(HilbertSpace::single("a", 2)),
                                   Operator::identity(HilbertSpace::single("b", 4))}),
                    DimensionError);
}

TEST_CASE("truncated lowering operator") {
    const DenseMatrix a2 = destroy(2).dense();
    CHECK(a2(0, 1) == Complex(1.0));
    CHECK(max_abs(a2) == 1.0);

    const Operator a4 = destroy(4);
    const DenseMatrix n = (a4.adjoint() * a4).dense();
    for (int k = 0; k < 4; ++k) CHECK(n(k, k).real() == doctest::Approx(k));
    CHECK(max_abs(n - DenseMatrix(n.diagonal().asDiagonal())) == 0.0);

    for (int dim : {2, 3, 5, 8}) {
        const Operator a = destroy(dim);
        const DenseMatrix comm = (a * a.adjoint() - a.adjoint() * a).dense();
        DenseMatrix expect = DenseMatrix::Identity(dim, dim);
        expect(dim - 1, dim - 1) = 1.0 - dim;
        CHECK(max_abs(comm - expect) < 1e-14);
    }
    CHECK_THROWS_AS(destroy(1), DimensionError);
}

TEST_CASE("transition operators") {
    const DenseMatrix p = transition(5, 0, 0).dense();
    CHECK(p(0, 0) == Complex(1.0));
    CHECK(p.cwiseAbs().sum() == 1.0);
    CHECK(max_abs((transition(5, 1, 2) * transition(5, 2, 1)).dense() - transition(5, 1, 1).dense()) == 0.0);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            CHECK(max_abs(transition(5, i, j).adjoint().dense() - transition(5, j, i).dense()) == 0.0);
    CHECK_THROWS_AS(transition(5, 5, 0), DimensionError);
    CHECK_THROWS_AS(transition(5, 0, -1), DimensionError);
}

TEST_CASE("pure decay superoperator") {
    const double kappa = 0.7;
    const Operator a = destroy(2);
    const Liouvillian L = build_liouvillian(Operator::zero(a.space_ptr()), {{a, 2 * kappa, "cavity"}});
    DenseMatrix one = DenseMatrix::Zero(2, 2);
    one(1, 1) = 1.0;
    DenseMatrix expect = DenseMatrix::Zero(2, 2);
    expect(0, 0) = 2 * kappa;
    expect(1, 1) = -2 * kappa;
    CHECK(max_abs(L.apply(one) - expect) < 1e-15);
}

namespace {

struct RandomModel {
    SpacePtr space;
    DenseMatrix H;
    std::vector<std::pair<DenseMatrix, double>> collapses;

    Liouvillian build(bool sector = true) const {
        std::vector<CollapseTerm> c;
        for (const auto& [o, r] : collapses) c.push_back({test::from_dense(space, o), r, "c"});
        LiouvillianOptions opt;
        opt.use_symmetry_sector = sector;
        return build_liouvillian(test::from_dense(space, H, true), c, opt);
    }
};

RandomModel random_model(int d, int n_collapse, std::mt19937_64& rng) {
    RandomModel m;
    m.space = HilbertSpace::single("x", d);
    m.H = test::random_hermitian(d, rng);
    std::uniform_real_distribution<double> rate(0.1, 2.0);
    for (int k = 0; k < n_collapse; ++k) m.collapses.emplace_back(test::random_dense(d, d, rng), rate(rng));
    return m;
}

} // namespace

TEST_CASE("liouvillian preserves trace and hermiticity") {
    std::mt19937_64 rng(11);
    const RandomModel m = random_model(6, 3, rng);
    const Liouvillian L = m.build();
    for (int k = 0; k < 50; ++k) {
        const DenseMatrix rho = test::random_hermitian(6, rng);
        const DenseMatrix out = L.apply(rho);
        CHECK(std::abs(out.trace()) < 1e-10 * L.max_abs());
        CHECK(max_abs(out - out.adjoint()) < 1e-10 * L.max_abs());
    }
}

TEST_CASE("liouvillian matches a dense loop-over-basis oracle") {
    std::mt19937_64 rng(12);
    const RandomModel m = random_model(6, 2, rng);
    const Liouvillian L = m.build();
    const DenseMatrix ref = dense_liouvillian(DenseModel{m.H, m.collapses});
    CHECK(L.size() == 36);
    CHECK(max_abs(DenseMatrix(L.matrix()) - ref) < 1e-12);
}

TEST_CASE("symmetry sector agrees with the full layout") {
    // Two-level atom with charges 0 and 1 coupled to a mode; the Jaynes-Cummings
    // coupling conserves the total excitation number.
    const SpacePtr space = HilbertSpace::make({{"atom", 2, {0, 1}}, {"mode", 4, {0, 1, 2, 3}}});
    const Operator sm = embed(space, "atom", transition(2, 0, 1).matrix());
    const Operator a = embed(space, "mode", destroy(4).matrix());
    const Operator H = 0.3 * (sm.adjoint() * a + a.adjoint() * sm) + 0.1 * (a.adjoint() * a);
    const std::vector<CollapseTerm> c{{a, 1.0, "kappa"}, {sm, 0.5, "gamma"}};
    const Liouvillian sector = build_liouvillian(H, c);
    LiouvillianOptions full_opt;
    full_opt.use_symmetry_sector = false;
    const Liouvillian full = build_liouvillian(H, c, full_opt);
    CHECK(full.size() == 64);
    CHECK(sector.size() < full.size());

    std::mt19937_64 rng(13);
    for (int k = 0; k < 10; ++k) {
        DenseMatrix rho = test::random_state(8, rng);
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j)
                if (space->charges()[i] != space->charges()[j]) rho(i, j) = 0.0;
        CHECK(max_abs(sector.apply(rho) - full.apply(rho)) < 1e-13);
    }
}

TEST_CASE("vectorization round trip") {
    std::mt19937_64 rng(14);
    const DenseMatrix rho = test::random_dense(5, 5, rng);
    const VecLayout full = VecLayout::full(5);
    CHECK(max_abs(full.unvec(full.vec(rho)) - rho) == 0.0);
    CHECK(full.index(2, 3) == 2 + 3 * 5);

    const VecLayout sector = VecLayout::sector({0, 1, 1, 0, 2});
    DenseMatrix block = rho;
    const std::vector<int> q{0, 1, 1, 0, 2};
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            if (q[i] != q[j]) block(i, j) = 0.0;
    CHECK(max_abs(sector.unvec(sector.vec(block)) - block) == 0.0);
    CHECK(sector.index(0, 1) == -1);
    CHECK(sector.size() == 4 + 4 + 1);
}

TEST_CASE("expectation values") {
    std::mt19937_64 rng(15);
    const SpacePtr s = HilbertSpace::single("x", 4);
    const DensityMatrix rho(s, test::random_state(4, rng));
    CHECK(std::abs(expect(Operator::identity(s), rho) - 1.0) < 1e-14);

    const Operator a = destroy(4);
    CHECK(std::abs(expect(a.adjoint() * a, DensityMatrix::basis(a.space_ptr(), 0))) == 0.0);

    for (int k = 0; k < 10; ++k) {
        const DenseMatrix A = test::random_dense(4, 4, rng);
        const DensityMatrix r(s, test::random_state(4, rng));
        const Complex ref = (A * r.matrix()).trace();
        CHECK(std::abs(expect(test::from_dense(s, A), r) - ref) < 1e-12);
    }
}

TEST_CASE("sparse products agree with dense ones") {
    std::mt19937_64 rng(16);
    const SpacePtr s = HilbertSpace::single("x", 36);
    const DenseMatrix A = test::random_dense(36, 36, rng), B = test::random_dense(36, 36, rng);
    const Operator a = test::from_dense(s, A), b = test::from_dense(s, B);
    CHECK(max_abs((a * b).dense() - A * B) < 1e-12 * 36 * 4);
    CHECK(max_abs((a + b).dense() - (A + B)) < 1e-12);
}

TEST_CASE("density matrix checks") {
    const SpacePtr s = HilbertSpace::single("x", 3);
    const StateCheck ok = DensityMatrix::basis(s, 1).check();
    CHECK(ok.ok());
    DenseMatrix bad = DenseMatrix::Zero(3, 3);
    bad(0, 0) = 1.5;
    bad(1, 1) = -0.5;
    const StateCheck c = DensityMatrix(s, bad).check();
    CHECK_FALSE(c.ok());
    CHECK(c.min_eigenvalue == doctest::Approx(-0.5));
}

#include "common.hpp"

#include "gpdo/error.hpp"

#include <doctest.h>

using namespace gpdo;

namespace {

// largest entry of |A - B| over rows/cols in [margin, n - margin)
double interior_diff(const RepOperator& A, const RepOperator& B, int margin)
{
    const auto n = static_cast<int>(A.rows());
    double worst = 0.0;
    for (int i = margin; i < n - margin; ++i)
        for (int j = margin; j < n - margin; ++j) worst = std::max(worst, std::abs(A(i, j) - B(i, j)));
    return worst;
}

} // namespace

TEST_SUITE("repfield")
{
    TEST_CASE("dual points")
    {
        auto a = testing::affine_model();
        REQUIRE(a->dual_size() == 2);
        CHECK(a->dual(0).weight == 1.0);
        CHECK(a->dual(1).weight == 1.0);
        CHECK(a->dual(0).sign * a->dual(1).sign == -1);
        CHECK(a->rep_grid(0).ratio() == a->grid().ratio());
        for (std::size_t q = 0; q < a->s_nodes(); ++q) CHECK(std::abs(a->rep_grid(0).s(q)) > 0.0);

        auto c = testing::cyclic_model(16);
        CHECK(c->dual_size() == 16);
        for (const auto& d : c->duals()) CHECK(d.weight == 1.0 / 16);
        CHECK(c->character(3, 5) == oracle::chi(3, 5, 16));
    }

    TEST_CASE("representation action")
    {
        auto m = testing::affine_model();
        const std::size_t n = m->s_nodes();
        std::mt19937_64 rng(6);
        RepVector v = RepVector::Zero(static_cast<Eigen::Index>(n));
        auto r = testing::random_vec(n, rng);
        for (std::size_t q = 0; q < n; ++q) v[static_cast<Eigen::Index>(q)] = r[q];

        CHECK((rep_apply(*m, 0, GroupPoint::affine(0, 1), v) - v).norm() == 0.0);

        // pure modulation
        auto mod = rep_apply(*m, 1, GroupPoint::affine(0.7, 1.0), v);
        for (std::size_t q = 0; q < n; ++q)
            CHECK(std::abs(mod[static_cast<Eigen::Index>(q)] -
                           std::polar(1.0, 2 * oracle::pi * 0.7 * m->rep_grid(1).s(q)) * v[static_cast<Eigen::Index>(q)]) <=
                  1e-15);

        // a shift by r^2 never reads the two lowest nodes; zero them and the norm is kept
        RepVector w = v;
        w[0] = 0.0;
        w[1] = 0.0;
        const double r2 = m->grid().ratio() * m->grid().ratio();
        CHECK(std::abs(rep_apply(*m, 0, GroupPoint::affine(0.3, r2), w).norm() - w.norm()) <= 1e-14 * w.norm());

        CHECK_THROWS_AS(rep_apply(*m, 0, GroupPoint::affine(0.0, 1.1), v), OffLatticeError);
        CHECK_THROWS_AS(rep_matrix(*m, 0, GroupPoint::affine(0.0, 1.1)), OffLatticeError);
    }

    TEST_CASE("rep_matrix structure")
    {
        auto m = testing::affine_model();
        const double r = m->grid().ratio();
        CHECK((rep_matrix(*m, 0, GroupPoint::affine(0, 1)) - RepOperator::Identity(32, 32)).norm() == 0.0);

        // a = r^3: nonzeros exactly on the superdiagonal p -> p+3
        auto P = rep_matrix(*m, 0, GroupPoint::affine(0.4, r * r * r));
        for (int i = 0; i < 32; ++i)
            for (int j = 0; j < 32; ++j) CHECK((P(i, j) != 0.0) == (j == i + 3));

        // columns are rep_apply on basis vectors
        for (int j = 0; j < 32; j += 7) {
            RepVector e = RepVector::Zero(32);
            e[j] = 1.0;
            CHECK((P.col(j) - rep_apply(*m, 0, GroupPoint::affine(0.4, r * r * r), e)).norm() == 0.0);
        }

        // adjoint = representation of the inverse, and homomorphism, on interior rows
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> bd(-3, 3);
        std::uniform_int_distribution<int> kd(-3, 3);
        for (int t = 0; t < 20; ++t) {
            auto x = GroupPoint::affine(bd(rng), std::pow(r, kd(rng)));
            auto y = GroupPoint::affine(bd(rng), std::pow(r, kd(rng)));
            for (std::size_t xi = 0; xi < 2; ++xi) {
                auto X = rep_matrix(*m, xi, x);
                CHECK(interior_diff(X.adjoint(), rep_matrix(*m, xi, inverse(x)), 3) <= 1e-12);
                CHECK(interior_diff(rep_matrix(*m, xi, multiply(x, y)), X * rep_matrix(*m, xi, y), 6) <= 1e-12);
            }
        }
    }

    TEST_CASE("Duflo-Moore operator")
    {
        GridConfig c;
        c.s_top = 4.0;
        auto m = make_model(c);
        auto D = duflo_moore(*m, 0, 0.5);
        CHECK(std::abs(D(31, 31)) == doctest::Approx(2.0).epsilon(1e-15));
        CHECK((duflo_moore(*m, 1, 0.0) - RepOperator::Identity(32, 32)).norm() == 0.0);
        auto D1 = duflo_moore(*m, 1, 1.0);
        auto Dh = duflo_moore(*m, 1, 0.5);
        CHECK((Dh * Dh - D1).cwiseAbs().maxCoeff() <= 1e-15 * D1.cwiseAbs().maxCoeff());
        CHECK((duflo_moore(*m, 0, 0.3) * duflo_moore(*m, 0, 0.9) - duflo_moore(*m, 0, 1.2)).cwiseAbs().maxCoeff() <= 1e-14);
        for (int q = 0; q < 32; ++q) CHECK(D1(q, q).real() > 0.0);
    }

    TEST_CASE("semi-invariance")
    {
        auto m = testing::affine_model();
        const double r = m->grid().ratio();
        CHECK(semi_invariance_residual(*m, 0, GroupPoint::affine(0, 1)) == 0.0);
        CHECK(semi_invariance_residual(*m, 0, GroupPoint::affine(0, r)) <= 1e-12);

        // test-side check: pi D pi^* = Delta^{-1} D = a D on interior diagonal entries
        std::mt19937_64 rng(8);
        std::uniform_real_distribution<double> bd(-4, 4);
        std::uniform_int_distribution<int> kd(-4, 4);
        double worst = 0.0;
        for (int t = 0; t < 100; ++t) {
            const int k = kd(rng);
            auto x = GroupPoint::affine(bd(rng), std::pow(r, k));
            for (std::size_t xi = 0; xi < 2; ++xi) {
                auto P = rep_matrix(*m, xi, x);
                RepOperator lhs = P * duflo_moore(*m, xi, 1.0) * P.adjoint();
                for (int q = std::abs(k); q < 32 - std::abs(k); ++q)
                    worst = std::max(worst, std::abs(lhs(q, q) - x.a * std::abs(m->rep_grid(xi).s(q))));
                CHECK(semi_invariance_residual(*m, xi, x) <= 1e-12);
            }
        }
        CHECK(worst <= 1e-12);

        auto c = testing::cyclic_model();
        for (std::int64_t k = 0; k < 16; ++k) CHECK(semi_invariance_residual(*c, 3, GroupPoint::cyclic(k, 16)) == 0.0);
    }

    TEST_CASE("HS inner products")
    {
        auto m = testing::affine_model();
        auto I = RepOperator::Identity(32, 32);
        CHECK(hs_inner(I, I) == cplx(32.0));
        std::mt19937_64 rng(9);
        RepOperator T = RepOperator::Random(32, 32), S = RepOperator::Random(32, 32);
        CHECK(hs_inner(T, S) == std::conj(hs_inner(S, T)));
        CHECK(std::abs(hs_inner(T, S) - (T * S.adjoint()).trace()) <= 1e-12 * std::abs(hs_inner(T, S)));
        CHECK(hs_norm(OperatorField::zero(m)) == 0.0);

        auto c = testing::cyclic_model(8);
        // field norm carries the 1/N weights
        CHECK(hs_norm(OperatorField::identity(c)) == doctest::Approx(1.0).epsilon(1e-15));
        CHECK_THROWS_AS(hs_inner(OperatorField::zero(m), OperatorField::zero(c)), StructuralError);
        CHECK_THROWS_AS(hs_inner(OperatorField::zero(m), OperatorField::zero(testing::affine_model(1))), GridMismatch);
    }

    TEST_CASE("s-grid samples")
    {
        auto m = testing::affine_model();
        const auto& rep = m->rep_grid(0);
        Eigen::VectorXcd f(32);
        for (int q = 0; q < 32; ++q) f[q] = std::exp(-rep.s(static_cast<std::size_t>(q)));
        // orthonormal coordinates carry sqrt(weight)
        auto c = rep.from_samples(f);
        double l2 = 0.0;
        for (std::size_t q = 0; q < 32; ++q) l2 += rep.weight(q) * std::norm(f[static_cast<Eigen::Index>(q)]);
        CHECK(c.squaredNorm() == doctest::Approx(l2).epsilon(1e-14));
        CHECK((rep.to_samples(c) - f).norm() <= 1e-14 * f.norm());
    }
}

#include "common.hpp"

#include "gpdo/error.hpp"

#include <doctest.h>

using namespace gpdo;

TEST_SUITE("group")
{
    TEST_CASE("affine product law and inverse")
    {
        auto p = multiply(GroupPoint::affine(1, 2), GroupPoint::affine(3, 4));
        CHECK(p.b == 7.0);
        CHECK(p.a == 8.0);

        auto e = GroupPoint::affine(0, 1);
        auto x = GroupPoint::affine(1.5, 0.25);
        CHECK(multiply(e, x) == x);

        auto inv = inverse(GroupPoint::affine(1, 2));
        CHECK(inv.b == -0.5);
        CHECK(inv.a == 0.5);
        CHECK(multiply(GroupPoint::affine(1, 2), inv) == e);
        CHECK(inverse(e) == e);
    }

    TEST_CASE("cyclic law")
    {
        auto a = GroupPoint::cyclic(5, 8);
        auto b = GroupPoint::cyclic(6, 8);
        CHECK(multiply(a, b).k == 3);
        CHECK(inverse(a).k == 3);
        CHECK(inverse(GroupPoint::cyclic(0, 8)).k == 0);
        CHECK(modular(a) == 1.0);
        CHECK_THROWS_AS(multiply(a, GroupPoint::affine(0, 1)), StructuralError);
        CHECK_THROWS_AS(multiply(a, GroupPoint::cyclic(1, 7)), StructuralError);
    }

    TEST_CASE("modular function")
    {
        CHECK(modular(GroupPoint::affine(3, 4)) == 0.25);
        CHECK(modular(GroupPoint::affine(0, 1)) == 1.0);
    }

    TEST_CASE("randomized associativity and modular homomorphism")
    {
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> b(-5, 5), la(-2, 2);
        auto draw = [&] { return GroupPoint::affine(b(rng), std::exp(la(rng))); };
        for (int t = 0; t < 200; ++t) {
            auto x = draw(), y = draw(), z = draw();
            auto l = multiply(multiply(x, y), z);
            auto r = multiply(x, multiply(y, z));
            CHECK(std::abs(l.b - r.b) <= 1e-12 * std::max(1.0, std::abs(l.b)));
            CHECK(std::abs(l.a - r.a) <= 1e-12 * l.a);
            const double dxy = modular(multiply(x, y));
            CHECK(std::abs(dxy - modular(x) * modular(y)) <= 1e-12 * modular(x) * modular(y));
        }
        for (std::int64_t i = 0; i < 9; ++i)
            for (std::int64_t j = 0; j < 9; ++j)
                for (std::int64_t k = 0; k < 9; ++k) {
                    auto x = GroupPoint::cyclic(i, 9), y = GroupPoint::cyclic(j, 9), z = GroupPoint::cyclic(k, 9);
                    CHECK(multiply(multiply(x, y), z) == multiply(x, multiply(y, z)));
                }
    }

    TEST_CASE("exp, log and theta")
    {
        auto p = exp_map({2.5, 0.0});
        CHECK(p.b == 2.5);
        CHECK(p.a == 1.0);
        auto q = exp_map({0.0, 1.0});
        CHECK(q.b == 0.0);
        CHECK(q.a == doctest::Approx(std::exp(1.0)).epsilon(1e-15));

        auto X = log_map(exp_map({0.3, -0.7}));
        CHECK(std::abs(X.beta - 0.3) <= 1e-12);
        CHECK(std::abs(X.alpha + 0.7) <= 1e-12);

        CHECK(theta({7.0, 0.0}) == 1.0);
        CHECK(theta({0.0, 1.0}) == doctest::Approx(0.6321205588285577).epsilon(1e-14));
        CHECK(theta({5.0, -1.0}) == doctest::Approx(1.718281828459045).epsilon(1e-14));

        // the series branch agrees with the closed form just outside the cutoff
        for (double alpha : {0.9e-4, -0.9e-4, 1.1e-4, -1.1e-4}) {
            double b = 0, a = 0;
            oracle::affine_exp(1.3, alpha, b, a);
            auto g = exp_map({1.3, alpha});
            CHECK(std::abs(g.b - b) <= 1e-12);
            CHECK(std::abs(g.a - a) <= 1e-15);
            CHECK(std::abs(theta({0.0, alpha}) - oracle::affine_theta(alpha)) <= 1e-12);
        }
        CHECK_THROWS_AS(log_map(GroupPoint::cyclic(1, 4)), UnsupportedError);
    }

    TEST_CASE("grids")
    {
        GridConfig c;
        c.backend = Backend::cyclic;
        c.n = 8;
        auto g = build_grid(c);
        CHECK(g.size() == 8);
        for (auto w : g.weights()) CHECK(w == 1.0);

        auto a = build_grid(GridConfig{});
        CHECK(a.size() == 32 * 32);
        auto idx = a.index(3, static_cast<std::size_t>(8 - a.j_min()));
        CHECK(a.node(idx).a == doctest::Approx(4.0).epsilon(1e-14));
        CHECK(a.weight(idx) == doctest::Approx(0.5 * std::log(2.0) / 4.0 * 0.25).epsilon(1e-14));
        for (std::size_t j = 1; j < a.na(); ++j)
            CHECK(a.a_at(j) / a.a_at(j - 1) == doctest::Approx(a.ratio()).epsilon(4e-16));
        for (std::size_t i = 1; i < a.nb(); ++i) CHECK(a.b_at(i) - a.b_at(i - 1) == 0.5);
        CHECK(a.node(a.identity_index()) == GroupPoint::affine(0.0, 1.0));

        GridConfig bad;
        bad.r = 0.9;
        CHECK_THROWS_AS(build_grid(bad), ConfigError);
        bad = GridConfig{};
        bad.h_b = 0.0;
        CHECK_THROWS_AS(build_grid(bad), ConfigError);
        bad = GridConfig{};
        bad.j_max = bad.j_min;
        CHECK_THROWS_AS(build_grid(bad), ConfigError);
        c.n = 1;
        CHECK_THROWS_AS(build_grid(c), ConfigError);
    }

    TEST_CASE("refinement halves spacings")
    {
        auto r1 = refine(GridConfig{}, 1);
        CHECK(r1.h_b == 0.25);
        CHECK(r1.r == doctest::Approx(std::pow(2.0, 0.125)).epsilon(1e-15));
        CHECK(r1.j_min == -32);
        CHECK(r1.j_max == 32);
        CHECK(r1.refinement_level == 1);
        CHECK(r1.s_top == 2.0);
        CHECK(r1.s_nodes == 80);
        CHECK(refine(GridConfig{}, 2).s_nodes == 192);
        GridConfig c;
        c.backend = Backend::cyclic;
        CHECK(refine(c, 2).n == 64);
    }

    TEST_CASE("haar integral")
    {
        auto cm = testing::cyclic_model(8);
        CHECK(haar_integral(SampledFunction::constant(cm, 1.0)) == cplx(8.0));

        // right translation: int f(yx) dy = Delta(x)^{-1} int f
        std::mt19937_64 rng(1);
        auto f = testing::from_vec(cm, testing::random_vec(8, rng));
        auto shifted = right_translate(f, GroupPoint::cyclic(3, 8));
        CHECK(std::abs(haar_integral(shifted) - haar_integral(f)) <= 1e-14 * std::abs(haar_integral(f)));

        // affine bump converges to the closed form
        BumpParams p;
        p.b0 = 0.4;
        p.log_a0 = 0.1;
        p.modulation = 0.0;
        const double exact = oracle::bump_norm2(1.0, p.width_b, p.log_a0, p.width_log_a);
        double prev = 1.0;
        for (int level = 0; level < 2; ++level) {
            auto m = testing::affine_model(level);
            auto u = bump(m, p);
            const double err = std::abs(haar_integral(conj(u) * u).real() - exact) / exact;
            CHECK(err < prev);
            prev = err;
        }
        CHECK(prev < 1e-9);

        auto m = testing::affine_model();
        auto u = bump(m, p);
        auto x = GroupPoint::affine(0.5, std::pow(m->grid().ratio(), 2));
        const double lhs = haar_integral(right_translate(u, x)).real();
        CHECK(std::abs(lhs - haar_integral(u).real() / modular(x)) <= 1e-3 * std::abs(lhs));
    }
}

#include "common.hpp"

#include <doctest.h>

using namespace gpdo;

namespace {

OperatorField field_from(const ModelPtr& m, const oracle::Vec& v)
{
    auto F = OperatorField::zero(m);
    for (std::size_t xi = 0; xi < m->dual_size(); ++xi) F.blocks[xi](0, 0) = v[static_cast<std::size_t>(m->dual(xi).character)];
    return F;
}

double field_rel(const OperatorField& a, const OperatorField& b) { return hs_norm(a - b) / hs_norm(b); }

} // namespace

TEST_SUITE("plancherel")
{
    TEST_CASE("cyclic transforms against the brute-force DFT")
    {
        auto m = testing::cyclic_model();
        std::mt19937_64 rng(21);
        for (int t = 0; t < 10; ++t) {
            auto f = testing::random_vec(16, rng);
            auto F = testing::from_vec(m, f);
            CHECK(oracle::rel(testing::field_table(fourier(F)), oracle::dft(f)) <= 1e-14);
            // D is the identity on Z_N
            CHECK(oracle::rel(testing::field_table(plancherel_fwd(F)), oracle::dft(f)) <= 1e-14);
            CHECK(oracle::rel(testing::to_vec(plancherel_inv(field_from(m, f))), oracle::idft(f)) <= 1e-14);
            CHECK(parseval_residual(F) <= 1e-14);
            CHECK(relative_error(plancherel_inv(plancherel_fwd(F)), F) <= 1e-14);
            CHECK(relative_error(plancherel_lsq_inverse(plancherel_fwd(F)), F) <= 1e-12);

            // sum_x f(x) conj(chi_m(x)) = dft(f)(-m)
            auto dft = oracle::dft(f);
            oracle::Vec reflected(16);
            for (std::int64_t k = 0; k < 16; ++k) reflected[static_cast<std::size_t>(k)] = dft[static_cast<std::size_t>(oracle::mod(-k, 16))];
            CHECK(oracle::rel(testing::field_table(alt_plancherel(F)), reflected) <= 1e-14);

            auto g = testing::random_vec(16, rng), u = testing::random_vec(16, rng);
            CHECK(conv_diag_check(testing::from_vec(m, g), testing::from_vec(m, u)) <= 1e-14);
        }
    }

    TEST_CASE("transform of the unit mass at the identity")
    {
        for (auto m : {testing::cyclic_model(), testing::affine_model()}) {
            auto F = fourier(SampledFunction::delta_e(m));
            CHECK(field_rel(F, OperatorField::identity(m)) <= 1e-14);
        }
    }

    TEST_CASE("linearity")
    {
        auto m = testing::affine_model();
        std::mt19937_64 rng(22);
        auto u = random_function(m, rng), v = random_function(m, rng);
        const cplx c(0.3, -1.2);
        auto lhs = plancherel_fwd(u + c * v);
        auto rhs = plancherel_fwd(u) + c * plancherel_fwd(v);
        CHECK(hs_norm(lhs - rhs) <= 1e-13 * hs_norm(rhs));
        auto il = plancherel_inv(lhs);
        auto ir = plancherel_inv(plancherel_fwd(u)) + c * plancherel_inv(plancherel_fwd(v));
        CHECK(relative_error(il, ir) <= 1e-13);
    }

    TEST_CASE("affine Parseval, inversion and convolution")
    {
        auto m = testing::affine_model();
        BumpParams pu;
        pu.b0 = 0.2;
        pu.log_a0 = 0.05;
        auto u = bump(m, normalized(pu));
        BumpParams pg;
        pg.b0 = -0.3;
        pg.log_a0 = -0.1;
        auto g = bump(m, normalized(pg));

        CHECK(parseval_residual(u) <= 1e-2);
        CHECK(relative_error(plancherel_inv(plancherel_fwd(u)), u) <= 5e-2);
        CHECK(conv_diag_check(g, u) <= 1e-2);

        // the alternative transform against the involution route
        auto alt = alt_plancherel(u);
        CHECK(field_rel(alt, plancherel_fwd(conj(involution_p(u, 2.0)))) <= 1e-3);

        // the trace inversion reproduces the rule at off-grid translations
        auto F = plancherel_fwd(u);
        const auto z = GroupPoint::affine(0.37, m->grid().ratio());
        CHECK(std::abs(inverse_value(*m, F.blocks, z) - plancherel_inv(F).eval(z)) <= 1e-14);
    }

    TEST_CASE("pointwise product")
    {
        auto m = testing::cyclic_model(8);
        std::mt19937_64 rng(23);
        auto f = testing::random_vec(8, rng), g = testing::random_vec(8, rng);
        auto P = pointwise_product(field_from(m, f), field_from(m, g));
        auto table = testing::field_table(P);
        for (std::size_t k = 0; k < 8; ++k) CHECK(std::abs(table[k] - f[k] * g[k]) <= 1e-15);
    }
}

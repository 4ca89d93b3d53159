// Acceptance criteria: one PASS/FAIL line each, exit status 1 if any fails.

#include "common.hpp"

#include "gpdo/error.hpp"

#include <chrono>
#include <cstdio>
#include <string>

using namespace gpdo;

namespace {

int failures = 0;

void report(int id, const std::string& what, bool pass, const std::string& detail)
{
    if (!pass) ++failures;
    std::printf("%s [%d] %s: %s\n", pass ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* label, double v)
{
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s=%.3e", label, v);
    return buf;
}

std::string trajectory(const std::vector<double>& r)
{
    std::string s = "levels";
    for (std::size_t i = 0; i < r.size(); ++i) s += (i ? " -> " : " L0 ") + fmt("", r[i]).substr(1);
    return s;
}

bool strictly_decreasing(const std::vector<double>& r)
{
    for (std::size_t i = 1; i < r.size(); ++i)
        if (!(r[i] < r[i - 1])) return false;
    return true;
}

BumpParams interior_bump(double b0, double log_a0)
{
    BumpParams p;
    p.b0 = b0;
    p.log_a0 = log_a0;
    return normalized(p);
}

// Cyclic residuals against brute-force sums over Z_16.
void cyclic_exactness()
{
    auto m = testing::cyclic_model(16);
    std::mt19937_64 rng(0);
    double worst = 0.0;
    std::string worst_name;
    auto note = [&](const char* name, double r) {
        if (!(r <= worst)) {
            worst = r;
            worst_name = name;
        }
    };

    auto fv = testing::random_vec(16, rng);
    auto f = testing::from_vec(m, fv);
    note("parseval", parseval_residual(f));
    note("parseval_vs_dft",
         std::abs(hs_norm(plancherel_fwd(f)) * hs_norm(plancherel_fwd(f)) - oracle::norm2(oracle::dft(fv)) / 16.0) /
             oracle::norm2(fv));
    note("inversion", oracle::rel(testing::to_vec(plancherel_inv(plancherel_fwd(f))), fv));

    auto A = random_symbol(m, 0), B = random_symbol(m, 1), C = random_symbol(m, 2);
    const auto KA = oracle::quantize(testing::symbol_table(A));
    note("op_left_vs_oracle", oracle::rel(testing::to_mat(op_left(A)), KA));
    note("isometry", std::abs(std::sqrt(oracle::norm2(KA)) - A.norm()) / A.norm());
    note("inverse_op", relative_symbol_error(inverse_op(op_left(A)).symbol, A));

    auto prod = [](const Symbol& x, const Symbol& y) { return moyal_product(x, y).symbol; };
    note("moyal_vs_composition",
         oracle::rel(testing::to_mat(op_left(prod(A, B))),
                     oracle::compose(KA, oracle::quantize(testing::symbol_table(B)))));
    note("moyal_associativity", relative_symbol_error(prod(prod(A, B), C), prod(A, prod(B, C))));

    auto u = testing::random_vec(16, rng), v = testing::random_vec(16, rng);
    note("wigner_rank_one",
         oracle::rel(testing::to_mat(op_left(wigner(testing::from_vec(m, u), testing::from_vec(m, v)))),
                     oracle::rank_one(u, v)));

    for (std::int64_t y : {3, 7, 12}) {
        const auto expect = oracle::conjugate_by_translation(KA, y);
        note("covariance", oracle::rel(testing::to_mat(op_left(translate_symbol(GroupPoint::cyclic(y, 16), A))), expect));
    }

    auto F = random_crossed_kernel(m, rng), G = random_crossed_kernel(m, rng);
    const auto tf = testing::to_mat(F.values()), tg = testing::to_mat(G.values());
    note("schrodinger_product",
         oracle::rel(testing::to_mat(schrodinger(crossed_product(F, G))),
                     oracle::compose(oracle::schrodinger(tf), oracle::schrodinger(tg))));
    note("schrodinger_involution",
         oracle::rel(testing::to_mat(schrodinger(crossed_involution(F))), oracle::adjoint(oracle::schrodinger(tf))));

    note("tilde_equivalence", oracle::rel(testing::to_mat(op_right(tilde_symbol(A))), KA));

    report(1, "cyclic exactness suite", worst <= 1e-11, fmt("max residual", worst) + " (" + worst_name + ") tol=1e-11");
}

void semi_invariance()
{
    auto m = testing::affine_model();
    std::mt19937_64 rng(0);
    std::uniform_real_distribution<double> bd(-4.0, 4.0);
    std::uniform_int_distribution<int> kd(-4, 4);
    const double r = m->grid().ratio();
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        const auto x = GroupPoint::affine(bd(rng), std::pow(r, kd(rng)));
        for (std::size_t xi = 0; xi < m->dual_size(); ++xi) worst = std::max(worst, semi_invariance_residual(*m, xi, x));
    }
    report(2, "Duflo-Moore semi-invariance, 100 points, both signs", worst <= 1e-12, fmt("residual", worst) + " tol=1e-12");
}

void parseval_and_inversion()
{
    std::vector<double> pars, inv;
    for (int level = 0; level <= 2; ++level) {
        auto m = testing::affine_model(level);
        auto f = bump(m, interior_bump(0.2, 0.05));
        pars.push_back(parseval_residual(f));
        inv.push_back(relative_error(plancherel_inv(plancherel_fwd(f)), f));
    }
    report(3, "affine Parseval", pars[0] <= 1e-2 && strictly_decreasing(pars), trajectory(pars) + " tol=1e-2, decreasing");
    report(4, "affine inversion roundtrip", inv[0] <= 5e-2 && strictly_decreasing(inv),
           trajectory(inv) + " tol=5e-2, decreasing");
}

void hs_isometry()
{
    std::vector<double> res;
    for (int level = 0; level <= 1; ++level) {
        auto m = testing::affine_model(level);
        auto A = random_symbol(m, 0);
        res.push_back(std::abs(op_left(A).hs_norm() - A.norm()) / A.norm());
    }
    report(5, "HS isometry of Op", res[0] <= 5e-2 && strictly_decreasing(res), trajectory(res) + " tol=5e-2, decreasing");
}

void left_right()
{
    auto m = testing::affine_model();
    auto A = random_symbol(m, 0);
    const double r = relative_hs_error(op_right(tilde_symbol(A)), op_left(A));
    report(6, "left/right quantization equivalence", r <= 1e-3, fmt("residual", r) + " tol=1e-3");
}

void mult_conv()
{
    auto m = testing::affine_model();
    BumpParams pf;
    pf.b0 = 0.5;
    pf.log_a0 = 0.1;
    pf.width_b = 2.0;
    pf.width_log_a = 0.25;
    pf.modulation = 0.0;
    auto f = bump(m, pf);
    auto g = bump(m, interior_bump(-0.3, -0.1));
    auto u = bump(m, interior_bump(0.2, 0.05));
    const auto T = op_left(mult_conv_symbol(f, g));
    const double apply = relative_error(T.apply(u), f * convolve(g, u));
    const double formula = norm(modular_weighted(f, -0.5)) * norm(modular_weighted(g, 0.5));
    const double hs = std::abs(T.hs_norm() - formula) / formula;
    report(7, "multiplication-convolution identity", apply <= 2e-2 && hs <= 2e-2,
           fmt("apply", apply) + " tol=2e-2, " + fmt("hs_product", hs) + " tol=2e-2");
}

void crossed()
{
    auto a = testing::affine_model();
    auto A = random_symbol(a, 0);
    const double paths = relative_hs_error(frak_op(A), frak_op_via_op_left(A));
    auto c = testing::cyclic_model(16);
    auto Ac = random_symbol(c, 0);
    const double cyc = relative_hs_error(frak_op(Ac), op_left(Ac));
    report(8, "crossed-product construction", paths <= 1e-10 && cyc <= 1e-12,
           fmt("affine paths", paths) + " tol=1e-10, " + fmt("cyclic vs Op", cyc) + " tol=1e-12");
}

void exponential_calculus()
{
    std::vector<double> res;
    for (int level = 0; level <= 1; ++level) {
        auto m = testing::affine_model(level);
        auto B = random_scalar_symbol(m, 0);
        res.push_back(relative_hs_error(op_scalar(B), op_left(l_symbol(B))));
    }
    double jump = 0.0;
    for (double a1 : {0.25, 0.5, 1.0, 2.0, 4.0}) {
        const double at = kernel_factor(a1, a1);
        for (double t : {1.0 + 1e-6, 1.0 + 1e-8, 1.0 + 1e-10, 1.0 - 1e-6, 1.0 - 1e-8, 1.0 - 1e-10})
            jump = std::max(jump, std::abs(kernel_factor(t * a1, a1) - at) / at);
    }
    report(9, "exponential calculus", res[0] <= 5e-2 && strictly_decreasing(res) && jump <= 1e-6,
           trajectory(res) + " tol=5e-2, decreasing; " + fmt("kernel factor jump", jump) + " tol=1e-6");
}

void exp_log_theta()
{
    double worst = 0.0;
    std::mt19937_64 rng(0);
    std::uniform_real_distribution<double> beta(-5.0, 5.0), alpha(-2.0, 2.0);
    std::vector<LieVector> xs;
    for (int t = 0; t < 200; ++t) xs.push_back({beta(rng), alpha(rng)});
    for (double a : {1e-10, -1e-10, 3e-11, 1e-14, 1e-5, -1e-5, 0.0}) xs.push_back({1.7, a});
    for (const auto& X : xs) {
        const auto Y = log_map(exp_map(X));
        worst = std::max(worst, std::abs(Y.beta - X.beta) / std::max(1.0, std::abs(X.beta)));
        worst = std::max(worst, std::abs(Y.alpha - X.alpha));
        double b = 0, a = 0;
        if (X.alpha != 0.0) {
            oracle::affine_exp(X.beta, X.alpha, b, a);
            const auto g = exp_map(X);
            worst = std::max(worst, std::abs(g.b - b) / std::max(1.0, std::abs(b)));
            worst = std::max(worst, std::abs(g.a - a) / a);
            worst = std::max(worst, std::abs(theta(X) - oracle::affine_theta(X.alpha)));
        }
    }
    bool exact = true;
    for (double b : {0.0, 1.0, -3.5, 1e6}) exact = exact && theta({b, 0.0}) == 1.0;
    report(10, "exp/log/theta", worst <= 1e-12 && exact,
           fmt("roundtrip", worst) + " tol=1e-12, theta(beta,0)==1 " + (exact ? "exact" : "NOT exact"));
}

} // namespace

int main()
{
    const auto t0 = std::chrono::steady_clock::now();
    try {
        cyclic_exactness();
        semi_invariance();
        parseval_and_inversion();
        hs_isometry();
        left_right();
        mult_conv();
        crossed();
        exponential_calculus();
        exp_log_theta();
    } catch (const std::exception& e) {
        std::printf("FAIL acceptance aborted: %s\n", e.what());
        return 1;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%d of 10 criteria failed (%.1f s)\n", failures, secs);
    return failures == 0 ? 0 : 1;
}

#include "common.hpp"

#include "gpdo/error.hpp"
#include "gpdo/experiments.hpp"
#include "gpdo/io.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace gpdo;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name)
{
    auto dir = fs::temp_directory_path() / ("gpdo-test-" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_SUITE("io")
{
    TEST_CASE("config parsing")
    {
        auto c = parse_config(R"({"backend":"cyclic","grid":{"N":12},"tolerances":{"parseval":1e-9},"seed":4})");
        CHECK(c.grid.backend == Backend::cyclic);
        CHECK(c.grid.n == 12);
        CHECK(c.tolerances.at("parseval") == 1e-9);
        CHECK(c.seed == 4);

        auto d = parse_config("{}");
        CHECK(d.grid == GridConfig{});
        CHECK(d.seed == 0);

        CHECK_THROWS_AS(parse_config("{"), ConfigError);
        CHECK_THROWS_AS(parse_config("[]"), ConfigError);
        CHECK_THROWS_AS(parse_config(R"({"backend":"torus"})"), ConfigError);
        CHECK_THROWS_AS(parse_config(R"({"grid":{"r":0.5}})"), ConfigError);
        CHECK_THROWS_AS(parse_config(R"({"grid":{"h_b":"wide"}})"), ConfigError);
        CHECK_THROWS_AS(parse_config(R"({"tolerances":{"x":-1}})"), ConfigError);
        CHECK_THROWS_AS(load_config("/nonexistent/missing.json"), ConfigError);
    }

    TEST_CASE("grid config json roundtrip")
    {
        GridConfig g;
        g.h_b = 0.1;
        g.r = std::pow(2.0, 1.0 / 3.0);
        auto back = parse_config(R"({"grid":)" + grid_config_json(g) + "}");
        CHECK(back.grid == g);
    }

    TEST_CASE("atomic writes")
    {
        auto dir = scratch("atomic");
        write_atomic(dir / "a.txt", "first");
        write_atomic(dir / "a.txt", "second");
        std::ifstream in(dir / "a.txt");
        std::string s;
        std::getline(in, s);
        CHECK(s == "second");
        CHECK_FALSE(fs::exists(dir / "a.txt.partial"));
        // parent path is a regular file
        CHECK_THROWS(write_atomic(dir / "a.txt" / "x.txt", "x"));
        write_atomic(dir / "sub" / "b.txt", "created");
        CHECK(fs::exists(dir / "sub" / "b.txt"));
        fs::remove_all(dir);
    }

    TEST_CASE("operator csv")
    {
        RepOperator T = RepOperator::Zero(5, 5);
        T(1, 3) = cplx(0.1, -2.5e-17);
        T(4, 0) = 7.0;
        std::stringstream ss;
        write_csv(ss, T);
        CHECK(ss.str().rfind("row,col,re,im\n", 0) == 0);
        CHECK((read_rep_csv(ss, 5) - T).norm() == 0.0);
    }

    TEST_CASE("field and symbol roundtrip")
    {
        auto dir = scratch("symbol");
        auto m = testing::affine_model();
        std::mt19937_64 rng(3);
        auto F = plancherel_fwd(random_function(m, rng));
        write_field(dir / "field", F);
        CHECK(hs_norm(read_field(dir / "field", m) - F) == 0.0);

        auto A = random_symbol(m, 5);
        write_symbol(dir / "symbol", A);
        auto B = read_symbol(dir / "symbol", m);
        CHECK(B.support_size() == A.support_size());
        CHECK(relative_symbol_error(B, A) == 0.0);

        // a different grid must be rejected
        CHECK_THROWS_AS(read_symbol(dir / "symbol", testing::affine_model(1)), GridMismatch);

        write_scalar_symbol(dir / "scalar", random_scalar_symbol(m, 1));
        CHECK(fs::exists(dir / "scalar" / "lattice.json"));
        fs::remove_all(dir);
    }

    TEST_CASE("reports")
    {
        auto cfg = parse_config(R"({"backend":"cyclic","grid":{"N":8}})");
        auto rep = run("plancherel-check", cfg);
        CHECK(rep.pass());
        CHECK(rep.to_json().find("\"parseval\"") != std::string::npos);

        // a tolerance override below the residual flips the check
        auto strict = parse_config(R"({"backend":"cyclic","grid":{"N":8},"tolerances":{"parseval":1e-300}})");
        CHECK_FALSE(run("plancherel-check", strict).pass());

        auto sweep = refine_sweep("plancherel-check", cfg, 3);
        CHECK(sweep.trajectory.size() == 3);
        CHECK(sweep.trajectory[2].grid.n == 32);
        CHECK(sweep.pass());
        CHECK(sweep.trajectory_csv().rfind("level,check,residual,tolerance,pass\n", 0) == 0);
        CHECK_THROWS_AS(refine_sweep("plancherel-check", cfg, 1), ConfigError);
        CHECK_THROWS_AS(run("nonsense", cfg), ConfigError);

        // identical config gives identical checks
        auto a = run("quantize-check", cfg), b = run("quantize-check", cfg);
        REQUIRE(a.checks.size() == b.checks.size());
        for (std::size_t i = 0; i < a.checks.size(); ++i) CHECK(a.checks[i].residual == b.checks[i].residual);
    }
}

#include "gpdo/experiments.hpp"

#include "gpdo/error.hpp"
#include "gpdo/testdata.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

namespace gpdo {

using json = nlohmann::json;

namespace {

// Dense affine checks keep an n x n complex kernel; level 2 of the baseline
// grid (16384 nodes) would need several GB per operator.
constexpr std::size_t dense_node_limit = 8192;

class Suite {
public:
    explicit Suite(const RunConfig& config) : config_(config), model_(make_model(config.grid)), rng_(config.seed) {}

    const ModelPtr& model() const { return model_; }
    bool affine() const { return model_->backend() == Backend::affine; }
    std::uint64_t seed() const { return config_.seed; }
    std::mt19937_64& rng() { return rng_; }

    void require_dense() const
    {
        if (model_->grid().size() > dense_node_limit)
            throw ConfigError("grid has " + std::to_string(model_->grid().size()) +
                              " nodes; dense operator checks are limited to " + std::to_string(dense_node_limit));
    }

    void add(const std::string& name, double residual, double default_tolerance, bool convergence = false)
    {
        CheckResult c;
        c.name = name;
        c.residual = residual;
        auto it = config_.tolerances.find(name);
        c.tolerance = it != config_.tolerances.end() ? it->second : default_tolerance;
        c.pass = residual <= c.tolerance;  // NaN fails
        c.convergence = convergence && affine();
        checks_.push_back(c);
    }

    std::vector<CheckResult> take() { return std::move(checks_); }

private:
    const RunConfig& config_;
    ModelPtr model_;
    std::mt19937_64 rng_;
    std::vector<CheckResult> checks_;
};

// Interior bumps used as affine test functions: b-width 1.5 and carrier 0.3
// keep the b-spectrum inside the resolved s-window.
struct AffineData {
    SampledFunction f, g, u;
};

AffineData affine_data(const ModelPtr& m)
{
    BumpParams pf;
    pf.b0 = 0.5;
    pf.log_a0 = 0.1;
    pf.width_b = 2.0;
    pf.width_log_a = 0.25;
    pf.modulation = 0.0;
    BumpParams pg;
    pg.b0 = -0.3;
    pg.log_a0 = -0.1;
    BumpParams pu;
    pu.b0 = 0.2;
    pu.log_a0 = 0.05;
    return {bump(m, pf), bump(m, normalized(pg)), bump(m, normalized(pu))};
}

double field_relative(const OperatorField& a, const OperatorField& b)
{
    const double s = hs_norm(b);
    return s == 0.0 ? hs_norm(a) : hs_norm(a - b) / s;
}

void plancherel_check(Suite& s)
{
    const auto& m = s.model();
    SampledFunction f, g, u;
    if (s.affine()) {
        auto d = affine_data(m);
        f = d.u;
        g = d.g;
        u = d.u;
    } else {
        f = random_function(m, s.rng());
        g = random_function(m, s.rng());
        u = random_function(m, s.rng());
    }
    const double exact = s.affine() ? 1e-2 : 1e-12;
    s.add("parseval", parseval_residual(f), exact, true);
    s.add("inversion_roundtrip", relative_error(plancherel_inv(plancherel_fwd(f)), f), s.affine() ? 5e-2 : 1e-12, true);
    s.add("lsq_inverse_vs_trace_formula",
          relative_error(plancherel_lsq_inverse(plancherel_fwd(f)), plancherel_inv(plancherel_fwd(f))),
          s.affine() ? 5e-2 : 1e-12);
    s.add("alt_transform_automorphism", field_relative(alt_plancherel(f), plancherel_fwd(conj(involution_p(f, 2.0)))),
          s.affine() ? 1e-3 : 1e-10);
    s.add("convolution_diagonalized", conv_diag_check(g, u), exact);

    // semi-invariance of the Duflo-Moore operator, 100 random (b, r^k), |k| <= 4, both signs
    double worst = 0.0;
    if (s.affine()) {
        std::uniform_real_distribution<double> bdist(-4.0, 4.0);
        std::uniform_int_distribution<int> kdist(-4, 4);
        const double r = m->grid().ratio();
        double smax = 0.0;
        for (std::size_t xi = 0; xi < m->dual_size(); ++xi)
            for (std::size_t q = 0; q < m->rep_grid(xi).size(); ++q) smax = std::max(smax, std::abs(m->rep_grid(xi).s(q)));
        for (int t = 0; t < 100; ++t) {
            const auto x = GroupPoint::affine(bdist(s.rng()), std::pow(r, kdist(s.rng())));
            for (std::size_t xi = 0; xi < m->dual_size(); ++xi)
                worst = std::max(worst, semi_invariance_residual(*m, xi, x) / smax);
        }
    } else {
        for (std::size_t i = 0; i < m->grid().size(); ++i)
            for (std::size_t xi = 0; xi < m->dual_size(); ++xi)
                worst = std::max(worst, semi_invariance_residual(*m, xi, m->grid().node(i)));
    }
    s.add("semi_invariance", worst, 1e-12);
}

void quantize_check(Suite& s)
{
    const auto& m = s.model();
    if (s.affine()) s.require_dense();
    const Symbol A = random_symbol(m, s.seed());
    const DenseOperator T = op_left(A);
    s.add("hs_isometry", std::abs(T.hs_norm() - A.norm()) / A.norm(), s.affine() ? 5e-2 : 1e-12, true);

    auto inv = inverse_op(T, std::numeric_limits<double>::infinity());
    if (s.affine()) {
        s.add("inverse_op_residual", inv.residual, 1e-8);
        const auto u = affine_data(m).u;
        const DenseOperator W = op_left(wigner(u, u));
        s.add("wigner_trace", std::abs(W.trace() - inner(u, u)) / std::abs(inner(u, u)), 2e-2);
        s.add("wigner_rank_one", relative_hs_error(W, DenseOperator::rank_one(u, u)), 5e-2, true);
    } else {
        s.add("inverse_op_roundtrip", relative_symbol_error(inv.symbol, A), 1e-12);
        const auto u = random_function(m, s.rng());
        const auto v = random_function(m, s.rng());
        s.add("wigner_rank_one", relative_hs_error(op_left(wigner(u, v)), DenseOperator::rank_one(u, v)), 1e-12);
        s.add("identity_symbol", relative_hs_error(op_left(Symbol::identity(m)), DenseOperator::identity(m)), 1e-12);
    }
}

void moyal_check(Suite& s)
{
    const auto& m = s.model();
    if (s.affine()) {
        s.require_dense();
        const Symbol A = random_symbol(m, s.seed());
        const Symbol B = random_symbol(m, s.seed() + 1);
        const double inf = std::numeric_limits<double>::infinity();
        // Operator products and adjoints need not lie exactly in the band-limited
        // range of the discrete forward map; the least-squares residual measures
        // that defect and shrinks as the s-grid grows.
        s.add("product_range_defect", moyal_product(A, B, inf).residual, 1e-6, true);
        s.add("involution_range_defect", moyal_involution(A, inf).residual, 5e-3, true);
        return;
    }
    const Symbol A = random_symbol(m, s.seed());
    const Symbol B = random_symbol(m, s.seed() + 1);
    const Symbol C = random_symbol(m, s.seed() + 2);
    auto prod = [](const Symbol& x, const Symbol& y) { return moyal_product(x, y).symbol; };
    auto star = [](const Symbol& x) { return moyal_involution(x).symbol; };
    s.add("associativity", relative_symbol_error(prod(prod(A, B), C), prod(A, prod(B, C))), 1e-12);
    s.add("involution_antihomomorphism", relative_symbol_error(star(prod(A, B)), prod(star(B), star(A))), 1e-12);
    s.add("involution_twice", relative_symbol_error(star(star(A)), A), 1e-12);
    s.add("identity_unit", relative_symbol_error(prod(A, Symbol::identity(m)), A), 1e-12);
}

void covariance_check(Suite& s)
{
    const auto& m = s.model();
    const Symbol A = random_symbol(m, s.seed());
    std::vector<GroupPoint> ys;
    if (s.affine()) {
        s.require_dense();
        const double r = m->grid().ratio();
        ys = {GroupPoint::affine(0.5, 1.0), GroupPoint::affine(0.0, r), GroupPoint::affine(-0.5, 1.0 / (r * r))};
    } else {
        const auto n = m->config().n;
        std::uniform_int_distribution<std::int64_t> kd(0, n - 1);
        for (int t = 0; t < 3; ++t) ys.push_back(GroupPoint::cyclic(kd(s.rng()), n));
    }
    double worst = 0.0;
    for (const auto& y : ys)
        worst = std::max(worst, relative_hs_error(op_left(translate_symbol(y, A)), conjugate_by_translation(y, A)));
    s.add("covariance", worst, s.affine() ? 1e-2 : 1e-12, true);
    if (!s.affine()) {
        const auto y = ys[0], z = ys[1];
        s.add("action_law",
              relative_symbol_error(translate_symbol(y, translate_symbol(z, A)), translate_symbol(multiply(y, z), A)),
              1e-12);
    }
}

void tilde_check(Suite& s)
{
    if (s.affine()) s.require_dense();
    const Symbol A = random_symbol(s.model(), s.seed());
    s.add("left_right_equivalence", relative_hs_error(op_right(tilde_symbol(A)), op_left(A)), s.affine() ? 1e-3 : 1e-12,
          true);
}

void multconv_check(Suite& s)
{
    const auto& m = s.model();
    SampledFunction f, g, u;
    if (s.affine()) {
        s.require_dense();
        auto d = affine_data(m);
        f = d.f;
        g = d.g;
        u = d.u;
    } else {
        f = random_function(m, s.rng());
        g = random_function(m, s.rng());
        u = random_function(m, s.rng());
    }
    const DenseOperator T = op_left(mult_conv_symbol(f, g));
    s.add("apply", relative_error(T.apply(u), f * convolve(g, u)), s.affine() ? 2e-2 : 1e-12, true);
    const double formula = norm(modular_weighted(f, -0.5)) * norm(modular_weighted(g, 0.5));
    s.add("hs_norm_product", std::abs(T.hs_norm() - formula) / formula, s.affine() ? 2e-2 : 1e-12);
}

void crossed_check(Suite& s)
{
    const auto& m = s.model();
    if (s.affine()) {
        s.require_dense();
        const Symbol A = random_symbol(m, s.seed());
        s.add("frak_construction_paths", relative_hs_error(frak_op(A), frak_op_via_op_left(A)), 1e-10);
        return;
    }
    const auto F = random_crossed_kernel(m, s.rng());
    const auto G = random_crossed_kernel(m, s.rng());
    s.add("schrodinger_homomorphism",
          relative_hs_error(schrodinger(crossed_product(F, G)), schrodinger(F).compose(schrodinger(G))), 1e-12);
    s.add("schrodinger_involution", relative_hs_error(schrodinger(crossed_involution(F)), schrodinger(F).adjoint()),
          1e-12);
    const Symbol A = random_symbol(m, s.seed());
    s.add("frak_equals_op", relative_hs_error(frak_op(A), op_left(A)), 1e-12);
}

void expcalc_check(Suite& s)
{
    const auto& m = s.model();
    if (!s.affine()) throw UnsupportedError("expcalc-check needs the affine backend");
    s.require_dense();
    const auto lat = CotangentLattice::for_model(*m);
    const auto u = affine_data(m).u;

    const LatticeFunction w = fourier_exp(u);
    s.add("fourier_exp_roundtrip", relative_error(fourier_exp_inv(m, w), u), 1e-3);
    s.add("l_roundtrip", lattice_norm(lat, l_inv(l_map(m, w)) - w) / lattice_norm(lat, w), 5e-2);
    s.add("l_unitarity", std::abs(hs_norm(l_map(m, w)) - lattice_norm(lat, w)) / lattice_norm(lat, w), 5e-2, true);

    const ScalarSymbol B = random_scalar_symbol(m, s.seed());
    s.add("construction_paths", relative_hs_error(op_scalar(B), op_left(l_symbol(B))), 5e-2, true);

    // flat window: the cotangent integral collapses onto y = x
    const auto f = affine_data(m).f;
    const LatticeFunction flat_window = LatticeFunction::Ones(lat.n_eta(), lat.n_chi());
    s.add("broad_window_limit",
          relative_hs_error(op_scalar(ScalarSymbol::separable(f, flat_window)), mult_op(modular_weighted(f, 0.5))),
          5e-2);

    double jump = 0.0;
    for (double a1 : {0.5, 1.0, 2.0}) {
        const double at = kernel_factor(a1, a1);
        for (double t : {1.0 + 1e-8, 1.0 - 1e-8}) jump = std::max(jump, std::abs(kernel_factor(t * a1, a1) - at) / at);
    }
    s.add("kernel_factor_continuity", jump, 1e-6);
}

using SuiteFn = std::function<void(Suite&)>;

const std::map<std::string, SuiteFn>& suites()
{
    static const std::map<std::string, SuiteFn> table{
        {"plancherel-check", plancherel_check}, {"quantize-check", quantize_check},
        {"moyal-check", moyal_check},           {"covariance-check", covariance_check},
        {"tilde-check", tilde_check},           {"multconv-check", multconv_check},
        {"crossed-check", crossed_check},       {"expcalc-check", expcalc_check},
    };
    return table;
}

std::vector<CheckResult> run_checks(const std::string& command, const RunConfig& config)
{
    if (command == "all") {
        std::vector<CheckResult> out;
        for (const auto& name : command_names()) {
            if (name == "all") continue;
            if (name == "expcalc-check" && config.grid.backend != Backend::affine) continue;
            for (auto& c : run_checks(name, config)) {
                c.name = name + "/" + c.name;
                out.push_back(std::move(c));
            }
        }
        return out;
    }
    auto it = suites().find(command);
    if (it == suites().end()) throw ConfigError("unknown command '" + command + "'");
    Suite s(config);
    it->second(s);
    return s.take();
}

json checks_json(const std::vector<CheckResult>& checks)
{
    json out = json::array();
    for (const auto& c : checks)
        out.push_back({{"name", c.name},
                       {"residual", c.residual},
                       {"tolerance", c.tolerance},
                       {"pass", c.pass},
                       {"convergence", c.convergence}});
    return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

const std::vector<std::string>& command_names()
{
    static const std::vector<std::string> names{
        "plancherel-check", "quantize-check", "moyal-check",   "covariance-check", "tilde-check",
        "multconv-check",   "crossed-check",  "expcalc-check", "all",
    };
    return names;
}

bool ExperimentReport::pass() const
{
    for (const auto& c : checks)
        if (!c.pass) return false;
    for (const auto& level : trajectory)
        for (const auto& c : level.checks)
            if (!c.pass) return false;
    return true;
}

std::string ExperimentReport::to_json() const
{
    json doc{{"experiment", experiment},
             {"config", {{"source", config.source_text}, {"grid", json::parse(grid_config_json(config.grid))}}},
             {"seed", config.seed},
             {"checks", checks_json(checks)},
             {"seconds", seconds},
             {"pass", pass()}};
    if (config.grid.backend == Backend::affine)
        doc["cotangent_measure"] = "d_eta d_chi / (2 pi)^2 on the discrete-Fourier dual of the (b, ln a) grid";
    if (!trajectory.empty()) {
        json levels = json::array();
        for (const auto& l : trajectory)
            levels.push_back({{"level", l.level},
                              {"grid", json::parse(grid_config_json(l.grid))},
                              {"checks", checks_json(l.checks)},
                              {"seconds", l.seconds}});
        doc["trajectory"] = levels;
    }
    return doc.dump(2) + "\n";
}

std::string ExperimentReport::trajectory_csv() const
{
    std::ostringstream out;
    out.precision(17);
    out << "level,check,residual,tolerance,pass\n";
    for (const auto& l : trajectory)
        for (const auto& c : l.checks)
            out << l.level << ',' << c.name << ',' << c.residual << ',' << c.tolerance << ',' << (c.pass ? 1 : 0)
                << '\n';
    return out.str();
}

ExperimentReport run(const std::string& command, const RunConfig& config)
{
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentReport report;
    report.experiment = command;
    report.config = config;
    report.checks = run_checks(command, config);
    report.seconds = seconds_since(t0);
    return report;
}

ExperimentReport refine_sweep(const std::string& command, const RunConfig& config, int levels)
{
    if (levels < 2) throw ConfigError("a refinement sweep needs at least 2 levels");
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentReport report;
    report.experiment = command + " (refinement sweep)";
    report.config = config;
    for (int level = 0; level < levels; ++level) {
        const auto tl = std::chrono::steady_clock::now();
        RunConfig at = config;
        at.grid = refine(config.grid, level);
        LevelResult r;
        r.level = at.grid.refinement_level;
        r.grid = at.grid;
        r.checks = run_checks(command, at);
        r.seconds = seconds_since(tl);
        report.trajectory.push_back(std::move(r));
    }

    const auto& first = report.trajectory.front().checks;
    for (std::size_t i = 0; i < first.size(); ++i) {
        if (!first[i].convergence) continue;
        CheckResult mono;
        mono.name = first[i].name + "/monotone";
        // residual: largest level-to-level ratio, which must stay strictly below 1
        mono.tolerance = std::nextafter(1.0, 0.0);
        double worst_ratio = 0.0;
        for (std::size_t l = 1; l < report.trajectory.size(); ++l) {
            const double prev = report.trajectory[l - 1].checks.at(i).residual;
            const double cur = report.trajectory[l].checks.at(i).residual;
            if (std::max(prev, cur) < rounding_floor) continue;
            worst_ratio = std::max(worst_ratio, prev > 0.0 ? cur / prev : std::numeric_limits<double>::infinity());
        }
        mono.residual = worst_ratio;
        mono.pass = worst_ratio <= mono.tolerance;
        report.checks.push_back(mono);
    }
    report.seconds = seconds_since(t0);
    return report;
}

} // namespace gpdo

#include "gpdo/lspace.hpp"

#include "gpdo/error.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace gpdo {

SampledFunction::SampledFunction(ModelPtr model, Eigen::VectorXcd values, PointRule rule)
    : model_(std::move(model)), values_(std::move(values)), rule_(std::move(rule))
{
    if (!model_) throw GridMismatch("sampled function without a model");
    if (static_cast<std::size_t>(values_.size()) != model_->grid().size())
        throw GridMismatch("sample count differs from node count");
}

SampledFunction SampledFunction::from_rule(const ModelPtr& model, PointRule rule)
{
    const auto& grid = model->grid();
    Eigen::VectorXcd v(static_cast<Eigen::Index>(grid.size()));
    for (std::size_t i = 0; i < grid.size(); ++i) v[static_cast<Eigen::Index>(i)] = rule(grid.node(i));
    return {model, std::move(v), std::move(rule)};
}

SampledFunction SampledFunction::zero(const ModelPtr& model)
{
    return {model, Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(model->grid().size())),
            [](const GroupPoint&) { return cplx(0.0); }};
}

SampledFunction SampledFunction::constant(const ModelPtr& model, cplx c)
{
    return {model, Eigen::VectorXcd::Constant(static_cast<Eigen::Index>(model->grid().size()), c),
            [c](const GroupPoint&) { return c; }};
}

SampledFunction SampledFunction::delta_e(const ModelPtr& model)
{
    const auto& grid = model->grid();
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(grid.size()));
    auto e = grid.identity_index();
    v[static_cast<Eigen::Index>(e)] = 1.0 / grid.weight(e);
    return {model, std::move(v)};
}

cplx SampledFunction::eval(const GroupPoint& x) const
{
    if (rule_) return rule_(x);
    return interpolate(x);
}

std::vector<StencilEntry> interpolation_stencil(const GroupGrid& grid, const GroupPoint& x)
{
    if (x.backend != grid.backend()) throw StructuralError("evaluation point from another backend");
    if (grid.backend() == Backend::cyclic) return {{static_cast<std::size_t>(x.k), 1.0}};

    const double tj = std::log(x.a) / grid.log_ratio() - grid.j_min();
    const double ti = (x.b + grid.config().b_halfwidth) / grid.hb();
    const auto nb = static_cast<long>(grid.nb());
    const auto na = static_cast<long>(grid.na());
    constexpr double snap = 1e-9;
    if (ti < -snap || ti > static_cast<double>(nb - 1) + snap || tj < -snap || tj > static_cast<double>(na - 1) + snap)
        return {};

    // node index and fractional offset, snapping near-integers onto the node
    auto split = [](double t, long n) {
        double r = std::round(t);
        if (std::abs(t - r) < snap) return std::pair<long, double>{std::min(static_cast<long>(r), n - 1), 0.0};
        long i0 = static_cast<long>(std::floor(t));
        return std::pair<long, double>{i0, t - static_cast<double>(i0)};
    };
    auto [i0, fi] = split(ti, nb);
    auto [j0, fj] = split(tj, na);

    std::vector<StencilEntry> out;
    out.reserve(4);
    for (int dj = 0; dj < (fj == 0.0 ? 1 : 2); ++dj)
        for (int di = 0; di < (fi == 0.0 ? 1 : 2); ++di) {
            double w = (di ? fi : 1.0 - fi) * (dj ? fj : 1.0 - fj);
            out.push_back({grid.index(static_cast<std::size_t>(i0 + di), static_cast<std::size_t>(j0 + dj)), w});
        }
    return out;
}

cplx SampledFunction::interpolate(const GroupPoint& x) const
{
    cplx acc = 0.0;
    for (const auto& [i, w] : interpolation_stencil(model_->grid(), x)) acc += w * values_[static_cast<Eigen::Index>(i)];
    return acc;
}

namespace {

void require_same(const SampledFunction& f, const SampledFunction& g, const char* what)
{
    require_compatible(f.model(), g.model(), what);
}

PointRule combine(const SampledFunction& f, const SampledFunction& g, std::function<cplx(cplx, cplx)> op)
{
    if (!f.has_rule() || !g.has_rule()) return {};
    return [rf = f.rule(), rg = g.rule(), op](const GroupPoint& x) { return op(rf(x), rg(x)); };
}

} // namespace

SampledFunction operator+(const SampledFunction& f, const SampledFunction& g)
{
    require_same(f, g, "function sum");
    return {f.model(), f.values() + g.values(), combine(f, g, std::plus<cplx>())};
}

SampledFunction operator-(const SampledFunction& f, const SampledFunction& g)
{
    require_same(f, g, "function difference");
    return {f.model(), f.values() - g.values(), combine(f, g, std::minus<cplx>())};
}

SampledFunction operator*(cplx c, const SampledFunction& f)
{
    PointRule rule;
    if (f.has_rule()) rule = [rf = f.rule(), c](const GroupPoint& x) { return c * rf(x); };
    return {f.model(), c * f.values(), rule};
}

SampledFunction operator*(const SampledFunction& f, const SampledFunction& g)
{
    require_same(f, g, "pointwise product");
    return {f.model(), f.values().cwiseProduct(g.values()), combine(f, g, std::multiplies<cplx>())};
}

SampledFunction modular_weighted(const SampledFunction& f, double power)
{
    const auto& grid = f.grid();
    Eigen::VectorXcd v = f.values();
    for (std::size_t i = 0; i < grid.size(); ++i) v[static_cast<Eigen::Index>(i)] *= std::pow(grid.modular(i), power);
    PointRule rule;
    if (f.has_rule())
        rule = [rf = f.rule(), power](const GroupPoint& x) { return std::pow(modular(x), power) * rf(x); };
    return {f.model(), std::move(v), rule};
}

SampledFunction right_translate(const SampledFunction& f, const GroupPoint& x)
{
    auto rule = [f, x](const GroupPoint& y) { return f.eval(multiply(y, x)); };
    return SampledFunction::from_rule(f.model(), rule);
}

SampledFunction left_translate(const SampledFunction& f, const GroupPoint& x)
{
    auto xinv = inverse(x);
    auto rule = [f, xinv](const GroupPoint& y) { return f.eval(multiply(xinv, y)); };
    return SampledFunction::from_rule(f.model(), rule);
}

cplx haar_integral(const SampledFunction& f)
{
    const auto& w = f.grid().weights();
    cplx acc = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) acc += w[i] * f[i];
    return acc;
}

cplx inner(const SampledFunction& u, const SampledFunction& v)
{
    require_same(u, v, "inner product");
    const auto& w = u.grid().weights();
    cplx acc = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) acc += w[i] * u[i] * std::conj(v[i]);
    return acc;
}

double norm(const SampledFunction& u)
{
    const auto& w = u.grid().weights();
    double acc = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) acc += w[i] * std::norm(u[i]);
    return std::sqrt(acc);
}

double relative_error(const SampledFunction& u, const SampledFunction& v)
{
    return norm(u - v) / norm(v);
}

SampledFunction convolve(const SampledFunction& f, const SampledFunction& g)
{
    require_same(f, g, "convolution");
    auto rule = [f, g](const GroupPoint& x) {
        const auto& grid = f.grid();
        cplx acc = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            if (f[i] == 0.0) continue;
            acc += grid.weight(i) * f[i] * g.eval(multiply(inverse(grid.node(i)), x));
        }
        return acc;
    };
    return SampledFunction::from_rule(f.model(), rule);
}

SampledFunction involution_p(const SampledFunction& f, double p)
{
    if (!(p >= 1.0)) throw ConfigError("involution exponent p must be >= 1");
    auto rule = [f, p](const GroupPoint& x) {
        return std::pow(modular(x), -1.0 / p) * std::conj(f.eval(inverse(x)));
    };
    return SampledFunction::from_rule(f.model(), rule);
}

SampledFunction flat(const SampledFunction& g)
{
    auto rule = [g](const GroupPoint& x) { return std::conj(g.eval(inverse(x))); };
    return SampledFunction::from_rule(g.model(), rule);
}

SampledFunction conj(const SampledFunction& f)
{
    PointRule rule;
    if (f.has_rule()) rule = [rf = f.rule()](const GroupPoint& x) { return std::conj(rf(x)); };
    return {f.model(), f.values().conjugate(), rule};
}

DenseOperator::DenseOperator(ModelPtr model, Eigen::MatrixXcd kernel)
    : model_(std::move(model)), kernel_(std::move(kernel))
{
    if (!model_) throw GridMismatch("operator without a model");
    auto n = static_cast<Eigen::Index>(model_->grid().size());
    if (kernel_.rows() != n || kernel_.cols() != n) throw GridMismatch("kernel shape differs from node count");
}

DenseOperator DenseOperator::zero(const ModelPtr& model)
{
    auto n = static_cast<Eigen::Index>(model->grid().size());
    return {model, Eigen::MatrixXcd::Zero(n, n)};
}

DenseOperator DenseOperator::identity(const ModelPtr& model)
{
    const auto& grid = model->grid();
    auto n = static_cast<Eigen::Index>(grid.size());
    Eigen::MatrixXcd K = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) K(i, i) = 1.0 / grid.weight(static_cast<std::size_t>(i));
    return {model, std::move(K)};
}

DenseOperator DenseOperator::rank_one(const SampledFunction& u, const SampledFunction& v)
{
    require_same(u, v, "rank-one operator");
    return {u.model(), v.values() * u.values().adjoint()};
}

namespace {

Eigen::VectorXd weight_vector(const GroupGrid& grid)
{
    Eigen::VectorXd w(static_cast<Eigen::Index>(grid.size()));
    for (std::size_t i = 0; i < grid.size(); ++i) w[static_cast<Eigen::Index>(i)] = grid.weight(i);
    return w;
}

} // namespace

SampledFunction DenseOperator::apply(const SampledFunction& u) const
{
    require_compatible(model_, u.model(), "operator application");
    Eigen::VectorXd w = weight_vector(model_->grid());
    Eigen::VectorXcd wu = u.values().cwiseProduct(w.cast<cplx>());
    return {model_, kernel_ * wu};
}

DenseOperator DenseOperator::compose(const DenseOperator& other) const
{
    require_compatible(model_, other.model_, "operator composition");
    Eigen::VectorXd w = weight_vector(model_->grid());
    Eigen::MatrixXcd right = w.cast<cplx>().asDiagonal() * other.kernel_;
    Eigen::MatrixXcd K = kernel_ * right;
    return {model_, std::move(K)};
}

DenseOperator DenseOperator::adjoint() const
{
    return {model_, kernel_.adjoint()};
}

double DenseOperator::hs_norm() const
{
    Eigen::VectorXd w = weight_vector(model_->grid());
    double acc = 0.0;
    for (Eigen::Index y = 0; y < kernel_.cols(); ++y)
        acc += w[y] * (kernel_.col(y).cwiseAbs2().cwiseProduct(w)).sum();
    return std::sqrt(acc);
}

cplx DenseOperator::hs_inner(const DenseOperator& other) const
{
    require_compatible(model_, other.model_, "operator HS product");
    Eigen::VectorXd w = weight_vector(model_->grid());
    cplx acc = 0.0;
    for (Eigen::Index y = 0; y < kernel_.cols(); ++y)
        acc += w[y] * (kernel_.col(y).array() * other.kernel_.col(y).array().conjugate() * w.array()).sum();
    return acc;
}

double DenseOperator::hs_norm_by_trace() const
{
    return std::sqrt(std::max(0.0, compose(adjoint()).trace().real()));
}

cplx DenseOperator::trace() const
{
    Eigen::VectorXd w = weight_vector(model_->grid());
    return (kernel_.diagonal().array() * w.array()).sum();
}

DenseOperator operator+(const DenseOperator& a, const DenseOperator& b)
{
    require_compatible(a.model(), b.model(), "operator sum");
    return {a.model(), a.kernel() + b.kernel()};
}

DenseOperator operator-(const DenseOperator& a, const DenseOperator& b)
{
    require_compatible(a.model(), b.model(), "operator difference");
    return {a.model(), a.kernel() - b.kernel()};
}

DenseOperator operator*(cplx c, const DenseOperator& a)
{
    return {a.model(), c * a.kernel()};
}

double relative_hs_error(const DenseOperator& a, const DenseOperator& b)
{
    return (a - b).hs_norm() / b.hs_norm();
}

DenseOperator mult_op(const SampledFunction& f)
{
    const auto& grid = f.grid();
    auto n = static_cast<Eigen::Index>(grid.size());
    Eigen::MatrixXcd K = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) K(i, i) = f[static_cast<std::size_t>(i)] / grid.weight(static_cast<std::size_t>(i));
    return {f.model(), std::move(K)};
}

DenseOperator conv_op_left(const SampledFunction& g)
{
    const auto& grid = g.grid();
    auto n = static_cast<Eigen::Index>(grid.size());
    Eigen::MatrixXcd K(n, n);
    for (Eigen::Index y = 0; y < n; ++y) {
        auto py = grid.node(static_cast<std::size_t>(y));
        auto yinv = inverse(py);
        double dy = 1.0 / modular(py);
        for (Eigen::Index x = 0; x < n; ++x)
            K(x, y) = g.eval(multiply(grid.node(static_cast<std::size_t>(x)), yinv)) * dy;
    }
    return {g.model(), std::move(K)};
}

DenseOperator conv_op_right(const SampledFunction& g)
{
    const auto& grid = g.grid();
    auto n = static_cast<Eigen::Index>(grid.size());
    Eigen::MatrixXcd K(n, n);
    for (Eigen::Index y = 0; y < n; ++y) {
        auto yinv = inverse(grid.node(static_cast<std::size_t>(y)));
        for (Eigen::Index x = 0; x < n; ++x)
            K(x, y) = g.eval(multiply(yinv, grid.node(static_cast<std::size_t>(x))));
    }
    return {g.model(), std::move(K)};
}

void write_csv(std::ostream& out, const SampledFunction& f)
{
    const auto& grid = f.grid();
    out << std::setprecision(17);
    if (grid.backend() == Backend::cyclic) {
        out << "node_index,k,re,im\n";
        for (std::size_t i = 0; i < grid.size(); ++i)
            out << i << ',' << grid.node(i).k << ',' << f[i].real() << ',' << f[i].imag() << '\n';
    } else {
        out << "node_index,b,a,re,im\n";
        for (std::size_t i = 0; i < grid.size(); ++i) {
            auto p = grid.node(i);
            out << i << ',' << p.b << ',' << p.a << ',' << f[i].real() << ',' << f[i].imag() << '\n';
        }
    }
}

SampledFunction read_csv(std::istream& in, const ModelPtr& model)
{
    const auto& grid = model->grid();
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(grid.size()));
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("empty CSV");
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() < 4) throw ConfigError("malformed CSV row: " + line);
        auto idx = std::stoul(cells[0]);
        if (idx >= grid.size()) throw GridMismatch("CSV node index out of range");
        double re = std::stod(cells[cells.size() - 2]);
        double im = std::stod(cells[cells.size() - 1]);
        v[static_cast<Eigen::Index>(idx)] = cplx(re, im);
        ++rows;
    }
    if (rows != grid.size()) throw GridMismatch("CSV row count differs from node count");
    return {model, std::move(v)};
}

void write_csv(std::ostream& out, const DenseOperator& T)
{
    out << std::setprecision(17) << "row,col,re,im\n";
    const auto& K = T.kernel();
    for (Eigen::Index i = 0; i < K.rows(); ++i)
        for (Eigen::Index j = 0; j < K.cols(); ++j)
            out << i << ',' << j << ',' << K(i, j).real() << ',' << K(i, j).imag() << '\n';
}

} // namespace gpdo

#include "gpdo/quantizer.hpp"

#include "gpdo/error.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace gpdo {

Blocks zero_blocks(const Model& model)
{
    Blocks out;
    for (std::size_t xi = 0; xi < model.dual_size(); ++xi) {
        auto d = static_cast<Eigen::Index>(model.dim(xi));
        out.push_back(RepOperator::Zero(d, d));
    }
    return out;
}

namespace {

double blocks_norm2(const Model& model, const Blocks& b)
{
    double acc = 0.0;
    for (std::size_t xi = 0; xi < b.size(); ++xi) acc += model.dual(xi).weight * b[xi].squaredNorm();
    return acc;
}

void add_scaled(Blocks& acc, const Blocks& b, cplx c)
{
    for (std::size_t xi = 0; xi < acc.size(); ++xi) acc[xi] += c * b[xi];
}

} // namespace

Symbol::Symbol(ModelPtr model) : model_(std::move(model))
{
    if (!model_) throw GridMismatch("symbol without a model");
    nodes_.resize(model_->grid().size());
}

Symbol Symbol::from_rule(const ModelPtr& model, SymbolRule rule, double drop_tolerance)
{
    Symbol out(model);
    const auto& grid = model->grid();
    std::vector<double> norms(grid.size());
    double largest = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out.nodes_[i] = rule(grid.node(i));
        norms[i] = blocks_norm2(*model, out.nodes_[i]);
        largest = std::max(largest, norms[i]);
    }
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (norms[i] == 0.0 || norms[i] <= drop_tolerance * drop_tolerance * largest) out.nodes_[i].clear();
    out.rule_ = std::move(rule);
    return out;
}

Symbol Symbol::separable(const SampledFunction& f, const OperatorField& M)
{
    require_compatible(f.model(), M.model, "separable symbol");
    Symbol out(f.model());
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 0.0) continue;
        Blocks b = M.blocks;
        for (auto& m : b) m *= f[i];
        out.nodes_[i] = std::move(b);
    }
    if (f.has_rule())
        out.rule_ = [rf = f.rule(), blocks = M.blocks](const GroupPoint& x) {
            Blocks b = blocks;
            cplx c = rf(x);
            for (auto& m : b) m *= c;
            return b;
        };
    return out;
}

Symbol Symbol::identity(const ModelPtr& model)
{
    Blocks id = OperatorField::identity(model).blocks;
    return from_rule(model, [id](const GroupPoint&) { return id; });
}

std::size_t Symbol::support_size() const
{
    std::size_t n = 0;
    for (const auto& b : nodes_) n += b.empty() ? 0 : 1;
    return n;
}

void Symbol::set(std::size_t i, Blocks blocks)
{
    if (blocks.size() != model_->dual_size()) throw GridMismatch("block count differs from dual size");
    nodes_[i] = std::move(blocks);
}

Blocks Symbol::eval(const GroupPoint& x) const
{
    if (rule_) return rule_(x);
    const auto& grid = model_->grid();
    if (auto idx = grid.find(x)) return nonzero(*idx) ? nodes_[*idx] : zero_blocks(*model_);
    Blocks acc = zero_blocks(*model_);
    for (const auto& [i, w] : interpolation_stencil(grid, x))
        if (nonzero(i)) add_scaled(acc, nodes_[i], w);
    return acc;
}

OperatorField Symbol::slice(std::size_t i) const
{
    return {model_, nonzero(i) ? nodes_[i] : zero_blocks(*model_)};
}

double Symbol::norm() const
{
    const auto& grid = model_->grid();
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        if (nonzero(i)) acc += grid.weight(i) * blocks_norm2(*model_, nodes_[i]);
    return std::sqrt(acc);
}

cplx Symbol::inner(const Symbol& other) const
{
    require_compatible(model_, other.model_, "symbol inner product");
    const auto& grid = model_->grid();
    cplx acc = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (!nonzero(i) || !other.nonzero(i)) continue;
        for (std::size_t xi = 0; xi < model_->dual_size(); ++xi)
            acc += grid.weight(i) * model_->dual(xi).weight * hs_inner(nodes_[i][xi], other.nodes_[i][xi]);
    }
    return acc;
}

namespace {

Symbol combine(const Symbol& a, const Symbol& b, cplx cb)
{
    require_compatible(a.model(), b.model(), "symbol sum");
    Symbol out(a.model());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a.nonzero(i) && !b.nonzero(i)) continue;
        Blocks acc = a.nonzero(i) ? a.at(i) : zero_blocks(*a.model());
        if (b.nonzero(i)) add_scaled(acc, b.at(i), cb);
        out.set(i, std::move(acc));
    }
    if (a.has_rule() && b.has_rule())
        out.set_rule([ra = a.rule(), rb = b.rule(), cb](const GroupPoint& x) {
            Blocks acc = ra(x);
            add_scaled(acc, rb(x), cb);
            return acc;
        });
    return out;
}

} // namespace

Symbol operator+(const Symbol& a, const Symbol& b) { return combine(a, b, 1.0); }
Symbol operator-(const Symbol& a, const Symbol& b) { return combine(a, b, -1.0); }

Symbol operator*(cplx c, const Symbol& a)
{
    Symbol out(a.model());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a.nonzero(i)) continue;
        Blocks b = a.at(i);
        for (auto& m : b) m *= c;
        out.set(i, std::move(b));
    }
    if (a.has_rule())
        out.set_rule([ra = a.rule(), c](const GroupPoint& x) {
            Blocks b = ra(x);
            for (auto& m : b) m *= c;
            return b;
        });
    return out;
}

double relative_symbol_error(const Symbol& a, const Symbol& b)
{
    return (a - b).norm() / b.norm();
}

namespace {

std::vector<double> root_abs_s(const RepGrid& rep)
{
    std::vector<double> out(rep.size());
    for (std::size_t q = 0; q < rep.size(); ++q) out[q] = std::sqrt(std::abs(rep.s(q)));
    return out;
}

// cyclic kernel: sum_m nu A(x, m) conj(chi_m(x - y))
DenseOperator cyclic_kernel(const Symbol& A)
{
    const auto& model = *A.model();
    const auto n = static_cast<std::int64_t>(model.grid().size());
    Eigen::MatrixXcd K = Eigen::MatrixXcd::Zero(n, n);
    for (std::int64_t x = 0; x < n; ++x) {
        if (!A.nonzero(static_cast<std::size_t>(x))) continue;
        const auto& b = A.at(static_cast<std::size_t>(x));
        for (std::int64_t y = 0; y < n; ++y) {
            cplx acc = 0.0;
            for (std::size_t xi = 0; xi < model.dual_size(); ++xi)
                acc += model.dual(xi).weight * b[xi](0, 0) * std::conj(model.character(model.dual(xi).character, x - y));
            K(x, y) = acc;
        }
    }
    return {A.model(), std::move(K)};
}

} // namespace

DenseOperator op_left(const Symbol& A)
{
    const auto& model = *A.model();
    if (model.backend() == Backend::cyclic) return cyclic_kernel(A);

    const auto& grid = model.grid();
    const auto ns = static_cast<int>(model.s_nodes());
    const auto nb = static_cast<Eigen::Index>(grid.nb());
    const auto na = static_cast<Eigen::Index>(grid.na());
    const auto nd = static_cast<Eigen::Index>(model.dual_size());
    const auto n = static_cast<Eigen::Index>(grid.size());

    Eigen::MatrixXcd phases(nb, nd * ns);
    std::vector<std::vector<double>> roots;
    for (Eigen::Index xi = 0; xi < nd; ++xi) {
        phases.middleCols(xi * ns, ns) = model.phase(static_cast<std::size_t>(xi));
        roots.push_back(root_abs_s(model.rep_grid(static_cast<std::size_t>(xi))));
    }
    std::vector<double> root_a(static_cast<std::size_t>(na));
    for (Eigen::Index ja = 0; ja < na; ++ja) root_a[static_cast<std::size_t>(ja)] = std::sqrt(grid.a_at(static_cast<std::size_t>(ja)));

    Eigen::MatrixXcd K = Eigen::MatrixXcd::Zero(n, n);
    Eigen::MatrixXcd V(nd * ns, na);
    for (std::size_t x = 0; x < grid.size(); ++x) {
        if (!A.nonzero(x)) continue;
        const auto ix = static_cast<Eigen::Index>(grid.ib_of(x));
        const int jx = grid.exponent_at(grid.ja_of(x));
        V.setZero();
        for (Eigen::Index xi = 0; xi < nd; ++xi) {
            const auto& X = A.at(x)[static_cast<std::size_t>(xi)];
            const auto& T = model.phase(static_cast<std::size_t>(xi));
            const auto& root = roots[static_cast<std::size_t>(xi)];
            const double nu = model.dual(static_cast<std::size_t>(xi)).weight;
            for (Eigen::Index ja = 0; ja < na; ++ja) {
                const int k = jx - grid.exponent_at(static_cast<std::size_t>(ja));
                for (int p = std::max(0, -k); p < std::min(ns, ns - k); ++p)
                    V(xi * ns + p + k, ja) = nu * X(p, p + k) * root[static_cast<std::size_t>(p + k)] * std::conj(T(ix, p));
            }
        }
        Eigen::MatrixXcd R = phases * V;
        for (Eigen::Index ja = 0; ja < na; ++ja)
            K.row(static_cast<Eigen::Index>(x)).segment(ja * nb, nb) = root_a[static_cast<std::size_t>(ja)] * R.col(ja).transpose();
    }
    return {A.model(), std::move(K)};
}

DenseOperator op_right(const Symbol& A)
{
    const auto& model = *A.model();
    if (model.backend() == Backend::cyclic) return cyclic_kernel(A);

    const auto& grid = model.grid();
    const auto ns = static_cast<int>(model.s_nodes());
    const auto nb = static_cast<Eigen::Index>(grid.nb());
    const auto na = static_cast<Eigen::Index>(grid.na());
    const auto nd = static_cast<Eigen::Index>(model.dual_size());
    const auto n = static_cast<Eigen::Index>(grid.size());
    const auto next = model.phase_ext(0).cols();
    const int lo = model.ext_lo();

    Eigen::MatrixXcd phases(nb, nd * next);
    std::vector<std::vector<double>> roots;
    for (Eigen::Index xi = 0; xi < nd; ++xi) {
        phases.middleCols(xi * next, next) = model.phase_ext(static_cast<std::size_t>(xi));
        roots.push_back(root_abs_s(model.rep_grid(static_cast<std::size_t>(xi))));
    }

    Eigen::MatrixXcd K = Eigen::MatrixXcd::Zero(n, n);
    Eigen::MatrixXcd V(nd * next, na);
    for (std::size_t x = 0; x < grid.size(); ++x) {
        if (!A.nonzero(x)) continue;
        const auto ix = static_cast<Eigen::Index>(grid.ib_of(x));
        const std::size_t jax = grid.ja_of(x);
        const int jx = grid.exponent_at(jax);
        V.setZero();
        for (Eigen::Index xi = 0; xi < nd; ++xi) {
            const auto& X = A.at(x)[static_cast<std::size_t>(xi)];
            const auto& E = model.phase_ext(static_cast<std::size_t>(xi));
            const auto& root = roots[static_cast<std::size_t>(xi)];
            const double nu = model.dual(static_cast<std::size_t>(xi)).weight;
            for (Eigen::Index ja = 0; ja < na; ++ja) {
                const int jy = grid.exponent_at(static_cast<std::size_t>(ja));
                const int k = jx - jy;
                for (int p = std::max(0, -k); p < std::min(ns, ns - k); ++p) {
                    const Eigen::Index q = p - jy - lo;
                    V(xi * next + q, ja) = nu * X(p, p + k) * root[static_cast<std::size_t>(p + k)] * std::conj(E(ix, q));
                }
            }
        }
        Eigen::MatrixXcd R = phases * V;
        for (Eigen::Index ja = 0; ja < na; ++ja) {
            const double factor = std::sqrt(grid.a_at(static_cast<std::size_t>(ja)) / grid.a_at(jax));
            K.row(static_cast<Eigen::Index>(x)).segment(ja * nb, nb) = factor * R.col(ja).transpose();
        }
    }
    return {A.model(), std::move(K)};
}

cplx op_left_entry(const Model& model, const Blocks& Ax, const GroupPoint& x, const GroupPoint& y)
{
    return inverse_value(model, Ax, multiply(x, inverse(y))) / std::sqrt(modular(y));
}

Symbol tilde_symbol(const Symbol& A)
{
    const auto& model = A.model();
    const auto& grid = model->grid();
    auto conjugate = [model](const GroupPoint& x, Blocks b) {
        for (std::size_t xi = 0; xi < b.size(); ++xi) {
            RepOperator P = rep_matrix(*model, xi, x);
            b[xi] = P.adjoint() * b[xi] * P;
        }
        return b;
    };
    Symbol out(model);
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (A.nonzero(i)) out.set(i, conjugate(grid.node(i), A.at(i)));
    if (A.has_rule())
        out.set_rule([ra = A.rule(), conjugate](const GroupPoint& x) { return conjugate(x, ra(x)); });
    return out;
}

Symbol wigner(const SampledFunction& u, const SampledFunction& v)
{
    require_compatible(u.model(), v.model(), "Wigner transform");
    const auto& model = u.model();
    const auto& grid = model->grid();
    Symbol out(model);
    Eigen::VectorXcd g(static_cast<Eigen::Index>(grid.size()));
    for (std::size_t x = 0; x < grid.size(); ++x) {
        if (v[x] == 0.0) continue;
        const auto px = grid.node(x);
        for (std::size_t y = 0; y < grid.size(); ++y) {
            const auto z = multiply(inverse(grid.node(y)), px);
            g[static_cast<Eigen::Index>(y)] = std::sqrt(modular(z)) * std::conj(u.eval(z));
        }
        OperatorField F = plancherel_fwd(SampledFunction(model, g));
        for (auto& b : F.blocks) b *= v[x];
        out.set(x, std::move(F.blocks));
    }
    return out;
}

namespace {

struct DiagonalSolver {
    int lo = 0, hi = 0;  // valid p range
    // kept factored: an explicit pseudo-inverse of these near-singular
    // blocks loses accuracy in the product
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd;
    double condition = 1.0;
    int rank_deficit = 0;
};

DiagonalSolver make_diagonal_solver(const Model& model, int k)
{
    const auto& grid = model.grid();
    const auto ns = static_cast<int>(model.s_nodes());
    const auto nb = static_cast<Eigen::Index>(grid.nb());
    DiagonalSolver s;
    s.lo = std::max(0, -k);
    s.hi = std::min(ns, ns - k);
    const int width = s.hi - s.lo;
    if (width <= 0) return s;
    const auto nd = static_cast<Eigen::Index>(model.dual_size());
    Eigen::MatrixXcd M(nb, nd * width);
    for (Eigen::Index xi = 0; xi < nd; ++xi) {
        const auto& rep = model.rep_grid(static_cast<std::size_t>(xi));
        const auto& T = model.phase(static_cast<std::size_t>(xi));
        const double nu = model.dual(static_cast<std::size_t>(xi)).weight;
        for (int p = s.lo; p < s.hi; ++p)
            M.col(xi * width + p - s.lo) = nu * std::sqrt(std::abs(rep.s(static_cast<std::size_t>(p + k)))) * T.col(p + k);
    }
    s.svd.compute(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = s.svd.singularValues();
    const double smin = sv[sv.size() - 1];
    s.condition = smin > 0.0 ? sv[0] / smin : std::numeric_limits<double>::infinity();
    s.rank_deficit = static_cast<int>(std::min(M.rows(), M.cols()) - s.svd.rank());
    return s;
}

InverseResult finish_inverse(const DenseOperator& T, Symbol symbol, double condition, int deficit, double max_residual)
{
    InverseResult res;
    res.condition = condition;
    res.rank_deficit = deficit;
    const double scale = T.hs_norm();
    DenseOperator back = op_left(symbol);
    res.residual = scale == 0.0 ? back.hs_norm() : (back - T).hs_norm() / scale;
    res.symbol = std::move(symbol);
    if (!(res.residual <= max_residual)) {
        std::ostringstream msg;
        msg << "symbol inversion residual " << res.residual << " exceeds " << max_residual
            << " (condition " << condition << ", rank deficit " << deficit << ")";
        throw SolverError(msg.str(), condition);
    }
    return res;
}

} // namespace

InverseResult inverse_op(const DenseOperator& T, double max_residual)
{
    const auto& model_ptr = T.model();
    const auto& model = *model_ptr;
    const auto& grid = model.grid();
    const auto& K = T.kernel();
    Symbol out(model_ptr);

    if (model.backend() == Backend::cyclic) {
        const auto n = static_cast<std::int64_t>(grid.size());
        Eigen::VectorXcd g(n);
        for (std::int64_t x = 0; x < n; ++x) {
            if (K.row(x).squaredNorm() == 0.0) continue;
            for (std::int64_t z = 0; z < n; ++z) g[z] = K(x, ((x - z) % n + n) % n);
            out.set(static_cast<std::size_t>(x), plancherel_fwd(SampledFunction(model_ptr, g)).blocks);
        }
        return finish_inverse(T, std::move(out), 1.0, 0, max_residual);
    }

    const auto nb = static_cast<Eigen::Index>(grid.nb());
    const auto na = static_cast<int>(grid.na());
    const auto nd = static_cast<Eigen::Index>(model.dual_size());
    std::map<int, DiagonalSolver> solvers;
    double condition = 1.0;
    int deficit = 0;
    for (int k = -(na - 1); k <= na - 1; ++k) {
        auto s = make_diagonal_solver(model, k);
        if (s.hi > s.lo) {
            condition = std::max(condition, s.condition);
            deficit += s.rank_deficit;
        }
        solvers.emplace(k, std::move(s));
    }

    for (std::size_t x = 0; x < grid.size(); ++x) {
        const auto row = K.row(static_cast<Eigen::Index>(x));
        if (row.squaredNorm() == 0.0) continue;
        const auto ix = static_cast<Eigen::Index>(grid.ib_of(x));
        const int jx = grid.exponent_at(grid.ja_of(x));
        Blocks blocks = zero_blocks(model);
        for (int ja = 0; ja < na; ++ja) {
            const int k = jx - grid.exponent_at(static_cast<std::size_t>(ja));
            const auto& s = solvers.at(k);
            const int width = s.hi - s.lo;
            if (width <= 0) continue;
            Eigen::VectorXcd rhs = row.segment(ja * nb, nb).transpose() / std::sqrt(grid.a_at(static_cast<std::size_t>(ja)));
            Eigen::VectorXcd u = s.svd.solve(rhs);
            for (Eigen::Index xi = 0; xi < nd; ++xi) {
                const auto& T0 = model.phase(static_cast<std::size_t>(xi));
                for (int p = s.lo; p < s.hi; ++p)
                    blocks[static_cast<std::size_t>(xi)](p, p + k) = u[xi * width + p - s.lo] * T0(ix, p);
            }
        }
        out.set(x, std::move(blocks));
    }
    return finish_inverse(T, std::move(out), condition, deficit, max_residual);
}

InverseResult moyal_product(const Symbol& A, const Symbol& B, double max_residual)
{
    require_compatible(A.model(), B.model(), "Moyal product");
    return inverse_op(op_left(A).compose(op_left(B)), max_residual);
}

InverseResult moyal_involution(const Symbol& A, double max_residual)
{
    return inverse_op(op_left(A).adjoint(), max_residual);
}

Symbol translate_symbol(const GroupPoint& y, const Symbol& A)
{
    const auto& model = A.model();
    if (model->backend() == Backend::affine) dilation_exponent(*model, y);
    std::vector<RepOperator> P;
    for (std::size_t xi = 0; xi < model->dual_size(); ++xi) P.push_back(rep_matrix(*model, xi, y));
    auto source = std::make_shared<const Symbol>(A);
    const auto yinv = inverse(y);
    auto rule = [source, P, yinv](const GroupPoint& x) {
        Blocks b = source->eval(multiply(yinv, x));
        for (std::size_t xi = 0; xi < b.size(); ++xi) b[xi] = P[xi] * b[xi] * P[xi].adjoint();
        return b;
    };
    return Symbol::from_rule(model, rule, 0.0);
}

DenseOperator conjugate_by_translation(const GroupPoint& y, const Symbol& A)
{
    const auto& model = *A.model();
    const auto& grid = model.grid();
    const auto n = static_cast<Eigen::Index>(grid.size());
    const auto yinv = inverse(y);
    std::vector<GroupPoint> moved(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) moved[i] = multiply(yinv, grid.node(i));

    Eigen::MatrixXcd K = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index x = 0; x < n; ++x) {
        const auto& px = moved[static_cast<std::size_t>(x)];
        Blocks Ax = A.eval(px);
        if (blocks_norm2(model, Ax) == 0.0) continue;
        for (Eigen::Index z = 0; z < n; ++z) K(x, z) = op_left_entry(model, Ax, px, moved[static_cast<std::size_t>(z)]);
    }
    return {A.model(), std::move(K)};
}

Symbol mult_conv_symbol(const SampledFunction& f, const SampledFunction& g)
{
    require_compatible(f.model(), g.model(), "multiplication-convolution symbol");
    return Symbol::separable(modular_weighted(f, -0.5), plancherel_fwd(modular_weighted(g, 0.5)));
}

CrossedKernel::CrossedKernel(ModelPtr model, Eigen::MatrixXcd values, CrossedRule rule)
    : model_(std::move(model)), values_(std::move(values)), rule_(std::move(rule))
{
    if (!model_) throw GridMismatch("crossed kernel without a model");
    auto n = static_cast<Eigen::Index>(model_->grid().size());
    if (values_.rows() != n || values_.cols() != n) throw GridMismatch("crossed kernel shape differs from node count");
}

CrossedKernel CrossedKernel::from_rule(const ModelPtr& model, CrossedRule rule)
{
    const auto& grid = model->grid();
    const auto n = static_cast<Eigen::Index>(grid.size());
    Eigen::MatrixXcd v(n, n);
    for (Eigen::Index x = 0; x < n; ++x) {
        const auto px = grid.node(static_cast<std::size_t>(x));
        for (Eigen::Index z = 0; z < n; ++z) v(z, x) = rule(grid.node(static_cast<std::size_t>(z)), px);
    }
    return {model, std::move(v), std::move(rule)};
}

cplx CrossedKernel::eval(const GroupPoint& z, const GroupPoint& x) const
{
    if (rule_) return rule_(z, x);
    const auto& grid = model_->grid();
    cplx acc = 0.0;
    const auto sx = interpolation_stencil(grid, x);
    if (sx.empty()) return acc;
    for (const auto& [iz, wz] : interpolation_stencil(grid, z))
        for (const auto& [ix, wx] : sx)
            acc += wz * wx * values_(static_cast<Eigen::Index>(iz), static_cast<Eigen::Index>(ix));
    return acc;
}

DenseOperator schrodinger(const CrossedKernel& F)
{
    const auto& grid = F.model()->grid();
    const auto n = static_cast<Eigen::Index>(grid.size());
    Eigen::MatrixXcd L(n, n);
    for (Eigen::Index y = 0; y < n; ++y) {
        const auto py = grid.node(static_cast<std::size_t>(y));
        const auto yinv = inverse(py);
        const double dy = 1.0 / modular(py);
        for (Eigen::Index x = 0; x < n; ++x) {
            const auto px = grid.node(static_cast<std::size_t>(x));
            L(x, y) = F.eval(px, multiply(px, yinv)) * dy;
        }
    }
    return {F.model(), std::move(L)};
}

CrossedKernel crossed_product(const CrossedKernel& F, const CrossedKernel& G)
{
    require_compatible(F.model(), G.model(), "crossed product");
    const auto& grid = F.model()->grid();
    auto sum = [F, G](const GroupPoint& z, const GroupPoint& x) {
        const auto& g = F.model()->grid();
        cplx acc = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            const auto py = g.node(i);
            const cplx f = F.eval(z, py);
            if (f == 0.0) continue;
            const auto yinv = inverse(py);
            acc += g.weight(i) * f * G.eval(multiply(yinv, z), multiply(yinv, x));
        }
        return acc;
    };
    const auto n = static_cast<Eigen::Index>(grid.size());
    Eigen::MatrixXcd v(n, n);
    for (Eigen::Index x = 0; x < n; ++x)
        for (Eigen::Index z = 0; z < n; ++z)
            v(z, x) = sum(grid.node(static_cast<std::size_t>(z)), grid.node(static_cast<std::size_t>(x)));
    CrossedRule rule;
    if (F.has_rule() && G.has_rule()) rule = sum;
    return {F.model(), std::move(v), rule};
}

CrossedKernel crossed_involution(const CrossedKernel& F)
{
    auto rule = [F](const GroupPoint& z, const GroupPoint& x) {
        const auto xinv = inverse(x);
        return std::conj(F.eval(multiply(xinv, z), xinv)) / modular(x);
    };
    CrossedKernel sampled = CrossedKernel::from_rule(F.model(), rule);
    if (F.has_rule()) return sampled;
    return {F.model(), sampled.values()};
}

CrossedKernel partial_plancherel_inv(const Symbol& A)
{
    const auto& model_ptr = A.model();
    const auto& grid = model_ptr->grid();
    const auto n = static_cast<Eigen::Index>(grid.size());
    Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(n, n);
    for (std::size_t z = 0; z < grid.size(); ++z)
        if (A.nonzero(z)) v.row(static_cast<Eigen::Index>(z)) = plancherel_inv(A.slice(z)).values().transpose();

    auto source = std::make_shared<const Symbol>(A);
    auto rule = [source](const GroupPoint& z, const GroupPoint& x) -> cplx {
        const auto& model = *source->model();
        if (auto idx = model.grid().find(z)) {
            if (!source->nonzero(*idx)) return 0.0;
            return inverse_value(model, source->at(*idx), x);
        }
        return inverse_value(model, source->eval(z), x);
    };
    return {model_ptr, std::move(v), rule};
}

DenseOperator frak_op(const Symbol& A)
{
    return schrodinger(partial_plancherel_inv(A));
}

DenseOperator frak_op_via_op_left(const Symbol& A)
{
    auto one = SampledFunction::constant(A.model(), 1.0);
    return op_left(A).compose(mult_op(modular_weighted(one, -0.5)));
}

} // namespace gpdo

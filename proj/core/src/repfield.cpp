#include "gpdo/repfield.hpp"

#include "gpdo/error.hpp"

#include <algorithm>
#include <cmath>

namespace gpdo {

RepGrid::RepGrid(int sign, double s_top, double ratio, int nodes)
    : sign_(sign >= 0 ? 1 : -1), s_top_(s_top), ratio_(ratio)
{
    s_.resize(static_cast<std::size_t>(nodes));
    for (int q = 0; q < nodes; ++q) s_[static_cast<std::size_t>(q)] = s_extended(q);
}

double RepGrid::s_extended(int q) const
{
    int top = static_cast<int>(s_.size()) - 1;
    return sign_ * s_top_ * std::pow(ratio_, q - top);
}

RepVector RepGrid::from_samples(const Eigen::VectorXcd& samples) const
{
    if (static_cast<std::size_t>(samples.size()) != size()) throw GridMismatch("sample count != s-grid size");
    RepVector out(samples.size());
    for (std::size_t q = 0; q < size(); ++q) out[q] = std::sqrt(weight(q)) * samples[q];
    return out;
}

Eigen::VectorXcd RepGrid::to_samples(const RepVector& coeffs) const
{
    if (static_cast<std::size_t>(coeffs.size()) != size()) throw GridMismatch("coefficient count != s-grid size");
    Eigen::VectorXcd out(coeffs.size());
    for (std::size_t q = 0; q < size(); ++q) out[q] = coeffs[q] / std::sqrt(weight(q));
    return out;
}

Model::Model(const GridConfig& config) : grid_(config)
{
    if (config.backend == Backend::cyclic) {
        for (std::int64_t m = 0; m < config.n; ++m) {
            DualPoint d;
            d.backend = Backend::cyclic;
            d.index = static_cast<std::size_t>(m);
            d.character = m;
            d.weight = 1.0 / static_cast<double>(config.n);
            duals_.push_back(d);
        }
        return;
    }
    for (int sign : {1, -1}) {
        DualPoint d;
        d.backend = Backend::affine;
        d.index = duals_.size();
        d.sign = sign;
        d.weight = 1.0;
        duals_.push_back(d);
        reps_.emplace_back(sign, config.s_top, config.r, config.s_nodes);
    }

    const int ns = config.s_nodes;
    ext_lo_ = std::min(0, 1 - config.j_max);
    const int ext_hi = std::max(ns, ns - config.j_min);
    const auto nb = static_cast<Eigen::Index>(grid_.nb());
    for (const auto& rep : reps_) {
        Eigen::MatrixXcd T(nb, ns);
        for (int q = 0; q < ns; ++q)
            for (Eigen::Index i = 0; i < nb; ++i)
                T(i, q) = std::polar(1.0, 2.0 * pi * grid_.b_at(static_cast<std::size_t>(i)) * rep.s(static_cast<std::size_t>(q)));
        phase_.push_back(std::move(T));
        Eigen::MatrixXcd E(nb, ext_hi - ext_lo_);
        for (int q = ext_lo_; q < ext_hi; ++q) {
            double s = rep.s_extended(q);
            for (Eigen::Index i = 0; i < nb; ++i)
                E(i, q - ext_lo_) = std::polar(1.0, 2.0 * pi * grid_.b_at(static_cast<std::size_t>(i)) * s);
        }
        phase_ext_.push_back(std::move(E));
    }
}

std::size_t Model::dim(std::size_t) const
{
    return backend() == Backend::cyclic ? 1 : reps_[0].size();
}

cplx Model::character(std::int64_t m, std::int64_t k) const
{
    const std::int64_t n = config().n;
    std::int64_t mk = ((m % n) * (k % n)) % n;
    if (mk < 0) mk += n;
    return std::polar(1.0, -2.0 * pi * static_cast<double>(mk) / static_cast<double>(n));
}

bool Model::compatible(const Model& other) const
{
    return this == &other || config() == other.config();
}

ModelPtr make_model(const GridConfig& config)
{
    return std::make_shared<const Model>(config);
}

void require_compatible(const ModelPtr& a, const ModelPtr& b, const char* what)
{
    if (!a || !b) throw GridMismatch(std::string(what) + ": missing model");
    if (a->backend() != b->backend()) throw StructuralError(std::string(what) + ": backend mismatch");
    if (!a->compatible(*b)) throw GridMismatch(std::string(what) + ": grid mismatch");
}

int dilation_exponent(const Model& model, const GroupPoint& x)
{
    auto k = model.grid().lattice_exponent(x.a);
    if (!k) throw OffLatticeError("off-lattice dilation a=" + std::to_string(x.a));
    return *k;
}

namespace {

void require_point(const Model& model, const GroupPoint& x)
{
    if (x.backend != model.backend()) throw StructuralError("group point backend differs from model");
    if (x.backend == Backend::cyclic && x.order != model.config().n)
        throw StructuralError("cyclic point of different order");
}

} // namespace

RepVector rep_apply(const Model& model, std::size_t xi, const GroupPoint& x, const RepVector& v)
{
    require_point(model, x);
    if (model.backend() == Backend::cyclic) {
        if (v.size() != 1) throw GridMismatch("cyclic representation space is one-dimensional");
        return model.character(model.dual(xi).character, x.k) * v;
    }
    const auto& rep = model.rep_grid(xi);
    const auto n = static_cast<int>(rep.size());
    if (v.size() != n) throw GridMismatch("vector does not live on this s-grid");
    int k = dilation_exponent(model, x);
    RepVector out = RepVector::Zero(n);
    for (int p = std::max(0, -k); p < std::min(n, n - k); ++p)
        out[p] = std::polar(1.0, 2.0 * pi * x.b * rep.s(static_cast<std::size_t>(p))) * v[p + k];
    return out;
}

RepOperator rep_matrix(const Model& model, std::size_t xi, const GroupPoint& x)
{
    require_point(model, x);
    if (model.backend() == Backend::cyclic) {
        RepOperator m(1, 1);
        m(0, 0) = model.character(model.dual(xi).character, x.k);
        return m;
    }
    const auto& rep = model.rep_grid(xi);
    const auto n = static_cast<int>(rep.size());
    int k = dilation_exponent(model, x);
    RepOperator out = RepOperator::Zero(n, n);
    for (int p = std::max(0, -k); p < std::min(n, n - k); ++p)
        out(p, p + k) = std::polar(1.0, 2.0 * pi * x.b * rep.s(static_cast<std::size_t>(p)));
    return out;
}

RepOperator duflo_moore(const Model& model, std::size_t xi, double power)
{
    if (model.backend() == Backend::cyclic) return RepOperator::Identity(1, 1);
    const auto& rep = model.rep_grid(xi);
    const auto n = static_cast<Eigen::Index>(rep.size());
    RepOperator out = RepOperator::Zero(n, n);
    for (Eigen::Index q = 0; q < n; ++q)
        out(q, q) = power == 0.0 ? 1.0 : std::pow(std::abs(rep.s(static_cast<std::size_t>(q))), power);
    return out;
}

double semi_invariance_residual(const Model& model, std::size_t xi, const GroupPoint& x)
{
    if (model.backend() == Backend::cyclic) {
        require_point(model, x);
        return 0.0;
    }
    RepOperator P = rep_matrix(model, xi, x);
    RepOperator D = duflo_moore(model, xi, 1.0);
    RepOperator lhs = P * D * P.adjoint();
    const double inv_modular = 1.0 / modular(x);
    const auto n = static_cast<int>(D.rows());
    const int margin = std::abs(dilation_exponent(model, x));
    double worst = 0.0;
    for (int m = margin; m < n - margin; ++m)
        worst = std::max(worst, std::abs(lhs(m, m) - inv_modular * D(m, m)));
    return worst;
}

cplx hs_inner(const RepOperator& T, const RepOperator& S)
{
    if (T.rows() != S.rows() || T.cols() != S.cols()) throw GridMismatch("HS product of different shapes");
    return (T.array() * S.array().conjugate()).sum();
}

OperatorField OperatorField::zero(const ModelPtr& model)
{
    OperatorField f{model, {}};
    for (std::size_t xi = 0; xi < model->dual_size(); ++xi) {
        auto d = static_cast<Eigen::Index>(model->dim(xi));
        f.blocks.push_back(RepOperator::Zero(d, d));
    }
    return f;
}

OperatorField OperatorField::identity(const ModelPtr& model)
{
    OperatorField f{model, {}};
    for (std::size_t xi = 0; xi < model->dual_size(); ++xi) {
        auto d = static_cast<Eigen::Index>(model->dim(xi));
        f.blocks.push_back(RepOperator::Identity(d, d));
    }
    return f;
}

OperatorField& OperatorField::operator+=(const OperatorField& other)
{
    require_compatible(model, other.model, "field sum");
    for (std::size_t xi = 0; xi < blocks.size(); ++xi) blocks[xi] += other.blocks[xi];
    return *this;
}

OperatorField& OperatorField::operator*=(cplx c)
{
    for (auto& b : blocks) b *= c;
    return *this;
}

OperatorField operator+(OperatorField a, const OperatorField& b)
{
    a += b;
    return a;
}

OperatorField operator-(OperatorField a, const OperatorField& b)
{
    require_compatible(a.model, b.model, "field difference");
    for (std::size_t xi = 0; xi < a.blocks.size(); ++xi) a.blocks[xi] -= b.blocks[xi];
    return a;
}

OperatorField operator*(cplx c, OperatorField a)
{
    a *= c;
    return a;
}

cplx hs_inner(const OperatorField& F, const OperatorField& G)
{
    require_compatible(F.model, G.model, "field HS product");
    cplx acc = 0.0;
    for (std::size_t xi = 0; xi < F.blocks.size(); ++xi)
        acc += F.model->dual(xi).weight * hs_inner(F.blocks[xi], G.blocks[xi]);
    return acc;
}

double hs_norm(const OperatorField& F)
{
    double acc = 0.0;
    for (std::size_t xi = 0; xi < F.blocks.size(); ++xi)
        acc += F.model->dual(xi).weight * F.blocks[xi].squaredNorm();
    return std::sqrt(acc);
}

} // namespace gpdo

#include "gpdo/group.hpp"

#include "gpdo/error.hpp"

#include <cmath>
#include <sstream>

namespace gpdo {

std::string_view to_string(Backend backend)
{
    return backend == Backend::cyclic ? "cyclic" : "affine";
}

Backend backend_from_string(std::string_view name)
{
    if (name == "cyclic") return Backend::cyclic;
    if (name == "affine") return Backend::affine;
    throw ConfigError("unknown backend '" + std::string(name) + "'");
}

GroupPoint GroupPoint::affine(double b, double a)
{
    if (!(a > 0.0) || !std::isfinite(a) || !std::isfinite(b))
        throw ConfigError("affine point requires finite b and a > 0");
    GroupPoint p;
    p.backend = Backend::affine;
    p.b = b;
    p.a = a;
    return p;
}

GroupPoint GroupPoint::cyclic(std::int64_t k, std::int64_t order)
{
    if (order < 1) throw ConfigError("cyclic order must be positive");
    GroupPoint p;
    p.backend = Backend::cyclic;
    p.order = order;
    p.k = ((k % order) + order) % order;
    p.a = 1.0;
    return p;
}

namespace {

void require_same(const GroupPoint& x, const GroupPoint& y)
{
    if (x.backend != y.backend)
        throw StructuralError("group points from different backends");
    if (x.backend == Backend::cyclic && x.order != y.order)
        throw StructuralError("cyclic points of different order");
}

} // namespace

GroupPoint identity_of(const GroupPoint& like)
{
    if (like.backend == Backend::cyclic) return GroupPoint::cyclic(0, like.order);
    return GroupPoint::affine(0.0, 1.0);
}

GroupPoint multiply(const GroupPoint& x, const GroupPoint& y)
{
    require_same(x, y);
    if (x.backend == Backend::cyclic) return GroupPoint::cyclic(x.k + y.k, x.order);
    return GroupPoint::affine(x.a * y.b + x.b, x.a * y.a);
}

GroupPoint inverse(const GroupPoint& x)
{
    if (x.backend == Backend::cyclic) return GroupPoint::cyclic(-x.k, x.order);
    return GroupPoint::affine(-x.b / x.a, 1.0 / x.a);
}

double modular(const GroupPoint& x)
{
    return x.backend == Backend::cyclic ? 1.0 : 1.0 / x.a;
}

namespace {

// expm1(t)/t
double expm1_ratio(double t)
{
    if (std::abs(t) < series_cutoff) return 1.0 + t / 2.0 + t * t / 6.0 + t * t * t / 24.0;
    return std::expm1(t) / t;
}

// t/expm1(t)
double inv_expm1_ratio(double t)
{
    if (std::abs(t) < series_cutoff) {
        double t2 = t * t;
        return 1.0 - t / 2.0 + t2 / 12.0 - t2 * t2 / 720.0;
    }
    return t / std::expm1(t);
}

} // namespace

GroupPoint exp_map(const LieVector& X)
{
    return GroupPoint::affine(X.beta * expm1_ratio(X.alpha), std::exp(X.alpha));
}

LieVector log_map(const GroupPoint& x)
{
    if (x.backend != Backend::affine)
        throw UnsupportedError("exponential coordinates exist only on the affine backend");
    double alpha = std::log(x.a);
    return {x.b * inv_expm1_ratio(alpha), alpha};
}

double theta(const LieVector& X)
{
    double t = X.alpha;
    if (std::abs(t) < series_cutoff) return 1.0 - t / 2.0 + t * t / 6.0 - t * t * t / 24.0;
    return -std::expm1(-t) / t;
}

void GridConfig::validate() const
{
    std::ostringstream why;
    if (backend == Backend::cyclic) {
        if (n < 2) why << "cyclic N must be >= 2; ";
    } else {
        if (!(h_b > 0.0) || !std::isfinite(h_b)) why << "h_b must be > 0; ";
        if (!(r > 1.0) || !std::isfinite(r)) why << "r must be > 1; ";
        if (!(b_halfwidth > 0.0)) why << "b_halfwidth must be > 0; ";
        if (j_max <= j_min) why << "empty a-exponent range; ";
        if (!(s_top > 0.0)) why << "s_top must be > 0; ";
        if (s_nodes < 1) why << "s_nodes must be >= 1; ";
        if (lattice_ny < 0 || lattice_nx < 0) why << "lattice sizes must be >= 0; ";
        if (h_b > 0.0 && b_halfwidth > 0.0) {
            double cells = 2.0 * b_halfwidth / h_b;
            if (std::abs(cells - std::round(cells)) > 1e-9 * cells)
                why << "2*b_halfwidth must be a multiple of h_b; ";
        }
    }
    if (refinement_level < 0) why << "refinement_level must be >= 0; ";
    auto msg = why.str();
    if (!msg.empty()) throw ConfigError("invalid grid config: " + msg.substr(0, msg.size() - 2));
}

GridConfig refine(const GridConfig& config, int levels)
{
    GridConfig out = config;
    for (int l = 0; l < levels; ++l) {
        if (out.backend == Backend::cyclic) {
            out.n *= 2;
        } else {
            double octave_nodes = std::log(2.0) / std::log(out.r);
            out.h_b /= 2.0;
            out.r = std::sqrt(out.r);
            out.j_min *= 2;
            out.j_max *= 2;
            // s_top follows the b-grid Nyquist frequency; the window gains one
            // octave at each end, resolved at the new ratio
            out.s_top *= 2.0;
            out.s_nodes = 2 * out.s_nodes + 2 * static_cast<int>(std::lround(2.0 * octave_nodes));
            out.lattice_ny *= 2;
            out.lattice_nx *= 2;
        }
        out.refinement_level += 1;
    }
    return out;
}

GroupGrid::GroupGrid(const GridConfig& config) : config_(config)
{
    config_.validate();
    if (config_.backend == Backend::cyclic) {
        nb_ = static_cast<std::size_t>(config_.n);
        na_ = 1;
        weights_.assign(nb_, 1.0);
        modular_.assign(nb_, 1.0);
        return;
    }
    nb_ = static_cast<std::size_t>(std::lround(2.0 * config_.b_halfwidth / config_.h_b));
    na_ = static_cast<std::size_t>(config_.j_max - config_.j_min);
    log_r_ = std::log(config_.r);
    b_.resize(nb_);
    for (std::size_t i = 0; i < nb_; ++i)
        b_[i] = -config_.b_halfwidth + static_cast<double>(i) * config_.h_b;
    a_.resize(na_);
    for (std::size_t j = 0; j < na_; ++j) a_[j] = std::pow(config_.r, exponent_at(j));
    weights_.resize(nb_ * na_);
    modular_.resize(nb_ * na_);
    for (std::size_t j = 0; j < na_; ++j) {
        double w = config_.h_b * log_r_ / a_[j];
        for (std::size_t i = 0; i < nb_; ++i) {
            weights_[index(i, j)] = w;
            modular_[index(i, j)] = 1.0 / a_[j];
        }
    }
}

GroupPoint GroupGrid::node(std::size_t idx) const
{
    if (config_.backend == Backend::cyclic)
        return GroupPoint::cyclic(static_cast<std::int64_t>(idx), config_.n);
    return GroupPoint::affine(b_[ib_of(idx)], a_[ja_of(idx)]);
}

std::size_t GroupGrid::identity_index() const
{
    if (config_.backend == Backend::cyclic) return 0;
    auto idx = find(GroupPoint::affine(0.0, 1.0));
    if (!idx) throw ConfigError("affine grid does not contain the identity node");
    return *idx;
}

std::optional<int> GroupGrid::lattice_exponent(double a) const
{
    if (config_.backend == Backend::cyclic) return a == 1.0 ? std::optional<int>(0) : std::nullopt;
    if (!(a > 0.0)) return std::nullopt;
    double k = std::log(a) / log_r_;
    double kr = std::round(k);
    if (std::abs(k - kr) > 1e-9 * std::max(1.0, std::abs(k))) return std::nullopt;
    return static_cast<int>(kr);
}

std::optional<std::size_t> GroupGrid::find(const GroupPoint& x) const
{
    if (x.backend != config_.backend) throw StructuralError("point and grid from different backends");
    if (config_.backend == Backend::cyclic) {
        if (x.order != config_.n) throw StructuralError("cyclic point of different order");
        return static_cast<std::size_t>(x.k);
    }
    auto k = lattice_exponent(x.a);
    if (!k || *k < config_.j_min || *k >= config_.j_max) return std::nullopt;
    double fi = (x.b + config_.b_halfwidth) / config_.h_b;
    double ri = std::round(fi);
    if (std::abs(fi - ri) > 1e-9 || ri < 0 || ri >= static_cast<double>(nb_)) return std::nullopt;
    return index(static_cast<std::size_t>(ri), static_cast<std::size_t>(*k - config_.j_min));
}

GroupGrid build_grid(const GridConfig& config)
{
    return GroupGrid(config);
}

} // namespace gpdo

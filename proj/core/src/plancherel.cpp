#include "gpdo/plancherel.hpp"

#include "gpdo/error.hpp"

#include <cmath>

namespace gpdo {

namespace {

Eigen::Map<const Eigen::MatrixXcd> as_grid_matrix(const SampledFunction& f)
{
    const auto& g = f.grid();
    return {f.values().data(), static_cast<Eigen::Index>(g.nb()), static_cast<Eigen::Index>(g.na())};
}

void scale_columns_by_root_s(const RepGrid& rep, RepOperator& M)
{
    for (Eigen::Index q = 0; q < M.cols(); ++q)
        M.col(q) *= std::sqrt(std::abs(rep.s(static_cast<std::size_t>(q))));
}

} // namespace

OperatorField fourier(const SampledFunction& f)
{
    const auto& model = *f.model();
    const auto& grid = model.grid();
    OperatorField out = OperatorField::zero(f.model());

    if (model.backend() == Backend::cyclic) {
        for (std::size_t xi = 0; xi < model.dual_size(); ++xi) {
            cplx acc = 0.0;
            for (std::size_t k = 0; k < grid.size(); ++k)
                acc += f[k] * model.character(model.dual(xi).character, static_cast<std::int64_t>(k));
            out.blocks[xi](0, 0) = acc;
        }
        return out;
    }

    const auto ns = static_cast<int>(model.s_nodes());
    auto M = as_grid_matrix(f);
    for (std::size_t xi = 0; xi < model.dual_size(); ++xi) {
        // G(ja, p) = sum_i f(b_i, a_j) e^{2 pi i b_i s_p}
        Eigen::MatrixXcd G = M.transpose() * model.phase(xi);
        auto& B = out.blocks[xi];
        for (std::size_t ja = 0; ja < grid.na(); ++ja) {
            const int k = grid.exponent_at(ja);
            const double w = grid.hb() * grid.log_ratio() / grid.a_at(ja);
            for (int p = std::max(0, -k); p < std::min(ns, ns - k); ++p)
                B(p, p + k) = w * G(static_cast<Eigen::Index>(ja), p);
        }
    }
    return out;
}

OperatorField plancherel_fwd(const SampledFunction& f)
{
    OperatorField out = fourier(f);
    if (f.model()->backend() == Backend::affine)
        for (std::size_t xi = 0; xi < out.blocks.size(); ++xi)
            scale_columns_by_root_s(f.model()->rep_grid(xi), out.blocks[xi]);
    return out;
}

cplx inverse_value(const Model& model, const Blocks& blocks, const GroupPoint& z)
{
    if (model.backend() == Backend::cyclic) {
        cplx acc = 0.0;
        for (std::size_t xi = 0; xi < model.dual_size(); ++xi)
            acc += model.dual(xi).weight * blocks[xi](0, 0) *
                   std::conj(model.character(model.dual(xi).character, z.k));
        return acc;
    }
    const int k = dilation_exponent(model, z);
    const auto ns = static_cast<int>(model.s_nodes());
    cplx acc = 0.0;
    for (std::size_t xi = 0; xi < model.dual_size(); ++xi) {
        const auto& rep = model.rep_grid(xi);
        const auto& A = blocks[xi];
        cplx part = 0.0;
        for (int p = std::max(0, -k); p < std::min(ns, ns - k); ++p) {
            const double s = rep.s(static_cast<std::size_t>(p));
            const double root = std::sqrt(std::abs(rep.s(static_cast<std::size_t>(p + k))));
            part += A(p, p + k) * root * std::polar(1.0, -2.0 * pi * z.b * s);
        }
        acc += model.dual(xi).weight * part;
    }
    return acc;
}

SampledFunction plancherel_inv(const OperatorField& F)
{
    const auto& model = *F.model;
    const auto& grid = model.grid();
    Eigen::VectorXcd values(static_cast<Eigen::Index>(grid.size()));

    if (model.backend() == Backend::cyclic) {
        for (std::size_t k = 0; k < grid.size(); ++k)
            values[static_cast<Eigen::Index>(k)] = inverse_value(model, F.blocks, grid.node(k));
    } else {
        const auto ns = static_cast<int>(model.s_nodes());
        const auto nb = static_cast<Eigen::Index>(grid.nb());
        const auto na = static_cast<Eigen::Index>(grid.na());
        Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(nb, na);
        for (std::size_t xi = 0; xi < model.dual_size(); ++xi) {
            const auto& rep = model.rep_grid(xi);
            Eigen::MatrixXcd V = Eigen::MatrixXcd::Zero(ns, na);
            for (Eigen::Index ja = 0; ja < na; ++ja) {
                const int k = grid.exponent_at(static_cast<std::size_t>(ja));
                for (int p = std::max(0, -k); p < std::min(ns, ns - k); ++p)
                    V(p, ja) = F.blocks[xi](p, p + k) * std::sqrt(std::abs(rep.s(static_cast<std::size_t>(p + k))));
            }
            out += model.dual(xi).weight * (model.phase(xi).conjugate() * V);
        }
        values = Eigen::Map<Eigen::VectorXcd>(out.data(), nb * na);
    }
    auto rule = [model_ptr = F.model, blocks = F.blocks](const GroupPoint& z) {
        return inverse_value(*model_ptr, blocks, z);
    };
    return {F.model, std::move(values), rule};
}

OperatorField alt_plancherel(const SampledFunction& f)
{
    const auto& model = *f.model();
    const auto& grid = model.grid();
    OperatorField out = OperatorField::zero(f.model());

    if (model.backend() == Backend::cyclic) {
        for (std::size_t xi = 0; xi < model.dual_size(); ++xi) {
            cplx acc = 0.0;
            for (std::size_t k = 0; k < grid.size(); ++k)
                acc += f[k] * std::conj(model.character(model.dual(xi).character, static_cast<std::int64_t>(k)));
            out.blocks[xi](0, 0) = acc;
        }
        return out;
    }

    const auto ns = static_cast<int>(model.s_nodes());
    auto M = as_grid_matrix(f);
    for (std::size_t xi = 0; xi < model.dual_size(); ++xi) {
        const auto& rep = model.rep_grid(xi);
        Eigen::MatrixXcd G = M.transpose() * model.phase(xi).conjugate();
        auto& B = out.blocks[xi];
        // pi(b, r^k)^* has entry e^{-2 pi i b s_p} at (p + k, p)
        for (std::size_t ja = 0; ja < grid.na(); ++ja) {
            const int k = grid.exponent_at(ja);
            const double w = grid.hb() * grid.log_ratio() / grid.a_at(ja);
            for (int p = std::max(0, -k); p < std::min(ns, ns - k); ++p)
                B(p + k, p) = w * std::sqrt(std::abs(rep.s(static_cast<std::size_t>(p + k)))) *
                              G(static_cast<Eigen::Index>(ja), p);
        }
    }
    return out;
}

OperatorField pointwise_product(const OperatorField& F, const OperatorField& G)
{
    require_compatible(F.model, G.model, "field product");
    OperatorField out{F.model, {}};
    for (std::size_t xi = 0; xi < F.blocks.size(); ++xi) out.blocks.push_back(F.blocks[xi] * G.blocks[xi]);
    return out;
}

double parseval_residual(const SampledFunction& f)
{
    const double lhs = std::pow(hs_norm(plancherel_fwd(f)), 2);
    const double rhs = std::pow(norm(f), 2);
    return std::abs(lhs - rhs) / rhs;
}

double conv_diag_check(const SampledFunction& g, const SampledFunction& u)
{
    require_compatible(g.model(), u.model(), "convolution diagonalization");
    OperatorField lhs = plancherel_fwd(convolve(g, u));
    OperatorField rhs = pointwise_product(fourier(g), plancherel_fwd(u));
    const double scale = hs_norm(lhs);
    if (scale == 0.0) return hs_norm(rhs);
    return hs_norm(lhs - rhs) / scale;
}

SampledFunction plancherel_lsq_inverse(const OperatorField& F)
{
    const auto& model = *F.model;
    const auto& grid = model.grid();
    if (model.backend() == Backend::cyclic) return plancherel_inv(F).samples_only();

    const auto ns = static_cast<int>(model.s_nodes());
    const auto nb = static_cast<Eigen::Index>(grid.nb());
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(nb, static_cast<Eigen::Index>(grid.na()));
    for (std::size_t ja = 0; ja < grid.na(); ++ja) {
        const int k = grid.exponent_at(ja);
        const int lo = std::max(0, -k), hi = std::min(ns, ns - k);
        if (hi <= lo) continue;
        const Eigen::Index rows = 2 * (hi - lo);
        Eigen::MatrixXcd A(rows, nb);
        Eigen::VectorXcd rhs(rows);
        const double w = grid.hb() * grid.log_ratio() / grid.a_at(ja);
        Eigen::Index r = 0;
        for (std::size_t xi = 0; xi < model.dual_size(); ++xi) {
            const auto& rep = model.rep_grid(xi);
            for (int p = lo; p < hi; ++p, ++r) {
                const double root = std::sqrt(std::abs(rep.s(static_cast<std::size_t>(p + k))));
                A.row(r) = w * root * model.phase(xi).col(p).transpose();
                rhs[r] = F.blocks[xi](p, p + k);
            }
        }
        out.col(static_cast<Eigen::Index>(ja)) = A.completeOrthogonalDecomposition().solve(rhs);
    }
    return {F.model, Eigen::Map<Eigen::VectorXcd>(out.data(), out.size())};
}

} // namespace gpdo

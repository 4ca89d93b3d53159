#include "gpdo/testdata.hpp"

#include "gpdo/error.hpp"

#include <cmath>

namespace gpdo {

PointRule bump_rule(const BumpParams& p)
{
    return [p](const GroupPoint& x) -> cplx {
        const double db = x.b - p.b0;
        const double dl = std::log(x.a) - p.log_a0;
        const double env = std::exp(-db * db / (2.0 * p.width_b * p.width_b) -
                                    dl * dl / (2.0 * p.width_log_a * p.width_log_a));
        return p.amplitude * env * std::polar(1.0, 2.0 * pi * p.modulation * x.b);
    };
}

SampledFunction bump(const ModelPtr& model, const BumpParams& p)
{
    if (model->backend() != Backend::affine) throw UnsupportedError("bumps live on the affine grid");
    return SampledFunction::from_rule(model, bump_rule(p));
}

double bump_norm2(const BumpParams& p)
{
    // int e^{-(b-b0)^2/s^2} db * int e^{-(t-t0)^2/tau^2} e^{-t} dt
    const double tau = p.width_log_a;
    return std::norm(p.amplitude) * p.width_b * std::sqrt(pi) * tau * std::sqrt(pi) *
           std::exp(-p.log_a0 + tau * tau / 4.0);
}

BumpParams normalized(BumpParams p)
{
    p.amplitude /= std::sqrt(bump_norm2(p));
    return p;
}

namespace {

cplx complex_normal(std::mt19937_64& rng)
{
    std::normal_distribution<double> d(0.0, 1.0 / std::sqrt(2.0));
    double re = d(rng);
    double im = d(rng);
    return {re, im};
}

struct Term {
    cplx coefficient;
    BumpParams envelope;
    BumpParams atom;
};

std::vector<Term> draw_terms(std::uint64_t seed, const RandomSymbolParams& p)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> mod(p.modulation_min, p.modulation_max);
    std::vector<Term> out;
    for (int k = 0; k < p.terms; ++k) {
        Term t;
        t.coefficient = complex_normal(rng);
        t.envelope.b0 = p.center_spread_b * unit(rng);
        t.envelope.log_a0 = p.center_spread_log_a * unit(rng);
        t.envelope.width_b = p.envelope_width_b;
        t.envelope.width_log_a = p.envelope_width_log_a;
        t.envelope.modulation = 0.0;
        t.atom.width_b = p.atom_width_b;
        t.atom.width_log_a = p.atom_width_log_a;
        t.atom.modulation = (unit(rng) < 0.0 ? -1.0 : 1.0) * mod(rng);
        t.atom = normalized(t.atom);
        out.push_back(t);
    }
    return out;
}

} // namespace

SampledFunction random_function(const ModelPtr& model, std::mt19937_64& rng)
{
    const auto& grid = model->grid();
    Eigen::VectorXcd v(static_cast<Eigen::Index>(grid.size()));
    for (std::size_t i = 0; i < grid.size(); ++i) {
        cplx c = complex_normal(rng);
        if (model->backend() == Backend::affine) {
            auto x = grid.node(i);
            c *= std::exp(-x.b * x.b / 4.5 - std::pow(std::log(x.a), 2) / 0.08);
        }
        v[static_cast<Eigen::Index>(i)] = c;
    }
    return {model, std::move(v)};
}

Symbol random_symbol(const ModelPtr& model, std::uint64_t seed, const RandomSymbolParams& p)
{
    if (model->backend() == Backend::cyclic) {
        std::mt19937_64 rng(seed);
        Symbol out(model);
        for (std::size_t i = 0; i < out.size(); ++i) {
            Blocks b = zero_blocks(*model);
            for (auto& m : b) m(0, 0) = complex_normal(rng);
            out.set(i, std::move(b));
        }
        return out;
    }

    auto terms = draw_terms(seed, p);
    std::vector<PointRule> envelopes;
    std::vector<Blocks> fields;
    for (const auto& t : terms) {
        envelopes.push_back(bump_rule(t.envelope));
        OperatorField F = plancherel_fwd(bump(model, t.atom));
        F *= t.coefficient;
        fields.push_back(std::move(F.blocks));
    }
    auto rule = [model, envelopes, fields](const GroupPoint& x) {
        Blocks acc = zero_blocks(*model);
        for (std::size_t k = 0; k < fields.size(); ++k) {
            const cplx e = envelopes[k](x);
            for (std::size_t xi = 0; xi < acc.size(); ++xi) acc[xi] += e * fields[k][xi];
        }
        return acc;
    };
    return Symbol::from_rule(model, rule);
}

CrossedKernel random_crossed_kernel(const ModelPtr& model, std::mt19937_64& rng)
{
    const auto n = static_cast<Eigen::Index>(model->grid().size());
    Eigen::MatrixXcd v(n, n);
    for (Eigen::Index x = 0; x < n; ++x)
        for (Eigen::Index z = 0; z < n; ++z) v(z, x) = complex_normal(rng);
    return {model, std::move(v)};
}

ScalarSymbol random_scalar_symbol(const ModelPtr& model, std::uint64_t seed, const RandomSymbolParams& p)
{
    if (model->backend() != Backend::affine) throw UnsupportedError("scalar symbols need the affine backend");
    auto terms = draw_terms(seed, p);
    ScalarSymbol out(model);
    std::vector<SampledFunction> envelopes;
    std::vector<LatticeFunction> windows;
    for (const auto& t : terms) {
        envelopes.push_back(bump(model, t.envelope));
        windows.push_back(t.coefficient * fourier_exp(bump(model, t.atom)));
    }
    const auto& grid = model->grid();
    double largest = 0.0;
    for (const auto& e : envelopes) largest = std::max(largest, e.values().cwiseAbs().maxCoeff());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double mass = 0.0;
        for (const auto& e : envelopes) mass += std::abs(e[i]);
        if (mass <= 1e-14 * largest) continue;
        LatticeFunction w = LatticeFunction::Zero(out.lattice().n_eta(), out.lattice().n_chi());
        for (std::size_t k = 0; k < envelopes.size(); ++k) w += envelopes[k][i] * windows[k];
        out.set(i, std::move(w));
    }
    return out;
}

} // namespace gpdo

#pragma once
// Bridges between library objects and the plain arrays used by the oracles.

#include "gpdo/testdata.hpp"
#include "oracles.hpp"

#include <random>

namespace testing {

inline gpdo::ModelPtr cyclic_model(std::int64_t n = 16)
{
    gpdo::GridConfig c;
    c.backend = gpdo::Backend::cyclic;
    c.n = n;
    return gpdo::make_model(c);
}

inline gpdo::ModelPtr affine_model(int level = 0) { return gpdo::make_model(gpdo::refine(gpdo::GridConfig{}, level)); }

inline oracle::Vec to_vec(const gpdo::SampledFunction& f)
{
    oracle::Vec out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i];
    return out;
}

inline gpdo::SampledFunction from_vec(const gpdo::ModelPtr& m, const oracle::Vec& v)
{
    Eigen::VectorXcd e(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) e[static_cast<Eigen::Index>(i)] = v[i];
    return {m, e};
}

// Cyclic grid nodes carry unit weight, so the kernel is the matrix itself.
inline oracle::Mat to_mat(const Eigen::MatrixXcd& K)
{
    oracle::Mat out = oracle::zeros(static_cast<std::size_t>(K.rows()));
    for (Eigen::Index i = 0; i < K.rows(); ++i)
        for (Eigen::Index j = 0; j < K.cols(); ++j) out[i][j] = K(i, j);
    return out;
}

inline oracle::Mat to_mat(const gpdo::DenseOperator& T) { return to_mat(T.kernel()); }

// Cyclic symbol as A[x][m], m the character index of each dual point.
inline oracle::Mat symbol_table(const gpdo::Symbol& A)
{
    const auto& m = *A.model();
    oracle::Mat out = oracle::zeros(A.size());
    for (std::size_t x = 0; x < A.size(); ++x) {
        if (!A.nonzero(x)) continue;
        for (std::size_t xi = 0; xi < m.dual_size(); ++xi) out[x][static_cast<std::size_t>(m.dual(xi).character)] = A.at(x)[xi](0, 0);
    }
    return out;
}

inline oracle::Vec field_table(const gpdo::OperatorField& F)
{
    oracle::Vec out(F.blocks.size());
    for (std::size_t xi = 0; xi < F.blocks.size(); ++xi) out[static_cast<std::size_t>(F.model->dual(xi).character)] = F.blocks[xi](0, 0);
    return out;
}

inline oracle::Vec random_vec(std::size_t n, std::mt19937_64& rng)
{
    std::normal_distribution<double> d;
    oracle::Vec v(n);
    for (auto& c : v) c = {d(rng), d(rng)};
    return v;
}

} // namespace testing

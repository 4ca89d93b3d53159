#pragma once
//
// Scalar calculus in exponential coordinates on the affine group.
//
// Functions on the dual of the Lie algebra live on a uniform lattice
// (eta_m, chi_n), eta dual to beta and chi dual to alpha. The default lattice
// is the discrete-Fourier dual of the (b, ln a) grid; the measure is
// d(eta) d(chi) / (2 pi)^2.
//

#include "gpdo/quantizer.hpp"

namespace gpdo {

struct CotangentVector {
    double eta = 0.0;  // pairs with beta
    double chi = 0.0;  // pairs with alpha
};

class CotangentLattice {
public:
    CotangentLattice() = default;
    CotangentLattice(int n_eta, double d_eta, int n_chi, double d_chi);

    /// Lattice for a model: the configured sizes, or the Fourier dual of the grid.
    static CotangentLattice for_model(const Model& model);

    int n_eta() const { return n_eta_; }
    int n_chi() const { return n_chi_; }
    double d_eta() const { return d_eta_; }
    double d_chi() const { return d_chi_; }
    double eta(int m) const { return (m - n_eta_ / 2) * d_eta_; }
    double chi(int n) const { return (n - n_chi_ / 2) * d_chi_; }
    CotangentVector point(int m, int n) const { return {eta(m), chi(n)}; }
    /// d(eta) d(chi) / (2 pi)^2.
    double measure() const { return d_eta_ * d_chi_ / (4.0 * pi * pi); }

    bool operator==(const CotangentLattice&) const = default;

private:
    int n_eta_ = 0;
    int n_chi_ = 0;
    double d_eta_ = 0.0;
    double d_chi_ = 0.0;
};

/// Values on the lattice, (eta index, chi index).
using LatticeFunction = Eigen::MatrixXcd;

/// B(x, X) at grid nodes; nodes without a lattice function are zero.
class ScalarSymbol {
public:
    ScalarSymbol() = default;
    explicit ScalarSymbol(ModelPtr model);

    const ModelPtr& model() const { return model_; }
    const CotangentLattice& lattice() const { return lattice_; }
    std::size_t size() const { return nodes_.size(); }
    bool nonzero(std::size_t i) const { return nodes_[i].size() != 0; }
    const LatticeFunction& at(std::size_t i) const { return nodes_[i]; }
    void set(std::size_t i, LatticeFunction w);

    /// x -> f(x) w.
    static ScalarSymbol separable(const SampledFunction& f, const LatticeFunction& w);

    /// sqrt(sum_x w_x sum_X |B|^2 dX).
    double norm() const;

private:
    ModelPtr model_;
    CotangentLattice lattice_;
    std::vector<LatticeFunction> nodes_;
};

/// u -> sum_x w_x theta(log x)^{-1/2} e^{-i <log x | X>} u(x).
LatticeFunction fourier_exp(const SampledFunction& u);

/// w -> theta(log x)^{-1/2} sum_X e^{i <log x | X>} w(X) dX, at the nodes and
/// (through the rule) at any point.
SampledFunction fourier_exp_inv(const ModelPtr& model, const LatticeFunction& w);

/// P o F_exp^{-1}.
OperatorField l_map(const ModelPtr& model, const LatticeFunction& w);
/// F_exp o P^{-1}.
LatticeFunction l_inv(const OperatorField& v);

/// Applies l_map in the cotangent slot at every node.
Symbol l_symbol(const ScalarSymbol& B);

/// Kernel Delta(y)^{-1/2} theta(log xy^{-1})^{-1/2} sum_X e^{i <log xy^{-1} | X>} B(x, X) dX.
DenseOperator op_scalar(const ScalarSymbol& B);

/// [a/(a - a1) log(a/a1)]^{1/2} a1^{-3/2}, continuous through a = a1.
double kernel_factor(double a, double a1);

/// Lattice l2 norm with the dX measure.
double lattice_norm(const CotangentLattice& lattice, const LatticeFunction& w);

} // namespace gpdo

#pragma once
//
// Operator-valued symbols on G x dual(G) and their quantizations.
//
// Op(A) has kernel  ker(x, y) = (P^{-1} A(x, .))(x y^{-1}) Delta(y)^{-1/2},
// where P^{-1} is the trace inversion. On the affine grid x y^{-1} has a
// lattice dilation and an off-grid translation; the trace formula is exact
// there, so no interpolation enters the kernel.
//

#include "gpdo/plancherel.hpp"

#include <functional>

namespace gpdo {

using SymbolRule = std::function<Blocks(const GroupPoint&)>;

/// A(x, xi) sampled at grid nodes. Nodes without blocks are zero. An optional
/// rule gives the symbol at arbitrary points; without it, off-grid points
/// are interpolated in (b, ln a).
class Symbol {
public:
    Symbol() = default;
    explicit Symbol(ModelPtr model);

    /// Samples the rule at every node; nodes whose blocks are below
    /// drop_tolerance (relative to the largest node) are stored as zero.
    static Symbol from_rule(const ModelPtr& model, SymbolRule rule, double drop_tolerance = 1e-14);
    /// x -> f(x) M.
    static Symbol separable(const SampledFunction& f, const OperatorField& M);
    /// A(x, xi) = identity for all x.
    static Symbol identity(const ModelPtr& model);

    const ModelPtr& model() const { return model_; }
    std::size_t size() const { return nodes_.size(); }
    bool nonzero(std::size_t i) const { return !nodes_[i].empty(); }
    std::size_t support_size() const;
    const Blocks& at(std::size_t i) const { return nodes_[i]; }
    void set(std::size_t i, Blocks blocks);
    void clear(std::size_t i) { nodes_[i].clear(); }

    bool has_rule() const { return static_cast<bool>(rule_); }
    const SymbolRule& rule() const { return rule_; }
    void set_rule(SymbolRule rule) { rule_ = std::move(rule); }

    /// Blocks at an arbitrary point (zero blocks when outside the support).
    Blocks eval(const GroupPoint& x) const;
    OperatorField slice(std::size_t i) const;

    double norm() const;
    cplx inner(const Symbol& other) const;

private:
    ModelPtr model_;
    std::vector<Blocks> nodes_;
    SymbolRule rule_;
};

Symbol operator+(const Symbol& a, const Symbol& b);
Symbol operator-(const Symbol& a, const Symbol& b);
Symbol operator*(cplx c, const Symbol& a);
/// ||a - b|| / ||b|| in the symbol norm.
double relative_symbol_error(const Symbol& a, const Symbol& b);

Blocks zero_blocks(const Model& model);

DenseOperator op_left(const Symbol& A);
/// Right quantization: kernel (P^{-1} A(x,.))(y^{-1} x) Delta(x y^{-1})^{1/2}.
DenseOperator op_right(const Symbol& A);

/// Kernel of Op(A) at an arbitrary pair, given A at the first point.
cplx op_left_entry(const Model& model, const Blocks& Ax, const GroupPoint& x, const GroupPoint& y);

/// A~(x, xi) = pi(x)^* A(x, xi) pi(x).
Symbol tilde_symbol(const Symbol& A);

/// Symbol whose quantization is w -> <w, u> v.
Symbol wigner(const SampledFunction& u, const SampledFunction& v);

struct InverseResult {
    Symbol symbol;
    double residual = 0.0;   // ||Op(symbol) - T||_HS / ||T||_HS
    double condition = 1.0;  // worst condition number among the solved blocks
    int rank_deficit = 0;    // summed rank loss among the solved blocks
};

/// Inverts the symbol -> kernel map: exactly on Z_N, by minimum-norm least
/// squares per (x, dilation) block on the affine grid. Throws SolverError when
/// the residual exceeds max_residual.
InverseResult inverse_op(const DenseOperator& T, double max_residual = 1e-6);

InverseResult moyal_product(const Symbol& A, const Symbol& B, double max_residual = 1e-6);
InverseResult moyal_involution(const Symbol& A, double max_residual = 1e-6);

/// (y.A)(x, xi) = pi(y) A(y^{-1} x, xi) pi(y)^*.
Symbol translate_symbol(const GroupPoint& y, const Symbol& A);

/// lambda_y Op(A) lambda_y^*, built from the kernel formula at the translated
/// (generally off-grid) points.
DenseOperator conjugate_by_translation(const GroupPoint& y, const Symbol& A);

/// (Delta^{-1/2} f)(x) P(Delta^{1/2} g)(xi).
Symbol mult_conv_symbol(const SampledFunction& f, const SampledFunction& g);

/// F(z, x), identified with the function x -> [F(x)](z).
using CrossedRule = std::function<cplx(const GroupPoint& z, const GroupPoint& x)>;

class CrossedKernel {
public:
    CrossedKernel() = default;
    CrossedKernel(ModelPtr model, Eigen::MatrixXcd values, CrossedRule rule = {});

    static CrossedKernel from_rule(const ModelPtr& model, CrossedRule rule);

    const ModelPtr& model() const { return model_; }
    const Eigen::MatrixXcd& values() const { return values_; }
    bool has_rule() const { return static_cast<bool>(rule_); }

    /// Rule if present, otherwise bilinear interpolation in each argument.
    cplx eval(const GroupPoint& z, const GroupPoint& x) const;

private:
    ModelPtr model_;
    Eigen::MatrixXcd values_;  // (z index, x index)
    CrossedRule rule_;
};

/// Kernel L_F(x, y) = F(x, x y^{-1}) Delta(y)^{-1}.
DenseOperator schrodinger(const CrossedKernel& F);
/// (F * G)(z, x) = int F(z, y) G(y^{-1} z, y^{-1} x) dy.
CrossedKernel crossed_product(const CrossedKernel& F, const CrossedKernel& G);
/// F^*(z, x) = Delta(x)^{-1} conj(F(x^{-1} z, x^{-1})).
CrossedKernel crossed_involution(const CrossedKernel& F);

/// (z, x) -> (P^{-1} A(z, .))(x).
CrossedKernel partial_plancherel_inv(const Symbol& A);

/// Sch(P_2^{-1} A).
DenseOperator frak_op(const Symbol& A);
/// Op(A) o Mult_{Delta^{-1/2}}.
DenseOperator frak_op_via_op_left(const Symbol& A);

} // namespace gpdo

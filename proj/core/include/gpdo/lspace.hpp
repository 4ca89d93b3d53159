#pragma once
//
// Sampled L^2(G): functions on a group grid, Haar-weighted products,
// convolution, involutions, and dense integral operators.
//

#include "gpdo/repfield.hpp"

#include <functional>
#include <iosfwd>

namespace gpdo {

using PointRule = std::function<cplx(const GroupPoint&)>;

struct StencilEntry {
    std::size_t index;
    double weight;
};

/// Bilinear weights in (b, ln a) for an arbitrary point; empty outside the grid.
std::vector<StencilEntry> interpolation_stencil(const GroupGrid& grid, const GroupPoint& x);

/// Complex samples at grid nodes, optionally backed by an exact rule used for
/// off-grid evaluation. Without a rule, off-grid points are bilinearly
/// interpolated in (b, ln a) and read as zero outside the grid.
class SampledFunction {
public:
    SampledFunction() = default;
    SampledFunction(ModelPtr model, Eigen::VectorXcd values, PointRule rule = {});

    static SampledFunction from_rule(const ModelPtr& model, PointRule rule);
    static SampledFunction zero(const ModelPtr& model);
    static SampledFunction constant(const ModelPtr& model, cplx c);
    /// Unit mass at the identity: 1/w_e at e, zero elsewhere.
    static SampledFunction delta_e(const ModelPtr& model);

    const ModelPtr& model() const { return model_; }
    const GroupGrid& grid() const { return model_->grid(); }
    std::size_t size() const { return static_cast<std::size_t>(values_.size()); }
    const Eigen::VectorXcd& values() const { return values_; }
    cplx operator[](std::size_t i) const { return values_[static_cast<Eigen::Index>(i)]; }
    bool has_rule() const { return static_cast<bool>(rule_); }
    const PointRule& rule() const { return rule_; }

    cplx eval(const GroupPoint& x) const;
    cplx interpolate(const GroupPoint& x) const;

    /// Drops the rule; evaluation then falls back to interpolation.
    SampledFunction samples_only() const { return {model_, values_}; }

private:
    ModelPtr model_;
    Eigen::VectorXcd values_;
    PointRule rule_;
};

SampledFunction operator+(const SampledFunction& f, const SampledFunction& g);
SampledFunction operator-(const SampledFunction& f, const SampledFunction& g);
SampledFunction operator*(cplx c, const SampledFunction& f);
/// Pointwise product.
SampledFunction operator*(const SampledFunction& f, const SampledFunction& g);

/// x -> Delta(x)^power f(x).
SampledFunction modular_weighted(const SampledFunction& f, double power);
/// y -> f(y x).
SampledFunction right_translate(const SampledFunction& f, const GroupPoint& x);
/// y -> f(x^{-1} y).
SampledFunction left_translate(const SampledFunction& f, const GroupPoint& x);

cplx haar_integral(const SampledFunction& f);
/// Linear in the first argument.
cplx inner(const SampledFunction& u, const SampledFunction& v);
double norm(const SampledFunction& u);
/// ||u - v|| / ||v||.
double relative_error(const SampledFunction& u, const SampledFunction& v);

/// (f * g)(x) = int f(y) g(y^{-1} x) dy. The result keeps an exact rule that
/// evaluates the same quadrature at any point.
SampledFunction convolve(const SampledFunction& f, const SampledFunction& g);

/// f^*(x) = Delta(x)^{-1/p} conj(f(x^{-1})).
SampledFunction involution_p(const SampledFunction& f, double p);
/// g^flat(x) = conj(g(x^{-1})).
SampledFunction flat(const SampledFunction& g);
SampledFunction conj(const SampledFunction& f);

/// Integral operator (T u)(x) = sum_y K(x, y) u(y) w_y.
class DenseOperator {
public:
    DenseOperator() = default;
    DenseOperator(ModelPtr model, Eigen::MatrixXcd kernel);

    static DenseOperator zero(const ModelPtr& model);
    static DenseOperator identity(const ModelPtr& model);
    /// w -> <w, u> v.
    static DenseOperator rank_one(const SampledFunction& u, const SampledFunction& v);

    const ModelPtr& model() const { return model_; }
    const Eigen::MatrixXcd& kernel() const { return kernel_; }
    Eigen::MatrixXcd& kernel() { return kernel_; }
    std::size_t size() const { return static_cast<std::size_t>(kernel_.rows()); }

    SampledFunction apply(const SampledFunction& u) const;
    /// (*this) o other.
    DenseOperator compose(const DenseOperator& other) const;
    DenseOperator adjoint() const;

    double hs_norm() const;
    cplx hs_inner(const DenseOperator& other) const;
    /// sqrt(Tr(T T^*)) through an explicit operator product.
    double hs_norm_by_trace() const;
    /// sum_x K(x,x) w_x.
    cplx trace() const;

private:
    ModelPtr model_;
    Eigen::MatrixXcd kernel_;
};

DenseOperator operator+(const DenseOperator& a, const DenseOperator& b);
DenseOperator operator-(const DenseOperator& a, const DenseOperator& b);
DenseOperator operator*(cplx c, const DenseOperator& a);
/// ||a - b||_HS / ||b||_HS.
double relative_hs_error(const DenseOperator& a, const DenseOperator& b);

DenseOperator mult_op(const SampledFunction& f);
/// u -> g * u, kernel g(x y^{-1}) Delta(y)^{-1}.
DenseOperator conv_op_left(const SampledFunction& g);
/// u -> u * g, kernel g(y^{-1} x).
DenseOperator conv_op_right(const SampledFunction& g);

void write_csv(std::ostream& out, const SampledFunction& f);
SampledFunction read_csv(std::istream& in, const ModelPtr& model);
void write_csv(std::ostream& out, const DenseOperator& T);

} // namespace gpdo

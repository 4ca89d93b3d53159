#pragma once
//
// Unitary dual models, representations, Duflo-Moore operators and operator
// fields. A Model bundles the group grid with its dual so that every sampled
// object can refer to one immutable, shareable description.
//
// Affine representation spaces are discretized on geometric s-grids with the
// group ratio r. Vectors and operators are stored in the orthonormal basis
// psi_q = sqrt(|s_q| ln r) phi(s_q); in that basis pi(b, r^k) is the partial
// shift (pi psi)_p = e^{2 pi i b s_p} psi_{p+k}, and the HS product is the
// plain Frobenius product.
//

#include "gpdo/group.hpp"

#include <Eigen/Dense>

#include <memory>
#include <vector>

namespace gpdo {

using RepVector = Eigen::VectorXcd;
using RepOperator = Eigen::MatrixXcd;

struct DualPoint {
    Backend backend = Backend::affine;
    std::size_t index = 0;   // position in the model's dual list
    std::int64_t character = 0;  // cyclic: m
    int sign = 1;            // affine: +1 or -1
    double weight = 1.0;     // Plancherel weight
};

/// s-nodes s_q = sign * s_top * r^{q - (n - 1)}, q in [0, n).
class RepGrid {
public:
    RepGrid(int sign, double s_top, double ratio, int nodes);

    int sign() const { return sign_; }
    std::size_t size() const { return s_.size(); }
    double ratio() const { return ratio_; }
    double s(std::size_t q) const { return s_[q]; }
    /// s at an arbitrary integer index (outside [0, n) too).
    double s_extended(int q) const;
    /// Quadrature weight |s_q| ln r.
    double weight(std::size_t q) const { return std::abs(s_[q]) * std::log(ratio_); }
    const std::vector<double>& nodes() const { return s_; }

    RepVector from_samples(const Eigen::VectorXcd& samples) const;
    Eigen::VectorXcd to_samples(const RepVector& coeffs) const;

private:
    int sign_;
    double s_top_;
    double ratio_;
    std::vector<double> s_;
};

class Model {
public:
    explicit Model(const GridConfig& config);

    const GroupGrid& grid() const { return grid_; }
    const GridConfig& config() const { return grid_.config(); }
    Backend backend() const { return grid_.backend(); }

    std::size_t dual_size() const { return duals_.size(); }
    const DualPoint& dual(std::size_t xi) const { return duals_[xi]; }
    const std::vector<DualPoint>& duals() const { return duals_; }
    std::size_t dim(std::size_t xi) const;

    // affine
    const RepGrid& rep_grid(std::size_t xi) const { return reps_.at(xi); }
    std::size_t s_nodes() const { return reps_.empty() ? 1 : reps_[0].size(); }
    /// phase(xi)(i, q) = e^{2 pi i b_i s_q}.
    const Eigen::MatrixXcd& phase(std::size_t xi) const { return phase_[xi]; }
    /// Same table over the extended index range [ext_lo, ext_lo + cols).
    const Eigen::MatrixXcd& phase_ext(std::size_t xi) const { return phase_ext_[xi]; }
    int ext_lo() const { return ext_lo_; }

    // cyclic: character(m, k) = e^{-2 pi i m k / N}
    cplx character(std::int64_t m, std::int64_t k) const;

    bool compatible(const Model& other) const;

private:
    GroupGrid grid_;
    std::vector<DualPoint> duals_;
    std::vector<RepGrid> reps_;
    std::vector<Eigen::MatrixXcd> phase_;
    std::vector<Eigen::MatrixXcd> phase_ext_;
    int ext_lo_ = 0;
};

using ModelPtr = std::shared_ptr<const Model>;

ModelPtr make_model(const GridConfig& config);

/// Throws GridMismatch unless both models describe the same grids.
void require_compatible(const ModelPtr& a, const ModelPtr& b, const char* what);

/// Lattice exponent of an affine dilation, or OffLatticeError.
int dilation_exponent(const Model& model, const GroupPoint& x);

RepVector rep_apply(const Model& model, std::size_t xi, const GroupPoint& x, const RepVector& v);
RepOperator rep_matrix(const Model& model, std::size_t xi, const GroupPoint& x);
RepOperator duflo_moore(const Model& model, std::size_t xi, double power);

/// Max over interior diagonal entries of |pi(x) D pi(x)^* - Delta(x)^{-1} D|.
double semi_invariance_residual(const Model& model, std::size_t xi, const GroupPoint& x);

/// Tr(T S^*).
cplx hs_inner(const RepOperator& T, const RepOperator& S);

/// A measurable field xi -> B_2(H_xi), one block per dual point.
struct OperatorField {
    ModelPtr model;
    std::vector<RepOperator> blocks;

    static OperatorField zero(const ModelPtr& model);
    static OperatorField identity(const ModelPtr& model);

    OperatorField& operator+=(const OperatorField& other);
    OperatorField& operator*=(cplx c);
};

OperatorField operator+(OperatorField a, const OperatorField& b);
OperatorField operator-(OperatorField a, const OperatorField& b);
OperatorField operator*(cplx c, OperatorField a);

/// Plancherel-weighted sum of per-point HS products.
cplx hs_inner(const OperatorField& F, const OperatorField& G);
double hs_norm(const OperatorField& F);

} // namespace gpdo

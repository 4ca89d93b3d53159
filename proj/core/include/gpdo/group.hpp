#pragma once
//
// Group backends: the finite cyclic group Z_N and the affine group
// G = { (b,a) : a > 0 } with (b,a)(b',a') = (a b' + b, a a').
//

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gpdo {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

enum class Backend { cyclic, affine };

std::string_view to_string(Backend backend);
Backend backend_from_string(std::string_view name);

struct GroupPoint {
    Backend backend = Backend::affine;
    double b = 0.0;          // affine translation part
    double a = 1.0;          // affine dilation part, a > 0
    std::int64_t k = 0;      // cyclic residue, 0 <= k < order
    std::int64_t order = 0;  // cyclic group order N

    static GroupPoint affine(double b, double a);
    static GroupPoint cyclic(std::int64_t k, std::int64_t order);

    bool operator==(const GroupPoint&) const = default;
};

/// Element (beta, alpha) of the affine Lie algebra; [X,X'] = (alpha beta' - alpha' beta, 0).
struct LieVector {
    double beta = 0.0;
    double alpha = 0.0;
};

GroupPoint identity_of(const GroupPoint& like);
GroupPoint multiply(const GroupPoint& x, const GroupPoint& y);
GroupPoint inverse(const GroupPoint& x);

/// Delta(b,a) = 1/a on the affine group, 1 on Z_N.
double modular(const GroupPoint& x);

GroupPoint exp_map(const LieVector& X);
LieVector log_map(const GroupPoint& x);

/// theta(beta, alpha) = (1 - e^{-alpha}) / alpha, the density of Haar measure in
/// exponential coordinates.
double theta(const LieVector& X);

/// Below this |alpha| the exp/log/theta formulas switch to their Taylor series.
inline constexpr double series_cutoff = 1e-4;

struct GridConfig {
    Backend backend = Backend::affine;

    // cyclic
    std::int64_t n = 16;

    // affine group grid: b_i = -b_halfwidth + i h_b, a_j = r^j for j in [j_min, j_max)
    double h_b = 0.5;
    double r = 1.189207115002721;  // 2^{1/4}
    double b_halfwidth = 8.0;
    int j_min = -16;
    int j_max = 16;

    // representation grids: s_m = +-s_top r^{m}, m in (-s_nodes, 0]
    double s_top = 1.0;
    int s_nodes = 32;

    // cotangent lattice for the exponential calculus; 0 selects the
    // discrete-Fourier dual of the (b, ln a) grid
    int lattice_ny = 0;
    int lattice_nx = 0;

    int refinement_level = 0;

    void validate() const;
    bool operator==(const GridConfig&) const = default;
};

/// One refinement step: h_b/2, r -> sqrt(r), exponent range doubled, one extra
/// octave of s-nodes below the fixed top node. Cyclic: N -> 2N.
GridConfig refine(const GridConfig& config, int levels = 1);

/// Quadrature model of G: nodes, left-Haar weights and modular values.
///
/// Affine nodes are stored b-fastest: index = ib + nb * ja with ja = j - j_min.
/// The Haar weight at (b_i, a_j) is h_b ln(r) / a_j, the pushforward of
/// a^{-2} db da onto the (b, ln a) lattice.
class GroupGrid {
public:
    explicit GroupGrid(const GridConfig& config);

    Backend backend() const { return config_.backend; }
    const GridConfig& config() const { return config_; }
    std::size_t size() const { return weights_.size(); }

    GroupPoint node(std::size_t index) const;
    double weight(std::size_t index) const { return weights_[index]; }
    double modular(std::size_t index) const { return modular_[index]; }
    std::span<const double> weights() const { return weights_; }
    std::span<const double> modular_values() const { return modular_; }

    std::size_t identity_index() const;

    // affine layout
    std::size_t nb() const { return nb_; }
    std::size_t na() const { return na_; }
    double hb() const { return config_.h_b; }
    double ratio() const { return config_.r; }
    double log_ratio() const { return log_r_; }
    int j_min() const { return config_.j_min; }
    double b_at(std::size_t ib) const { return b_[ib]; }
    double a_at(std::size_t ja) const { return a_[ja]; }
    int exponent_at(std::size_t ja) const { return config_.j_min + static_cast<int>(ja); }
    std::size_t ib_of(std::size_t index) const { return index % nb_; }
    std::size_t ja_of(std::size_t index) const { return index / nb_; }
    std::size_t index(std::size_t ib, std::size_t ja) const { return ib + nb_ * ja; }
    std::span<const double> b_nodes() const { return b_; }

    /// k with a == r^k (relative tolerance 1e-9 in ln a), if any.
    std::optional<int> lattice_exponent(double a) const;

    /// Exact node lookup (affine b within 1e-9 h_b of a node).
    std::optional<std::size_t> find(const GroupPoint& x) const;

private:
    GridConfig config_;
    std::size_t nb_ = 0;
    std::size_t na_ = 0;
    double log_r_ = 0.0;
    std::vector<double> b_;
    std::vector<double> a_;
    std::vector<double> weights_;
    std::vector<double> modular_;
};

GroupGrid build_grid(const GridConfig& config);

} // namespace gpdo

#include "gpdo/expcalc.hpp"

#include "gpdo/error.hpp"

#include <cmath>

namespace gpdo {

CotangentLattice::CotangentLattice(int n_eta, double d_eta, int n_chi, double d_chi)
    : n_eta_(n_eta), n_chi_(n_chi), d_eta_(d_eta), d_chi_(d_chi)
{
    if (n_eta < 1 || n_chi < 1 || !(d_eta > 0.0) || !(d_chi > 0.0))
        throw ConfigError("cotangent lattice needs positive sizes and spacings");
}

namespace {

void require_affine(const Model& model)
{
    if (model.backend() != Backend::affine)
        throw UnsupportedError("exponential-coordinate calculus needs the affine backend");
}

// t / expm1(t), the factor taking b to beta at dilation e^t
double beta_factor(double t)
{
    return log_map(GroupPoint::affine(1.0, std::exp(t))).beta;
}

} // namespace

CotangentLattice CotangentLattice::for_model(const Model& model)
{
    require_affine(model);
    const auto& grid = model.grid();
    const auto& cfg = model.config();
    const int n_eta = cfg.lattice_ny > 0 ? cfg.lattice_ny : static_cast<int>(grid.nb());
    const int n_chi = cfg.lattice_nx > 0 ? cfg.lattice_nx : static_cast<int>(grid.na());
    const double d_eta = 2.0 * pi / (static_cast<double>(grid.nb()) * grid.hb());
    const double d_chi = 2.0 * pi / (static_cast<double>(grid.na()) * grid.log_ratio());
    return {n_eta, d_eta, n_chi, d_chi};
}

ScalarSymbol::ScalarSymbol(ModelPtr model) : model_(std::move(model))
{
    if (!model_) throw GridMismatch("scalar symbol without a model");
    lattice_ = CotangentLattice::for_model(*model_);
    nodes_.resize(model_->grid().size());
}

void ScalarSymbol::set(std::size_t i, LatticeFunction w)
{
    if (w.rows() != lattice_.n_eta() || w.cols() != lattice_.n_chi())
        throw GridMismatch("lattice function shape differs from the lattice");
    nodes_[i] = std::move(w);
}

ScalarSymbol ScalarSymbol::separable(const SampledFunction& f, const LatticeFunction& w)
{
    ScalarSymbol out(f.model());
    for (std::size_t i = 0; i < f.size(); ++i)
        if (f[i] != 0.0) out.set(i, f[i] * w);
    return out;
}

double ScalarSymbol::norm() const
{
    const auto& grid = model_->grid();
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        if (nonzero(i)) acc += grid.weight(i) * nodes_[i].squaredNorm();
    return std::sqrt(acc * lattice_.measure());
}

double lattice_norm(const CotangentLattice& lattice, const LatticeFunction& w)
{
    return std::sqrt(w.squaredNorm() * lattice.measure());
}

LatticeFunction fourier_exp(const SampledFunction& u)
{
    const auto& model = *u.model();
    require_affine(model);
    const auto& grid = model.grid();
    const auto lat = CotangentLattice::for_model(model);
    const auto nb = static_cast<Eigen::Index>(grid.nb());

    LatticeFunction out = LatticeFunction::Zero(lat.n_eta(), lat.n_chi());
    Eigen::MatrixXcd E(lat.n_eta(), nb);
    Eigen::VectorXcd col(nb);
    Eigen::RowVectorXcd chi_phase(lat.n_chi());
    for (std::size_t ja = 0; ja < grid.na(); ++ja) {
        const double alpha = grid.exponent_at(ja) * grid.log_ratio();
        const double c = beta_factor(alpha);
        const double amp = 1.0 / std::sqrt(theta({0.0, alpha}));
        for (Eigen::Index i = 0; i < nb; ++i) {
            const auto node = grid.index(static_cast<std::size_t>(i), ja);
            col[i] = grid.weight(node) * amp * u[node];
            const double beta = c * grid.b_at(static_cast<std::size_t>(i));
            for (int m = 0; m < lat.n_eta(); ++m) E(m, i) = std::polar(1.0, -beta * lat.eta(m));
        }
        for (int n = 0; n < lat.n_chi(); ++n) chi_phase[n] = std::polar(1.0, -alpha * lat.chi(n));
        out += (E * col) * chi_phase;
    }
    return out;
}

SampledFunction fourier_exp_inv(const ModelPtr& model_ptr, const LatticeFunction& w)
{
    const auto& model = *model_ptr;
    require_affine(model);
    const auto& grid = model.grid();
    const auto lat = CotangentLattice::for_model(model);
    if (w.rows() != lat.n_eta() || w.cols() != lat.n_chi()) throw GridMismatch("lattice function shape differs");

    auto at_point = [lat, w](const GroupPoint& x) -> cplx {
        const auto X = log_map(x);
        Eigen::VectorXcd chi_phase(lat.n_chi());
        for (int n = 0; n < lat.n_chi(); ++n) chi_phase[n] = std::polar(1.0, X.alpha * lat.chi(n));
        Eigen::VectorXcd c = w * chi_phase;
        cplx acc = 0.0;
        for (int m = 0; m < lat.n_eta(); ++m) acc += std::polar(1.0, X.beta * lat.eta(m)) * c[m];
        return acc * lat.measure() / std::sqrt(theta(X));
    };

    Eigen::VectorXcd values(static_cast<Eigen::Index>(grid.size()));
    Eigen::VectorXcd chi_phase(lat.n_chi());
    for (std::size_t ja = 0; ja < grid.na(); ++ja) {
        const double alpha = grid.exponent_at(ja) * grid.log_ratio();
        const double c = beta_factor(alpha);
        const double amp = lat.measure() / std::sqrt(theta({0.0, alpha}));
        for (int n = 0; n < lat.n_chi(); ++n) chi_phase[n] = std::polar(1.0, alpha * lat.chi(n));
        Eigen::VectorXcd reduced = w * chi_phase;
        for (std::size_t i = 0; i < grid.nb(); ++i) {
            const double beta = c * grid.b_at(i);
            cplx acc = 0.0;
            for (int m = 0; m < lat.n_eta(); ++m) acc += std::polar(1.0, beta * lat.eta(m)) * reduced[m];
            values[static_cast<Eigen::Index>(grid.index(i, ja))] = amp * acc;
        }
    }
    return {model_ptr, std::move(values), at_point};
}

OperatorField l_map(const ModelPtr& model, const LatticeFunction& w)
{
    return plancherel_fwd(fourier_exp_inv(model, w));
}

LatticeFunction l_inv(const OperatorField& v)
{
    return fourier_exp(plancherel_inv(v));
}

Symbol l_symbol(const ScalarSymbol& B)
{
    Symbol out(B.model());
    for (std::size_t i = 0; i < B.size(); ++i)
        if (B.nonzero(i)) out.set(i, l_map(B.model(), B.at(i)).blocks);
    return out;
}

double kernel_factor(double a, double a1)
{
    const double t = std::log(a / a1);
    double q;
    if (std::abs(t) < series_cutoff) {
        const double t2 = t * t;
        q = 1.0 + t / 2.0 + t2 / 12.0 - t2 * t2 / 720.0;
    } else {
        q = t / -std::expm1(-t);
    }
    return std::sqrt(q) * std::pow(a1, -1.5);
}

DenseOperator op_scalar(const ScalarSymbol& B)
{
    const auto& model = *B.model();
    require_affine(model);
    const auto& grid = model.grid();
    const auto& lat = B.lattice();
    const auto nb = static_cast<Eigen::Index>(grid.nb());
    const auto na = static_cast<int>(grid.na());
    const auto n = static_cast<Eigen::Index>(grid.size());
    const int ne = lat.n_eta();

    // per dilation exponent k of x y^{-1}: alpha = k ln r, beta = c_k (b_x - r^k b_y)
    struct Tables {
        Eigen::MatrixXcd from_x;  // e^{i c_k b_i eta_m}
        Eigen::MatrixXcd from_y;  // e^{-i c_k r^k b_i eta_m}
        Eigen::VectorXcd chi;     // e^{i alpha chi_n}
    };
    std::vector<Tables> tables(static_cast<std::size_t>(2 * na - 1));
    for (int k = -(na - 1); k <= na - 1; ++k) {
        auto& t = tables[static_cast<std::size_t>(k + na - 1)];
        const double alpha = k * grid.log_ratio();
        const double c = beta_factor(alpha);
        const double rk = std::pow(grid.ratio(), k);
        t.from_x.resize(nb, ne);
        t.from_y.resize(nb, ne);
        for (int m = 0; m < ne; ++m)
            for (Eigen::Index i = 0; i < nb; ++i) {
                const double b = grid.b_at(static_cast<std::size_t>(i));
                t.from_x(i, m) = std::polar(1.0, c * b * lat.eta(m));
                t.from_y(i, m) = std::polar(1.0, -c * rk * b * lat.eta(m));
            }
        t.chi.resize(lat.n_chi());
        for (int nn = 0; nn < lat.n_chi(); ++nn) t.chi[nn] = std::polar(1.0, alpha * lat.chi(nn));
    }

    Eigen::MatrixXcd K = Eigen::MatrixXcd::Zero(n, n);
    Eigen::VectorXcd v(ne);
    for (std::size_t x = 0; x < grid.size(); ++x) {
        if (!B.nonzero(x)) continue;
        const auto ix = static_cast<Eigen::Index>(grid.ib_of(x));
        const std::size_t jax = grid.ja_of(x);
        const int jx = grid.exponent_at(jax);
        const auto& W = B.at(x);
        for (int ja = 0; ja < na; ++ja) {
            const int k = jx - grid.exponent_at(static_cast<std::size_t>(ja));
            const auto& t = tables[static_cast<std::size_t>(k + na - 1)];
            v = (W * t.chi).cwiseProduct(t.from_x.row(ix).transpose());
            const double ay = grid.a_at(static_cast<std::size_t>(ja));
            const double factor = kernel_factor(grid.a_at(jax), ay) * ay * ay * lat.measure();
            K.row(static_cast<Eigen::Index>(x)).segment(ja * nb, nb) = factor * (t.from_y * v).transpose();
        }
    }
    return {B.model(), std::move(K)};
}

} // namespace gpdo

#pragma once
//
// Operator-valued Fourier transform F f(xi) = sum_y w_y f(y) pi_xi(y), the
// Plancherel transform P f = F f D^{1/2}, and the trace inversion
// f(x) = sum_xi nu_xi Tr(F(xi) D_xi^{1/2} pi_xi(x)^*).
//

#include "gpdo/lspace.hpp"

namespace gpdo {

using Blocks = std::vector<RepOperator>;

OperatorField fourier(const SampledFunction& f);
OperatorField plancherel_fwd(const SampledFunction& f);

/// Trace inversion at the grid nodes; the result carries an exact rule for
/// any point whose dilation is a lattice power.
SampledFunction plancherel_inv(const OperatorField& F);

/// The trace inversion of a single field at one point.
cplx inverse_value(const Model& model, const Blocks& blocks, const GroupPoint& z);

/// D^{1/2} sum_x w_x f(x) pi(x)^*.
OperatorField alt_plancherel(const SampledFunction& f);

/// Per-dual-point product F(xi) G(xi).
OperatorField pointwise_product(const OperatorField& F, const OperatorField& G);

/// | ||P f||^2 - ||f||^2 | / ||f||^2.
double parseval_residual(const SampledFunction& f);

/// ||P(g * u) - F(g) P(u)|| / ||P(g * u)||.
double conv_diag_check(const SampledFunction& g, const SampledFunction& u);

/// Least-squares inverse of the materialized forward map, for comparison with
/// the trace inversion.
SampledFunction plancherel_lsq_inverse(const OperatorField& F);

} // namespace gpdo

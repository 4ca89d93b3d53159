#pragma once
//
// Reference data for the verification suites: Gabor-type bumps on the affine
// group with closed-form norms, random functions, and random symbols.
//

#include "gpdo/expcalc.hpp"

#include <cstdint>
#include <random>

namespace gpdo {

/// amplitude * exp(-(b-b0)^2/(2 width_b^2)) * exp(-(ln a - log_a0)^2/(2 width_log_a^2)) * e^{2 pi i modulation b}
struct BumpParams {
    double b0 = 0.0;
    double log_a0 = 0.0;
    double width_b = 1.5;
    double width_log_a = 0.2;
    double modulation = 0.3;
    cplx amplitude = 1.0;
};

PointRule bump_rule(const BumpParams& p);
SampledFunction bump(const ModelPtr& model, const BumpParams& p);
/// Exact squared L^2(G) norm of the bump.
double bump_norm2(const BumpParams& p);
/// The bump scaled to unit exact norm.
BumpParams normalized(BumpParams p);

/// i.i.d. complex normal samples; affine grids get a bump envelope so the
/// result stays interior.
SampledFunction random_function(const ModelPtr& model, std::mt19937_64& rng);

struct RandomSymbolParams {
    int terms = 4;
    // spatial envelopes phi_k
    double envelope_width_b = 0.75;
    double envelope_width_log_a = 0.2;
    double center_spread_b = 1.0;
    double center_spread_log_a = 0.1;
    // atoms psi_k whose Plancherel transforms fill the dual slot; b-width 1.5
    // keeps the kernel (x, y) -> psi(x y^{-1}) inside the b-range in y, and the
    // carrier keeps the s-spectrum clear of 0 and s_top
    double atom_width_b = 1.5;
    double atom_width_log_a = 0.2;
    double modulation_min = 0.25;
    double modulation_max = 0.35;
};

/// Affine: sum_k c_k phi_k(x) P(psi_k), a finite-rank symbol supported in the
/// grid interior with an exact rule. Cyclic: i.i.d. complex normal entries.
Symbol random_symbol(const ModelPtr& model, std::uint64_t seed, const RandomSymbolParams& p = {});

/// Random crossed kernel (cyclic verification data).
CrossedKernel random_crossed_kernel(const ModelPtr& model, std::mt19937_64& rng);

/// B(x, X) = sum_k c_k phi_k(x) F_exp(psi_k)(X), same envelopes and atoms as random_symbol.
ScalarSymbol random_scalar_symbol(const ModelPtr& model, std::uint64_t seed, const RandomSymbolParams& p = {});

} // namespace gpdo

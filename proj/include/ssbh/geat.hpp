#pragma once

#include <cstdint>

namespace ssbh {

/// Affine min-tradeoff summary feeding the entropy accumulation bounds.
struct MinTradeoff {
    double h = 0;     ///< entropy rate at the abort threshold (bits/round)
    double max_f = 0; ///< Max(f)
    double min_f = 0; ///< Min_Sigma(f)
    double var_f = 0; ///< upper bound on Var(f)

    /// The tradeoff for f -> s*f: h, Max, Min scale by s and Var by s^2.
    MinTradeoff scaled(double s) const { return {h * s, max_f * s, min_f * s, var_f * s * s}; }
};

/// Inputs common to both bound forms. `alpha` is the Renyi parameter of the
/// full theorem and is ignored by the simplified form.
struct GeatInput {
    double n_rounds = 0;   ///< N >= 0
    int d_x = 2;           ///< per-round output dimension
    double eps_smooth = 0; ///< smoothing parameter in (0,1)
    double p_omega = 1.0;  ///< probability of the conditioning event, (0,1]
    double alpha = 1.0;    ///< in (1, 3/2); full form only
};

/// g(eps) = -log2(1 - sqrt(1 - eps^2)), evaluated cancellation free.
double g_eps(double eps);

/// V = log2(2 d_x^2 + 1) + sqrt(2 + Var(f)).
double v_of(const MinTradeoff& tradeoff, int d_x);

/// Full-theorem lower bound on the smooth min-entropy (bits):
/// N h - N ((a-1) ln2 / 2(2-a)) V^2 - (g(eps)+a log2(1/p))/(a-1) - N ((a-1)/(2-a))^2 K'(a).
double geat_full_bound(const GeatInput& input, const MinTradeoff& tradeoff);

struct SimplifiedBound {
    double v0 = 0;    ///< constant-order penalty (bits)
    double v1 = 0;    ///< sqrt(N)-order penalty (bits per sqrt round)
    double bound = 0; ///< N h - v1 sqrt(N) - v0
};

/// Simplified second-order form of the same bound; alpha-free.
SimplifiedBound geat_simplified_bound(const GeatInput& input, const MinTradeoff& tradeoff);

namespace geat_detail {

/// Constant ratio 2 ln2 / (1 + 2 ln2) used by the simplified form.
double xi();

/// log2 of K'(alpha) for exponent span nu = 2 log2 d_x + Max - Min.
double log2_kprime(double alpha, double nu);

/// ln(2^nu + e^2) without overflow for large nu.
double ln_pow2_plus_e2(double nu);

} // namespace geat_detail

} // namespace ssbh

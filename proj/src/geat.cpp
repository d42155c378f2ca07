#include "ssbh/geat.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ssbh {

namespace {

constexpr double ln2 = std::numbers::ln2;

void check_common(const GeatInput& in, const MinTradeoff& f) {
    if (!(in.n_rounds >= 0))
        throw std::invalid_argument("geat: n_rounds must be non-negative");
    if (in.d_x < 2)
        throw std::invalid_argument("geat: d_x must be at least 2");
    if (!(in.eps_smooth > 0.0 && in.eps_smooth < 1.0))
        throw std::invalid_argument("geat: eps_smooth must lie in (0,1)");
    if (!(in.p_omega > 0.0 && in.p_omega <= 1.0))
        throw std::invalid_argument("geat: p_omega must lie in (0,1]");
    if (f.max_f < f.min_f)
        throw std::invalid_argument("geat: Max(f) < Min(f)");
    if (f.var_f < 0)
        throw std::invalid_argument("geat: Var(f) must be non-negative");
}

double nu_of(const MinTradeoff& f, int d_x) {
    return 2.0 * std::log2(static_cast<double>(d_x)) + f.max_f - f.min_f;
}

} // namespace

double g_eps(double eps) {
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("g_eps: eps must lie in (0,1)");
    // 1 - sqrt(1-e^2) = e^2 / (1 + sqrt(1-e^2)), stable for small eps.
    const double inner = eps * eps / (1.0 + std::sqrt((1.0 - eps) * (1.0 + eps)));
    return -std::log2(inner);
}

double v_of(const MinTradeoff& tradeoff, int d_x) {
    if (d_x < 2)
        throw std::invalid_argument("v_of: d_x must be at least 2");
    if (tradeoff.var_f < 0)
        throw std::invalid_argument("v_of: Var(f) must be non-negative");
    return std::log2(2.0 * d_x * d_x + 1.0) + std::sqrt(2.0 + tradeoff.var_f);
}

namespace geat_detail {

double xi() { return 2.0 * ln2 / (1.0 + 2.0 * ln2); }

double ln_pow2_plus_e2(double nu) {
    constexpr double e2 = std::numbers::e * std::numbers::e;
    if (nu > 64.0)
        return nu * ln2 + std::log1p(e2 * std::exp2(-nu));
    return std::log(std::exp2(nu) + e2);
}

double log2_kprime(double alpha, double nu) {
    const double two_a = 2.0 - alpha;
    const double three_2a = 3.0 - 2.0 * alpha;
    const double lead = 3.0 * std::log2(two_a) - std::log2(6.0 * ln2) - 3.0 * std::log2(three_2a);
    const double expo = (alpha - 1.0) / two_a * nu;
    return lead + expo + 3.0 * std::log2(ln_pow2_plus_e2(nu));
}

} // namespace geat_detail

double geat_full_bound(const GeatInput& in, const MinTradeoff& f) {
    check_common(in, f);
    if (!(in.alpha > 1.0 && in.alpha < 1.5))
        throw std::invalid_argument("geat: alpha must lie in (1, 3/2)");

    const double n = in.n_rounds;
    const double a = in.alpha;
    const double v = v_of(f, in.d_x);
    const double nu = nu_of(f, in.d_x);

    const double second_order = n * (a - 1.0) * ln2 / (2.0 * (2.0 - a)) * v * v;
    const double eps_term = (g_eps(in.eps_smooth) + a * std::log2(1.0 / in.p_omega)) / (a - 1.0);
    const double ratio = (a - 1.0) / (2.0 - a);
    const double kterm = n * std::exp2(2.0 * std::log2(ratio) + geat_detail::log2_kprime(a, nu));

    return n * f.h - second_order - eps_term - kterm;
}

SimplifiedBound geat_simplified_bound(const GeatInput& in, const MinTradeoff& f) {
    check_common(in, f);

    const double n = in.n_rounds;
    const double v = v_of(f, in.d_x);
    const double nu = nu_of(f, in.d_x);
    const double g = g_eps(in.eps_smooth);
    const double lpo = std::log2(1.0 / in.p_omega);
    const double xi = geat_detail::xi();

    const double beta = ((2.0 - xi) * xi * xi * lpo + xi * xi * g) /
                        (3.0 * ln2 * ln2 * std::pow(2.0 * xi - 1.0, 3));
    const double gamma = std::sqrt(2.0 * ln2 / xi * (g + (2.0 - xi) * lpo));

    // v0 assembled in log2 space; 2^{((1-xi)/xi) nu} alone can overflow.
    const double log2_v0 = std::log2(beta) - 2.0 * std::log2(v) + (1.0 - xi) / xi * nu +
                           3.0 * std::log2(geat_detail::ln_pow2_plus_e2(nu));

    SimplifiedBound out;
    out.v0 = std::exp2(log2_v0);
    out.v1 = gamma * v;
    out.bound = n * f.h - out.v1 * std::sqrt(n) - out.v0;
    return out;
}

} // namespace ssbh

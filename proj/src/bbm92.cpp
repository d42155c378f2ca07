#include "ssbh/bbm92.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "optim.hpp"
#include "ssbh/errors.hpp"

namespace ssbh {

namespace {

constexpr double neg_inf = -std::numeric_limits<double>::infinity();

} // namespace

void Bbm92Params::validate() const {
    if (n_rounds == 0)
        throw std::invalid_argument("bbm92: n_rounds must be positive");
    if (!(p_x > 0.0 && p_x < 1.0))
        throw std::invalid_argument("bbm92: p_x must lie in (0,1)");
    if (!(e_ph >= 0.0 && e_ph < 0.5))
        throw std::invalid_argument("bbm92: e_ph must lie in [0,0.5)");
    if (!(e_bit >= 0.0 && e_bit <= 0.5))
        throw std::invalid_argument("bbm92: e_bit must lie in [0,0.5]");
    if (!(q_tol >= e_ph && q_tol < 0.5))
        throw std::invalid_argument("bbm92: q_tol must lie in [e_ph, 0.5)");
    if (!(eta_tol > 0.0 && eta_tol <= 1.0))
        throw std::invalid_argument("bbm92: eta_tol must lie in (0,1]");
    if (!(f_ec >= 1.0))
        throw std::invalid_argument("bbm92: f_ec must be at least 1");
    if (!(p_det >= 0.0 && p_det <= 1.0))
        throw std::invalid_argument("bbm92: p_det must lie in [0,1]");
    if (d_x < 2)
        throw std::invalid_argument("bbm92: d_x must be at least 2");
    if (!(eps_sec > 0.0 && eps_sec < 1.0))
        throw std::invalid_argument("bbm92: eps_sec must lie in (0,1)");
    if (!(eps_abort >= 0.0 && eps_abort < 1.0))
        throw std::invalid_argument("bbm92: eps_abort must lie in [0,1)");
    if (!(p_omega > 0.0 && p_omega <= 1.0))
        throw std::invalid_argument("bbm92: p_omega must lie in (0,1]");
}

Scenario Scenario::splitting(std::uint32_t ns) {
    if (ns == 0)
        throw std::invalid_argument("scenario: n_subblocks must be positive");
    return {Kind::Splitting, ns};
}

Scenario Scenario::small_block(std::uint32_t ns) {
    if (ns == 0)
        throw std::invalid_argument("scenario: n_subblocks must be positive");
    return {Kind::SmallBlock, ns};
}

const char* Scenario::name() const {
    switch (kind) {
    case Kind::Full: return "full";
    case Kind::Splitting: return "splitting";
    default: return "smallblock";
    }
}

double binary_entropy(double x) {
    if (!(x >= 0.0 && x <= 1.0))
        throw std::invalid_argument("binary_entropy: argument outside [0,1]");
    if (x == 0.0 || x == 1.0) return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

MinTradeoff min_tradeoff(const Bbm92Params& params, double e_ph_tangent) {
    if (!(e_ph_tangent > 0.0 && e_ph_tangent < 0.5))
        throw std::invalid_argument("min_tradeoff: tangent point must lie in (0,0.5)");
    const double pz2 = params.p_z() * params.p_z();
    const double one_log = 1.0 + std::log2(1.0 - e_ph_tangent);
    const double slope = std::log2(1.0 / e_ph_tangent - 1.0);

    MinTradeoff f;
    f.max_f = pz2 * one_log;
    f.min_f = pz2 * (1.0 + std::log2(e_ph_tangent));
    f.var_f = pz2 * pz2 / (params.p_x * params.p_x) * one_log * one_log;
    f.h = pz2 * params.eta_tol *
          (1.0 - binary_entropy(e_ph_tangent) - (params.q_tol - e_ph_tangent) * slope);
    return f;
}

double ec_leakage(const Bbm92Params& params) {
    const double sift = params.scale_ec_leakage ? params.p_z() * params.p_z() * params.p_det : 1.0;
    return static_cast<double>(params.n_rounds) * sift * params.f_ec *
           binary_entropy(params.e_bit);
}

namespace {

// One hash unit: the whole run (Full), one sampled sub-block (Splitting) or
// one independent short run (SmallBlock).
struct UnitSetup {
    double n_acc = 0;      // rounds entering entropy accumulation
    double scale = 1;      // min-tradeoff rescale factor
    double leak = 0;       // bits of side information charged to the unit
    double eps_unit = 0;   // per-unit secrecy budget
    double p_omega = 1;
    std::uint32_t units = 1;
};

UnitSetup make_unit_setup(const Bbm92Params& P, const Scenario& sc) {
    if (sc.n_subblocks == 0)
        throw std::invalid_argument("scenario: n_subblocks must be positive");
    if (sc.kind == Scenario::Kind::Full && sc.n_subblocks != 1)
        throw std::invalid_argument("scenario: full hashing implies n_subblocks = 1");

    const double ns = sc.n_subblocks;
    const double full_leak = ec_leakage(P);
    UnitSetup u;
    switch (sc.kind) {
    case Scenario::Kind::Full:
        u.n_acc = static_cast<double>(P.n_rounds);
        u.scale = 1.0;
        u.leak = full_leak;
        u.eps_unit = P.eps_sec;
        u.units = 1;
        break;
    case Scenario::Kind::Splitting:
        u.n_acc = static_cast<double>(P.n_rounds);
        u.scale = 1.0 / ns;
        u.leak = P.per_block_syndrome ? full_leak / ns : full_leak;
        u.eps_unit = (P.eps_sec - P.eps_abort) / ns;
        u.units = sc.n_subblocks;
        break;
    case Scenario::Kind::SmallBlock:
        u.n_acc = static_cast<double>(P.n_rounds) / ns;
        u.scale = 1.0;
        u.leak = full_leak / ns;
        u.eps_unit = P.eps_sec / ns;
        u.units = sc.n_subblocks;
        break;
    }
    u.p_omega = P.p_omega_worst_case ? u.eps_unit : P.p_omega;
    return u;
}

// Entropy bound for the unit at a fixed parameter point.
double unit_entropy(const Bbm92Params& P, const UnitSetup& u, const MinTradeoff& scaled,
                    double alpha, double eps_sm) {
    GeatInput in{u.n_acc, P.d_x, eps_sm, u.p_omega, alpha};
    if (P.bound_form == BoundForm::Full)
        return geat_full_bound(in, scaled);
    return geat_simplified_bound(in, scaled).bound;
}

// Extractable length of one unit at a fixed parameter point (leftover hash
// inversion): H - leak + 1 - log2(1/(eps_unit - 2 eps_sm)).
double unit_length(const Bbm92Params& P, const UnitSetup& u, const MinTradeoff& scaled,
                   double alpha, double eps_sm) {
    const double gap = u.eps_unit - 2.0 * eps_sm;
    if (!(gap > 0.0)) return neg_inf;
    const double H = unit_entropy(P, u, scaled, alpha, eps_sm);
    return H - u.leak + 1.0 + std::log2(gap);
}

std::vector<double> eps_sm_grid(double eps_unit) {
    const double hi = eps_unit * 0.5 * (1.0 - 1e-12);
    const double lo = std::min(1e-15, hi * 1e-6);
    auto grid = detail::logspace(lo, hi, 48);
    // Near-boundary points; the optimum often sits within eps_unit/2 * O(1e-6)
    // of the constraint for the full form.
    for (double frac : {1e-2, 1e-4, 1e-6, 1e-8, 1e-10})
        grid.push_back(eps_unit * 0.5 * (1.0 - frac));
    std::sort(grid.begin(), grid.end());
    return grid;
}

std::vector<double> alpha_grid() {
    std::vector<double> g;
    for (int k = 1; k <= 99; ++k) g.push_back(1.0 + 0.005 * k);
    // The optimum at large N sits at alpha - 1 ~ 1/sqrt(N), far below the
    // linear grid's first point; extend with log-spaced offsets.
    for (double d : detail::logspace(1e-9, 4e-3, 28)) g.push_back(1.0 + d);
    std::sort(g.begin(), g.end());
    return g;
}

struct UnitOpt {
    double length = neg_inf;
    OptChoices choice;
};

// Maximise unit_length over eps_sm (and alpha for the full form) at fixed e'.
UnitOpt optimize_unit_at_eprime(const Bbm92Params& P, const UnitSetup& u, double e_prime) {
    const MinTradeoff scaled = min_tradeoff(P, e_prime).scaled(u.scale);
    UnitOpt best;
    best.choice.e_prime = e_prime;
    best.choice.p_omega = u.p_omega;
    best.choice.eps_unit = u.eps_unit;

    std::vector<double> lg;
    for (double e : eps_sm_grid(u.eps_unit)) lg.push_back(std::log(e));
    auto best_eps_sm = [&](double alpha, double& len_out) {
        auto obj = [&](double ln_esm) {
            return unit_length(P, u, scaled, alpha, std::exp(ln_esm));
        };
        const double x = detail::grid_then_golden(lg, 1e-6, 80, obj);
        len_out = obj(x);
        return std::exp(x);
    };

    if (P.bound_form == BoundForm::Simplified) {
        best.choice.eps_sm = best_eps_sm(1.0, best.length);
        best.choice.alpha = 0.0;
        return best;
    }

    static const std::vector<double> alphas = alpha_grid();
    std::size_t best_idx = 0;
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        double len;
        best_eps_sm(alphas[i], len);
        if (len > best.length) {
            best.length = len;
            best_idx = i;
        }
    }
    double best_alpha = alphas[best_idx];
    // Refine alpha in log(alpha-1) around the best grid point.
    const double lo = best_idx == 0 ? 1e-10 : alphas[best_idx - 1] - 1.0;
    const double hi = best_idx + 1 < alphas.size() ? alphas[best_idx + 1] - 1.0 : 0.499;
    const double refined = detail::golden_max(std::log(lo), std::log(hi), 1e-6, 60, [&](double t) {
        double len;
        best_eps_sm(1.0 + std::exp(t), len);
        return len;
    });
    double len;
    best_eps_sm(1.0 + std::exp(refined), len);
    if (len > best.length) {
        best.length = len;
        best_alpha = 1.0 + std::exp(refined);
    }
    best.choice.eps_sm = best_eps_sm(best_alpha, len);
    best.choice.alpha = best_alpha;
    return best;
}

std::vector<double> eprime_grid(const Bbm92Params& P) {
    auto grid = detail::logspace(1e-4, 0.49, 200);
    if (P.q_tol > 0.0 && P.q_tol < 0.5) grid.push_back(P.q_tol);
    std::sort(grid.begin(), grid.end());
    return grid;
}

UnitOpt optimize_unit(const Bbm92Params& P, const UnitSetup& u) {
    const auto grid = eprime_grid(P);
    UnitOpt best;
    std::size_t best_idx = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const UnitOpt cand = optimize_unit_at_eprime(P, u, grid[i]);
        if (cand.length > best.length) {
            best = cand;
            best_idx = i;
        }
    }
    const double lo = grid[best_idx == 0 ? 0 : best_idx - 1];
    const double hi = grid[best_idx + 1 < grid.size() ? best_idx + 1 : best_idx];
    if (lo < hi) {
        const double x = detail::golden_max(std::log(lo), std::log(hi), 1e-6, 60, [&](double t) {
            return optimize_unit_at_eprime(P, u, std::exp(t)).length;
        });
        const UnitOpt cand = optimize_unit_at_eprime(P, u, std::exp(x));
        if (cand.length > best.length) best = cand;
    }
    return best;
}

} // namespace

namespace bbm92_detail {

double key_length_value(const Bbm92Params& P, const Scenario& sc, OptChoices* choice) {
    P.validate();
    const UnitSetup u = make_unit_setup(P, sc);
    if (!(u.eps_unit > 0.0)) {
        if (choice) *choice = {};
        return neg_inf;
    }
    const UnitOpt best = optimize_unit(P, u);
    if (choice) *choice = best.choice;
    return static_cast<double>(u.units) * best.length;
}

} // namespace bbm92_detail

KeyLengthResult key_length(const Bbm92Params& params, const Scenario& scenario) {
    params.validate();
    const UnitSetup u = make_unit_setup(params, scenario);
    KeyLengthResult out;
    if (!(u.eps_unit > 0.0)) return out;

    const UnitOpt best = optimize_unit(params, u);
    out.choice = best.choice;
    if (!(best.length >= 1.0)) return out; // infeasible: no positive unit length
    out.length = static_cast<std::uint64_t>(u.units) *
                 static_cast<std::uint64_t>(std::floor(best.length));
    out.feasible = true;
    return out;
}

SecrecyResult secrecy_for_length(const Bbm92Params& params, std::uint64_t length,
                                 const Scenario& scenario) {
    params.validate();
    UnitSetup u = make_unit_setup(params, scenario);
    const double l_unit = static_cast<double>(length) / static_cast<double>(u.units);

    // eps for one unit at fixed p_omega: min over e', [alpha], eps_sm of
    // 2 eps_sm + 0.5 * 2^{-(H - leak - l_unit)/2}.
    auto unit_epsilon = [&](double p_omega) {
        UnitSetup uu = u;
        uu.p_omega = p_omega;
        auto eps_at = [&](double e_prime, double alpha, double eps_sm) {
            const MinTradeoff scaled = min_tradeoff(params, e_prime).scaled(uu.scale);
            const double margin = unit_entropy(params, uu, scaled, alpha, eps_sm) - uu.leak - l_unit;
            const double hash_term = margin > 2100.0 ? 0.0
                                     : margin < -2100.0
                                         ? std::numeric_limits<double>::infinity()
                                         : 0.5 * std::exp2(-0.5 * margin);
            return 2.0 * eps_sm + hash_term;
        };
        auto best_over_inner = [&](double e_prime) {
            // The feasible eps_sm region can be a narrow shelf beside an
            // infinite cliff (the sqrt(N) term amplifies g), so scan a dense
            // grid before refining.
            static const std::vector<double> lg = [] {
                std::vector<double> v;
                for (double e : detail::logspace(1e-18, 0.24, 120)) v.push_back(std::log(e));
                return v;
            }();
            auto esm_obj = [&](double alpha) {
                auto obj = [&](double t) { return -eps_at(e_prime, alpha, std::exp(t)); };
                const double x = detail::grid_then_golden(lg, 1e-9, 120, obj);
                return obj(x);
            };
            if (params.bound_form == BoundForm::Simplified) return esm_obj(1.0);
            static const std::vector<double> alphas = alpha_grid();
            double best = neg_inf;
            for (double a : alphas) best = std::max(best, esm_obj(a));
            return best;
        };
        const auto grid = eprime_grid(params);
        double best = neg_inf;
        for (double e : grid) best = std::max(best, best_over_inner(e));
        return -best;
    };

    double p_omega = params.p_omega_worst_case ? 1.0 : u.p_omega;
    double eps_unit = unit_epsilon(p_omega);
    if (params.p_omega_worst_case) {
        for (int iter = 0; iter < 5; ++iter) {
            const double next = std::clamp(eps_unit, 1e-300, 1.0);
            if (std::fabs(next - p_omega) <= 1e-3 * p_omega) break;
            p_omega = next;
            eps_unit = unit_epsilon(p_omega);
        }
    }

    SecrecyResult out;
    double total = eps_unit;
    if (scenario.kind == Scenario::Kind::Splitting)
        total = static_cast<double>(scenario.n_subblocks) * eps_unit + params.eps_abort;
    else if (scenario.kind == Scenario::Kind::SmallBlock)
        total = static_cast<double>(scenario.n_subblocks) * eps_unit;
    out.epsilon = std::min(total, 1.0);
    out.meaningful = total < 1.0;
    out.choice.p_omega = p_omega;
    return out;
}

PxResult optimize_px(const Bbm92Params& params, const Scenario& scenario) {
    params.validate();
    auto value_at = [&](double px) {
        Bbm92Params p = params;
        p.p_x = px;
        return bbm92_detail::key_length_value(p, scenario, nullptr);
    };

    const auto grid = detail::logspace(1e-3, 0.5, 40);
    std::size_t best_idx = 0;
    double best_val = neg_inf;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double v = value_at(grid[i]);
        if (v > best_val) {
            best_val = v;
            best_idx = i;
        }
    }
    if (!(best_val >= 1.0))
        throw infeasible_error("optimize_px: no test probability yields a positive key");

    const double lo = grid[best_idx == 0 ? 0 : best_idx - 1];
    const double hi = grid[best_idx + 1 < grid.size() ? best_idx + 1 : best_idx];
    double best_px = grid[best_idx];
    if (lo < hi) {
        const double x =
            detail::golden_max(std::log(lo), std::log(hi), 1e-6, 70,
                               [&](double t) { return value_at(std::exp(t)); });
        if (value_at(std::exp(x)) > best_val) best_px = std::exp(x);
    }

    Bbm92Params p = params;
    p.p_x = best_px;
    PxResult out;
    out.p_x = best_px;
    out.best = key_length(p, scenario);
    return out;
}

} // namespace ssbh

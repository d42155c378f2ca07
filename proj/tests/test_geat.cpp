#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "reference_values.hpp"
#include "ssbh/geat.hpp"

using namespace ssbh;

namespace {

const MinTradeoff pinned_tradeoff{0.8, 1.0, -1.0, 10.0};
const GeatInput pinned_input{1e9, 2, 1e-9, 1.0, 1.05};

} // namespace

TEST_CASE("g(eps) closed forms and limits") {
    CHECK(g_eps(std::sqrt(3.0) / 2.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(g_eps(0.6) == doctest::Approx(refvals::g_06).epsilon(1e-14));
    CHECK(g_eps(1.0 - 1e-12) < 1e-5);
    CHECK(g_eps(1.0 - 1e-12) > 0.0);
    CHECK_THROWS_AS(g_eps(0.0), std::invalid_argument);
    CHECK_THROWS_AS(g_eps(1.0), std::invalid_argument);
}

TEST_CASE("V factor") {
    CHECK(v_of({0, 0, 0, 2.0}, 2) == doctest::Approx(refvals::v_d2_var2).epsilon(1e-14));
    CHECK(v_of({0, 0, 0, 0.0}, 2) == doctest::Approx(refvals::v_d2_var0).epsilon(1e-14));
    double prev = 0;
    for (double var = 0; var < 50; var += 2.5) {
        const double v = v_of({0, 0, 0, var}, 2);
        CHECK(v > prev);
        prev = v;
    }
    CHECK_THROWS_AS(v_of({0, 0, 0, -1.0}, 2), std::invalid_argument);
    CHECK_THROWS_AS(v_of({0, 0, 0, 1.0}, 1), std::invalid_argument);
}

TEST_CASE("xi constant") {
    CHECK(geat_detail::xi() == doctest::Approx(refvals::xi).epsilon(1e-15));
}

TEST_CASE("full bound at N = 0 keeps only the eps term") {
    GeatInput in = pinned_input;
    in.n_rounds = 0;
    const double expect =
        -(g_eps(in.eps_smooth) + in.alpha * std::log2(1.0 / in.p_omega)) / (in.alpha - 1.0);
    CHECK(geat_full_bound(in, pinned_tradeoff) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("full bound pinned point against the arbitrary-precision value") {
    const double got = geat_full_bound(pinned_input, pinned_tradeoff);
    CHECK(std::fabs(got - refvals::geat_full_pinned) <=
          1e-10 * std::fabs(refvals::geat_full_pinned));
}

TEST_CASE("simplified bound pinned point against the arbitrary-precision value") {
    const SimplifiedBound sb = geat_simplified_bound(pinned_input, pinned_tradeoff);
    CHECK(std::fabs(sb.v0 - refvals::v0_pinned) <= 1e-10 * refvals::v0_pinned);
    CHECK(std::fabs(sb.v1 - refvals::v1_pinned) <= 1e-10 * refvals::v1_pinned);
    CHECK(std::fabs(sb.bound - refvals::simplified_pinned) <= 1e-10 * refvals::simplified_pinned);
}

TEST_CASE("p_omega = 1 removes its penalty and dominates smaller values") {
    GeatInput one = pinned_input;
    one.p_omega = 1.0;
    GeatInput small = pinned_input;
    small.p_omega = 1e-6;
    CHECK(geat_full_bound(one, pinned_tradeoff) > geat_full_bound(small, pinned_tradeoff));
    CHECK(geat_simplified_bound(one, pinned_tradeoff).bound >
          geat_simplified_bound(small, pinned_tradeoff).bound);
}

TEST_CASE("v0 and v1 are non-negative on a randomized grid") {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int iter = 0; iter < 200; ++iter) {
        MinTradeoff f;
        f.h = unit(rng);
        f.max_f = f.h + unit(rng);
        f.min_f = f.max_f - 8.0 * unit(rng);
        f.var_f = 100.0 * unit(rng);
        GeatInput in;
        in.n_rounds = std::pow(10.0, 3.0 + 6.0 * unit(rng));
        in.d_x = 2 + static_cast<int>(rng() % 3);
        in.eps_smooth = std::pow(10.0, -1.0 - 10.0 * unit(rng));
        in.p_omega = std::pow(10.0, -6.0 * unit(rng));
        const SimplifiedBound sb = geat_simplified_bound(in, f);
        CHECK(sb.v0 >= 0.0);
        CHECK(sb.v1 >= 0.0);
    }
}

TEST_CASE("both forms are monotone in h, p_omega and Var") {
    auto full_at = [&](double h, double pw, double var) {
        MinTradeoff f = pinned_tradeoff;
        f.h = h;
        f.var_f = var;
        GeatInput in = pinned_input;
        in.p_omega = pw;
        in.n_rounds = 1e8;
        in.alpha = 1.0 + 1e-4;
        return geat_full_bound(in, f);
    };
    auto simp_at = [&](double h, double pw, double var) {
        MinTradeoff f = pinned_tradeoff;
        f.h = h;
        f.var_f = var;
        GeatInput in = pinned_input;
        in.p_omega = pw;
        in.n_rounds = 1e8;
        return geat_simplified_bound(in, f).bound;
    };
    double prev_f = -1e300, prev_s = -1e300;
    for (double h = 0.1; h <= 1.0; h += 0.1) {
        CHECK(full_at(h, 1.0, 10.0) > prev_f);
        CHECK(simp_at(h, 1.0, 10.0) > prev_s);
        prev_f = full_at(h, 1.0, 10.0);
        prev_s = simp_at(h, 1.0, 10.0);
    }
    prev_f = prev_s = -1e300;
    for (double pw : {1e-9, 1e-6, 1e-3, 0.1, 1.0}) {
        CHECK(full_at(0.8, pw, 10.0) > prev_f);
        CHECK(simp_at(0.8, pw, 10.0) > prev_s);
        prev_f = full_at(0.8, pw, 10.0);
        prev_s = simp_at(0.8, pw, 10.0);
    }
    double prev_var_f = 1e300, prev_var_s = 1e300;
    for (double var = 0.0; var <= 100.0; var += 10.0) {
        CHECK(full_at(0.8, 1.0, var) < prev_var_f);
        CHECK(simp_at(0.8, 1.0, var) < prev_var_s);
        prev_var_f = full_at(0.8, 1.0, var);
        prev_var_s = simp_at(0.8, 1.0, var);
    }
}

TEST_CASE("full bound stays finite across the alpha range") {
    for (double alpha = 1.0 + 1e-6; alpha < 1.5; alpha += 0.01) {
        GeatInput in = pinned_input;
        in.alpha = std::min(alpha, 1.5 - 1e-6);
        const double v = geat_full_bound(in, pinned_tradeoff);
        CHECK(std::isfinite(v));
    }
    GeatInput in = pinned_input;
    in.alpha = 1.5 - 1e-6;
    CHECK(std::isfinite(geat_full_bound(in, pinned_tradeoff)));
}

TEST_CASE("bound per round approaches h for huge N") {
    GeatInput in = pinned_input;
    in.n_rounds = 1e12;
    // Optimise the full form over an alpha grid.
    double best = -1e300;
    for (double t = -9.0; t < -0.35; t += 0.1) {
        in.alpha = 1.0 + std::pow(10.0, t);
        best = std::max(best, geat_full_bound(in, pinned_tradeoff));
    }
    CHECK(std::fabs(best / in.n_rounds - pinned_tradeoff.h) < 1e-3);
    CHECK(std::fabs(geat_simplified_bound(in, pinned_tradeoff).bound / in.n_rounds -
                    pinned_tradeoff.h) < 1e-3);
}

TEST_CASE("domain errors") {
    GeatInput in = pinned_input;
    in.alpha = 1.5;
    CHECK_THROWS_AS(geat_full_bound(in, pinned_tradeoff), std::invalid_argument);
    in.alpha = 1.0;
    CHECK_THROWS_AS(geat_full_bound(in, pinned_tradeoff), std::invalid_argument);
    in = pinned_input;
    in.eps_smooth = 0.0;
    CHECK_THROWS_AS(geat_full_bound(in, pinned_tradeoff), std::invalid_argument);
    CHECK_THROWS_AS(geat_simplified_bound(in, pinned_tradeoff), std::invalid_argument);
    in = pinned_input;
    in.p_omega = 0.0;
    CHECK_THROWS_AS(geat_simplified_bound(in, pinned_tradeoff), std::invalid_argument);
}

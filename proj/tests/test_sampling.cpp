#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "reference_values.hpp"
#include "ssbh/errors.hpp"
#include "ssbh/sampling.hpp"

using namespace ssbh;

namespace {

// Exact binomial survival function Pr[Bin(n,p) > L], summed in long double.
long double binom_tail_exact(std::uint64_t n, double p, std::uint64_t L) {
    long double total = 0.0L;
    const long double lp = std::log(static_cast<long double>(p));
    const long double lq = std::log(1.0L - static_cast<long double>(p));
    for (std::uint64_t k = L + 1; k <= n; ++k) {
        const long double lpmf = std::lgamma(static_cast<long double>(n) + 1.0L) -
                                 std::lgamma(static_cast<long double>(k) + 1.0L) -
                                 std::lgamma(static_cast<long double>(n - k) + 1.0L) +
                                 static_cast<long double>(k) * lp +
                                 static_cast<long double>(n - k) * lq;
        total += std::exp(lpmf);
    }
    return total;
}

} // namespace

TEST_CASE("single block swallows every round") {
    const Partition part = assign_subblocks(1000, 1, MasterSeed{});
    CHECK(part.raw_counts[0] == 1000);
    for (auto v : part.assignment) CHECK(v == 1);
}

TEST_CASE("assignment is deterministic in the seed") {
    MasterSeed seed = MasterSeed::from_hex(std::string(63, '0') + "5");
    const Partition a = assign_subblocks(5000, 7, seed);
    const Partition b = assign_subblocks(5000, 7, seed);
    CHECK(a.assignment == b.assignment);
    MasterSeed other = MasterSeed::from_hex(std::string(63, '0') + "6");
    CHECK(assign_subblocks(5000, 7, other).assignment != a.assignment);
}

TEST_CASE("zero sub-blocks is rejected") {
    CHECK_THROWS_AS(assign_subblocks(10, 0, MasterSeed{}), std::invalid_argument);
}

TEST_CASE("block occupancy matches binomial statistics") {
    const std::uint64_t n = 1000000;
    const std::uint32_t ns = 20;
    const Partition part = assign_subblocks(n, ns, MasterSeed{});
    const double mean = static_cast<double>(n) / ns;
    const double sigma = std::sqrt(static_cast<double>(n) * (1.0 / ns) * (1.0 - 1.0 / ns));
    std::uint64_t total = 0;
    for (std::uint64_t c : part.raw_counts) {
        CHECK(std::fabs(static_cast<double>(c) - mean) <= 5.0 * sigma);
        total += c;
    }
    CHECK(total == n);
}

TEST_CASE("sifting: trivial outcomes") {
    const Partition part = assign_subblocks(64, 4, MasterSeed{});
    const std::vector<std::uint8_t> none(64, 0);
    const SiftedPartition empty = sift_partition(none, part);
    CHECK(empty.max_len == 0);
    for (const auto& b : empty.blocks) CHECK(b.empty());

    const Partition one = assign_subblocks(64, 1, MasterSeed{});
    const std::vector<std::uint8_t> all(64, 1);
    const SiftedPartition full = sift_partition(all, one);
    REQUIRE(full.blocks[0].size() == 64);
    for (std::uint64_t i = 0; i < 64; ++i) CHECK(full.blocks[0][i] == i);
}

TEST_CASE("sifting: blocks are disjoint and cover the kept set") {
    std::mt19937_64 rng(5);
    const std::uint64_t n = 10000;
    const Partition part = assign_subblocks(n, 4, MasterSeed{});
    std::vector<std::uint8_t> keep(n);
    for (auto& k : keep) k = rng() & 1;
    const SiftedPartition sifted = sift_partition(keep, part);

    std::vector<std::uint64_t> seen;
    for (std::uint32_t j = 0; j < 4; ++j) {
        CHECK(std::is_sorted(sifted.blocks[j].begin(), sifted.blocks[j].end()));
        for (std::uint64_t i : sifted.blocks[j]) {
            CHECK(keep[i]);
            CHECK(part.assignment[i] == j + 1);
            seen.push_back(i);
        }
    }
    std::sort(seen.begin(), seen.end());
    CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());
    std::uint64_t kept = 0;
    for (auto k : keep) kept += k;
    CHECK(seen.size() == kept);
}

TEST_CASE("sift length mismatch is rejected") {
    const Partition part = assign_subblocks(8, 2, MasterSeed{});
    const std::vector<std::uint8_t> keep(7, 1);
    CHECK_THROWS_AS(sift_partition(keep, part), std::invalid_argument);
}

TEST_CASE("relative entropy identities") {
    CHECK(relative_entropy(0.3, 0.3) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(relative_entropy(1.0, 0.5) == doctest::Approx(refvals::ln2).epsilon(1e-15));
    CHECK(relative_entropy(0.6, 0.5) ==
          doctest::Approx(refvals::rel_entropy_06_05).epsilon(1e-14));
    CHECK(relative_entropy(0.0, 0.25) == doctest::Approx(std::log(4.0 / 3.0)).epsilon(1e-14));
    CHECK_THROWS_AS(relative_entropy(0.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(relative_entropy(0.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(relative_entropy(-0.1, 0.5), std::invalid_argument);

    // Non-negative, zero only at x = p, increasing above p.
    for (double p : {0.1, 0.5, 0.9}) {
        double prev = 0.0;
        for (double x = p; x <= 1.0; x += 0.01) {
            const double h = relative_entropy(std::min(x, 1.0), p);
            CHECK(h >= prev);
            prev = h;
        }
        CHECK(relative_entropy(p + 0.05, p) > 0.0);
    }
}

TEST_CASE("block limit at the boundary budget") {
    // 1 - Phi(0) = 0.5 is met at the mean, so ceil(n p) is returned.
    CHECK(block_limit(1000, 0.5, 0.5, 1) == 500);
    CHECK(block_limit(999, 0.5, 0.5, 1) == 500);
}

TEST_CASE("block limit is minimal and dominates the exact binomial tail") {
    const std::uint64_t n = 1000;
    const double p = 0.5;
    const double budget = 1e-6;
    const std::uint64_t L = block_limit(n, p, budget, 1);

    CHECK(binomial_tail_bound(n, L, p) <= budget);
    CHECK(binomial_tail_bound(n, L - 1, p) > budget);

    // The concentration bound must sit above the exact survival function, so
    // the exact tail at the returned L is also within budget.
    CHECK(static_cast<double>(binom_tail_exact(n, p, L)) <= budget);

    // Minimality against a direct scan of the bound itself.
    std::uint64_t scan = 500;
    while (binomial_tail_bound(n, scan, p) > budget) ++scan;
    CHECK(scan == L);
}

TEST_CASE("concentration bound dominates the exact tail on a grid") {
    for (std::uint64_t n : {10ull, 40ull, 130ull, 377ull}) {
        for (double p : {0.05, 0.3, 0.5, 0.8}) {
            const auto lo = static_cast<std::uint64_t>(std::ceil(n * p));
            for (std::uint64_t L = lo; L < n; ++L) {
                const long double exact = binom_tail_exact(n, p, L);
                CHECK(binomial_tail_bound(n, L, p) >= static_cast<double>(exact) * (1 - 1e-12));
            }
        }
    }
}

TEST_CASE("block limit monotone in the abort budget") {
    std::uint64_t prev = 1000;
    for (double eps : {1e-12, 1e-9, 1e-6, 1e-3, 0.1}) {
        const std::uint64_t L = block_limit(1000, 0.5, eps, 4);
        CHECK(L <= prev);
        prev = L;
    }
}

TEST_CASE("block limit rejects impossible budgets") {
    // Too few rounds for the requested tail, and a threshold below erfc range.
    CHECK_THROWS_AS(block_limit(20, 0.99, 1e-15, 1), infeasible_error);
    CHECK_THROWS_AS(block_limit(1000, 0.5, 1e-290, 1ull << 40), infeasible_error);
    CHECK_THROWS_AS(block_limit(1000, 0.0, 0.5, 1), std::invalid_argument);
    CHECK_THROWS_AS(block_limit(1000, 0.5, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(block_limit(1000, 0.5, 0.5, 0), std::invalid_argument);
}

TEST_CASE("abort check is a strict threshold") {
    const std::uint64_t lens_pass[] = {10, 10, 10};
    const std::uint64_t lens_fail[] = {10, 11, 10};
    CHECK(abort_check(lens_pass, 10));
    CHECK_FALSE(abort_check(lens_fail, 10));
    CHECK(abort_check({}, 0));
}

TEST_CASE("honest runs never trip the oversize abort") {
    // p_sift = p_z^2 p_det / n_subblocks at the production error rates.
    const std::uint64_t n = 30000;
    const std::uint32_t ns = 17;
    const double p_sift = 0.98 * 0.98 * 1.0 / ns;
    const std::uint64_t limit = block_limit(n, p_sift, 1e-8, ns);

    const MasterSeed seed{};
    int aborts = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const KeyedStream stream(seed, "mc-trial", static_cast<std::uint64_t>(trial));
        std::vector<std::uint64_t> counts(ns, 0);
        for (std::uint64_t i = 0; i < n; ++i) {
            const std::uint64_t w = stream.word(i);
            const bool kept = static_cast<double>(w >> 11) * 0x1.0p-53 < 0.98 * 0.98;
            if (kept) ++counts[(w & 0xFFFF) % ns]; // bias ~ ns/2^16, irrelevant here
        }
        if (!abort_check(counts, limit)) ++aborts;
    }
    CHECK(aborts == 0);
}

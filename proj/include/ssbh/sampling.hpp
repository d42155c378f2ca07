#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ssbh/prf.hpp"

namespace ssbh {

/// How raw rounds are divided into sub-blocks and when a run must abort.
/// The sampling probability is exactly 1/n_subblocks.
struct SamplingPlan {
    std::uint32_t n_subblocks = 1;
    double eps_abort = 1e-8;       ///< budget for Pr[some sifted sub-block overflows]
    std::uint64_t block_limit = 0; ///< per-block sifted length cap (bits)
    MasterSeed seed;

    double p_sample() const { return 1.0 / n_subblocks; }
};

/// Assignment of every round to one sub-block.
struct Partition {
    std::uint32_t n_subblocks = 1;
    std::vector<std::uint32_t> assignment; ///< V_i in [1, n_subblocks]
    std::vector<std::uint64_t> raw_counts; ///< |{i : V_i = j}| per block
};

/// Per-block round indices that survived sifting, in round order.
struct SiftedPartition {
    std::vector<std::vector<std::uint64_t>> blocks;
    std::uint64_t max_len = 0;
};

/// Draw V_i uniform on [1, n_subblocks] for each round from the keyed stream;
/// the same seed always yields the same partition.
Partition assign_subblocks(std::uint64_t n_rounds, std::uint32_t n_subblocks,
                           const MasterSeed& seed);

/// Keep round i in its assigned block iff keep[i] != 0.
SiftedPartition sift_partition(std::span<const std::uint8_t> keep, const Partition& partition);

/// Relative entropy x ln(x/p) + (1-x) ln((1-x)/(1-p)) in nats, with the
/// analytic limits at x = 0 and x = 1.
double relative_entropy(double x, double p);

/// Concentration bound on the binomial upper tail:
/// Pr[Bin(n, p) > L] <= 1 - Phi(sqrt(2 n H(L/n, p))) for L >= n p.
double binomial_tail_bound(std::uint64_t n_rounds, std::uint64_t limit, double p_sift);

/// Smallest L >= ceil(n p) with binomial_tail_bound(n, L, p) <= eps_abort/m_blocks.
/// Throws infeasible_error when even L = n fails or the threshold underflows.
std::uint64_t block_limit(std::uint64_t n_rounds, double p_sift, double eps_abort,
                          std::uint64_t m_blocks);

/// Pass iff every sifted sub-block length is <= limit (strict overflow aborts).
bool abort_check(std::span<const std::uint64_t> subblock_lengths, std::uint64_t limit);

} // namespace ssbh

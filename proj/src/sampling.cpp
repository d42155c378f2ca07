#include "ssbh/sampling.hpp"

#include <cmath>
#include <stdexcept>

#include "ssbh/errors.hpp"

namespace ssbh {

Partition assign_subblocks(std::uint64_t n_rounds, std::uint32_t n_subblocks,
                           const MasterSeed& seed) {
    if (n_subblocks == 0)
        throw std::invalid_argument("assign_subblocks: n_subblocks must be positive");
    Partition part;
    part.n_subblocks = n_subblocks;
    part.assignment.resize(n_rounds);
    part.raw_counts.assign(n_subblocks, 0);
    const KeyedStream stream(seed, "sampling");
    for (std::uint64_t i = 0; i < n_rounds; ++i) {
        const auto v = static_cast<std::uint32_t>(stream.uniform_below(n_subblocks, i)) + 1;
        part.assignment[i] = v;
        ++part.raw_counts[v - 1];
    }
    return part;
}

SiftedPartition sift_partition(std::span<const std::uint8_t> keep, const Partition& partition) {
    if (keep.size() != partition.assignment.size())
        throw std::invalid_argument("sift_partition: flag count does not match partition");
    SiftedPartition out;
    out.blocks.resize(partition.n_subblocks);
    for (std::uint32_t j = 0; j < partition.n_subblocks; ++j)
        out.blocks[j].reserve(partition.raw_counts[j]);
    for (std::uint64_t i = 0; i < keep.size(); ++i)
        if (keep[i]) out.blocks[partition.assignment[i] - 1].push_back(i);
    for (const auto& b : out.blocks)
        out.max_len = std::max<std::uint64_t>(out.max_len, b.size());
    return out;
}

double relative_entropy(double x, double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("relative_entropy: p must lie in (0,1)");
    if (!(x >= 0.0 && x <= 1.0))
        throw std::invalid_argument("relative_entropy: x must lie in [0,1]");
    if (x == 0.0) return std::log(1.0 / (1.0 - p));
    if (x == 1.0) return std::log(1.0 / p);
    return x * std::log(x / p) + (1.0 - x) * std::log((1.0 - x) / (1.0 - p));
}

double binomial_tail_bound(std::uint64_t n_rounds, std::uint64_t limit, double p_sift) {
    const double x = static_cast<double>(limit) / static_cast<double>(n_rounds);
    const double arg = std::sqrt(2.0 * static_cast<double>(n_rounds) * relative_entropy(x, p_sift));
    // 1 - Phi(arg), kept accurate deep into the tail.
    return 0.5 * std::erfc(arg / std::sqrt(2.0));
}

std::uint64_t block_limit(std::uint64_t n_rounds, double p_sift, double eps_abort,
                          std::uint64_t m_blocks) {
    if (n_rounds == 0)
        throw std::invalid_argument("block_limit: n_rounds must be positive");
    if (!(p_sift > 0.0 && p_sift < 1.0))
        throw std::invalid_argument("block_limit: p_sift must lie in (0,1)");
    if (!(eps_abort > 0.0 && eps_abort < 1.0))
        throw std::invalid_argument("block_limit: eps_abort must lie in (0,1)");
    if (m_blocks == 0)
        throw std::invalid_argument("block_limit: m_blocks must be positive");

    const double threshold = eps_abort / static_cast<double>(m_blocks);
    if (threshold < 1e-300)
        throw infeasible_error("block_limit: per-block budget below erfc resolution");

    const auto lo0 = static_cast<std::uint64_t>(
        std::ceil(static_cast<double>(n_rounds) * p_sift));
    if (binomial_tail_bound(n_rounds, n_rounds, p_sift) > threshold)
        throw infeasible_error("block_limit: bound not met even at L = n_rounds");
    if (binomial_tail_bound(n_rounds, lo0, p_sift) <= threshold)
        return lo0;

    // Tail is decreasing in L above the mean; bisect for the first L that passes.
    std::uint64_t lo = lo0, hi = n_rounds; // bound fails at lo, holds at hi
    while (hi - lo > 1) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        if (binomial_tail_bound(n_rounds, mid, p_sift) <= threshold)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

bool abort_check(std::span<const std::uint64_t> subblock_lengths, std::uint64_t limit) {
    for (std::uint64_t len : subblock_lengths)
        if (len > limit) return false;
    return true;
}

} // namespace ssbh

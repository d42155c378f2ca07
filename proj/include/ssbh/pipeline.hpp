#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ssbh/bbm92.hpp"
#include "ssbh/bitstring.hpp"
#include "ssbh/prf.hpp"
#include "ssbh/sampling.hpp"
#include "ssbh/toeplitz.hpp"

namespace ssbh {

/// One protocol round, packed into a byte.
struct RoundRecord {
    std::uint8_t raw = 0;

    enum : std::uint8_t {
        BasisAx = 1 << 0, ///< Alice chose the test basis
        BasisBx = 1 << 1, ///< Bob chose the test basis
        Detected = 1 << 2,
        BitA = 1 << 3, ///< meaningful only when detected
        BitB = 1 << 4, ///< meaningful only when detected
        IsTest = 1 << 5,
    };

    bool basis_a_is_x() const { return raw & BasisAx; }
    bool basis_b_is_x() const { return raw & BasisBx; }
    bool detected() const { return raw & Detected; }
    bool bit_a() const { return raw & BitA; }
    bool bit_b() const { return raw & BitB; }
    bool is_test() const { return raw & IsTest; }
    bool is_key_round() const {
        return detected() && !basis_a_is_x() && !basis_b_is_x();
    }
};

/// Draw N rounds of the protocol from the keyed stream.
std::vector<RoundRecord> simulate_rounds(const Bbm92Params& params, const MasterSeed& seed);

struct ExtractionReport {
    enum class Abort { None, OversizeBlock, Statistics };

    BitString key;
    std::vector<std::uint64_t> block_lengths; ///< sifted bits per sub-block
    std::uint64_t bits_per_block = 0;         ///< extracted bits per sub-block
    double total_epsilon = 0;                 ///< n_subblocks * eps' + eps_abort
    Abort abort = Abort::None;
    std::uint64_t cycle_count = 0; ///< modelled hashing cycles
    double wall_seconds = 0;       ///< measured hashing time

    bool aborted() const { return abort != Abort::None; }
};

/// Sift, sample, check, hash each sifted sub-block with an independent seed
/// and concatenate. plan.block_limit must be set.
ExtractionReport run_extraction(const std::vector<RoundRecord>& rounds, const SamplingPlan& plan,
                                const Bbm92Params& params,
                                const BlockingParams& blocking = {});

/// Modelled hashing cycles for a whole run.
///   Full:       cycle_estimate(input, output)
///   Splitting:  n_subblocks * cycle_estimate(L, output/n_subblocks) where L is
///               the block limit (inputs padded to the guaranteed cap), or the
///               mean block length when pad_to_limit is off
///   SmallBlock: n_subblocks * cycle_estimate(input/n_subblocks, output/n_subblocks)
/// block_limit_override = 0 derives the cap from sampling input_len bits with
/// probability 1/n_subblocks at budget eps_abort.
std::uint64_t timing_model(std::uint64_t input_len, std::uint64_t output_len,
                           const Scenario& scenario, const BlockingParams& blocking,
                           double eps_abort = 1e-8, std::uint64_t block_limit_override = 0,
                           bool pad_to_limit = true);

/// One sweep point.
struct ScenarioResult {
    std::string scenario;
    std::uint32_t n_subblocks = 1;
    double p_x = 0;
    std::uint64_t key_length = 0;
    double rate_per_signal = 0;
    double epsilon = 0;
    std::uint64_t cycles = 0;
    double rate_per_cycle = 0;
    bool feasible = false;
};

/// Key length, secrecy and modelled throughput for all three scenarios at
/// every sub-block count in ns_range; p_x fixed or optimised per point.
std::vector<ScenarioResult> scenario_compare(const Bbm92Params& params,
                                             const std::vector<std::uint32_t>& ns_range,
                                             bool optimize_px_flag,
                                             const BlockingParams& blocking = {});

/// CSV table for ScenarioResult rows, schema:
/// scenario,n_subblocks,p_x,key_length,rate_per_signal,epsilon,cycles,rate_per_cycle,status
std::string scenario_csv(const std::vector<ScenarioResult>& rows);

} // namespace ssbh

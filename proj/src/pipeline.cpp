#include "ssbh/pipeline.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "parallel.hpp"
#include "ssbh/errors.hpp"
#include "ssbh/textio.hpp"

namespace ssbh {

std::string double_to_string(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::vector<RoundRecord> simulate_rounds(const Bbm92Params& params, const MasterSeed& seed) {
    params.validate();
    const std::uint64_t n = params.n_rounds;
    std::vector<RoundRecord> rounds(n);

    const KeyedStream basis_a(seed, "basis-a");
    const KeyedStream basis_b(seed, "basis-b");
    const KeyedStream detect(seed, "detect");
    const KeyedStream bits(seed, "bit-a");
    const KeyedStream noise(seed, "noise");

    for (std::uint64_t i = 0; i < n; ++i) {
        std::uint8_t r = 0;
        const bool ax = basis_a.bernoulli(params.p_x, i);
        const bool bx = basis_b.bernoulli(params.p_x, i);
        if (ax) r |= RoundRecord::BasisAx;
        if (bx) r |= RoundRecord::BasisBx;
        if (ax && bx) r |= RoundRecord::IsTest;
        if (detect.bernoulli(params.p_det, i)) {
            r |= RoundRecord::Detected;
            const std::uint64_t w = bits.word(i);
            const bool a = w & 1;
            bool b;
            if (ax == bx) {
                const double flip_p = ax ? params.e_ph : params.e_bit;
                b = a ^ noise.bernoulli(flip_p, i);
            } else {
                b = (w >> 1) & 1; // basis mismatch: outcomes uncorrelated
            }
            if (a) r |= RoundRecord::BitA;
            if (b) r |= RoundRecord::BitB;
        }
        rounds[i].raw = r;
    }
    return rounds;
}

namespace {

BitString gather_bits(const std::vector<RoundRecord>& rounds,
                      std::span<const std::uint64_t> idx) {
    BitString out(idx.size());
    for (std::uint64_t k = 0; k < idx.size(); ++k)
        if (rounds[idx[k]].bit_a()) out.set(k, true);
    return out;
}

std::uint64_t sifted_total(const SiftedPartition& sifted) {
    std::uint64_t total = 0;
    for (const auto& b : sifted.blocks) total += b.size();
    return total;
}

} // namespace

ExtractionReport run_extraction(const std::vector<RoundRecord>& rounds, const SamplingPlan& plan,
                                const Bbm92Params& params, const BlockingParams& blocking) {
    params.validate();
    if (plan.n_subblocks == 0)
        throw std::invalid_argument("run_extraction: plan.n_subblocks must be positive");
    if (plan.block_limit == 0)
        throw std::invalid_argument("run_extraction: plan.block_limit must be set");
    if (rounds.size() != params.n_rounds)
        throw std::invalid_argument("run_extraction: round count does not match params");

    ExtractionReport report;
    const std::uint32_t ns = plan.n_subblocks;
    report.total_epsilon = static_cast<double>(ns) * (params.eps_sec - plan.eps_abort) /
                               static_cast<double>(ns) +
                           plan.eps_abort;

    // Statistics check on the test rounds (phase errors and no-detections).
    std::uint64_t c1 = 0, c2 = 0;
    for (const auto& r : rounds) {
        if (!r.is_test()) continue;
        if (!r.detected())
            ++c2;
        else if (r.bit_a() != r.bit_b())
            ++c1;
    }
    const double n = static_cast<double>(rounds.size());
    const double px2 = params.p_x * params.p_x;
    if (static_cast<double>(c1) / n > px2 * params.eta_tol * params.q_tol ||
        static_cast<double>(c2) / n > px2 * (1.0 - params.eta_tol)) {
        report.abort = ExtractionReport::Abort::Statistics;
        return report;
    }

    // Sift key rounds and sample them into sub-blocks.
    std::vector<std::uint8_t> keep(rounds.size());
    for (std::uint64_t i = 0; i < rounds.size(); ++i) keep[i] = rounds[i].is_key_round();
    const Partition part = assign_subblocks(rounds.size(), ns, plan.seed);
    const SiftedPartition sifted = sift_partition(keep, part);

    report.block_lengths.reserve(ns);
    for (const auto& b : sifted.blocks) report.block_lengths.push_back(b.size());
    if (!abort_check(report.block_lengths, plan.block_limit)) {
        report.abort = ExtractionReport::Abort::OversizeBlock;
        return report;
    }

    const KeyLengthResult kl = key_length(params, ns == 1 ? Scenario::full()
                                                          : Scenario::splitting(ns));
    report.bits_per_block = kl.feasible ? kl.length / ns : 0;
    report.cycle_count = timing_model(sifted_total(sifted), kl.length,
                                      ns == 1 ? Scenario::full() : Scenario::splitting(ns),
                                      blocking, plan.eps_abort, plan.block_limit);
    if (report.bits_per_block == 0) return report; // nothing extractable; not an abort

    const auto t0 = std::chrono::steady_clock::now();
    for (std::uint32_t j = 0; j < ns; ++j) {
        const BitString input = gather_bits(rounds, sifted.blocks[j]);
        const KeyedStream seed_stream(plan.seed, "hash-seed", j);
        const ToeplitzSeed tseed(seed_stream.bits(report.bits_per_block + input.size() - 1),
                                 report.bits_per_block, input.size());
        report.key.append(toeplitz_hash(tseed, input));
    }
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

std::uint64_t timing_model(std::uint64_t input_len, std::uint64_t output_len,
                           const Scenario& scenario, const BlockingParams& blocking,
                           double eps_abort, std::uint64_t block_limit_override,
                           bool pad_to_limit) {
    const std::uint64_t ns = scenario.n_subblocks;
    auto ceil_div = [](std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; };
    switch (scenario.kind) {
    case Scenario::Kind::Full:
        return cycle_estimate(input_len, output_len, blocking.m_prime);
    case Scenario::Kind::Splitting: {
        std::uint64_t limit = block_limit_override;
        if (limit == 0)
            limit = ns == 1 ? input_len
                            : block_limit(input_len, 1.0 / static_cast<double>(ns), eps_abort, ns);
        const std::uint64_t per_in = pad_to_limit ? limit : ceil_div(input_len, ns);
        return ns * cycle_estimate(per_in, ceil_div(output_len, ns), blocking.m_prime);
    }
    default:
        return ns * cycle_estimate(ceil_div(input_len, ns), ceil_div(output_len, ns),
                                   blocking.m_prime);
    }
}

std::vector<ScenarioResult> scenario_compare(const Bbm92Params& params,
                                             const std::vector<std::uint32_t>& ns_range,
                                             bool optimize_px_flag,
                                             const BlockingParams& blocking) {
    params.validate();
    if (ns_range.empty()) return {};

    const double n = static_cast<double>(params.n_rounds);

    struct Point {
        Scenario::Kind kind;
        std::uint32_t ns;
    };
    std::vector<Point> points;
    for (auto kind :
         {Scenario::Kind::Full, Scenario::Kind::Splitting, Scenario::Kind::SmallBlock})
        for (std::uint32_t ns : ns_range) points.push_back({kind, ns});

    std::vector<ScenarioResult> rows(points.size());
    detail::parallel_for(points.size(), [&](std::size_t idx) {
        const auto [kind, ns] = points[idx];
        const Scenario sc{kind, kind == Scenario::Kind::Full ? 1u : ns};

        ScenarioResult row;
        row.scenario = sc.name();
        row.n_subblocks = ns;
        row.p_x = params.p_x;
        row.epsilon = params.eps_sec;

        Bbm92Params p = params;
        KeyLengthResult kl;
        try {
            if (optimize_px_flag) {
                const PxResult opt = optimize_px(p, sc);
                row.p_x = opt.p_x;
                p.p_x = opt.p_x;
                kl = opt.best;
            } else {
                kl = key_length(p, sc);
            }
        } catch (const infeasible_error&) {
            kl = {};
        }

        row.key_length = kl.length;
        row.feasible = kl.feasible;
        row.rate_per_signal = static_cast<double>(kl.length) / n;

        const std::uint64_t psift_len = static_cast<std::uint64_t>(
            std::llround(n * p.p_z() * p.p_z() * p.p_det));
        std::uint64_t limit_override = 0;
        if (kind == Scenario::Kind::Splitting && ns >= 2) {
            const double p_sift = p.p_z() * p.p_z() * p.p_det / static_cast<double>(ns);
            limit_override = block_limit(p.n_rounds, p_sift, p.eps_abort, ns);
        }
        row.cycles = timing_model(psift_len, kl.length, sc, blocking, p.eps_abort,
                                  limit_override);
        row.rate_per_cycle =
            row.cycles ? static_cast<double>(kl.length) / static_cast<double>(row.cycles) : 0.0;
        rows[idx] = row;
    });
    return rows;
}

std::string scenario_csv(const std::vector<ScenarioResult>& rows) {
    std::string out =
        "scenario,n_subblocks,p_x,key_length,rate_per_signal,epsilon,cycles,rate_per_cycle,status\n";
    for (const auto& r : rows) {
        out += r.scenario;
        out += ',';
        out += std::to_string(r.n_subblocks);
        out += ',';
        out += double_to_string(r.p_x);
        out += ',';
        out += std::to_string(r.key_length);
        out += ',';
        out += double_to_string(r.rate_per_signal);
        out += ',';
        out += double_to_string(r.epsilon);
        out += ',';
        out += std::to_string(r.cycles);
        out += ',';
        out += double_to_string(r.rate_per_cycle);
        out += ',';
        out += r.feasible ? "ok" : "infeasible";
        out += '\n';
    }
    return out;
}

} // namespace ssbh

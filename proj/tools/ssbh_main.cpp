// ssbh — sampled sub-block Toeplitz hashing toolkit.
//
// Subcommands: keylen, sweep, extract, bench, limit. All randomness comes
// from the 256-bit master seed, so every run is reproducible byte for byte.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ssbh/bitstring.hpp"
#include "ssbh/errors.hpp"
#include "ssbh/pipeline.hpp"
#include "ssbh/textio.hpp"

using json = nlohmann::ordered_json;
using namespace ssbh;

namespace {

enum ExitCode : int {
    exit_ok = 0,
    exit_parse = 2,
    exit_infeasible = 3,
    exit_abort_oversize = 4,
    exit_abort_stats = 5,
    exit_io = 6,
};

struct RunConfig {
    Bbm92Params params;
    std::string scenario = "full";
    std::uint32_t n_subblocks = 1;
    BlockingParams blocking;
    MasterSeed seed;
    bool q_tol_given = false;

    RunConfig() {
        params.n_rounds = 1000000000ull;
    }
};

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = {
        "n_rounds", "p_x", "e_ph", "e_bit", "q_tol", "eta_tol", "f_ec", "p_det",
        "d_x", "eps_sec", "eps_abort", "n_subblocks", "m_prime", "n_prime",
        "scenario", "seed", "bound_form", "p_omega", "scale_ec_leakage",
        "per_block_syndrome"};
    return keys;
}

void apply_json(RunConfig& cfg, const json& j) {
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (const auto& k : config_keys()) known |= (k == key);
        if (!known)
            throw std::invalid_argument("config: unknown key '" + key + "'");
        auto& P = cfg.params;
        if (key == "n_rounds") P.n_rounds = value.get<std::uint64_t>();
        else if (key == "p_x") P.p_x = value.get<double>();
        else if (key == "e_ph") P.e_ph = value.get<double>();
        else if (key == "e_bit") P.e_bit = value.get<double>();
        else if (key == "q_tol") { P.q_tol = value.get<double>(); cfg.q_tol_given = true; }
        else if (key == "eta_tol") P.eta_tol = value.get<double>();
        else if (key == "f_ec") P.f_ec = value.get<double>();
        else if (key == "p_det") P.p_det = value.get<double>();
        else if (key == "d_x") P.d_x = value.get<int>();
        else if (key == "eps_sec") P.eps_sec = value.get<double>();
        else if (key == "eps_abort") P.eps_abort = value.get<double>();
        else if (key == "n_subblocks") cfg.n_subblocks = value.get<std::uint32_t>();
        else if (key == "m_prime") cfg.blocking.m_prime = value.get<std::uint64_t>();
        else if (key == "n_prime") cfg.blocking.n_prime = value.get<std::uint64_t>();
        else if (key == "scenario") cfg.scenario = value.get<std::string>();
        else if (key == "seed") cfg.seed = MasterSeed::from_hex(value.get<std::string>());
        else if (key == "bound_form") {
            const auto s = value.get<std::string>();
            if (s == "simplified") P.bound_form = BoundForm::Simplified;
            else if (s == "full") P.bound_form = BoundForm::Full;
            else throw std::invalid_argument("config: bound_form must be simplified|full");
        } else if (key == "p_omega") {
            if (value.is_string()) {
                if (value.get<std::string>() != "worst_case")
                    throw std::invalid_argument("config: p_omega must be a number or worst_case");
                P.p_omega_worst_case = true;
            } else {
                P.p_omega_worst_case = false;
                P.p_omega = value.get<double>();
            }
        } else if (key == "scale_ec_leakage") P.scale_ec_leakage = value.get<bool>();
        else if (key == "per_block_syndrome") P.per_block_syndrome = value.get<bool>();
    }
    if (!cfg.q_tol_given) cfg.params.q_tol = cfg.params.e_ph;
}

json resolved_json(const RunConfig& cfg) {
    const auto& P = cfg.params;
    json j;
    j["n_rounds"] = P.n_rounds;
    j["p_x"] = P.p_x;
    j["e_ph"] = P.e_ph;
    j["e_bit"] = P.e_bit;
    j["q_tol"] = P.q_tol;
    j["eta_tol"] = P.eta_tol;
    j["f_ec"] = P.f_ec;
    j["p_det"] = P.p_det;
    j["d_x"] = P.d_x;
    j["eps_sec"] = P.eps_sec;
    j["eps_abort"] = P.eps_abort;
    j["n_subblocks"] = cfg.n_subblocks;
    j["m_prime"] = cfg.blocking.m_prime;
    j["n_prime"] = cfg.blocking.n_prime;
    j["scenario"] = cfg.scenario;
    j["seed"] = cfg.seed.to_hex();
    j["bound_form"] = P.bound_form == BoundForm::Full ? "full" : "simplified";
    if (P.p_omega_worst_case)
        j["p_omega"] = "worst_case";
    else
        j["p_omega"] = P.p_omega;
    j["scale_ec_leakage"] = P.scale_ec_leakage;
    j["per_block_syndrome"] = P.per_block_syndrome;
    return j;
}

Scenario make_scenario(const RunConfig& cfg) {
    if (cfg.scenario == "full") {
        if (cfg.n_subblocks != 1)
            throw std::invalid_argument("config: full scenario requires n_subblocks = 1");
        return Scenario::full();
    }
    if (cfg.scenario == "splitting") return Scenario::splitting(cfg.n_subblocks);
    if (cfg.scenario == "smallblock") return Scenario::small_block(cfg.n_subblocks);
    throw std::invalid_argument("config: scenario must be full|splitting|smallblock");
}

struct CommonFlags {
    std::string config_path;
    std::string seed_hex;
    std::string out_path;
    std::string scenario;
    std::optional<std::uint32_t> ns;
    std::string ns_range;
    bool optimize_px = false;
};

void add_common(CLI::App* cmd, CommonFlags& fl) {
    cmd->add_option("--config", fl.config_path, "JSON config file");
    cmd->add_option("--seed", fl.seed_hex, "master seed, 64 hex digits");
    cmd->add_option("--out", fl.out_path, "output path (default stdout)");
    cmd->add_option("--scenario", fl.scenario, "full|splitting|smallblock");
    cmd->add_option("--ns", fl.ns, "number of sub-blocks");
    cmd->add_option("--ns-range", fl.ns_range, "sub-block sweep range A..B");
    cmd->add_flag("--optimize-px", fl.optimize_px, "optimise the test-basis probability");
}

RunConfig load_config(const CommonFlags& fl) {
    RunConfig cfg;
    if (!fl.config_path.empty()) {
        std::ifstream in(fl.config_path);
        if (!in) throw io_error("cannot open config: " + fl.config_path);
        json j;
        try {
            j = json::parse(in);
        } catch (const json::parse_error& e) {
            throw std::invalid_argument(std::string("config: ") + e.what());
        }
        apply_json(cfg, j);
    } else {
        apply_json(cfg, json::object());
    }
    if (!fl.seed_hex.empty()) cfg.seed = MasterSeed::from_hex(fl.seed_hex);
    if (!fl.scenario.empty()) cfg.scenario = fl.scenario;
    if (fl.ns) {
        cfg.n_subblocks = *fl.ns;
        if (cfg.scenario == "full" && *fl.ns > 1) cfg.scenario = "splitting";
    }
    return cfg;
}

std::vector<std::uint32_t> parse_range(const std::string& text) {
    const auto pos = text.find("..");
    if (pos == std::string::npos) {
        if (text.empty()) return {};
        return {static_cast<std::uint32_t>(std::stoul(text))};
    }
    const auto a = static_cast<std::uint32_t>(std::stoul(text.substr(0, pos)));
    const auto b = static_cast<std::uint32_t>(std::stoul(text.substr(pos + 2)));
    std::vector<std::uint32_t> out;
    for (std::uint32_t v = a; v <= b; ++v) out.push_back(v);
    return out;
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw io_error("cannot open output: " + out_path);
    out << text;
}

std::string config_header(const RunConfig& cfg) {
    return "# config: " + resolved_json(cfg).dump() + "\n";
}

int cmd_keylen(const CommonFlags& fl) {
    RunConfig cfg = load_config(fl);
    const Scenario sc = make_scenario(cfg);

    std::string report = config_header(cfg);
    double p_x = cfg.params.p_x;
    KeyLengthResult kl;
    if (fl.optimize_px) {
        const PxResult opt = optimize_px(cfg.params, sc);
        p_x = opt.p_x;
        kl = opt.best;
    } else {
        kl = key_length(cfg.params, sc);
    }
    const double n = static_cast<double>(cfg.params.n_rounds);
    report += "scenario: " + std::string(sc.name()) + "\n";
    report += "n_subblocks: " + std::to_string(sc.n_subblocks) + "\n";
    report += "p_x: " + double_to_string(p_x) + (fl.optimize_px ? " (optimized)\n" : "\n");
    report += "key_length_bits: " + std::to_string(kl.length) + "\n";
    report += "rate_per_signal: " + double_to_string(static_cast<double>(kl.length) / n) + "\n";
    report += "eps_total: " + double_to_string(cfg.params.eps_sec) + "\n";
    report += "eps_unit: " + double_to_string(kl.choice.eps_unit) + "\n";
    report += "e_prime: " + double_to_string(kl.choice.e_prime) + "\n";
    report += "eps_sm: " + double_to_string(kl.choice.eps_sm) + "\n";
    report += "alpha: " +
              (kl.choice.alpha > 0 ? double_to_string(kl.choice.alpha)
                                   : std::string("none (simplified bound)")) +
              "\n";
    report += "p_omega: " + double_to_string(kl.choice.p_omega) + "\n";
    report += "feasible: " + std::string(kl.feasible ? "yes" : "no") + "\n";
    emit(fl.out_path, report);
    return kl.feasible ? exit_ok : exit_infeasible;
}

int cmd_sweep(const CommonFlags& fl) {
    RunConfig cfg = load_config(fl);
    std::vector<std::uint32_t> range;
    if (!fl.ns_range.empty())
        range = parse_range(fl.ns_range);
    else if (fl.ns)
        range = {*fl.ns};
    const auto rows = scenario_compare(cfg.params, range, fl.optimize_px, cfg.blocking);
    emit(fl.out_path, config_header(cfg) + scenario_csv(rows));
    return exit_ok;
}

struct ExtractFlags {
    std::string in_path;
    std::uint64_t in_bits = 0;
    bool simulate = false;
    std::uint64_t out_bits = 0;
    std::string partition_csv;
};

int cmd_extract(const CommonFlags& fl, const ExtractFlags& ex) {
    RunConfig cfg = load_config(fl);
    const std::uint32_t ns = cfg.n_subblocks;
    std::string report = config_header(cfg);

    BitString key;
    std::string partition_dump;
    ExtractionReport::Abort abort = ExtractionReport::Abort::None;

    if (ex.simulate) {
        const auto rounds = simulate_rounds(cfg.params, cfg.seed);
        SamplingPlan plan;
        plan.n_subblocks = ns;
        plan.eps_abort = cfg.params.eps_abort;
        const double p_sift =
            cfg.params.p_z() * cfg.params.p_z() * cfg.params.p_det / static_cast<double>(ns);
        plan.block_limit = block_limit(cfg.params.n_rounds, p_sift, plan.eps_abort, ns);
        plan.seed = cfg.seed;

        const ExtractionReport rep = run_extraction(rounds, plan, cfg.params, cfg.blocking);
        abort = rep.abort;
        key = rep.key;
        report += "mode: simulate\n";
        report += "block_limit: " + std::to_string(plan.block_limit) + "\n";
        report += "bits_per_block: " + std::to_string(rep.bits_per_block) + "\n";
        report += "key_length_bits: " + std::to_string(rep.key.size()) + "\n";
        report += "total_epsilon: " + double_to_string(rep.total_epsilon) + "\n";
        report += "modeled_cycles: " + std::to_string(rep.cycle_count) + "\n";
        report += "hash_seconds: " + double_to_string(rep.wall_seconds) + "\n";
        report += "block_lengths:";
        for (auto b : rep.block_lengths) report += " " + std::to_string(b);
        report += "\n";
        if (!ex.partition_csv.empty()) {
            const Partition part = assign_subblocks(cfg.params.n_rounds, ns, cfg.seed);
            partition_dump = "round_index,v_i,kept\n";
            for (std::uint64_t i = 0; i < rounds.size(); ++i) {
                partition_dump += std::to_string(i) + "," +
                                  std::to_string(part.assignment[i]) + "," +
                                  (rounds[i].is_key_round() ? "1" : "0") + "\n";
            }
        }
    } else {
        if (ex.in_path.empty() || ex.in_bits == 0)
            throw std::invalid_argument("extract: need --simulate, or --in with --in-bits");
        if (ex.out_bits == 0)
            throw std::invalid_argument("extract: file mode needs --out-bits");
        const BitString data = BitString::read_file(ex.in_path, ex.in_bits);

        const std::uint64_t limit =
            ns == 1 ? ex.in_bits
                    : block_limit(ex.in_bits, 1.0 / static_cast<double>(ns),
                                  cfg.params.eps_abort, ns);
        const Partition part = assign_subblocks(ex.in_bits, ns, cfg.seed);
        const std::vector<std::uint8_t> keep(ex.in_bits, 1);
        const SiftedPartition sifted = sift_partition(keep, part);
        std::vector<std::uint64_t> lens;
        for (const auto& b : sifted.blocks) lens.push_back(b.size());
        report += "mode: file\n";
        report += "block_limit: " + std::to_string(limit) + "\n";
        if (!abort_check(lens, limit)) {
            abort = ExtractionReport::Abort::OversizeBlock;
        } else {
            const std::uint64_t per_block = ex.out_bits / ns;
            for (std::uint32_t j = 0; j < ns; ++j) {
                BitString input(sifted.blocks[j].size());
                for (std::uint64_t k = 0; k < sifted.blocks[j].size(); ++k)
                    if (data.get(sifted.blocks[j][k])) input.set(k, true);
                const KeyedStream seed_stream(cfg.seed, "hash-seed", j);
                const ToeplitzSeed tseed(seed_stream.bits(per_block + input.size() - 1),
                                         per_block, input.size());
                key.append(toeplitz_hash(tseed, input));
            }
            report += "key_length_bits: " + std::to_string(key.size()) + "\n";
        }
        if (!ex.partition_csv.empty()) {
            partition_dump = "round_index,v_i,kept\n";
            for (std::uint64_t i = 0; i < ex.in_bits; ++i)
                partition_dump +=
                    std::to_string(i) + "," + std::to_string(part.assignment[i]) + ",1\n";
        }
    }

    if (abort == ExtractionReport::Abort::OversizeBlock) {
        report += "abort: oversize_block\n";
        emit("", report);
        return exit_abort_oversize;
    }
    if (abort == ExtractionReport::Abort::Statistics) {
        report += "abort: statistics\n";
        emit("", report);
        return exit_abort_stats;
    }
    if (!ex.partition_csv.empty()) emit(ex.partition_csv, partition_dump);
    if (!fl.out_path.empty()) key.write_file(fl.out_path);
    emit("", report);
    return exit_ok;
}

struct BenchFlags {
    std::vector<std::uint64_t> sizes;
    double out_ratio = 0.06303; // output/input, production-like default
};

int cmd_bench(const CommonFlags& fl, const BenchFlags& bf) {
    RunConfig cfg = load_config(fl);
    const std::uint32_t ns = cfg.n_subblocks;
    std::string out = config_header(cfg);
    out += "size_bits,full_seconds,split_seconds,measured_ratio,modeled_ratio\n";

    for (std::uint64_t size : bf.sizes) {
        if (size == 0) throw std::invalid_argument("bench: sizes must be positive");
        const auto m_full = static_cast<std::uint64_t>(
            std::max(1.0, static_cast<double>(size) * bf.out_ratio));
        const KeyedStream input_stream(cfg.seed, "bench-input");
        const BitString input = input_stream.bits(size);

        const KeyedStream full_seed(cfg.seed, "bench-seed-full");
        const ToeplitzSeed fseed(full_seed.bits(m_full + size - 1), m_full, size);
        const auto t0 = std::chrono::steady_clock::now();
        const BitString full_out = toeplitz_hash(fseed, input);
        const auto t1 = std::chrono::steady_clock::now();
        const double full_s = std::chrono::duration<double>(t1 - t0).count();

        const Partition part = assign_subblocks(size, ns, cfg.seed);
        const std::vector<std::uint8_t> keep(size, 1);
        const SiftedPartition sifted = sift_partition(keep, part);
        const std::uint64_t m_block = std::max<std::uint64_t>(1, m_full / ns);
        std::vector<BitString> inputs(ns);
        for (std::uint32_t j = 0; j < ns; ++j) {
            inputs[j] = BitString(sifted.blocks[j].size());
            for (std::uint64_t k = 0; k < sifted.blocks[j].size(); ++k)
                if (input.get(sifted.blocks[j][k])) inputs[j].set(k, true);
        }
        std::vector<ToeplitzSeed> seeds;
        seeds.reserve(ns);
        for (std::uint32_t j = 0; j < ns; ++j) {
            const KeyedStream s(cfg.seed, "hash-seed", j);
            seeds.emplace_back(s.bits(m_block + inputs[j].size() - 1), m_block,
                               inputs[j].size());
        }
        const auto t2 = std::chrono::steady_clock::now();
        BitString split_out;
        for (std::uint32_t j = 0; j < ns; ++j)
            split_out.append(toeplitz_hash(seeds[j], inputs[j]));
        const auto t3 = std::chrono::steady_clock::now();
        const double split_s = std::chrono::duration<double>(t3 - t2).count();

        const auto cycles_full =
            timing_model(size, m_full, Scenario::full(), cfg.blocking);
        const auto cycles_split = timing_model(
            size, m_block * ns, ns == 1 ? Scenario::splitting(1) : Scenario::splitting(ns),
            cfg.blocking, cfg.params.eps_abort);
        const double modeled = static_cast<double>(cycles_full) /
                               static_cast<double>(cycles_split);

        out += std::to_string(size) + "," + double_to_string(full_s) + "," +
               double_to_string(split_s) + "," + double_to_string(full_s / split_s) + "," +
               double_to_string(modeled) + "\n";
    }
    emit(fl.out_path, out);
    return exit_ok;
}

struct LimitFlags {
    std::uint64_t n = 0;
    double p_sift = 0;
    double eps_abort = 0;
    std::uint64_t m = 1;
};

int cmd_limit(const LimitFlags& lf) {
    std::printf("%llu\n",
                static_cast<unsigned long long>(
                    block_limit(lf.n, lf.p_sift, lf.eps_abort, lf.m)));
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"sampled sub-block Toeplitz hashing toolkit"};
    app.require_subcommand(1);

    CommonFlags keylen_fl, sweep_fl, extract_fl, bench_fl;
    ExtractFlags ex;
    BenchFlags bf;
    LimitFlags lf;

    auto* keylen = app.add_subcommand("keylen", "finite-key length calculator");
    add_common(keylen, keylen_fl);

    auto* sweep = app.add_subcommand("sweep", "scenario comparison table (CSV)");
    add_common(sweep, sweep_fl);

    auto* extract = app.add_subcommand("extract", "run the extraction pipeline");
    add_common(extract, extract_fl);
    extract->add_flag("--simulate", ex.simulate, "simulate the protocol rounds");
    extract->add_option("--in", ex.in_path, "raw-bit input file");
    extract->add_option("--in-bits", ex.in_bits, "bit count of the input file");
    extract->add_option("--out-bits", ex.out_bits, "total output bits (file mode)");
    extract->add_option("--partition-csv", ex.partition_csv, "write the partition table here");

    auto* bench = app.add_subcommand("bench", "software hashing benchmark");
    add_common(bench, bench_fl);
    bench->add_option("--sizes", bf.sizes, "input sizes in bits")->required();
    bench->add_option("--out-ratio", bf.out_ratio, "output/input length ratio");

    auto* limit = app.add_subcommand("limit", "sub-block length cap calculator");
    limit->add_option("--n", lf.n, "number of rounds")->required();
    limit->add_option("--p-sift", lf.p_sift, "per-round survival probability")->required();
    limit->add_option("--eps-abort", lf.eps_abort, "total abort budget")->required();
    limit->add_option("--m", lf.m, "number of union-bound events");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_parse;
    }

    try {
        if (keylen->parsed()) return cmd_keylen(keylen_fl);
        if (sweep->parsed()) return cmd_sweep(sweep_fl);
        if (extract->parsed()) return cmd_extract(extract_fl, ex);
        if (bench->parsed()) return cmd_bench(bench_fl, bf);
        if (limit->parsed()) return cmd_limit(lf);
    } catch (const infeasible_error& e) {
        std::fprintf(stderr, "infeasible: %s\n", e.what());
        return exit_infeasible;
    } catch (const io_error& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return exit_io;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_parse;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_parse;
    }
    return exit_ok;
}

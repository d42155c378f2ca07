#pragma once

#include <cstdint>
#include <string>

#include "ssbh/geat.hpp"

namespace ssbh {

/// Which form of the entropy accumulation bound the key-rate solvers use.
enum class BoundForm { Simplified, Full };

/// Protocol and security parameters for the entanglement-based model.
struct Bbm92Params {
    std::uint64_t n_rounds = 0;
    double p_x = 0.02;    ///< test-basis probability
    double e_ph = 0.0082; ///< phase error rate
    double e_bit = 0.058; ///< bit error rate
    double q_tol = 0.0082; ///< tolerated average error rate
    double eta_tol = 1.0;  ///< tolerated minimum transmission
    double f_ec = 1.16;    ///< error-correction efficiency
    double p_det = 1.0;    ///< detection probability
    int d_x = 2;           ///< per-round output dimension
    double eps_sec = 1e-6; ///< target secrecy
    double eps_abort = 1e-8; ///< oversize-block abort budget (splitting)

    bool scale_ec_leakage = true;   ///< leakage proportional to sifted length (vs raw N)
    bool per_block_syndrome = true; ///< splitting: charge each block only its own syndrome
    BoundForm bound_form = BoundForm::Simplified;
    bool p_omega_worst_case = false; ///< evaluate bounds at p_omega = secrecy target
    double p_omega = 1.0;            ///< used unless p_omega_worst_case

    double p_z() const { return 1.0 - p_x; }
    void validate() const;
};

/// One of the three compared key-distillation layouts.
struct Scenario {
    enum class Kind { Full, Splitting, SmallBlock };
    Kind kind = Kind::Full;
    std::uint32_t n_subblocks = 1;

    static Scenario full() { return {Kind::Full, 1}; }
    static Scenario splitting(std::uint32_t ns);
    static Scenario small_block(std::uint32_t ns);
    const char* name() const;
};

/// Binary entropy in bits, with h(0) = h(1) = 0.
double binary_entropy(double x);

/// Min-tradeoff quantities for tangent point e_ph_tangent in (0, 0.5).
MinTradeoff min_tradeoff(const Bbm92Params& params, double e_ph_tangent);

/// Error-correction leakage in bits (N p_z^2 p_det f_ec h_b(e_bit), or the
/// unscaled N f_ec h_b(e_bit) when scale_ec_leakage is off).
double ec_leakage(const Bbm92Params& params);

/// Parameter point selected by a solver.
struct OptChoices {
    double alpha = 0;    ///< Renyi parameter; 0 when the simplified form was used
    double e_prime = 0;  ///< tangent point
    double eps_sm = 0;   ///< smoothing parameter
    double p_omega = 1;  ///< conditioning probability the bound was evaluated at
    double eps_unit = 0; ///< per-hash-unit secrecy budget
};

struct KeyLengthResult {
    std::uint64_t length = 0;
    bool feasible = false;
    OptChoices choice;
};

/// Longest eps_sec-secret key for the scenario, maximised over the tangent
/// point, the smoothing split and (full form) the Renyi parameter.
KeyLengthResult key_length(const Bbm92Params& params, const Scenario& scenario);

struct SecrecyResult {
    double epsilon = 1.0;
    bool meaningful = false; ///< epsilon < 1 achieved
    OptChoices choice;
};

/// Minimal achievable secrecy when exactly `length` bits are extracted.
SecrecyResult secrecy_for_length(const Bbm92Params& params, std::uint64_t length,
                                 const Scenario& scenario);

struct PxResult {
    double p_x = 0;
    KeyLengthResult best;
};

/// argmax of key_length over p_x in (0, 0.5]; ties break toward smaller p_x.
PxResult optimize_px(const Bbm92Params& params, const Scenario& scenario);

namespace bbm92_detail {

/// Real-valued total key length before flooring; may be negative. Used by the
/// optimizers so that searches see a smooth objective.
double key_length_value(const Bbm92Params& params, const Scenario& scenario, OptChoices* choice);

} // namespace bbm92_detail

} // namespace ssbh

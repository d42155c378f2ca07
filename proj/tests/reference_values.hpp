#pragma once

// Frozen expected values, produced by tests/tools/gen_reference_values.py
// (mpmath, 60 significant digits) and rounded to the nearest double.

namespace refvals {

inline constexpr double rel_entropy_06_05 = 0.020135513550688873; // nats
inline constexpr double ln2 = 0.69314718055994531;
inline constexpr double g_06 = 2.3219280948873623; // log2 5
inline constexpr double v_d2_var2 = 5.1699250014423124;
inline constexpr double v_d2_var0 = 4.5841385638154074;
inline constexpr double xi = 0.58094021580359479;
inline constexpr double hb_011 = 0.49991595816452800;
inline constexpr double hb_00082 = 0.068608777880221582;
inline constexpr double hb_0058 = 0.31945396580944610;

// min_tradeoff at p_x = 0.02, eta_tol = 1, q_tol = e' = 0.0082
inline constexpr double tradeoff_max = 0.94899153369764537;
inline constexpr double tradeoff_min = -5.6953260240840836;
inline constexpr double tradeoff_var = 2251.4623275745230;
inline constexpr double tradeoff_h = 0.89450812972383519;

// N = 1e9, p_z = 0.98, p_det = 1, f_ec = 1.16, e_bit = 0.058
inline constexpr double ec_leak_1e9 = 355892162.96553476;

// Pinned point: N = 1e9, d_x = 2, eps = 1e-9, p_omega = 1, alpha = 1.05,
// h = 0.8, Max = 1, Min = -1, Var = 10
inline constexpr double geat_full_pinned = -31173232.325309832;
inline constexpr double v0_pinned = 17647.266473423541;
inline constexpr double v1_pinned = 79.904658065408945;
inline constexpr double simplified_pinned = 797455545.58209022;

inline constexpr unsigned long long cycles_96m_6m_2000 = 290821228000ull;

} // namespace refvals

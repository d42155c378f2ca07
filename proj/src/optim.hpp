#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace ssbh::detail {

// Deterministic golden-section maximiser on [lo, hi]; returns the best x.
template <class F>
double golden_max(double lo, double hi, double rel_tol, int max_iter, F&& f) {
    constexpr double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < max_iter; ++i) {
        if (b - a <= rel_tol * (std::fabs(a) + std::fabs(b) + 1e-300)) break;
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return fc >= fd ? c : d;
}

inline std::vector<double> logspace(double lo, double hi, std::size_t n) {
    std::vector<double> out(n);
    const double llo = std::log(lo), lhi = std::log(hi);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = std::exp(llo + (lhi - llo) * static_cast<double>(i) / static_cast<double>(n - 1));
    return out;
}

// Grid scan followed by golden refinement between the neighbours of the best
// grid point; the grid is scanned in order and ties keep the earlier point.
template <class F>
double grid_then_golden(const std::vector<double>& grid, double rel_tol, int iters, F&& f) {
    std::size_t best = 0;
    double fbest = f(grid[0]);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double v = f(grid[i]);
        if (v > fbest) {
            fbest = v;
            best = i;
        }
    }
    const double lo = grid[best == 0 ? 0 : best - 1];
    const double hi = grid[best + 1 < grid.size() ? best + 1 : best];
    if (lo == hi) return grid[best];
    const double refined = golden_max(lo, hi, rel_tol, iters, f);
    return f(refined) > fbest ? refined : grid[best];
}

} // namespace ssbh::detail

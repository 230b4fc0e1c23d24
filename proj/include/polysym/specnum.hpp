#pragma once

// Independent numeric spectral oracle: 1D Schrodinger eigenvalues by
// second-order finite differences with Dirichlet walls, lowest eigenvalues of
// the symmetric tridiagonal matrix by Sturm-sequence bisection (deterministic,
// no iterative-solver nondeterminism), and Richardson extrapolation over
// (h, h/2) pairs with an a-posteriori error estimate.
//
// Half-offset grids put nodes at x_min + (k + 1/2) h and impose an odd
// reflection through the left wall, which is the right boundary treatment for
// x^-2-singular potentials on the half line: the wavefunction vanishes like a
// power at the wall and no node ever touches the singularity.

#include "polysym/spectrum.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace polysym {

struct grid_1d {
    double x_min = 0.0;
    double x_max = 1.0;
    int points = 100;          // interior nodes carrying unknowns
    bool offset_half = false;  // nodes at (k + 1/2) h with odd-reflection left wall

    double h() const {
        return (x_max - x_min) / (offset_half ? points : points + 1);
    }
    double node(int k) const {
        return offset_half ? x_min + (k + 0.5) * h() : x_min + (k + 1) * h();
    }
};

struct eigen_result {
    std::vector<double> levels;      // Richardson-extrapolated, ascending
    std::vector<double> error_est;   // |E_{h/2} - E_h| / 3 per level
    int points_used = 0;             // finer-grid size
};

namespace detail {

// Number of eigenvalues of the symmetric tridiagonal (diag d, off-diag e)
// strictly below x, via the classic Sturm / LDL^T negative-pivot count.
inline int sturm_count(const std::vector<double>& d, const std::vector<double>& e, double x) {
    int count = 0;
    double q = d[0] - x;
    if (q < 0) ++count;
    for (std::size_t i = 1; i < d.size(); ++i) {
        if (q == 0.0) q = 1e-300;  // IEEE: the following division self-heals
        q = d[i] - x - e[i - 1] * e[i - 1] / q;
        if (q < 0) ++count;
    }
    return count;
}

inline std::vector<double> lowest_eigs(const std::vector<double>& d,
                                       const std::vector<double>& e, int count) {
    // Gershgorin enclosure of the whole spectrum.
    double lo = d[0], hi = d[0];
    for (std::size_t i = 0; i < d.size(); ++i) {
        double r = (i > 0 ? std::fabs(e[i - 1]) : 0.0) +
                   (i + 1 < d.size() ? std::fabs(e[i]) : 0.0);
        lo = std::min(lo, d[i] - r);
        hi = std::max(hi, d[i] + r);
    }
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        double a = lo, b = hi;
        for (int it = 0; it < 200 && b - a > 1e-14 * std::max(1.0, std::fabs(a) + std::fabs(b));
             ++it) {
            double mid = 0.5 * (a + b);
            if (sturm_count(d, e, mid) > k)
                b = mid;
            else
                a = mid;
        }
        out.push_back(0.5 * (a + b));
    }
    return out;
}

}  // namespace detail

// Lowest `count` eigenvalues of -(hbar^2/2) psi'' + V psi on the grid's
// interval.  V is sampled at the nodes and must be finite there.
template <class Potential>
eigen_result eigen_1d(Potential&& v, const grid_1d& grid, int count, double hbar = 1.0) {
    if (grid.points < 8) throw std::invalid_argument("eigen_1d: too few grid points");
    if (count < 1 || count > grid.points / 4)
        throw std::invalid_argument("eigen_1d: level count out of range");
    if (!(grid.x_max > grid.x_min)) throw std::invalid_argument("eigen_1d: empty interval");

    auto solve_at = [&](int points) {
        grid_1d g = grid;
        g.points = points;
        const double h = g.h();
        const double t = hbar * hbar / (2.0 * h * h);
        std::vector<double> d(static_cast<std::size_t>(points));
        std::vector<double> e(static_cast<std::size_t>(points) - 1, -t);
        for (int k = 0; k < points; ++k) {
            double x = g.node(k);
            double vx = v(x);
            if (!std::isfinite(vx))
                throw std::runtime_error("eigen_1d: potential not finite at x = " +
                                         std::to_string(x));
            d[static_cast<std::size_t>(k)] = 2.0 * t + vx;
        }
        // Odd reflection through the left wall: psi(-x) = -psi(x) adds one
        // extra t to the first diagonal entry.
        if (g.offset_half) d[0] = 3.0 * t + v(g.node(0));
        return detail::lowest_eigs(d, e, count);
    };

    const int fine = grid.offset_half ? 2 * grid.points : 2 * grid.points + 1;
    std::vector<double> coarse = solve_at(grid.points);
    std::vector<double> refined = solve_at(fine);

    eigen_result r;
    r.points_used = fine;
    for (int k = 0; k < count; ++k) {
        double eh = coarse[static_cast<std::size_t>(k)];
        double eh2 = refined[static_cast<std::size_t>(k)];
        r.levels.push_back((4.0 * eh2 - eh) / 3.0);
        r.error_est.push_back(std::fabs(eh2 - eh) / 3.0);
    }
    return r;
}

inline spectrum_table numeric_spectrum_table(const std::vector<double>& levels,
                                             double merge_rel_tol = 1e-8) {
    spectrum_table t;
    for (std::size_t i = 0; i < levels.size(); ++i)
        t.rows.push_back({levels[i], 1, provenance::numeric, "k" + std::to_string(i)});
    t.merge(merge_rel_tol);
    return t;
}

}  // namespace polysym

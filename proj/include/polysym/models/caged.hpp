#pragma once

// Caged anisotropic oscillator
//
//   H = -(hbar^2/2)(d_x^2 + d_y^2) + (omega^2/2)(kx^2 x^2 + ky^2 y^2)
//       + l1/x^2 + l2/y^2
//
// on the quarter plane (the inverse-square "cage" walls make each axis a
// half-line problem even at l = 0).  Each axis carries second-order ladder
// operators stepping H_axis by lambda = 2*hbar*k*omega:
//
//   A^+ = -1/4 [ (hbar/(omega k)) d^2 - 2x d + (omega k/hbar) x^2
//                - 2l/(omega k hbar x^2) - 1 ],
//
// A its formal adjoint (flip the signs of the odd terms).  A^+ A is a
// quadratic polynomial Q(H_axis) with roots hbar*k*omega*(1 +- nu/2),
// nu = sqrt(1 + 8l/hbar^2); the larger root is the physical ground energy of
// the axis, which is what seeds the representation solver.  Everything here
// is exact-rational; callers demote to double when nu is irrational.

#include "polysym/diffop.hpp"
#include "polysym/ladder_system.hpp"
#include "polysym/spectrum.hpp"

#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>

namespace polysym::models {

struct caged_params {
    int kx = 1;
    int ky = 1;
    Rational omega = 1;
    Rational l1 = 0;
    Rational l2 = 0;
    Rational hbar = 1;
};

enum class axis { x, y };
enum class q_source { derived, printed };

inline int axis_k(const caged_params& p, axis a) { return a == axis::x ? p.kx : p.ky; }
inline Rational axis_l(const caged_params& p, axis a) { return a == axis::x ? p.l1 : p.l2; }

inline void validate(const caged_params& p) {
    if (p.kx < 1 || p.ky < 1)
        throw std::invalid_argument("caged: frequency ratios kx, ky must be positive integers");
    if (p.omega <= 0 || p.hbar <= 0) throw std::invalid_argument("caged: omega, hbar must be > 0");
    if (p.l1 < 0 || p.l2 < 0)
        throw std::invalid_argument("caged: cage strengths l1, l2 must be >= 0");
}

struct caged_axis_ops {
    diff_operator<Rational> hamiltonian;
    diff_operator<Rational> raise;
    diff_operator<Rational> lower;
    Rational lambda;  // ladder step 2*hbar*k*omega
};

inline caged_axis_ops caged_axis(const caged_params& p, axis a) {
    validate(p);
    const Rational k = axis_k(p, a), l = axis_l(p, a);
    const Rational w = p.omega, hb = p.hbar;
    using D = diff_operator<Rational>;
    using L = laurent<Rational>;

    D h = D::term(2, L::constant(-hb * hb / 2));
    h += D::multiplication(L::term(2, w * w * k * k / 2));
    if (l != 0) h += D::multiplication(L::term(-2, l));

    auto ladder = [&](int sign) {  // +1 builds A^+, -1 builds A
        D op = D::term(2, L::constant(hb / (w * k)));
        op += D::term(1, L::term(1, Rational(-2 * sign)));
        op += D::multiplication(L::term(2, w * k / hb));
        if (l != 0) op += D::multiplication(L::term(-2, Rational(-2) * l / (w * k * hb)));
        op += D::multiplication(L::constant(Rational(-sign)));
        return op * Rational(-1, 4);
    };

    caged_axis_ops ops;
    ops.hamiltonian = std::move(h);
    ops.raise = ladder(+1);
    ops.lower = ladder(-1);
    ops.lambda = 2 * hb * k * w;
    return ops;
}

// nu^2 = 1 + 8l/hbar^2; nu itself is rational only for special cage strengths.
inline Rational caged_nu_squared(const caged_params& p, axis a) {
    return 1 + 8 * axis_l(p, a) / (p.hbar * p.hbar);
}
inline std::optional<Rational> caged_nu_exact(const caged_params& p, axis a) {
    return exact_sqrt(caged_nu_squared(p, a));
}

// The closed-form transfer polynomial as published for this model:
//   Q(z) = z^2/(4 hbar^2 k^2 omega^2) - z/(2 hbar k omega) + 3/16 - l/(2 hbar^2).
inline polynomial<Rational> caged_printed_q(const caged_params& p, axis a) {
    const Rational k = axis_k(p, a), l = axis_l(p, a);
    const Rational hw = p.hbar * k * p.omega;
    return polynomial<Rational>{Rational(3, 16) - l / (2 * p.hbar * p.hbar),
                                Rational(-1) / (2 * hw), Rational(1) / (4 * hw * hw)};
}

// Q derived from the operators themselves: A^+ A re-expressed in H_axis.
inline polynomial<Rational> caged_derived_q(const caged_params& p, axis a) {
    caged_axis_ops ops = caged_axis(p, a);
    return express_in_h(ops.raise * ops.lower, ops.hamiltonian, 2);
}

// Exact axis levels E = hbar*k*omega*(2 n_q + 1 + nu/2), n_q = 0, 1, ...
// (half-line spectrum; at l = 0 this is the odd-parity tower of the full
// line, matching the cage boundary condition).  Exact when nu is rational.
inline std::optional<Rational> caged_axis_level(const caged_params& p, axis a, int nq) {
    auto nu = caged_nu_exact(p, a);
    if (!nu) return std::nullopt;
    const Rational hw = p.hbar * Rational(axis_k(p, a)) * p.omega;
    return hw * (2 * Rational(nq) + 1 + *nu / 2);
}
inline double caged_axis_level_d(const caged_params& p, axis a, int nq) {
    auto ex = caged_axis_level(p, a, nq);
    if (ex) return to_double(*ex);
    double nu = std::sqrt(to_double(caged_nu_squared(p, a)));
    double hw = to_double(p.hbar) * axis_k(p, a) * to_double(p.omega);
    return hw * (2.0 * nq + 1.0 + nu / 2.0);
}

// Separable-oracle spectrum: direct sum of the two exact axis towers.
inline spectrum_table caged_oracle_spectrum(const caged_params& p, double e_max) {
    auto tower = [&](axis a) {
        std::vector<double> t;
        for (int nq = 0;; ++nq) {
            double e = caged_axis_level_d(p, a, nq);
            if (t.size() > 4096) throw std::runtime_error("caged oracle: tower overflow");
            if (e > e_max) break;
            t.push_back(e);
        }
        return t;
    };
    return assemble_2d(tower(axis::x), tower(axis::y), e_max, 1e-10, provenance::oracle);
}

// Full 2D ladder system.  Framework integers: m = ky/g, n = kx/g (the crossed
// integral pairs m x-ladders against n y-ladders so that m*lambda_x =
// n*lambda_y); g > 1 marks the system as reduced.
inline ladder_system<Rational> caged_system(const caged_params& p,
                                            q_source source = q_source::derived) {
    validate(p);
    const int g = std::gcd(p.kx, p.ky);

    ladder_system<Rational> sys;
    sys.q_poly = source == q_source::derived ? caged_derived_q(p, axis::x)
                                             : caged_printed_q(p, axis::x);
    sys.s_poly = source == q_source::derived ? caged_derived_q(p, axis::y)
                                             : caged_printed_q(p, axis::y);
    sys.lambda_x = 2 * p.hbar * Rational(p.kx) * p.omega;
    sys.lambda_y = 2 * p.hbar * Rational(p.ky) * p.omega;
    sys.m = p.ky / g;
    sys.n = p.kx / g;
    sys.hbar = p.hbar;
    sys.label = "caged(kx=" + std::to_string(p.kx) + ",ky=" + std::to_string(p.ky) + ")";
    sys.reduced = g > 1;

    auto attach_roots = [&](axis a, std::vector<Rational>& roots, std::vector<Rational>& ground) {
        auto nu = caged_nu_exact(p, a);
        if (!nu) return;  // irrational roots: attached after demotion to double
        const Rational hw = p.hbar * Rational(axis_k(p, a)) * p.omega;
        Rational lo = hw * (1 - *nu / 2), hi = hw * (1 + *nu / 2);
        roots = {lo, hi};
        std::sort(roots.begin(), roots.end());
        ground = {hi};
    };
    attach_roots(axis::x, sys.q_real_roots, sys.q_ground_roots);
    attach_roots(axis::y, sys.s_real_roots, sys.s_ground_roots);
    return make_ladder_system(std::move(sys));
}

// Float demotion with ground roots completed numerically when nu was
// irrational (the largest real root of each transfer polynomial).
inline ladder_system<double> caged_system_double(const caged_params& p,
                                                 q_source source = q_source::derived) {
    ladder_system<double> sys = to_double_system(caged_system(p, source));
    if (sys.q_ground_roots.empty() && !sys.q_real_roots.empty())
        sys.q_ground_roots = {*std::max_element(sys.q_real_roots.begin(), sys.q_real_roots.end())};
    if (sys.s_ground_roots.empty() && !sys.s_real_roots.empty())
        sys.s_ground_roots = {*std::max_element(sys.s_real_roots.begin(), sys.s_real_roots.end())};
    return sys;
}

// Axis potential (double view) for the independent numeric eigensolver.
inline auto caged_axis_potential(const caged_params& p, axis a) {
    const double k = axis_k(p, a);
    const double l = to_double(axis_l(p, a));
    const double w = to_double(p.omega);
    return [=](double x) { return 0.5 * w * w * k * k * x * x + l / (x * x); };
}

}  // namespace polysym::models

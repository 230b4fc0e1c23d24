#pragma once

// Two-axis superintegrable system built from the fourth Painleve
// transcendent.  Axes are numbered 1 and 2 throughout.  Each axis carries
// the potential
//
//   g(x) = (w^2/2) x^2 + (hbar w eps/2) f'(z) + (w hbar/2) f(z)^2
//          + w sqrt(hbar w) x f(z) + (hbar w/3)(eps - alpha),   z = sqrt(w/hbar) x,
//
// where f solves P4 with parameters (alpha, beta) — the constant term's
// alpha is the P4 parameter of the f actually substituted, so the assembly
// below reads it from the transcendent source rather than from the axis
// configuration (they coincide except when cross-checking anchor branches
// against a differently-configured axis).  Third-order ladder operators step
// each axis by lambda = hbar*w, and their transfer polynomial is the
// published cubic
//
//   Q(z) = 8 (z - r1) ((z - c)^2 + w^2 hbar^2 beta / 8),
//   r1 = (hbar w/3)(3 + eps - alpha),  c = (hbar w/3)(alpha/2 + 4 eps - 3/2),
//
// whose roots are r1 and c +- hbar w sqrt(-2 beta)/4.  Every real root is a
// physical lowest-weight sector, so all of them seed the representation
// solver.  The catalog of rational P4 solutions below supplies exactly
// solvable anchor cases (f linear or reciprocal) used for cross-validation.

#include "polysym/ladder_system.hpp"
#include "polysym/p4ode.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace polysym::models {

struct painleve_params {
    Rational omega1 = 3;
    Rational omega2 = 3;
    int m = 1;
    int n = 1;
    Rational alpha1 = 0;
    Rational beta1 = Rational(-2, 9);
    Rational alpha2 = 0;
    Rational beta2 = Rational(-2, 9);
    int eps1 = +1;
    int eps2 = +1;
    Rational hbar = 1;
};

inline void validate(const painleve_params& p) {
    if (p.m < 1 || p.n < 1) throw std::invalid_argument("painleve: m, n must be positive");
    if (p.omega1 <= 0 || p.omega2 <= 0 || p.hbar <= 0)
        throw std::invalid_argument("painleve: omega1, omega2, hbar must be > 0");
    if (p.eps1 * p.eps1 != 1 || p.eps2 * p.eps2 != 1)
        throw std::invalid_argument("painleve: eps must be +1 or -1");
    if (Rational(p.m) * p.omega1 != Rational(p.n) * p.omega2)
        throw std::invalid_argument("painleve: commensurability m*omega1 == n*omega2 violated");
}

struct painleve_axis {
    Rational omega, alpha, beta;
    int eps;
};
inline painleve_axis axis_of(const painleve_params& p, int a) {
    if (a != 1 && a != 2) throw std::invalid_argument("painleve: axis must be 1 or 2");
    return a == 1 ? painleve_axis{p.omega1, p.alpha1, p.beta1, p.eps1}
                  : painleve_axis{p.omega2, p.alpha2, p.beta2, p.eps2};
}

inline Rational painleve_linear_root(const painleve_params& p, int a) {
    painleve_axis ax = axis_of(p, a);
    return p.hbar * ax.omega / 3 * (3 + ax.eps - ax.alpha);
}
inline Rational painleve_quadratic_center(const painleve_params& p, int a) {
    painleve_axis ax = axis_of(p, a);
    return p.hbar * ax.omega / 3 * (ax.alpha / 2 + 4 * ax.eps - Rational(3, 2));
}

// The published cubic, expanded exactly.
inline polynomial<Rational> painleve_printed_q(const painleve_params& p, int a) {
    painleve_axis ax = axis_of(p, a);
    Rational r1 = painleve_linear_root(p, a);
    Rational c = painleve_quadratic_center(p, a);
    Rational hw = p.hbar * ax.omega;
    polynomial<Rational> lin{-r1, 1};
    polynomial<Rational> quad{c * c + hw * hw * ax.beta / 8, -2 * c, 1};
    return Rational(8) * (lin * quad);
}

// Exact system; requires the quadratic root pairs to be rational, i.e.
// -2*beta a perfect square on both axes.  Use the double variant otherwise.
inline ladder_system<Rational> painleve_system(const painleve_params& p) {
    validate(p);
    ladder_system<Rational> sys;
    sys.q_poly = painleve_printed_q(p, 1);
    sys.s_poly = painleve_printed_q(p, 2);
    sys.lambda_x = p.hbar * p.omega1;
    sys.lambda_y = p.hbar * p.omega2;
    sys.m = p.m;
    sys.n = p.n;
    sys.hbar = p.hbar;
    sys.label = "painleve";

    for (int a = 1; a <= 2; ++a) {
        auto half_width = exact_sqrt(Rational(-2) * axis_of(p, a).beta);
        if (!half_width)
            throw std::invalid_argument(
                "painleve: quadratic roots are irrational or complex; use the float build");
        Rational c = painleve_quadratic_center(p, a);
        Rational w = p.hbar * axis_of(p, a).omega * *half_width / 4;
        std::vector<Rational> roots{painleve_linear_root(p, a), c - w, c + w};
        std::sort(roots.begin(), roots.end());
        auto& target_roots = a == 1 ? sys.q_real_roots : sys.s_real_roots;
        auto& target_ground = a == 1 ? sys.q_ground_roots : sys.s_ground_roots;
        target_roots = roots;
        target_ground = roots;  // every real root is a physical sector
    }
    return make_ladder_system(std::move(sys));
}

inline ladder_system<double> painleve_system_double(const painleve_params& p) {
    validate(p);
    ladder_system<double> sys;
    sys.q_poly = to_double_poly(painleve_printed_q(p, 1));
    sys.s_poly = to_double_poly(painleve_printed_q(p, 2));
    sys.lambda_x = to_double(p.hbar * p.omega1);
    sys.lambda_y = to_double(p.hbar * p.omega2);
    sys.m = p.m;
    sys.n = p.n;
    sys.hbar = to_double(p.hbar);
    sys.label = "painleve";

    for (int a = 1; a <= 2; ++a) {
        double disc = to_double(Rational(-2) * axis_of(p, a).beta);
        double c = to_double(painleve_quadratic_center(p, a));
        double r1 = to_double(painleve_linear_root(p, a));
        double hw = to_double(p.hbar * axis_of(p, a).omega);
        auto& reals = a == 1 ? sys.q_real_roots : sys.s_real_roots;
        auto& cplx = a == 1 ? sys.q_complex_roots : sys.s_complex_roots;
        reals.push_back(r1);
        if (disc >= 0) {
            reals.push_back(c - hw * std::sqrt(disc) / 4);
            reals.push_back(c + hw * std::sqrt(disc) / 4);
        } else {
            double w = hw * std::sqrt(-disc) / 4;
            cplx.emplace_back(c, -w);
            cplx.emplace_back(c, w);
        }
        std::sort(reals.begin(), reals.end());
        (a == 1 ? sys.q_ground_roots : sys.s_ground_roots) = reals;
    }
    return make_ladder_system(std::move(sys));
}

// ---------------------------------------------------------------------------
// Rational P4 solutions: exactly known transcendent branches used as anchors.
// ---------------------------------------------------------------------------

enum class p4_kind { minus_two_z, minus_two_z_over_three, one_over_z };

struct rational_p4_solution {
    p4_kind kind;
    std::string name;
    double alpha = 0.0, beta = 0.0;
    std::function<double(double)> f, fp;  // fp = df/dz
    bool pole_at_origin = false;
};

inline rational_p4_solution rational_p4(p4_kind kind) {
    rational_p4_solution s;
    s.kind = kind;
    switch (kind) {
        case p4_kind::minus_two_z:
            s.name = "f(z) = -2z";
            s.alpha = 0.0;
            s.beta = -2.0;
            s.f = [](double z) { return -2.0 * z; };
            s.fp = [](double) { return -2.0; };
            break;
        case p4_kind::minus_two_z_over_three:
            s.name = "f(z) = -2z/3";
            s.alpha = 0.0;
            s.beta = -2.0 / 9.0;
            s.f = [](double z) { return -2.0 * z / 3.0; };
            s.fp = [](double) { return -2.0 / 3.0; };
            break;
        case p4_kind::one_over_z:
            s.name = "f(z) = 1/z";
            s.alpha = 2.0;
            s.beta = -2.0;
            s.f = [](double z) { return 1.0 / z; };
            s.fp = [](double z) { return -1.0 / (z * z); };
            s.pole_at_origin = true;
            break;
    }
    return s;
}

inline rational_p4_solution rational_p4_by_name(const std::string& name) {
    if (name == "minus_two_z") return rational_p4(p4_kind::minus_two_z);
    if (name == "minus_two_z_over_three")
        return rational_p4(p4_kind::minus_two_z_over_three);
    if (name == "one_over_z") return rational_p4(p4_kind::one_over_z);
    throw std::invalid_argument("unknown rational P4 branch '" + name + "'");
}

// ---------------------------------------------------------------------------
// Axis potential assembly from a transcendent sample source.
// ---------------------------------------------------------------------------

// alpha_f is the P4 alpha of the transcendent being substituted; it feeds
// the constant term (hbar w/3)(eps - alpha).
inline double painleve_g(const painleve_params& p, int a, double x, double alpha_f,
                         const std::function<double(double)>& f,
                         const std::function<double(double)>& fp) {
    painleve_axis ax = axis_of(p, a);
    const double w = to_double(ax.omega), hb = to_double(p.hbar);
    const double z = std::sqrt(w / hb) * x;
    const double fz = f(z), fpz = fp(z);
    return 0.5 * w * w * x * x + 0.5 * hb * w * ax.eps * fpz + 0.5 * w * hb * fz * fz +
           w * std::sqrt(hb * w) * x * fz + hb * w / 3.0 * (ax.eps - alpha_f);
}

inline auto painleve_axis_potential(const painleve_params& p, int a,
                                    const rational_p4_solution& sol) {
    return [p, a, sol](double x) { return painleve_g(p, a, x, sol.alpha, sol.f, sol.fp); };
}

// Trajectory-backed variant; evaluation inside a pole gap throws with the
// pole location in the message.
inline auto painleve_axis_potential(const painleve_params& p, int a, const p4_trajectory& traj) {
    return [p, a, &traj](double x) {
        return painleve_g(
            p, a, x, traj.alpha, [&](double z) { return traj.f_at(z); },
            [&](double z) { return traj.fp_at(z); });
    };
}

}  // namespace polysym::models

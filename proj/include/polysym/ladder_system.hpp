#pragma once

// A ladder system is the algebraic skeleton of a 2D Cartesian-separable
// Hamiltonian with polynomial ladder commutators:
//
//   [A_x, A_x^+] = Q(H_x + lambda_x) - Q(H_x),
//   [A_y, A_y^+] = S(H_y + lambda_y) - S(H_y),
//   m * lambda_x = n * lambda_y  (=: lambda),
//
// plus the root data of Q and S that the representation solver consumes.
// Models construct these; the oscillator-algebra layer only reads them.

#include "polysym/polynomial.hpp"
#include "polysym/roots.hpp"

#include <complex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace polysym {

template <class R>
struct ladder_system {
    polynomial<R> q_poly;  // Q, x-axis
    polynomial<R> s_poly;  // S, y-axis
    R lambda_x{};
    R lambda_y{};
    int m = 1;  // power of A_x^+ in the crossed integral
    int n = 1;  // power of A_y in the crossed integral
    R hbar{};
    std::string label;

    // Real roots of Q and S, one entry per multiplicity copy.  Exact in
    // rational mode; in double mode these are the real members of the float
    // factorization.  Complex pairs (double mode only) live separately.
    std::vector<R> q_real_roots;
    std::vector<R> s_real_roots;
    std::vector<std::complex<double>> q_complex_roots;
    std::vector<std::complex<double>> s_complex_roots;

    // The roots whose ladder states are annihilated in the physical model
    // (lowest-weight sectors).  Empty means "unknown": the representation
    // solver then ranges over all real roots.
    std::vector<R> q_ground_roots;
    std::vector<R> s_ground_roots;

    bool reduced = false;  // (m, n) was divided down from a non-coprime pair

    R lambda() const { return lambda_x * R(m); }
};

namespace detail {

template <class R>
bool factorization_matches(const polynomial<R>& p, const std::vector<R>& real_roots,
                           const std::vector<std::complex<double>>& complex_roots) {
    if (p.is_zero()) return false;
    if constexpr (is_exact_v<R>) {
        if (!complex_roots.empty()) return false;
        // Empty = "roots not supplied" (irrational or simply unknown); the
        // identity layer never needs them and the representation solver will
        // just find no branches.  Non-empty lists must factor the polynomial.
        if (real_roots.empty()) return true;
        return from_roots(p.leading(), real_roots) == p;
    } else {
        polynomial<double> rebuilt = polynomial<double>::constant(p.leading());
        for (const R& r : real_roots) rebuilt = rebuilt * polynomial<double>{-r, 1.0};
        for (std::size_t i = 0; i + 1 < complex_roots.size(); i += 2) {
            auto z = complex_roots[i];
            rebuilt = rebuilt * polynomial<double>{std::norm(z), -2.0 * z.real(), 1.0};
        }
        if (rebuilt.degree() != p.degree()) return false;
        double scale = 0.0;
        for (int k = 0; k <= p.degree(); ++k) scale = std::max(scale, std::abs(p[k]));
        for (int k = 0; k <= p.degree(); ++k)
            if (std::abs(rebuilt[k] - p[k]) > 1e-8 * std::max(scale, 1.0)) return false;
        return true;
    }
}

}  // namespace detail

// Validates the structural invariants and normalizes (m, n) to lowest terms.
// Root lists may be empty: with R = double they are then filled from the
// float factorization; in exact mode they stay empty (the identity layer does
// not need roots).  When present they must reproduce the polynomial.
template <class R>
ladder_system<R> make_ladder_system(ladder_system<R> sys) {
    if (sys.q_poly.is_zero() || sys.s_poly.is_zero())
        throw std::invalid_argument("ladder_system: Q and S must be nonzero");
    if (sys.m <= 0 || sys.n <= 0)
        throw std::invalid_argument("ladder_system: m, n must be positive");
    if (scalar_traits<R>::is_zero(sys.lambda_x) || scalar_traits<R>::is_zero(sys.lambda_y))
        throw std::invalid_argument("ladder_system: ladder spacings must be nonzero");

    int g = std::gcd(sys.m, sys.n);
    if (g > 1) {
        sys.m /= g;
        sys.n /= g;
        sys.reduced = true;
    }

    // Commensurability: m*lambda_x == n*lambda_y defines the global spacing.
    if constexpr (is_exact_v<R>) {
        if (sys.lambda_x * R(sys.m) != sys.lambda_y * R(sys.n))
            throw std::invalid_argument("ladder_system: m*lambda_x != n*lambda_y");
    } else {
        double lx = to_double(sys.lambda_x) * sys.m, ly = to_double(sys.lambda_y) * sys.n;
        if (std::abs(lx - ly) > 1e-12 * std::max({std::abs(lx), std::abs(ly), 1.0}))
            throw std::invalid_argument("ladder_system: m*lambda_x != n*lambda_y");
    }

    if constexpr (!is_exact_v<R>) {
        auto fill = [](const polynomial<double>& p, std::vector<double>& reals,
                       std::vector<std::complex<double>>& cplx) {
            if (!reals.empty() || !cplx.empty() || p.degree() < 1) return;
            for (const root& r : find_roots(p))
                for (int i = 0; i < r.multiplicity; ++i) {
                    if (r.value.imag() == 0.0)
                        reals.push_back(r.value.real());
                    else
                        cplx.push_back(r.value);
                }
        };
        fill(sys.q_poly, sys.q_real_roots, sys.q_complex_roots);
        fill(sys.s_poly, sys.s_real_roots, sys.s_complex_roots);
    }

    if (!detail::factorization_matches(sys.q_poly, sys.q_real_roots, sys.q_complex_roots))
        throw std::invalid_argument("ladder_system: Q root data do not factor Q");
    if (!detail::factorization_matches(sys.s_poly, sys.s_real_roots, sys.s_complex_roots))
        throw std::invalid_argument("ladder_system: S root data do not factor S");

    auto subset_of = [](const std::vector<R>& sub, const std::vector<R>& all) {
        for (const R& g_ : sub) {
            bool found = false;
            for (const R& r : all) {
                if constexpr (is_exact_v<R>) {
                    if (g_ == r) { found = true; break; }
                } else {
                    if (std::abs(g_ - r) <= 1e-9 * std::max(1.0, std::abs(r))) { found = true; break; }
                }
            }
            if (!found) return false;
        }
        return true;
    };
    if (!subset_of(sys.q_ground_roots, sys.q_real_roots) ||
        !subset_of(sys.s_ground_roots, sys.s_real_roots))
        throw std::invalid_argument("ladder_system: ground roots must be roots");

    return sys;
}

// Exact -> float demotion; the exact root lists carry over verbatim.
inline ladder_system<double> to_double_system(const ladder_system<Rational>& s) {
    ladder_system<double> d;
    d.q_poly = to_double_poly(s.q_poly);
    d.s_poly = to_double_poly(s.s_poly);
    d.lambda_x = to_double(s.lambda_x);
    d.lambda_y = to_double(s.lambda_y);
    d.m = s.m;
    d.n = s.n;
    d.hbar = to_double(s.hbar);
    d.label = s.label;
    for (const auto& r : s.q_real_roots) d.q_real_roots.push_back(to_double(r));
    for (const auto& r : s.s_real_roots) d.s_real_roots.push_back(to_double(r));
    for (const auto& r : s.q_ground_roots) d.q_ground_roots.push_back(to_double(r));
    for (const auto& r : s.s_ground_roots) d.s_ground_roots.push_back(to_double(r));
    d.reduced = s.reduced;
    return make_ladder_system(std::move(d));
}

}  // namespace polysym

#pragma once

// Polynomial root finding.
//
// Floating path: companion-matrix eigenvalues (Eigen) followed by one
// safeguarded Newton polish per root, then relative clustering at 1e-6 to
// recover multiplicities and snap conjugate pairs.  (A multiplicity-m root
// perturbs the eigenvalues by O(eps^(1/m)) ~ 1e-8 for m = 2, so the cluster
// radius must sit well above that; distinct model roots are separated by
// far more than 1e-6.)  Exact path: closed-form radicals for degree <= 2,
// succeeding only when the roots are rational.

#include "polysym/polynomial.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

namespace polysym {

struct root {
    std::complex<double> value;
    int multiplicity = 1;
};

inline constexpr double kRootClusterRel = 1e-6;

namespace detail {

inline std::complex<double> horner(const polynomial<double>& p, std::complex<double> x) {
    std::complex<double> acc = 0.0;
    for (int k = p.degree(); k >= 0; --k) acc = acc * x + p[k];
    return acc;
}

}  // namespace detail

// All complex roots of a nonzero polynomial, multiplicity-collapsed, sorted by
// (real, imag).  Conjugate pairs come out adjacent.  Throws on the zero
// polynomial (no well-defined root set) and returns empty for constants.
inline std::vector<root> find_roots(const polynomial<double>& p) {
    if (p.is_zero()) throw std::invalid_argument("find_roots: zero polynomial");
    const int n = p.degree();
    if (n == 0) return {};

    // Monic normalization, then the standard companion matrix.
    std::vector<double> a(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) a[static_cast<std::size_t>(k)] = p[k] / p.leading();
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) C(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) C(i, n - 1) = -a[static_cast<std::size_t>(i)];

    Eigen::EigenSolver<Eigen::MatrixXd> es(C, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("find_roots: eigenvalue iteration failed");

    const polynomial<double> dp = p.derivative();
    std::vector<std::complex<double>> zs;
    zs.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        std::complex<double> z = es.eigenvalues()(i);
        // One Newton step, kept only if it does not increase |p(z)|.
        std::complex<double> fz = detail::horner(p, z);
        std::complex<double> dz = detail::horner(dp, z);
        if (std::abs(dz) > 0) {
            std::complex<double> z2 = z - fz / dz;
            if (std::abs(detail::horner(p, z2)) <= std::abs(fz)) z = z2;
        }
        zs.push_back(z);
    }

    std::sort(zs.begin(), zs.end(), [](const auto& x, const auto& y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    });

    // Greedy clustering: nearby eigenvalues are one root with multiplicity.
    std::vector<root> out;
    for (const auto& z : zs) {
        bool merged = false;
        for (auto& r : out) {
            double scale = std::max(1.0, std::abs(r.value));
            if (std::abs(z - r.value) <= kRootClusterRel * scale) {
                // Running mean keeps the cluster representative centered.
                r.value = (r.value * static_cast<double>(r.multiplicity) + z) /
                          static_cast<double>(r.multiplicity + 1);
                r.multiplicity += 1;
                merged = true;
                break;
            }
        }
        if (!merged) out.push_back({z, 1});
    }
    for (auto& r : out) {
        double scale = std::max(1.0, std::abs(r.value));
        if (std::abs(r.value.imag()) <= kRootClusterRel * scale)
            r.value = {r.value.real(), 0.0};
    }
    std::sort(out.begin(), out.end(), [](const root& x, const root& y) {
        if (x.value.real() != y.value.real()) return x.value.real() < y.value.real();
        return x.value.imag() < y.value.imag();
    });
    return out;
}

// Residual bound used by the tests: |p(r)| measured against the coefficient
// scale of p at |r|.
inline double root_residual(const polynomial<double>& p, std::complex<double> z) {
    double scale = 0.0, pw = 1.0;
    for (int k = 0; k <= p.degree(); ++k) {
        scale = std::max(scale, std::abs(p[k]) * pw);
        pw *= std::max(1.0, std::abs(z));
    }
    return std::abs(detail::horner(p, z)) / std::max(scale, 1e-300);
}

// Exact real roots for degree <= 2, each listed with multiplicity, ascending.
// nullopt when a root is irrational or complex (callers fall back to floats),
// exception above degree 2 (exact radicals beyond quadratics are out of
// scope; models supply higher-degree factorizations in closed form).
inline std::optional<std::vector<Rational>> exact_real_roots(const polynomial<Rational>& p) {
    if (p.is_zero()) throw std::invalid_argument("exact_real_roots: zero polynomial");
    const int n = p.degree();
    if (n == 0) return std::vector<Rational>{};
    if (n == 1) return std::vector<Rational>{Rational(-p[0] / p[1])};
    if (n == 2) {
        Rational a = p[2], b = p[1], c = p[0];
        Rational disc = b * b - 4 * a * c;
        if (disc < 0) return std::vector<Rational>{};  // no real roots, exactly
        auto s = exact_sqrt(disc);
        if (!s) return std::nullopt;  // real but irrational
        std::vector<Rational> roots{Rational((-b - *s) / (2 * a)), Rational((-b + *s) / (2 * a))};
        std::sort(roots.begin(), roots.end());
        return roots;
    }
    throw std::invalid_argument("exact_real_roots: degree > 2 unsupported");
}

}  // namespace polysym

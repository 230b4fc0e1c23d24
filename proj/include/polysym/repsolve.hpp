#pragma once

// Finite-dimensional unitary representations of the deformed oscillator.
//
// A representation of dimension N+1 needs a structure function Phi(x) =
// F(E, x + u) with Phi(0) = 0, Phi(N+1) = 0 and Phi(x) > 0 at the interior
// integer points x = 1..N.  The two boundary conditions are solved on a
// chosen pair of linear factors of F: a Q-side factor vanishing at x = 0
// (lowest weight) and an S-side factor vanishing at x = N+1, which yields
//
//   u = (m - i0)/m - (E/2 - r0) / (m*lambda_x),
//   E = r0 + r0' + lambda * (N + 1 + (m - i0)/m - j0/n),
//
// per branch (r0, i0, r0', j0).  The mirrored orientation (S-side at 0,
// Q-side at N+1) is enumerated on request and deduplicated against the
// normal one.
//
// Root selection: by default a branch ranges over the system's physical
// ground roots when the model supplied them, and over every distinct real
// root otherwise.  The distinction matters: positivity at integer points
// alone admits abstract solutions of the algebra that no Hermitian ladder
// operator realizes, so oracle-equality of spectra is only expected with
// the physical root set.  `root_policy::all_roots` forces the exhaustive
// superset for exploration.

#include "polysym/oscalg.hpp"
#include "polysym/spectrum.hpp"

#include <optional>
#include <sstream>
#include <stdexcept>

namespace polysym {

enum class root_policy { ground_then_all, all_roots };
enum class orientation { normal, mirrored };

struct enum_options {
    root_policy policy = root_policy::ground_then_all;
    bool include_mirrored = false;
    double float_match_tol = 1e-9;  // dedup tolerance in double mode
};

template <class R>
struct branch_desc {
    R q_root{};
    R s_root{};
    int i0 = 1;
    int j0 = 1;
    orientation orient = orientation::normal;

    std::string id() const {
        std::ostringstream s;
        s << (orient == orientation::normal ? "n" : "m") << ":q" << scalar_traits<R>::str(q_root)
          << "#" << i0 << ":s" << scalar_traits<R>::str(s_root) << "#" << j0;
        return s.str();
    }
};

template <class R>
struct representation {
    int n = 0;  // highest weight index; dimension is n + 1
    R energy{};
    R u{};
    std::vector<R> phi;  // Phi(1..n), strictly positive
    int dimension() const { return n + 1; }
};

template <class R>
struct representation_family {
    branch_desc<R> branch;
    R u_const{}, u_e_coeff{};   // u = u_const + u_e_coeff * E
    R e_const{}, e_n_coeff{};   // E = e_const + e_n_coeff * N
    std::vector<representation<R>> reps;
};

template <class R>
struct enumeration_result {
    std::vector<representation_family<R>> families;
    int duplicates_removed = 0;
    int complex_roots_skipped = 0;  // root copies excluded for nonzero imaginary part
};

namespace detail {

template <class R>
std::vector<R> distinct_values(const std::vector<R>& v) {
    std::vector<R> out;
    for (const R& x : v) {
        bool seen = false;
        for (const R& y : out) {
            if constexpr (is_exact_v<R>) {
                if (x == y) { seen = true; break; }
            } else {
                if (std::abs(x - y) <= 1e-12 * std::max(1.0, std::abs(y))) { seen = true; break; }
            }
        }
        if (!seen) out.push_back(x);
    }
    return out;
}

template <class R>
bool phi_positive(const R& v) {
    if constexpr (is_exact_v<R>)
        return v > 0;
    else
        return v > 0.0;
}

template <class R>
bool is_zero_within(const R& v, double scale) {
    if constexpr (is_exact_v<R>)
        return v == 0;
    else
        return std::abs(v) <= 1e-9 * std::max(1.0, scale);
}

template <class R>
bool same_value(const R& a, const R& b, double tol) {
    if constexpr (is_exact_v<R>)
        return a == b;
    else
        return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace detail

// Boundary + positivity re-verification of one representation against the
// expanded structure function.  Exact inputs make this an exact check; it is
// the unitarity certificate the pipelines re-run on everything they emit.
template <class R>
certificate verify_representation(const bivariate<R>& f, const representation<R>& rep) {
    certificate c;
    c.pass = true;
    const double e_d = to_double(rep.energy), u_d = to_double(rep.u);
    R phi0 = f.eval(rep.energy, rep.u);
    R phiN1 = f.eval(rep.energy, rep.u + R(rep.n + 1));
    // Zero tests are conditioned on the cancellation magnitude at the point,
    // not on the coefficient norm (|E|^deg can dwarf the coefficients).
    if (!detail::is_zero_within(phi0, std::max(1.0, f.eval_abs(e_d, u_d)))) {
        c.pass = false;
        c.detail = "Phi(0) != 0";
    }
    if (c.pass &&
        !detail::is_zero_within(phiN1, std::max(1.0, f.eval_abs(e_d, u_d + rep.n + 1)))) {
        c.pass = false;
        c.detail = "Phi(N+1) != 0";
    }
    c.residual_norm = std::max(std::abs(to_double(phi0)), std::abs(to_double(phiN1)));
    if (c.pass) {
        if (static_cast<int>(rep.phi.size()) != rep.n) {
            c.pass = false;
            c.detail = "Phi profile length mismatch";
        }
        for (int x = 1; c.pass && x <= rep.n; ++x) {
            R v = f.eval(rep.energy, rep.u + R(x));
            if (!detail::phi_positive(v) ||
                !detail::same_value(v, rep.phi[static_cast<std::size_t>(x - 1)], 1e-12)) {
                c.pass = false;
                c.detail = "Phi(" + std::to_string(x) + ") not positive / inconsistent";
            }
        }
    }
    if (c.pass) c.detail = "Phi(0)=0, Phi(N+1)=0, Phi(1..N)>0 verified";
    return c;
}

template <class R>
enumeration_result<R> enumerate_reps(const ladder_system<R>& sys, int n_max,
                                     const enum_options& opt = {}) {
    if (n_max < 0) throw std::invalid_argument("enumerate_reps: n_max < 0");
    const bivariate<R> f = build_f(sys);
    const R lambda = sys.lambda();
    const R mlx = sys.lambda_x * R(sys.m);
    const R one = scalar_traits<R>::one();

    auto side_roots = [&](const std::vector<R>& ground, const std::vector<R>& all) {
        if (opt.policy == root_policy::ground_then_all && !ground.empty())
            return detail::distinct_values(ground);
        return detail::distinct_values(all);
    };
    const std::vector<R> q_roots = side_roots(sys.q_ground_roots, sys.q_real_roots);
    const std::vector<R> s_roots = side_roots(sys.s_ground_roots, sys.s_real_roots);

    enumeration_result<R> out;
    out.complex_roots_skipped =
        static_cast<int>(sys.q_complex_roots.size() + sys.s_complex_roots.size());

    std::vector<orientation> orients{orientation::normal};
    if (opt.include_mirrored) orients.push_back(orientation::mirrored);

    for (orientation orient : orients) {
        for (const R& rq : q_roots) {
            for (int i0 = 1; i0 <= sys.m; ++i0) {
                for (const R& rs : s_roots) {
                    for (int j0 = 1; j0 <= sys.n; ++j0) {
                        representation_family<R> fam;
                        fam.branch = branch_desc<R>{rq, rs, i0, j0, orient};
                        const R frac_q = R(sys.m - i0) / R(sys.m);
                        const R frac_s = R(j0) / R(sys.n);
                        if (orient == orientation::normal) {
                            // Phi(0)=0 on the Q side fixes u(E); Phi(N+1)=0 on
                            // the S side fixes E(N).
                            fam.u_const = frac_q + rq / mlx;
                            fam.u_e_coeff = -one / (R(2) * mlx);
                            fam.e_const = rq + rs + lambda * (one + frac_q - frac_s);
                            fam.e_n_coeff = lambda;
                        } else {
                            fam.u_const = -rs / lambda + frac_s;  // n*lambda_y == lambda
                            fam.u_e_coeff = one / (R(2) * lambda);
                            fam.e_const = rq + rs - lambda * (one + frac_s - frac_q);
                            fam.e_n_coeff = -lambda;
                        }
                        for (int N = 0; N <= n_max; ++N) {
                            representation<R> rep;
                            rep.n = N;
                            rep.energy = fam.e_const + fam.e_n_coeff * R(N);
                            rep.u = fam.u_const + fam.u_e_coeff * rep.energy;
                            bool ok = true;
                            rep.phi.reserve(static_cast<std::size_t>(N));
                            for (int x = 1; x <= N && ok; ++x) {
                                R v = f.eval(rep.energy, rep.u + R(x));
                                if (!detail::phi_positive(v)) ok = false;
                                else rep.phi.push_back(std::move(v));
                            }
                            if (!ok) continue;
                            certificate cert = verify_representation(f, rep);
                            if (!cert.pass)
                                throw std::logic_error("enumerate_reps: emitted representation "
                                                       "failed re-verification: " + cert.detail);
                            fam.reps.push_back(std::move(rep));
                        }
                        if (!fam.reps.empty()) out.families.push_back(std::move(fam));
                    }
                }
            }
        }
    }

    // Deduplicate identical (N, E, Phi profile) representations across
    // branches; the first branch in enumeration order keeps the rep.
    for (std::size_t a = 0; a < out.families.size(); ++a) {
        for (std::size_t b = a + 1; b < out.families.size(); ++b) {
            auto& rb = out.families[b].reps;
            std::erase_if(rb, [&](const representation<R>& r) {
                for (const auto& ra : out.families[a].reps) {
                    if (ra.n != r.n) continue;
                    if (!detail::same_value(ra.energy, r.energy, opt.float_match_tol)) continue;
                    bool same = true;
                    for (std::size_t k = 0; same && k < r.phi.size(); ++k)
                        same = detail::same_value(ra.phi[k], r.phi[k], opt.float_match_tol);
                    if (same) {
                        ++out.duplicates_removed;
                        return true;
                    }
                }
                return false;
            });
        }
    }
    std::erase_if(out.families,
                  [](const representation_family<R>& f_) { return f_.reps.empty(); });
    return out;
}

// Energy levels with degeneracies: each admitted representation of dimension
// N+1 contributes one level E with multiplicity N+1; coincident levels from
// distinct representations add.
template <class R>
spectrum_table algebraic_spectrum(const ladder_system<R>& sys, int n_max,
                                  std::optional<double> e_max = std::nullopt,
                                  const enum_options& opt = {}) {
    enumeration_result<R> reps = enumerate_reps(sys, n_max, opt);
    spectrum_table t;
    for (const auto& fam : reps.families)
        for (const auto& rep : fam.reps) {
            spectrum_row row;
            row.energy = to_double(rep.energy);
            row.multiplicity = rep.dimension();
            row.origin = provenance::algebraic;
            row.label = fam.branch.id() + ":N" + std::to_string(rep.n);
            if (!e_max || row.energy <= *e_max + 1e-12 * std::max(1.0, std::abs(*e_max)))
                t.rows.push_back(std::move(row));
        }
    t.merge(is_exact_v<R> ? 0.0 : opt.float_match_tol);
    return t;
}

}  // namespace polysym

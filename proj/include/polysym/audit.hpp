#pragma once

// Printed-form audit: recompute every published closed-form ingredient of the
// shipped models (transfer polynomials, structure-function factors, lowest-
// weight parameters, energy formulas) from the engine's own factorization
// data, and classify each discrepancy.
//
// Classification is structural, not hand-assigned: an item carries the engine
// and printed values as component vectors, and the verdict is
//   none            all components equal,
//   uniform_scale   one multiplicative factor explains every component,
//   constant_offset one additive shift explains every component,
//   structural      neither.
// Scale is tested before offset, so a scalar item that fits both reports the
// multiplicative reading.

#include "polysym/models/caged.hpp"
#include "polysym/models/painleve.hpp"
#include "polysym/oscalg.hpp"

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

namespace polysym {

enum class audit_class { none, constant_offset, uniform_scale, structural };

inline const char* audit_class_name(audit_class c) {
    switch (c) {
        case audit_class::none: return "none";
        case audit_class::constant_offset: return "constant_offset";
        case audit_class::uniform_scale: return "uniform_scale";
        case audit_class::structural: return "structural";
    }
    return "?";
}

struct audit_item {
    std::string id;
    std::vector<double> engine;
    std::vector<double> printed;
    audit_class verdict = audit_class::structural;
    double scale = 1.0;   // printed = scale * engine   (uniform_scale)
    double offset = 0.0;  // printed = engine + offset  (constant_offset)
    std::string note;
};

struct audit_report {
    std::string model;
    std::string params_echo;
    std::vector<audit_item> items;

    int discrepancies() const {
        int n = 0;
        for (const auto& it : items)
            if (it.verdict != audit_class::none) ++n;
        return n;
    }
    const audit_item* find(const std::string& id) const {
        for (const auto& it : items)
            if (it.id == id) return &it;
        return nullptr;
    }
};

namespace detail {

inline bool close(double a, double b, double tol = 1e-11) {
    return std::fabs(a - b) <= tol * std::max({1.0, std::fabs(a), std::fabs(b)});
}

}  // namespace detail

inline audit_item classify_item(std::string id, std::vector<double> engine,
                                std::vector<double> printed, std::string note = "") {
    audit_item it;
    it.id = std::move(id);
    it.engine = std::move(engine);
    it.printed = std::move(printed);
    it.note = std::move(note);
    if (it.engine.size() != it.printed.size() || it.engine.empty()) {
        it.verdict = audit_class::structural;
        it.note += (it.note.empty() ? "" : "; ") + std::string("component count mismatch");
        return it;
    }

    bool all_equal = true;
    for (std::size_t k = 0; k < it.engine.size(); ++k)
        all_equal = all_equal && detail::close(it.engine[k], it.printed[k]);
    if (all_equal) {
        it.verdict = audit_class::none;
        return it;
    }

    // Multiplicative reading: a single ratio across nonzero components, zeros
    // matching zeros.
    double ratio = 0.0;
    bool ratio_ok = true, ratio_set = false;
    for (std::size_t k = 0; k < it.engine.size() && ratio_ok; ++k) {
        bool ez = detail::close(it.engine[k], 0.0), pz = detail::close(it.printed[k], 0.0);
        if (ez != pz) ratio_ok = false;
        if (ez) continue;
        double r = it.printed[k] / it.engine[k];
        if (!ratio_set) {
            ratio = r;
            ratio_set = true;
        } else if (!detail::close(r, ratio)) {
            ratio_ok = false;
        }
    }
    if (ratio_ok && ratio_set) {
        it.verdict = audit_class::uniform_scale;
        it.scale = ratio;
        return it;
    }

    double shift = it.printed[0] - it.engine[0];
    bool shift_ok = true;
    for (std::size_t k = 1; k < it.engine.size() && shift_ok; ++k)
        shift_ok = detail::close(it.printed[k] - it.engine[k], shift);
    if (shift_ok) {
        it.verdict = audit_class::constant_offset;
        it.offset = shift;
        return it;
    }
    it.verdict = audit_class::structural;
    return it;
}

namespace detail {

// Locate the factor for (side, ladder index, root) in a factorization.
template <class R>
const phi_factor<R>* find_factor(const phi_factorization<R>& ph, factor_side side, int index,
                                 double root) {
    for (const auto& f : ph.factors)
        if (f.side == side && f.index == index && f.root_imag == 0.0 &&
            close(to_double(f.root), root, 1e-9))
            return &f;
    return nullptr;
}

// E(N) solved from a chosen Q-side factor (zero at x = 0) and S-side factor
// (zero at x = N+1); independent of the representation solver's formulas.
template <class R>
double energy_from_factors(const phi_factor<R>& fq, const phi_factor<R>& fs, int n_levels) {
    double qe = to_double(fq.offset_e), qc = to_double(fq.offset_const);
    double se = to_double(fs.offset_e), sc = to_double(fs.offset_const);
    return (n_levels + 1 - qc - sc) / (qe + se);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Caged-oscillator audit.
// ---------------------------------------------------------------------------

inline audit_report audit_caged(const models::caged_params& p) {
    using models::axis;
    audit_report rep;
    rep.model = "caged";
    {
        std::ostringstream s;
        s << "kx=" << p.kx << " ky=" << p.ky << " omega=" << p.omega << " l1=" << p.l1
          << " l2=" << p.l2 << " hbar=" << p.hbar;
        rep.params_echo = s.str();
    }

    const ladder_system<double> sys = models::caged_system_double(p, models::q_source::derived);
    const phi_factorization<double> ph = phi_factors(sys);
    const int m = sys.m, n = sys.n;
    const double hw = to_double(p.hbar * p.omega);
    const double nu1 = std::sqrt(to_double(models::caged_nu_squared(p, axis::x)));
    const double nu2 = std::sqrt(to_double(models::caged_nu_squared(p, axis::y)));

    // Transfer polynomials, derived vs printed, coefficient by coefficient.
    for (int a = 0; a < 2; ++a) {
        polynomial<Rational> der = models::caged_derived_q(p, a == 0 ? axis::x : axis::y);
        polynomial<Rational> pri = models::caged_printed_q(p, a == 0 ? axis::x : axis::y);
        std::vector<double> de, pr;
        for (int k = 0; k <= std::max(der.degree(), pri.degree()); ++k) {
            de.push_back(to_double(der[k]));
            pr.push_back(to_double(pri[k]));
        }
        rep.items.push_back(classify_item(a == 0 ? "transfer.q" : "transfer.s", de, pr,
                                          "operator-derived vs published coefficients"));
    }

    // Structure-function prefactor: engine constant vs published m^2 n^2.
    rep.items.push_back(classify_item("phi.prefactor", {ph.constant},
                                      {static_cast<double>(m) * m * n * n},
                                      "overall constant of the factored structure function"));

    auto side_roots = [&](const std::vector<double>& roots) {
        double lo = *std::min_element(roots.begin(), roots.end());
        double hi = *std::max_element(roots.begin(), roots.end());
        return std::pair<double, double>{lo, hi};
    };
    auto [q_lo, q_hi] = side_roots(sys.q_real_roots);
    auto [s_lo, s_hi] = side_roots(sys.s_real_roots);

    // Per-index affine offsets, split into the nu-independent base (mean over
    // the root pair) and the nu coefficient (half-difference).
    auto offset_items = [&](factor_side side, int count, double lo, double hi, double nu,
                            const std::string& tag) {
        std::vector<double> base_e, base_p, nu_e, nu_p;
        for (int i = 1; i <= count; ++i) {
            const auto* f_lo = detail::find_factor(ph, side, i, lo);
            const auto* f_hi = detail::find_factor(ph, side, i, hi);
            if (!f_lo || !f_hi) continue;
            base_e.push_back(0.5 * (to_double(f_lo->offset_const) + to_double(f_hi->offset_const)));
            nu_e.push_back(0.5 * (to_double(f_lo->offset_const) - to_double(f_hi->offset_const)));
            if (side == factor_side::q_side)
                base_p.push_back(-1.0 + static_cast<double>(i) / count - 0.5 / count);
            else
                base_p.push_back(static_cast<double>(i) / count - 0.5 / count);
            nu_p.push_back(nu / (2.0 * count));
        }
        rep.items.push_back(classify_item("phi." + tag + ".base_offsets", base_e, base_p,
                                          "nu-independent part of the factor offsets"));
        rep.items.push_back(classify_item("phi." + tag + ".nu_coefficients", nu_e, nu_p,
                                          "coefficient of nu in the factor offsets"));
    };
    offset_items(factor_side::q_side, m, q_lo, q_hi, nu1, "q_side");
    offset_items(factor_side::s_side, n, s_lo, s_hi, nu2, "s_side");

    // Lowest-weight parameter u on the ground branch (p = 1, root q_hi).
    const auto* uq_hi = detail::find_factor(ph, factor_side::q_side, 1, q_hi);
    const auto* uq_lo = detail::find_factor(ph, factor_side::q_side, 1, q_lo);
    if (uq_hi && uq_lo) {
        double lam2 = 4.0 * m * n * hw;  // printed E-denominator 4 m k hbar w == 2*lambda
        rep.items.push_back(classify_item("lowest_weight.u.e_coefficient",
                                          {-to_double(uq_hi->offset_e)}, {-1.0 / lam2}));
        double base_eng = -0.5 * (to_double(uq_hi->offset_const) + to_double(uq_lo->offset_const));
        double base_pri = (m - 1.0) / m + 0.5 / m;
        rep.items.push_back(classify_item("lowest_weight.u.base", {base_eng}, {base_pri},
                                          "nu-independent part on the p = 1 branch"));
        double nu_eng = -0.5 * (to_double(uq_hi->offset_const) - to_double(uq_lo->offset_const));
        rep.items.push_back(classify_item("lowest_weight.u.nu_coefficient", {nu_eng},
                                          {nu1 / (2.0 * m)},
                                          "coefficient of nu1 in u (eps1 = +1 branch)"));
    }

    // Energy ladder on the ground branch: engine values from the factor
    // boundary solve; printed from the published closed form.
    const auto* fs_hi = detail::find_factor(ph, factor_side::s_side, 1, s_hi);
    const auto* fs_lo = detail::find_factor(ph, factor_side::s_side, 1, s_lo);
    if (uq_hi && uq_lo && fs_hi && fs_lo) {
        auto printed_e = [&](double e1nu1, double e2nu2, int N) {
            return 2.0 * m * n * hw *
                   (N + 2 + (1 - 2.0 + e1nu1) / (2 * m) + (1 - 2.0 + e2nu2) / (2 * n));
        };
        rep.items.push_back(classify_item(
            "energy.n_coefficient",
            {detail::energy_from_factors(*uq_hi, *fs_hi, 1) -
             detail::energy_from_factors(*uq_hi, *fs_hi, 0)},
            {2.0 * m * n * hw}));
        double nu1_eng = 0.5 * (detail::energy_from_factors(*uq_hi, *fs_hi, 0) -
                                detail::energy_from_factors(*uq_lo, *fs_hi, 0));
        double nu2_eng = 0.5 * (detail::energy_from_factors(*uq_hi, *fs_hi, 0) -
                                detail::energy_from_factors(*uq_hi, *fs_lo, 0));
        double nu1_pri = 0.5 * (printed_e(nu1, nu2, 0) - printed_e(-nu1, nu2, 0));
        double nu2_pri = 0.5 * (printed_e(nu1, nu2, 0) - printed_e(nu1, -nu2, 0));
        rep.items.push_back(classify_item("energy.nu_coefficients", {nu1_eng, nu2_eng},
                                          {nu1_pri, nu2_pri},
                                          "half-difference of E across each root pair"));
        double base_eng = 0.25 * (detail::energy_from_factors(*uq_hi, *fs_hi, 0) +
                                  detail::energy_from_factors(*uq_lo, *fs_hi, 0) +
                                  detail::energy_from_factors(*uq_hi, *fs_lo, 0) +
                                  detail::energy_from_factors(*uq_lo, *fs_lo, 0));
        double base_pri = 0.25 * (printed_e(nu1, nu2, 0) + printed_e(-nu1, nu2, 0) +
                                  printed_e(nu1, -nu2, 0) + printed_e(-nu1, -nu2, 0));
        rep.items.push_back(classify_item("energy.base", {base_eng}, {base_pri},
                                          "nu-independent part of E at N = 0, p = q = 1"));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Painleve-system audit.
// ---------------------------------------------------------------------------

inline audit_report audit_painleve(const models::painleve_params& p) {
    audit_report rep;
    rep.model = "painleve";
    {
        std::ostringstream s;
        s << "omega1=" << p.omega1 << " omega2=" << p.omega2 << " m=" << p.m << " n=" << p.n
          << " alpha1=" << p.alpha1 << " beta1=" << p.beta1 << " alpha2=" << p.alpha2
          << " beta2=" << p.beta2 << " eps1=" << p.eps1 << " eps2=" << p.eps2
          << " hbar=" << p.hbar;
        rep.params_echo = s.str();
    }

    const ladder_system<double> sys = models::painleve_system_double(p);
    const phi_factorization<double> ph = phi_factors(sys);
    const double hb = to_double(p.hbar);
    const double w1 = to_double(p.omega1), w2 = to_double(p.omega2);
    const int m = p.m, n = p.n;

    // gamma_c = root / (m lambda_x) on the Q side, root / (n lambda_y) on S.
    auto gamma_eng = [&](int a, double root) {
        return a == 1 ? root / (m * hb * w1) : root / (n * hb * w2);
    };
    auto bracket = [&](double alpha, double eps, double pm3_sqrt2beta) {
        return -6.0 + 2.0 * alpha + pm3_sqrt2beta + 16.0 * eps;
    };

    for (int a = 1; a <= 2; ++a) {
        double alpha = to_double(a == 1 ? p.alpha1 : p.alpha2);
        double beta = to_double(a == 1 ? p.beta1 : p.beta2);
        double eps = a == 1 ? p.eps1 : p.eps2;
        int count = a == 1 ? m : n;
        double r1 = to_double(models::painleve_linear_root(p, a));
        double c = to_double(models::painleve_quadratic_center(p, a));
        std::string tag = a == 1 ? "gamma.x" : "gamma.y";

        if (a == 1) {
            rep.items.push_back(classify_item("gamma.1", {gamma_eng(1, r1)},
                                              {-(alpha - eps - 3.0) / (3.0 * m)}));
        } else {
            rep.items.push_back(classify_item("gamma.4", {gamma_eng(2, r1)},
                                              {(alpha - eps - 3.0) / (3.0 * n)},
                                              "sign convention of the linear-root gamma"));
        }
        if (beta <= 0) {
            double wth = hb * (a == 1 ? w1 : w2) * std::sqrt(-2.0 * beta) / 4.0;
            // -3i sqrt(2 beta) = -3 sqrt(-2 beta) for beta < 0: the printed
            // "minus" branch is the lower root, the "plus" branch the upper.
            std::vector<double> eng{gamma_eng(a, c + wth), gamma_eng(a, c - wth)};
            std::vector<double> pri{
                hb * w1 / (12.0 * count) * bracket(alpha, eps, 3.0 * std::sqrt(-2.0 * beta)),
                hb * w1 / (12.0 * count) * bracket(alpha, eps, -3.0 * std::sqrt(-2.0 * beta))};
            rep.items.push_back(classify_item(tag + ".quadratic_pair", eng, pri,
                                              "gamma pair from the quadratic factor"));
        }
    }

    // Structure-function prefactor: engine vs the printed (w~^6 hbar^6)^m.
    double printed_pref = std::pow(std::pow(hb * w1, 6.0) * std::pow(hb, 6.0), m);
    rep.items.push_back(classify_item("phi.prefactor", {ph.constant}, {printed_pref},
                                      "overall constant of the factored structure function"));

    // Lowest-weight u on the linear-root branch (u1 solution, p = 1).
    double r1x = to_double(models::painleve_linear_root(p, 1));
    double r1y = to_double(models::painleve_linear_root(p, 2));
    const auto* fq = detail::find_factor(ph, factor_side::q_side, 1, r1x);
    const auto* fs = detail::find_factor(ph, factor_side::s_side, 1, r1y);
    if (fq && fs) {
        double wt = hb * w1;  // printed omega-tilde
        double g1_pri = -(to_double(p.alpha1) - p.eps1 - 3.0) / (3.0 * m);
        double g4_pri = (to_double(p.alpha2) - p.eps2 - 3.0) / (3.0 * n);
        rep.items.push_back(classify_item(
            "lowest_weight.u1",
            {-to_double(fq->offset_e), -to_double(fq->offset_const)},
            {-1.0 / (2.0 * hb * wt), 1.0 - 1.0 / m + g1_pri},
            "E-coefficient and constant of u on the gamma1 branch"));
        std::vector<double> e_eng, e_pri;
        for (int N = 0; N <= 3; ++N) {
            e_eng.push_back(detail::energy_from_factors(*fq, *fs, N));
            e_pri.push_back(hb * wt * (N + 2.0 - 1.0 / m - 1.0 / n + g1_pri + g4_pri));
        }
        rep.items.push_back(classify_item("energy.levels_u1", e_eng, e_pri,
                                          "E at N = 0..3 on the gamma1/gamma4 branch, p = q = 1"));
    }
    return rep;
}

// Self-consistency control: engine compared against itself on a minimal
// system; every item must classify as `none`.
inline audit_report audit_toy() {
    audit_report rep;
    rep.model = "toy";
    rep.params_echo = "Q = S = z, lambda = 1";
    ladder_system<Rational> sys;
    sys.q_poly = polynomial<Rational>{0, 1};
    sys.s_poly = polynomial<Rational>{0, 1};
    sys.lambda_x = 1;
    sys.lambda_y = 1;
    sys.m = 1;
    sys.n = 1;
    sys.hbar = 1;
    sys.label = "toy";
    sys.q_real_roots = {0};
    sys.s_real_roots = {0};
    sys.q_ground_roots = {0};
    sys.s_ground_roots = {0};
    sys = make_ladder_system(std::move(sys));
    phi_factorization<Rational> ph = phi_factors(sys);

    rep.items.push_back(classify_item("phi.prefactor", {to_double(ph.constant)},
                                      {to_double(ph.constant)}));
    std::vector<double> eng, pri;
    for (const auto& f : ph.factors) {
        eng.push_back(to_double(f.offset_const));
        pri.push_back(to_double(f.offset_const));
        eng.push_back(to_double(f.offset_e));
        pri.push_back(to_double(f.offset_e));
    }
    rep.items.push_back(classify_item("phi.offsets", eng, pri));
    return rep;
}

// Entry points named for what they audit; one overload per model family.
inline audit_report audit_printed_forms(const models::caged_params& p) { return audit_caged(p); }
inline audit_report audit_printed_forms(const models::painleve_params& p) {
    return audit_painleve(p);
}

}  // namespace polysym

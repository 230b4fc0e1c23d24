#pragma once

// Adaptive integration of the fourth Painleve equation
//
//   f'' = f'^2/(2f) + (3/2) f^3 + 4 z f^2 + 2 (z^2 - alpha) f + beta / f,
//
// with embedded Cash-Karp 4(5) stepping.  Step acceptance is error-per-unit-
// step (err <= tol * |h|), so on stable stretches the accumulated deviation
// scales linearly in tol.  Caveat: linearizing around a solution gives
// delta'' ~ (d rhs/d f) delta, and d rhs/d f grows like 4 z^2 at large |z|,
// so perturbations off some branches are amplified by ~exp(z^2 - z0^2).
// Deviations committed early then compound regardless of tol (the usual
// shadowing limit of one-step methods); tracking an unstable branch to a
// tight target needs a tightened tol and a bounded window.  Note the sample
// cap max_sample_dz dominates step selection at loose tolerances, so two
// runs whose tolerances never bind produce identical trajectories.
//
// Solutions have movable simple poles with residue +-1.  The integrator
// detects blow-up against a threshold, estimates the pole position z0 from
// the 1/(z - z0) asymptote (z0 ~= z + f/f') at the last error-controlled
// sample, and can optionally resume on the far side with the pole-ansatz
// initial data.  Resumed stretches are approximate and flagged.
//
// Every accepted sample gets an ODE-residual audit: f'' is re-estimated by a
// five-point derivative of f' over short fixed-step RK4 excursions seeded at
// the sample, then compared against the right-hand side.  The finite-
// difference spacing adapts to the local scale length |f/f'| so the check
// stays meaningful when poles are near.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace polysym {

struct p4_options {
    double tol = 1e-9;             // error-per-unit-step target
    double pole_threshold = 1e6;   // |f| beyond this counts as blown up
    double max_sample_dz = 0.01;   // cap on accepted step size (sampling density)
    bool continue_past_poles = false;
    int max_steps = 2000000;
};

struct p4_sample {
    double z = 0.0, f = 0.0, fp = 0.0;
    double residual = 0.0;  // relative ODE residual at this sample
};

struct p4_pole {
    double z_approach = 0.0;  // last trusted sample before blow-up
    double z_estimate = 0.0;  // pole location from the simple-pole asymptote
    double z_resume = 0.0;    // restart point (== z_estimate when not resumed)
    int residue = 0;          // +1 or -1
    bool resumed = false;
};

struct p4_trajectory {
    double alpha = 0.0, beta = 0.0;
    std::vector<p4_sample> samples;
    std::vector<p4_pole> poles;
    double max_residual = 0.0;
    bool completed = false;  // reached the far end of the range
    int restarts = 0;

    // Hermite interpolation of f between samples; throws inside pole gaps.
    double f_at(double z) const { return interp(z).first; }
    double fp_at(double z) const { return interp(z).second; }

    std::pair<double, double> interp(double z) const {
        if (samples.size() < 2) throw std::runtime_error("p4: trajectory too short");
        const bool fwd = samples.back().z >= samples.front().z;
        auto inside = [&](double a, double b) {
            return fwd ? (a <= z && z <= b) : (b <= z && z <= a);
        };
        if (!inside(samples.front().z, samples.back().z))
            throw std::runtime_error("p4: z outside integrated range");
        for (const auto& p : poles) {
            double lo = std::min(p.z_approach, p.z_resume);
            double hi = std::max(p.z_approach, p.z_resume);
            if (lo < z && z < hi)
                throw std::runtime_error("p4: z = " + std::to_string(z) +
                                         " falls in pole gap near z0 = " +
                                         std::to_string(p.z_estimate));
        }
        std::size_t i = 0;
        for (; i + 2 < samples.size(); ++i)
            if (inside(samples[i].z, samples[i + 1].z)) break;
        const auto& a = samples[i];
        const auto& b = samples[i + 1];
        double hseg = b.z - a.z;
        if (hseg == 0.0) return {a.f, a.fp};
        double t = (z - a.z) / hseg;
        double h00 = (1 + 2 * t) * (1 - t) * (1 - t), h10 = t * (1 - t) * (1 - t);
        double h01 = t * t * (3 - 2 * t), h11 = t * t * (t - 1);
        double f = h00 * a.f + h10 * hseg * a.fp + h01 * b.f + h11 * hseg * b.fp;
        // Derivative of the same cubic.
        double d00 = 6 * t * (t - 1) / hseg, d10 = (1 - t) * (1 - 3 * t);
        double d01 = -6 * t * (t - 1) / hseg, d11 = t * (3 * t - 2);
        double fp = d00 * a.f + d10 * a.fp + d01 * b.f + d11 * b.fp;
        return {f, fp};
    }
};

namespace p4detail {

struct state {
    double f, fp;
};

inline double rhs_fpp(double alpha, double beta, double z, double f, double fp) {
    if (f == 0.0 || !std::isfinite(f))
        throw std::runtime_error("p4: f vanished or blew up inside a derivative evaluation");
    return fp * fp / (2 * f) + 1.5 * f * f * f + 4 * z * f * f + 2 * (z * z - alpha) * f +
           beta / f;
}

// Magnitude scale of the right-hand side, cancellation-aware (sum of |terms|).
inline double rhs_scale(double alpha, double beta, double z, double f, double fp) {
    return std::fabs(fp * fp / (2 * f)) + std::fabs(1.5 * f * f * f) +
           std::fabs(4 * z * f * f) + std::fabs(2 * (z * z - alpha) * f) +
           std::fabs(beta / f) + 1.0;
}

inline state deriv(double alpha, double beta, double z, const state& y) {
    return {y.fp, rhs_fpp(alpha, beta, z, y.f, y.fp)};
}

// One classic RK4 step (used for bisection refinement and residual probes).
inline state rk4_step(double alpha, double beta, double z, state y, double h) {
    state k1 = deriv(alpha, beta, z, y);
    state k2 = deriv(alpha, beta, z + h / 2, {y.f + h / 2 * k1.f, y.fp + h / 2 * k1.fp});
    state k3 = deriv(alpha, beta, z + h / 2, {y.f + h / 2 * k2.f, y.fp + h / 2 * k2.fp});
    state k4 = deriv(alpha, beta, z + h, {y.f + h * k3.f, y.fp + h * k3.fp});
    return {y.f + h / 6 * (k1.f + 2 * k2.f + 2 * k3.f + k4.f),
            y.fp + h / 6 * (k1.fp + 2 * k2.fp + 2 * k3.fp + k4.fp)};
}

inline state rk4_travel(double alpha, double beta, double z_from, state y, double z_to,
                        int substeps) {
    double h = (z_to - z_from) / substeps;
    for (int i = 0; i < substeps; ++i) y = rk4_step(alpha, beta, z_from + i * h, y, h);
    return y;
}

// Cash-Karp tableau: 5th-order advance with embedded 4th-order error estimate.
struct ck_result {
    state y5;
    double err_f, err_fp;
};

inline ck_result cash_karp(double alpha, double beta, double z, const state& y, double h) {
    static constexpr double a2 = 0.2, a3 = 0.3, a4 = 0.6, a5 = 1.0, a6 = 0.875;
    static constexpr double b21 = 0.2;
    static constexpr double b31 = 3.0 / 40, b32 = 9.0 / 40;
    static constexpr double b41 = 0.3, b42 = -0.9, b43 = 1.2;
    static constexpr double b51 = -11.0 / 54, b52 = 2.5, b53 = -70.0 / 27, b54 = 35.0 / 27;
    static constexpr double b61 = 1631.0 / 55296, b62 = 175.0 / 512, b63 = 575.0 / 13824,
                            b64 = 44275.0 / 110592, b65 = 253.0 / 4096;
    static constexpr double c1 = 37.0 / 378, c3 = 250.0 / 621, c4 = 125.0 / 594,
                            c6 = 512.0 / 1771;
    static constexpr double d1 = c1 - 2825.0 / 27648, d3 = c3 - 18575.0 / 48384,
                            d4 = c4 - 13525.0 / 55296, d5 = -277.0 / 14336,
                            d6 = c6 - 0.25;

    state k1 = deriv(alpha, beta, z, y);
    state k2 = deriv(alpha, beta, z + a2 * h, {y.f + h * b21 * k1.f, y.fp + h * b21 * k1.fp});
    state k3 = deriv(alpha, beta, z + a3 * h,
                     {y.f + h * (b31 * k1.f + b32 * k2.f), y.fp + h * (b31 * k1.fp + b32 * k2.fp)});
    state k4 = deriv(alpha, beta, z + a4 * h,
                     {y.f + h * (b41 * k1.f + b42 * k2.f + b43 * k3.f),
                      y.fp + h * (b41 * k1.fp + b42 * k2.fp + b43 * k3.fp)});
    state k5 = deriv(alpha, beta, z + a5 * h,
                     {y.f + h * (b51 * k1.f + b52 * k2.f + b53 * k3.f + b54 * k4.f),
                      y.fp + h * (b51 * k1.fp + b52 * k2.fp + b53 * k3.fp + b54 * k4.fp)});
    state k6 = deriv(alpha, beta, z + a6 * h,
                     {y.f + h * (b61 * k1.f + b62 * k2.f + b63 * k3.f + b64 * k4.f + b65 * k5.f),
                      y.fp + h * (b61 * k1.fp + b62 * k2.fp + b63 * k3.fp + b64 * k4.fp +
                                  b65 * k5.fp)});

    ck_result r;
    r.y5 = {y.f + h * (c1 * k1.f + c3 * k3.f + c4 * k4.f + c6 * k6.f),
            y.fp + h * (c1 * k1.fp + c3 * k3.fp + c4 * k4.fp + c6 * k6.fp)};
    r.err_f = h * (d1 * k1.f + d3 * k3.f + d4 * k4.f + d5 * k5.f + d6 * k6.f);
    r.err_fp = h * (d1 * k1.fp + d3 * k3.fp + d4 * k4.fp + d5 * k5.fp + d6 * k6.fp);
    return r;
}

// Relative ODE residual at a sample: five-point finite difference of f' over
// RK4 excursions to z +- h_fd, +-2 h_fd, compared with the right-hand side.
// For a simple pole f ~ rho/(z - z0) the scale length |f/f'| equals the
// distance to the pole, so capping h_fd at a tenth of it keeps the widest
// excursion (2 h_fd) safely on this side of the pole.
inline double sample_residual(double alpha, double beta, double z, const state& y) {
    double scale_len = std::fabs(y.f) / std::max(std::fabs(y.fp), 1e-12);
    double h = std::clamp(0.003 * std::max(scale_len, 1e-5), 1e-6, 1e-3);
    h = std::min(h, std::max(0.1 * scale_len, 1e-9));
    auto fp_at = [&](double dz) { return rk4_travel(alpha, beta, z, y, z + dz, 8).fp; };
    double rhs = rhs_fpp(alpha, beta, z, y.f, y.fp);
    for (int attempt = 0; attempt < 3; ++attempt, h /= 32) {
        try {
            double fd = (-fp_at(2 * h) + 8 * fp_at(h) - 8 * fp_at(-h) + fp_at(-2 * h)) / (12 * h);
            return std::fabs(fd - rhs) / rhs_scale(alpha, beta, z, y.f, y.fp);
        } catch (const std::runtime_error&) {
            // Excursion crossed a pole despite the cap; shrink and retry.
        }
    }
    throw std::runtime_error("p4: residual probe could not avoid a nearby pole");
}

}  // namespace p4detail

inline p4_trajectory integrate_p4(double alpha, double beta, double z0, double f0, double fp0,
                                  double z_end, const p4_options& opt = {}) {
    if (f0 == 0.0)
        throw std::invalid_argument("integrate_p4: f(z0) = 0 is a singular initial condition");
    if (!(opt.tol > 0) || !(opt.pole_threshold > 1) || !(opt.max_sample_dz > 0))
        throw std::invalid_argument("integrate_p4: bad options");
    if (z_end == z0) throw std::invalid_argument("integrate_p4: empty range");

    const double dir = z_end > z0 ? 1.0 : -1.0;
    p4_trajectory traj;
    traj.alpha = alpha;
    traj.beta = beta;

    double z = z0;
    p4detail::state y{f0, fp0};
    auto record = [&](double res) {
        traj.samples.push_back({z, y.f, y.fp, res});
        traj.max_residual = std::max(traj.max_residual, res);
    };
    record(p4detail::sample_residual(alpha, beta, z, y));

    double h = dir * std::min(opt.max_sample_dz, std::fabs(z_end - z0) / 16);
    int steps = 0;

    while (dir * (z_end - z) > 1e-14) {
        if (++steps > opt.max_steps) throw std::runtime_error("integrate_p4: step budget exhausted");
        if (std::fabs(h) > opt.max_sample_dz) h = dir * opt.max_sample_dz;
        if (dir * (z + h - z_end) > 0) h = z_end - z;

        bool blew_up = false;
        p4detail::ck_result step{};
        try {
            step = p4detail::cash_karp(alpha, beta, z, y, h);
            blew_up = !std::isfinite(step.y5.f) || std::fabs(step.y5.f) >= opt.pole_threshold;
        } catch (const std::runtime_error&) {
            blew_up = true;  // derivative evaluation hit the pole mid-stage
        }

        if (!blew_up) {
            double s_f = std::max({1.0, std::fabs(y.f), std::fabs(step.y5.f)});
            double s_fp = std::max({1.0, std::fabs(y.fp), std::fabs(step.y5.fp)});
            double err = std::max(std::fabs(step.err_f) / s_f, std::fabs(step.err_fp) / s_fp);
            double budget = opt.tol * std::fabs(h);
            if (err <= budget) {
                z += h;
                y = step.y5;
                record(p4detail::sample_residual(alpha, beta, z, y));
                double grow = err > 0 ? 0.9 * std::pow(budget / err, 0.2) : 5.0;
                h *= std::clamp(grow, 0.2, 5.0);
                continue;
            }
            h *= std::clamp(0.9 * std::pow(budget / err, 0.25), 0.1, 0.9);
            if (std::fabs(h) > 1e-13) continue;
            blew_up = true;  // step collapse without explicit threshold crossing
        }

        // --- pole handling -------------------------------------------------
        // Estimate the pole from the last error-controlled sample: a simple
        // pole f ~ rho/(z - z0) gives z0 = z + f/f', biased only by the
        // regular part of the Laurent series, O(|z - z0|^2).  The adaptive
        // approach leaves that sample within ~rho/pole_threshold of the pole,
        // so the asymptote there is far more accurate than any state obtained
        // by fixed-step probing into the stiff near-pole zone.
        p4_pole pole;
        pole.z_approach = z;
        double z0_est = z + (y.fp != 0.0 ? y.f / y.fp : dir * 1e-6);
        if (dir * (z0_est - z) <= 0) z0_est = z + dir * 1e-9;
        pole.z_estimate = z0_est;
        pole.residue = (y.f > 0) == (z > z0_est) ? 1 : -1;
        pole.z_resume = z0_est;

        if (!opt.continue_past_poles || dir * (z_end - z0_est) <= 0) {
            traj.poles.push_back(pole);
            traj.completed = false;
            return traj;
        }

        // Resume offset: the restart data inherit a relative error of
        // |pole-estimate error| / delta, which the near-pole instability then
        // amplifies, while the pure-pole ansatz itself degrades linearly in
        // delta (neglected regular Laurent terms).  1e-3 balances the two at
        // the default tolerance.
        double delta = std::max(1e-3, 2 * std::fabs(z0_est - z));
        double z_res = z0_est + dir * delta;
        if (dir * (z_end - z_res) <= 0) {
            traj.poles.push_back(pole);
            traj.completed = false;
            return traj;
        }
        pole.z_resume = z_res;
        pole.resumed = true;
        traj.poles.push_back(pole);
        ++traj.restarts;
        z = z_res;
        y.f = pole.residue / (z_res - z0_est);
        y.fp = -pole.residue / ((z_res - z0_est) * (z_res - z0_est));
        record(p4detail::sample_residual(alpha, beta, z, y));
        h = dir * std::min(opt.max_sample_dz, delta / 4);
    }

    traj.completed = true;
    return traj;
}

}  // namespace polysym

#pragma once

// Deformed-oscillator realization of the crossed integrals.
//
// With I+ = (A_x^+)^m (A_y)^n, I- its adjoint, and A = (H_x - H_y)/(2*lambda),
// the pair (I-, I+) acts as a deformed oscillator with structure function
//
//   F(H, A) = prod_{i=1..m} Q(H/2 + m*lambda_x*A - (m-i)*lambda_x)
//           * prod_{j=1..n} S(H/2 - n*lambda_y*A + j*lambda_y),
//
// and the ladder commutator [I-, I+] equals F(H, A+1) - F(H, A) as a
// polynomial identity in the two commuting symbols.  build_F and
// commutator_poly construct the two sides through independent expansions, so
// certify_difference_form is a machine check of the identity rather than a
// tautology.

#include "polysym/bivariate.hpp"
#include "polysym/diffop.hpp"
#include "polysym/ladder_system.hpp"

#include <complex>
#include <vector>

namespace polysym {

template <class R>
bivariate<R> build_f(const ladder_system<R>& sys) {
    const R half = scalar_traits<R>::one() / R(2);
    const R mlx = sys.lambda_x * R(sys.m);
    const R nly = sys.lambda_y * R(sys.n);
    bivariate<R> f = bivariate<R>::constant(scalar_traits<R>::one());
    for (int i = 1; i <= sys.m; ++i)
        f = f * compose_affine(sys.q_poly, R(-sys.lambda_x * R(sys.m - i)), half, mlx);
    for (int j = 1; j <= sys.n; ++j)
        f = f * compose_affine(sys.s_poly, R(sys.lambda_y * R(j)), half, R(-nly));
    return f;
}

// [I-, I+] from its own product expansion (ladder indices shifted one rung up
// on the Q side, one rung down on the S side), minus F(H, A).
template <class R>
bivariate<R> commutator_poly(const ladder_system<R>& sys) {
    const R half = scalar_traits<R>::one() / R(2);
    const R mlx = sys.lambda_x * R(sys.m);
    const R nly = sys.lambda_y * R(sys.n);
    bivariate<R> up = bivariate<R>::constant(scalar_traits<R>::one());
    for (int l = 1; l <= sys.m; ++l)
        up = up * compose_affine(sys.q_poly, R(sys.lambda_x * R(l)), half, mlx);
    for (int k = 1; k <= sys.n; ++k)
        up = up * compose_affine(sys.s_poly, R(-sys.lambda_y * R(sys.n - k)), half, R(-nly));
    return up - build_f(sys);
}

template <class R>
certificate certify_difference_form(const ladder_system<R>& sys) {
    bivariate<R> f = build_f(sys);
    bivariate<R> lhs = commutator_poly(sys);
    bivariate<R> rhs = f.shifted_a() - f;
    bivariate<R> defect = lhs - rhs;
    certificate c;
    c.residual_norm = defect.inf_norm();
    if constexpr (is_exact_v<R>) {
        c.pass = defect.is_zero();
        c.detail = c.pass ? "[I-,I+] == F(H,A+1) - F(H,A) exactly"
                          : "difference-form identity violated in exact arithmetic";
    } else {
        double scale = std::max(f.inf_norm(), 1.0);
        c.pass = c.residual_norm <= 1e-9 * scale;
        c.detail = c.pass ? "[I-,I+] == F(H,A+1) - F(H,A) within float tolerance"
                          : "difference-form identity violated beyond float tolerance";
    }
    return c;
}

// ---------------------------------------------------------------------------
// Lowest-weight factorization.  Substituting H -> E and the number-operator
// variable t = x + u turns F into the structure function Phi(x); each root r
// of Q contributes m monic factors
//
//   t + (E/2 - r)/(m*lambda_x) - (m-i)/m,        i = 1..m,
//
// and each root r' of S contributes n factors
//
//   -t + (E/2 - r')/(n*lambda_y) + j/n,          j = 1..n,
//
// with the overall constant lc(Q)^m lc(S)^n (m lx)^{m deg Q} (n ly)^{n deg S}.
// Complex roots (float mode) keep their imaginary part in a separate field;
// conjugate partners appear adjacently and multiply to a real quadratic.
// ---------------------------------------------------------------------------

enum class factor_side { q_side, s_side };

template <class R>
struct phi_factor {
    factor_side side = factor_side::q_side;
    int index = 1;      // ladder index: i on the Q side, j on the S side
    int t_sign = +1;    // +1 on the Q side, -1 on the S side
    R root{};           // real part of the contributing root
    double root_imag = 0.0;
    R offset_e{};       // coefficient of E in the affine offset
    R offset_const{};   // constant part of the affine offset
    double offset_imag = 0.0;  // imaginary offset, nonzero only for complex roots

    // Factor value at energy e and shifted counter t (float view).
    std::complex<double> eval(double e, double t) const {
        return {t_sign * t + to_double(offset_e) * e + to_double(offset_const), offset_imag};
    }
};

template <class R>
struct phi_factorization {
    std::vector<phi_factor<R>> factors;
    R constant{};

    std::complex<double> eval(double e, double t) const {
        std::complex<double> acc = to_double(constant);
        for (const auto& f : factors) acc *= f.eval(e, t);
        return acc;
    }
};

template <class R>
phi_factorization<R> phi_factors(const ladder_system<R>& sys) {
    const R mlx = sys.lambda_x * R(sys.m);
    const R nly = sys.lambda_y * R(sys.n);
    const R one = scalar_traits<R>::one();

    phi_factorization<R> out;
    out.constant = one;
    auto pow_r = [](R base, int k) {
        R acc = scalar_traits<R>::one();
        for (int i = 0; i < k; ++i) acc *= base;
        return acc;
    };
    out.constant = pow_r(sys.q_poly.leading(), sys.m) * pow_r(sys.s_poly.leading(), sys.n) *
                   pow_r(mlx, sys.m * sys.q_poly.degree()) *
                   pow_r(nly, sys.n * sys.s_poly.degree());

    auto push = [&](factor_side side, int count, const R& side_l, const R& re, double im) {
        for (int idx = 1; idx <= count; ++idx) {
            phi_factor<R> f;
            f.side = side;
            f.index = idx;
            f.t_sign = side == factor_side::q_side ? +1 : -1;
            f.root = re;
            f.root_imag = im;
            f.offset_e = one / (R(2) * side_l);
            if (side == factor_side::q_side)
                f.offset_const = -re / side_l - R(count - idx) / R(count);
            else
                f.offset_const = -re / side_l + R(idx) / R(count);
            f.offset_imag = -im / to_double(side_l);
            out.factors.push_back(f);
        }
    };
    for (const R& r : sys.q_real_roots) push(factor_side::q_side, sys.m, mlx, r, 0.0);
    for (const auto& z : sys.q_complex_roots)
        push(factor_side::q_side, sys.m, mlx, R(z.real()), z.imag());
    for (const R& r : sys.s_real_roots) push(factor_side::s_side, sys.n, nly, r, 0.0);
    for (const auto& z : sys.s_complex_roots)
        push(factor_side::s_side, sys.n, nly, R(z.real()), z.imag());
    return out;
}

}  // namespace polysym

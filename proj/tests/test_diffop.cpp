#include "polysym/diffop.hpp"
#include "polysym/models/caged.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace polysym;

namespace {

using Op = diff_operator<Rational>;

Op x_power(int k) { return Op::multiplication(laurent<Rational>::term(k, Rational(1))); }

// Polynomial coefficients only: nested products of singular coefficients can
// exceed the Laurent exponent floor, which is a modeling error, not algebra.
Op random_op(std::mt19937& rng) {
    std::uniform_int_distribution<int> ord(0, 2), exp(0, 2), num(-4, 4), den(1, 3);
    Op a;
    for (int t = 0; t < 3; ++t) {
        Rational c(num(rng), den(rng));
        a = a + Op::term(ord(rng), laurent<Rational>::term(exp(rng), c));
    }
    return a;
}

}  // namespace

TEST_CASE("canonical commutators of x and d/dx") {
    Op d = Op::derivative();
    Op x = x_power(1);

    // [d, x] = 1
    CHECK(commutator(d, x) == Op::identity());
    // [d, x^2] = 2x
    CHECK(commutator(d, x_power(2)) == x * Rational(2));
    // [d^2, x] = 2d
    CHECK(commutator(d * d, x) == d * Rational(2));
    // [d, x^-1] = -x^-2
    CHECK(commutator(d, x_power(-1)) == x_power(-2) * Rational(-1));
    // x and x^-1 commute and multiply to 1
    CHECK(x * x_power(-1) == Op::identity());
    CHECK(commutator(x, x_power(-1)).is_zero());
}

TEST_CASE("operator algebra is associative and distributive") {
    std::mt19937 rng(23);
    for (int t = 0; t < 12; ++t) {
        Op a = random_op(rng), b = random_op(rng), c = random_op(rng);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        // Jacobi identity for the commutator.
        Op jac = commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) +
                 commutator(c, commutator(a, b));
        CHECK(jac.is_zero());
    }
}

TEST_CASE("ladder certification for the caged axis operators") {
    models::caged_params p;
    p.kx = 2;
    p.ky = 1;
    p.omega = Rational(3, 2);
    p.l1 = Rational(1, 2);
    p.l2 = 2;
    p.hbar = Rational(1, 3);

    for (models::axis a : {models::axis::x, models::axis::y}) {
        models::caged_axis_ops ops = models::caged_axis(p, a);

        SECTION(std::string("axis ") + (a == models::axis::x ? "x" : "y")) {
            CHECK(certify_ladder(ops.hamiltonian, ops.raise, ops.lambda).pass);
            CHECK(certify_ladder(ops.hamiltonian, ops.lower, Rational(-ops.lambda)).pass);

            // Wrong spacing must be rejected (negative control).
            CHECK(!certify_ladder(ops.hamiltonian, ops.raise, Rational(ops.lambda * 2)).pass);
            // A non-ladder operator must be rejected.
            CHECK(!certify_ladder(ops.hamiltonian, Op::derivative(), ops.lambda).pass);
        }
    }
}

TEST_CASE("re-expression of operator products as polynomials in H") {
    models::caged_params p;  // defaults: kx = ky = 1, omega = hbar = 1, l = 0
    p.l1 = 1;
    models::caged_axis_ops ops = models::caged_axis(p, models::axis::x);

    SECTION("A+A is a quadratic in H and recomposes exactly") {
        polynomial<Rational> q = express_in_h(ops.raise * ops.lower, ops.hamiltonian, 2);
        CHECK(q.degree() == 2);
        // Recomposition: q(H) as an operator equals the product.
        diff_operator<Rational> acc;
        diff_operator<Rational> hpow = Op::identity();
        for (int k = 0; k <= q.degree(); ++k) {
            acc = acc + hpow * q[k];
            hpow = hpow * ops.hamiltonian;
        }
        CHECK(acc == ops.raise * ops.lower);
    }

    SECTION("[A, A+] re-expressed in H is H/(hbar k omega)") {
        polynomial<Rational> c = express_in_h(commutator(ops.lower, ops.raise), ops.hamiltonian, 1);
        Rational hkw = p.hbar * Rational(p.kx) * p.omega;
        CHECK(c == polynomial<Rational>{Rational(0), 1 / hkw});
    }

    SECTION("operators outside the span are refused with a residual") {
        CHECK_THROWS_AS(express_in_h(Op::derivative(), ops.hamiltonian, 3), not_in_span_error);
    }
}

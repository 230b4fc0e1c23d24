#include "polysym/bivariate.hpp"
#include "polysym/laurent.hpp"
#include "polysym/polynomial.hpp"
#include "polysym/rational.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace polysym;

namespace {

polynomial<Rational> random_poly(std::mt19937& rng, int max_deg) {
    std::uniform_int_distribution<int> deg(0, max_deg), num(-9, 9), den(1, 5);
    polynomial<Rational> p;
    int d = deg(rng);
    for (int k = 0; k <= d; ++k)
        p = p + polynomial<Rational>::monomial(k, Rational(num(rng), den(rng)));
    return p;
}

}  // namespace

TEST_CASE("rational parsing and square roots") {
    CHECK(parse_rational("3") == Rational(3));
    CHECK(parse_rational("-7/2") == Rational(-7, 2));
    CHECK(parse_rational("0.25") == Rational(1, 4));
    CHECK(parse_rational("-1.5") == Rational(-3, 2));
    CHECK_THROWS(parse_rational("abc"));
    CHECK_THROWS(parse_rational("1/0"));

    CHECK(*exact_sqrt(Rational(9, 4)) == Rational(3, 2));
    CHECK(*exact_sqrt(Rational(0)) == Rational(0));
    CHECK(!exact_sqrt(Rational(2)).has_value());
    CHECK(!exact_sqrt(Rational(-1)).has_value());
}

TEST_CASE("polynomial degree, trim, and arithmetic") {
    polynomial<Rational> p{1, 2, 3};  // 1 + 2x + 3x^2
    polynomial<Rational> z{0, 0, 0};
    CHECK(p.degree() == 2);
    CHECK(z.degree() == -1);
    CHECK(z.is_zero());
    CHECK((p - p).is_zero());

    polynomial<Rational> q{-1, 1};  // x - 1
    CHECK((p * q).degree() == 3);
    CHECK((p * q).eval(Rational(2)) == p.eval(Rational(2)) * q.eval(Rational(2)));

    SECTION("ring identities on random polynomials") {
        std::mt19937 rng(7);
        for (int t = 0; t < 25; ++t) {
            auto a = random_poly(rng, 4), b = random_poly(rng, 4), c = random_poly(rng, 3);
            CHECK((a + b) * c == a * c + b * c);
            CHECK(a * b == b * a);
            CHECK((a - a).is_zero());
        }
    }
}

TEST_CASE("Taylor shift and argument scaling") {
    // p(x) = x^3 - 2x + 5 shifted by a must satisfy shifted(a)(x) == p(x + a).
    polynomial<Rational> p{5, -2, 0, 1};
    Rational a(3, 2);
    polynomial<Rational> s = p.shifted(a);
    for (int x = -3; x <= 3; ++x)
        CHECK(s.eval(Rational(x)) == p.eval(Rational(x) + a));

    // Shifting back is the identity.
    CHECK(s.shifted(-a) == p);

    polynomial<Rational> sc = p.arg_scaled(Rational(2));
    for (int x = -2; x <= 2; ++x)
        CHECK(sc.eval(Rational(x)) == p.eval(Rational(2 * x)));
}

TEST_CASE("derivative satisfies the product rule") {
    std::mt19937 rng(11);
    for (int t = 0; t < 10; ++t) {
        auto a = random_poly(rng, 4), b = random_poly(rng, 4);
        CHECK((a * b).derivative() == a.derivative() * b + a * b.derivative());
    }
}

TEST_CASE("expansion from roots") {
    std::vector<Rational> roots{Rational(1), Rational(-2), Rational(1, 2)};
    polynomial<Rational> p = from_roots(Rational(4), roots);
    CHECK(p.degree() == 3);
    CHECK(p.leading() == Rational(4));
    for (const auto& r : roots) CHECK(p.eval(r) == 0);
    CHECK(p.eval(Rational(2)) == Rational(4) * 1 * 4 * Rational(3, 2));
}

TEST_CASE("bivariate evaluation and A-shift") {
    // f(H, A) = (H/2 + A)(H/2 - A + 1), the toy structure function.
    bivariate<Rational> half_h = bivariate<Rational>::affine(Rational(0), Rational(1, 2), Rational(0));
    bivariate<Rational> a = bivariate<Rational>::affine(Rational(0), Rational(0), Rational(1));
    bivariate<Rational> one = bivariate<Rational>::constant(Rational(1));
    bivariate<Rational> f = (half_h + a) * (half_h - a + one);

    for (int h = -2; h <= 2; ++h)
        for (int t = -2; t <= 2; ++t) {
            Rational hv(h), tv(t);
            CHECK(f.eval(hv, tv) == (hv / 2 + tv) * (hv / 2 - tv + 1));
            // shifted_a substitutes A -> A + 1.
            CHECK(f.shifted_a().eval(hv, tv) == f.eval(hv, Rational(tv + 1)));
        }

    SECTION("shift distributes over products") {
        bivariate<Rational> g = f * f + f;
        CHECK(g.shifted_a().eval(Rational(3), Rational(-2)) == g.eval(Rational(3), Rational(-1)));
    }

    SECTION("eval_abs bounds the evaluation") {
        CHECK(std::abs(to_double(f.eval(Rational(3), Rational(-2)))) <= f.eval_abs(3.0, -2.0));
        CHECK(f.eval_abs(0.0, 0.0) == std::abs(to_double(f.coeff(0, 0))));
    }
}

TEST_CASE("univariate composition into an affine bivariate argument") {
    // p(c + ch*H + ca*A) evaluated must equal p applied to the affine value.
    polynomial<Rational> p{1, -3, 2};  // 1 - 3x + 2x^2
    Rational c(1, 3), ch(1, 2), ca(-2);
    bivariate<Rational> composed = compose_affine(p, c, ch, ca);
    for (int h = -2; h <= 2; ++h)
        for (int t = -2; t <= 2; ++t)
            CHECK(composed.eval(Rational(h), Rational(t)) ==
                  p.eval(c + ch * Rational(h) + ca * Rational(t)));
}

TEST_CASE("Laurent coefficients respect the exponent floor") {
    laurent<Rational> l;
    l.set(-2, Rational(3));  // 3 x^-2
    l.set(1, Rational(-1, 2));  // - x/2
    CHECK(l.eval(Rational(2)) == Rational(3, 4) - Rational(1));
    CHECK_THROWS_AS(l.set(kLaurentFloor - 1, Rational(1)), laurent_floor_error);

    // d/dx: 3 x^-2 -> -6 x^-3, -x/2 -> -1/2, constants drop.
    laurent<Rational> d = (l + laurent<Rational>::constant(Rational(9))).derivative();
    CHECK(d.coeff(-3) == Rational(-6));
    CHECK(d.coeff(0) == Rational(-1, 2));
    CHECK(d.coeff(-1) == Rational(0));

    // Product of Laurent series multiplies values.
    laurent<Rational> m = l * l;
    CHECK(m.eval(Rational(2)) == l.eval(Rational(2)) * l.eval(Rational(2)));
}

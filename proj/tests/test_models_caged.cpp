#include "polysym/models/caged.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace polysym;
using namespace polysym::models;

TEST_CASE("caged parameter validation") {
    caged_params p;
    CHECK_NOTHROW(validate(p));
    p.kx = 0;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
    p = caged_params{};
    p.omega = -1;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
    p = caged_params{};
    p.l1 = -2;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
}

TEST_CASE("operator-derived transfer polynomial equals the closed form") {
    // A range of anisotropies, cage strengths, and scale constants; the
    // derivation re-expresses A+A in H with exact arithmetic each time.
    for (auto [kx, ky] : {std::pair{1, 1}, {2, 1}, {3, 2}, {1, 4}}) {
        for (Rational l : {Rational(0), Rational(1), Rational(5, 2)}) {
            caged_params p;
            p.kx = kx;
            p.ky = ky;
            p.l1 = l;
            p.l2 = l + 1;
            p.omega = Rational(3, 2);
            p.hbar = Rational(2, 3);
            CHECK(caged_derived_q(p, axis::x) == caged_printed_q(p, axis::x));
            CHECK(caged_derived_q(p, axis::y) == caged_printed_q(p, axis::y));
        }
    }
}

TEST_CASE("axis ladder operators shift the axis Hamiltonian spectrum") {
    caged_params p;
    p.kx = 2;
    p.l1 = Rational(3, 2);
    caged_axis_ops ops = caged_axis(p, axis::x);
    CHECK(ops.lambda == 2 * p.hbar * Rational(p.kx) * p.omega);
    CHECK(certify_ladder(ops.hamiltonian, ops.raise, ops.lambda).pass);
    CHECK(certify_ladder(ops.hamiltonian, ops.lower, Rational(-ops.lambda)).pass);
}

TEST_CASE("framework integers pair the ladders crosswise") {
    caged_params p;
    p.kx = 2;
    p.ky = 3;
    ladder_system<Rational> sys = caged_system(p);
    // m multiplies the x-ladder (step 2*hbar*kx*omega) and must equal ky/g.
    CHECK(sys.m == 3);
    CHECK(sys.n == 2);
    CHECK(!sys.reduced);
    CHECK(sys.lambda_x * Rational(sys.m) == sys.lambda_y * Rational(sys.n));

    p.kx = 2;
    p.ky = 4;
    ladder_system<Rational> red = caged_system(p);
    CHECK(red.m == 2);
    CHECK(red.n == 1);
    CHECK(red.reduced);
}

TEST_CASE("transfer polynomial roots and exact axis levels") {
    caged_params p;
    p.l1 = 1;  // nu^2 = 9
    SECTION("rational nu attaches exact roots, largest is the ground root") {
        ladder_system<Rational> sys = caged_system(p);
        REQUIRE(sys.q_real_roots.size() == 2);
        // roots hbar k omega (1 +- nu/2) = {-1/2, 5/2}
        CHECK(sys.q_real_roots[0] == Rational(-1, 2));
        CHECK(sys.q_real_roots[1] == Rational(5, 2));
        REQUIRE(sys.q_ground_roots.size() == 1);
        CHECK(sys.q_ground_roots[0] == Rational(5, 2));

        // Exact levels hbar k omega (2 n + 1 + nu/2)
        CHECK(*caged_axis_level(p, axis::x, 0) == Rational(5, 2));
        CHECK(*caged_axis_level(p, axis::x, 3) == Rational(17, 2));
    }

    SECTION("irrational nu leaves exact roots empty; float path completes them") {
        p.l1 = 2;  // nu^2 = 17
        ladder_system<Rational> sys = caged_system(p);
        CHECK(sys.q_real_roots.empty());
        CHECK(!caged_axis_level(p, axis::x, 0).has_value());

        ladder_system<double> d = caged_system_double(p);
        REQUIRE(d.q_real_roots.size() == 2);
        REQUIRE(d.q_ground_roots.size() == 1);
        double nu = std::sqrt(17.0);
        CHECK(d.q_ground_roots[0] == Catch::Approx(1.0 + nu / 2.0).epsilon(1e-12));
        CHECK(caged_axis_level_d(p, axis::x, 0) == Catch::Approx(1.0 + nu / 2.0).epsilon(1e-14));
    }
}

TEST_CASE("separable oracle assembles both towers with degeneracies") {
    caged_params p;  // isotropic, l = 0: levels 3, 5, 7 with mult 1, 2, 3
    spectrum_table t = caged_oracle_spectrum(p, 7.5);
    REQUIRE(t.rows.size() == 3);
    CHECK(t.rows[0].energy == Catch::Approx(3.0));
    CHECK(t.rows[2].multiplicity == 3);

    // Anisotropic with a cage: ground level is the sum of the two tower
    // bottoms hbar k omega (1 + nu/2).
    p.kx = 2;
    p.l1 = 1;  // nu_x = 3
    spectrum_table a = caged_oracle_spectrum(p, 20.0);
    REQUIRE(!a.rows.empty());
    double x0 = 2.0 * (1.0 + 3.0 / 2.0);
    double y0 = 1.0 + 0.5;  // l2 = 0: nu_y = 1
    CHECK(a.rows[0].energy == Catch::Approx(x0 + y0));
}

TEST_CASE("axis potential closure matches the operator coefficients") {
    caged_params p;
    p.kx = 3;
    p.l1 = Rational(7, 4);
    auto v = caged_axis_potential(p, axis::x);
    for (double x : {0.5, 1.0, 2.0})
        CHECK(v(x) == Catch::Approx(0.5 * 9.0 * x * x + 1.75 / (x * x)).epsilon(1e-14));
}

#include "polysym/specnum.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace polysym;

TEST_CASE("harmonic oscillator levels to 1e-6") {
    // V = x^2/2, exact levels n + 1/2.
    grid_1d g{-10.0, 10.0, 3000, false};
    eigen_result r = eigen_1d([](double x) { return 0.5 * x * x; }, g, 5);
    REQUIRE(r.levels.size() == 5);
    for (int n = 0; n < 5; ++n) {
        double exact = n + 0.5;
        CHECK(std::fabs(r.levels[n] - exact) / exact < 1e-6);
        // The a-posteriori estimate bounds the true error up to a small factor.
        CHECK(std::fabs(r.levels[n] - exact) < 50.0 * r.error_est[n] + 1e-9);
    }
}

TEST_CASE("singular oscillator on the half line uses the offset grid") {
    // V = x^2/2 + l/x^2 with l = 1: nu = 3, levels 2n + 1 + nu/2 = 2n + 5/2.
    grid_1d g{0.0, 12.0, 3000, true};
    eigen_result r = eigen_1d([](double x) { return 0.5 * x * x + 1.0 / (x * x); }, g, 4);
    for (int n = 0; n < 4; ++n) {
        double exact = 2.0 * n + 2.5;
        CHECK(std::fabs(r.levels[n] - exact) / exact < 1e-5);
    }
}

TEST_CASE("particle in a box against the closed form") {
    // V = 0 on (0, 1), Dirichlet walls: levels (n pi)^2 / 2.
    grid_1d g{0.0, 1.0, 2000, false};
    eigen_result r = eigen_1d([](double) { return 0.0; }, g, 3);
    for (int n = 1; n <= 3; ++n) {
        double exact = 0.5 * n * n * M_PI * M_PI;
        CHECK(std::fabs(r.levels[n - 1] - exact) / exact < 1e-6);
    }
}

TEST_CASE("hbar scaling enters as hbar^2 in the kinetic term") {
    grid_1d g{-12.0, 12.0, 2500, false};
    double hbar = 0.5;
    // V = x^2/2 with mass 1: levels hbar (n + 1/2) for omega = 1.
    eigen_result r = eigen_1d([](double x) { return 0.5 * x * x; }, g, 3, hbar);
    for (int n = 0; n < 3; ++n)
        CHECK(r.levels[n] == Catch::Approx(hbar * (n + 0.5)).epsilon(1e-6));
}

TEST_CASE("guards reject unusable grids and potentials") {
    grid_1d tiny{0.0, 1.0, 4, false};
    CHECK_THROWS_AS(eigen_1d([](double) { return 0.0; }, tiny, 1), std::invalid_argument);

    grid_1d g{0.0, 1.0, 100, false};
    CHECK_THROWS_AS(eigen_1d([](double) { return 0.0; }, g, 90), std::invalid_argument);

    grid_1d empty{1.0, 1.0, 100, false};
    CHECK_THROWS_AS(eigen_1d([](double) { return 0.0; }, empty, 2), std::invalid_argument);

    // Singular potential on a node must be reported with the location.
    grid_1d walls{-1.0, 1.0, 99, false};  // x = 0 is a node for odd counts
    bool threw = false;
    try {
        eigen_1d([](double x) { return 1.0 / (x * x); }, walls, 2);
    } catch (const std::runtime_error& e) {
        threw = true;
        CHECK(std::string(e.what()).find("not finite") != std::string::npos);
    }
    CHECK(threw);
}

TEST_CASE("numeric spectrum table wraps levels with provenance") {
    spectrum_table t = numeric_spectrum_table({1.0, 1.0 + 1e-12, 2.0});
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0].multiplicity == 2);
    CHECK(t.rows[0].origin == provenance::numeric);
}

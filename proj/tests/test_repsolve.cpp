#include "polysym/models/caged.hpp"
#include "polysym/repsolve.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace polysym;

namespace {

ladder_system<Rational> toy() {
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
    return make_ladder_system(std::move(sys));
}

}  // namespace

TEST_CASE("toy ladder: E = N with binomial-like structure function") {
    enumeration_result<Rational> res = enumerate_reps(toy(), 5);
    REQUIRE(res.families.size() == 1);
    const auto& fam = res.families[0];

    // u(E) = -E/2, E(N) = N
    CHECK(fam.u_const == 0);
    CHECK(fam.u_e_coeff == Rational(-1, 2));
    CHECK(fam.e_const == 0);
    CHECK(fam.e_n_coeff == 1);

    REQUIRE(fam.reps.size() == 6);
    for (const auto& rep : fam.reps) {
        CHECK(rep.energy == Rational(rep.n));
        // Phi(x) = x (N + 1 - x)
        for (int x = 1; x <= rep.n; ++x)
            CHECK(rep.phi[static_cast<std::size_t>(x - 1)] == Rational(x) * Rational(rep.n + 1 - x));
    }
}

TEST_CASE("caged isotropic case: odd 2D oscillator levels with exact degeneracies") {
    models::caged_params p;  // kx = ky = 1, l = 0, omega = hbar = 1
    ladder_system<Rational> sys = models::caged_system(p);
    spectrum_table t = algebraic_spectrum(sys, 12);

    // Axis towers are hbar*omega*(2n + 3/2); 2D levels 3, 5, 7, ... with
    // multiplicities 1, 2, 3, ...
    REQUIRE(t.rows.size() >= 5);
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(t.rows[i].energy == Catch::Approx(3.0 + 2.0 * double(i)).margin(1e-12));
        CHECK(t.rows[i].multiplicity == int(i) + 1);
    }
}

TEST_CASE("anisotropic caged system matches its separable oracle") {
    models::caged_params p;
    p.kx = 2;
    p.ky = 1;
    p.l1 = 1;
    p.l2 = 3;
    ladder_system<Rational> sys = models::caged_system(p);
    double e_cut = 40.0;
    spectrum_table alg = algebraic_spectrum(sys, 40, e_cut);
    spectrum_table oracle = models::caged_oracle_spectrum(p, e_cut);
    spectrum_comparison cmp = compare_spectra(alg, oracle, 1e-10);
    CHECK(cmp.paired == alg.rows.size());
    CHECK(cmp.unmatched_a == 0);
    CHECK(cmp.unmatched_b == 0);
    CHECK(cmp.multiplicity_mismatches == 0);
    CHECK(cmp.max_rel_dev <= 1e-12);
}

TEST_CASE("representation verification rejects tampered data") {
    ladder_system<Rational> sys = toy();
    bivariate<Rational> f = build_f(sys);
    enumeration_result<Rational> res = enumerate_reps(sys, 4);
    representation<Rational> rep = res.families[0].reps[3];
    CHECK(verify_representation(f, rep).pass);

    representation<Rational> wrong_e = rep;
    wrong_e.energy += 1;
    CHECK(!verify_representation(f, wrong_e).pass);

    representation<Rational> wrong_phi = rep;
    wrong_phi.phi[0] += Rational(1, 2);
    CHECK(!verify_representation(f, wrong_phi).pass);

    representation<Rational> short_phi = rep;
    short_phi.phi.pop_back();
    CHECK(!verify_representation(f, short_phi).pass);
}

TEST_CASE("root policies and orientations") {
    models::caged_params p;
    p.l1 = 1;
    p.l2 = 1;
    ladder_system<Rational> sys = models::caged_system(p);

    SECTION("ground-only enumeration uses one branch pair") {
        enumeration_result<Rational> res = enumerate_reps(sys, 6);
        REQUIRE(res.families.size() == 1);
        CHECK(res.families[0].branch.q_root == sys.q_ground_roots[0]);
    }

    SECTION("all-roots policy explores every pair and dedups") {
        enum_options opt;
        opt.policy = root_policy::all_roots;
        enumeration_result<Rational> res = enumerate_reps(sys, 6, opt);
        CHECK(res.families.size() >= 1);
        // The ground-root spectrum must be contained in the exploded one.
        spectrum_table ground = algebraic_spectrum(sys, 6);
        spectrum_table all = algebraic_spectrum(sys, 6, std::nullopt, opt);
        spectrum_comparison cmp = compare_spectra(ground, all, 1e-12);
        CHECK(cmp.unmatched_a == 0);
    }

    SECTION("mirrored orientation is off by default and distinct when enabled") {
        enum_options opt;
        opt.include_mirrored = true;
        enumeration_result<Rational> res = enumerate_reps(sys, 6, opt);
        bool saw_mirrored = false;
        for (const auto& fam : res.families)
            saw_mirrored = saw_mirrored || fam.branch.orient == orientation::mirrored;
        // Mirrored branches may or may not admit representations here; the
        // enumeration must at least not crash and must keep normal families.
        CHECK(res.families.size() >= 1);
        (void)saw_mirrored;
    }
}

TEST_CASE("complex roots are counted and skipped in float mode") {
    ladder_system<double> sys;
    sys.q_poly = polynomial<double>{1.0, 0.0, 1.0};  // z^2 + 1: complex pair
    sys.s_poly = polynomial<double>{0.0, 1.0};
    sys.lambda_x = 1.0;
    sys.lambda_y = 1.0;
    sys.m = 1;
    sys.n = 1;
    sys.hbar = 1.0;
    sys.label = "complexq";
    sys = make_ladder_system(std::move(sys));
    REQUIRE(sys.q_complex_roots.size() == 2);

    enumeration_result<double> res = enumerate_reps(sys, 5);
    CHECK(res.complex_roots_skipped == 2);
    CHECK(res.families.empty());  // no real Q root: no lowest-weight branch
}

TEST_CASE("spectrum tables merge coincident levels and filter by energy") {
    spectrum_table t;
    t.rows = {{1.0, 1, provenance::algebraic, "a"},
              {1.0 + 1e-13, 2, provenance::algebraic, "b"},
              {2.5, 1, provenance::algebraic, "c"}};
    t.merge(1e-9);
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0].multiplicity == 3);
    CHECK(t.rows[0].label == "a+b");
    CHECK(t.total_states() == 4);

    t.truncate_above(2.0);
    REQUIRE(t.rows.size() == 1);

    spectrum_table two = assemble_2d({0.5, 1.5}, {0.5, 1.5}, 2.5, 1e-9);
    REQUIRE(two.rows.size() == 2);  // 1.0 once, 2.0 twice; 3.0 cut
    CHECK(two.rows[1].multiplicity == 2);
}

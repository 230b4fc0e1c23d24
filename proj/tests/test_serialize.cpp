#include "polysym/jobconfig.hpp"
#include "polysym/repsolve.hpp"
#include "polysym/serialize.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace polysym;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("config parsing: sections, comments, overrides") {
    job_config cfg = parse_config_text(
        "# comment\n"
        "[job]\n"
        "model = caged   ; trailing comment\n"
        "mode = float\n"
        "nmax = 12\n"
        "emax = 40.5\n"
        "tol = 1e-8\n"
        "[caged]\n"
        "kx = 2\n"
        "ky = 1\n"
        "omega = 3/2\n"
        "l1 = 0.25\n");
    CHECK(cfg.model == "caged");
    CHECK(cfg.mode == "float");
    CHECK(cfg.nmax == 12);
    CHECK(cfg.emax == 40.5);
    CHECK(cfg.tol == 1e-8);
    CHECK(cfg.caged.kx == 2);
    CHECK(cfg.caged.omega == Rational(3, 2));
    CHECK(cfg.caged.l1 == Rational(1, 4));
}

TEST_CASE("config errors carry the line number and a reason") {
    auto expect_error = [](const std::string& text, const std::string& needle) {
        try {
            parse_config_text(text);
            FAIL("expected config_error");
        } catch (const config_error& e) {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    expect_error("[job]\nmodel = quantum\n", "model must be");
    expect_error("[job]\nmodle = caged\n", "unknown key");
    expect_error("[nope]\n", "unknown section");
    expect_error("[job]\nnmax = -3\n", "nmax");
    expect_error("[job]\nnmax = 3.5\n", "integer");
    expect_error("[job]\ntol = 0\n", "positive");
    expect_error("[caged]\nkx = two\n", "line 2");
    expect_error("[painleve]\neps1 = 2\n", "+1 or -1");
    expect_error("key_without_section\n", "key = value");
    // Cross-field validation: commensurability of the painleve pair.
    expect_error("[job]\nmodel = painleve\n[painleve]\nomega2 = 5\n", "commensurability");
}

TEST_CASE("json artifacts carry the schema version and survive a round trip") {
    spectrum_table t;
    t.rows = {{1.5, 2, provenance::algebraic, "a"}, {2.5, 1, provenance::oracle, "b"}};

    ordered_json j = {{"schema", kSchemaVersion}, {"spectrum", to_json(t)}};
    auto path = std::filesystem::temp_directory_path() / "polysym_test_spec.json";
    write_json_atomic(path, j);

    ordered_json back = ordered_json::parse(slurp(path));
    CHECK(back["schema"] == 1);
    REQUIRE(back["spectrum"].size() == 2);
    CHECK(back["spectrum"][0]["energy"] == 1.5);
    CHECK(back["spectrum"][0]["multiplicity"] == 2);
    CHECK(back["spectrum"][0]["origin"] == "algebraic");
    std::filesystem::remove(path);
}

TEST_CASE("atomic writes leave no partial file behind") {
    auto dir = std::filesystem::temp_directory_path() / "polysym_test_dir";
    std::filesystem::remove_all(dir);
    write_text_atomic(dir / "x.txt", "payload");
    CHECK(slurp(dir / "x.txt") == "payload");
    CHECK(!std::filesystem::exists(dir / "x.txt.tmp"));
    // Overwrite keeps the newest content.
    write_text_atomic(dir / "x.txt", "second");
    CHECK(slurp(dir / "x.txt") == "second");
    std::filesystem::remove_all(dir);
}

TEST_CASE("representation families serialize exact values as strings") {
    ladder_system<Rational> sys;
    sys.q_poly = polynomial<Rational>{0, 1};
    sys.s_poly = polynomial<Rational>{0, 1};
    sys.lambda_x = 1;
    sys.lambda_y = 1;
    sys.m = 1;
    sys.n = 1;
    sys.hbar = 1;
    sys.q_real_roots = {0};
    sys.s_real_roots = {0};
    sys = make_ladder_system(std::move(sys));

    enumeration_result<Rational> res = enumerate_reps(sys, 3);
    ordered_json j = to_json(res);
    REQUIRE(j["families"].size() == 1);
    const auto& fam = j["families"][0];
    CHECK(fam["u_e_coeff"] == "-1/2");
    CHECK(fam["representations"][2]["energy"] == "2");
    CHECK(fam["representations"][2]["energy_float"] == 2.0);
    CHECK(fam["representations"][2]["phi"][0] == "2");
}

TEST_CASE("csv writers emit headers and one row per entry") {
    spectrum_table t;
    t.rows = {{1.0, 1, provenance::numeric, "k0"}};
    std::string csv = csv_of_spectrum(t);
    CHECK(csv.find("energy,multiplicity,origin,label\n") == 0);
    CHECK(csv.find("1,1,numeric,k0\n") != std::string::npos);

    p4_trajectory traj;
    traj.samples = {{0.5, -1.0, -2.0, 1e-12}};
    std::string tcsv = csv_of_trajectory(traj);
    CHECK(tcsv.find("z,f,fp,residual\n") == 0);
    CHECK(tcsv.find("0.5,-1,-2,") != std::string::npos);
}

TEST_CASE("identical inputs produce byte-identical artifacts") {
    job_config cfg = parse_config_text("[job]\nmodel = toy\nnmax = 6\n");
    auto render = [&]() {
        ladder_system<Rational> sys;
        sys.q_poly = polynomial<Rational>{0, 1};
        sys.s_poly = polynomial<Rational>{0, 1};
        sys.lambda_x = 1;
        sys.lambda_y = 1;
        sys.m = 1;
        sys.n = 1;
        sys.hbar = 1;
        sys.q_real_roots = {0};
        sys.s_real_roots = {0};
        sys = make_ladder_system(std::move(sys));
        return ordered_json{{"schema", kSchemaVersion},
                            {"enumeration", to_json(enumerate_reps(sys, cfg.nmax))}}
            .dump(2);
    };
    CHECK(render() == render());
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "theta/harness.hpp"

using namespace theta;

TEST_CASE("admissible prime enumeration") {
    RunConfig cfg;
    cfg.ring = Ring::Eisenstein;
    cfg.n = 3;
    cfg.norm_max = 20;
    auto ps = admissible_primes(cfg);
    REQUIRE(ps.size() == 3);
    CHECK(ps[0].q == 7);
    CHECK(ps[1].q == 13);
    CHECK(ps[2].q == 19);
    for (const auto& p : ps) CHECK(is_primary(p.generator));

    RunConfig g;
    g.ring = Ring::Gaussian;
    g.n = 4;
    g.norm_max = 50;
    set_congruence(g, "1 mod 8");
    auto gs = admissible_primes(g);
    REQUIRE(gs.size() == 2);
    CHECK(gs[0].q == 17);
    CHECK(gs[1].q == 41);

    cfg.norm_max = 1;
    CHECK(admissible_primes(cfg).empty());
    cfg.norm_max = Integer(10000000);
    CHECK_THROWS_AS(admissible_primes(cfg), Error);
    RunConfig bad;
    CHECK_THROWS_AS(set_congruence(bad, "five"), Error);
}

TEST_CASE("magnitude and jacobi cases pass") {
    RunConfig cfg;
    cfg.norm_max = 200;
    auto rep = run_case(CaseTag::GaussMagnitude, cfg);
    CHECK(rep.all_pass());
    CHECK(rep.rows.size() == admissible_primes(cfg).size());
    CHECK(report_exit_code(rep) == 0);

    auto jac = run_case(CaseTag::JacobiCube, cfg);
    CHECK(jac.all_pass());
}

TEST_CASE("composite gauss case passes") {
    RunConfig cfg;
    cfg.norm_max = 100;
    auto rep = run_case(CaseTag::Gauss9, cfg);
    CHECK(rep.all_pass());
    CHECK(!rep.rows.empty());
}

TEST_CASE("cocycle case") {
    RunConfig cfg;
    cfg.trials = 500;
    auto rep = run_case(CaseTag::Cocycle, cfg);
    CHECK(rep.all_pass());
    CHECK(rep.checks.size() == 3);

    cfg.trials = 0;
    CHECK_THROWS_AS(run_case(CaseTag::Cocycle, cfg), Error);
}

TEST_CASE("reciprocity case in both rings") {
    RunConfig cfg;
    cfg.norm_max = 150;
    CHECK(run_case(CaseTag::Reciprocity, cfg).all_pass());

    RunConfig g;
    g.ring = Ring::Gaussian;
    g.n = 4;
    g.norm_max = 300;
    CHECK(run_case(CaseTag::Reciprocity, g).all_pass());
}

TEST_CASE("descent identity cases pass at small scale") {
    RunConfig cfg;
    cfg.norm_max = 50;
    cfg.max_support = 2;
    auto rep = run_case(CaseTag::Cfh, cfg);
    CHECK(rep.all_pass());
    CHECK(!rep.rows.empty());

    RunConfig g;
    g.norm_max = 100;
    g.max_support = 2;
    auto prep = run_case(CaseTag::Patterson, g);
    CHECK(prep.all_pass());
}

TEST_CASE("report serialization") {
    RunConfig cfg;
    cfg.norm_max = 50;
    auto rep = run_case(CaseTag::GaussMagnitude, cfg);

    std::string js = emit_report(rep, "json");
    CHECK(js.find("\"schema\": \"theta-descent/1\"") != std::string::npos);
    auto back = parse_report_json(js);
    CHECK(emit_report(back, "json") == js);

    std::string csv = emit_report(rep, "csv");
    size_t lines = std::count(csv.begin(), csv.end(), '\n');
    CHECK(lines == 1 + rep.rows.size() + rep.checks.size());
    CHECK(csv.rfind("case,m,symbolic,re,im,check,pass,max_err\n", 0) == 0);

    std::string txt = emit_report(rep, "text");
    CHECK(txt.find("[PASS]") != std::string::npos);
    CHECK_THROWS_AS(emit_report(rep, "xml"), Error);

    // empty report is still valid JSON with zero rows
    VerificationReport empty;
    empty.case_name = "gauss_magnitude";
    auto ejs = emit_report(empty, "json");
    CHECK(parse_report_json(ejs).rows.empty());

    // a failing check flips the exit code
    VerificationReport bad = rep;
    bad.checks.push_back({"forced", false, 1.0, "w"});
    CHECK(report_exit_code(bad) == 1);
}

TEST_CASE("determinism: byte-identical reports") {
    RunConfig cfg;
    cfg.norm_max = 100;
    auto a = emit_report(run_case(CaseTag::Gauss9, cfg), "json");
    auto b = emit_report(run_case(CaseTag::Gauss9, cfg), "json");
    CHECK(a == b);

    cfg.workers = 4;
    auto c = emit_report(run_case(CaseTag::Gauss9, cfg), "json");
    cfg.workers = 1;
    auto d = emit_report(run_case(CaseTag::Gauss9, cfg), "json");
    // worker count is part of the config block; compare rows/checks via csv
    CHECK(emit_report(run_case(CaseTag::Cfh, cfg), "csv") ==
          emit_report(run_case(CaseTag::Cfh, cfg), "csv"));
    (void)c;
    (void)d;
}

TEST_CASE("gauss sum disk cache round trip") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "theta-cache-test";
    fs::remove_all(dir);

    auto p = prime_above(Ring::Eisenstein, 103);
    CyclotomicInt one{Ring::Eisenstein, 1, 0};
    clear_gauss_cache();
    auto fresh = gauss_sum_prime(p, 3, 1, one);
    save_gauss_cache(dir.string());

    clear_gauss_cache();
    load_gauss_cache(dir.string());
    auto cached = gauss_sum_prime(p, 3, 1, one);
    CHECK(std::abs(cached.value - fresh.value) < 1e-12);
    REQUIRE(cached.jacobi_witness.has_value());
    CHECK(*cached.jacobi_witness == *fresh.jacobi_witness);

    // a stale convention fingerprint invalidates the file
    bool found = false;
    for (const auto& e : fs::directory_iterator(dir)) {
        if (e.path().extension() != ".gsc") continue;
        found = true;
        auto text = [&] {
            std::ifstream in(e.path());
            return std::string(std::istreambuf_iterator<char>(in), {});
        }();
        auto pos = text.find("psi=");
        auto patched = text.substr(0, pos) + "psi=other" + text.substr(text.find('\n', pos));
        std::ofstream(e.path()) << patched;
    }
    CHECK(found);
    clear_gauss_cache();
    load_gauss_cache(dir.string());
    auto recomputed = gauss_sum_prime(p, 3, 1, one); // cache ignored, recomputed
    CHECK(std::abs(recomputed.value - fresh.value) < 1e-12);
    fs::remove_all(dir);
}

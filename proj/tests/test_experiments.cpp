#include <doctest.h>

#include <fstream>
#include <sstream>

#include "affiq/suites.hpp"

using namespace affiq;

TEST_CASE("catalog: embedded text parses and matches the shipped file") {
    const auto entries = default_catalog();
    CHECK(entries.size() >= 20);
    CHECK(find_body(entries, "cube3") != nullptr);
    CHECK(find_body(entries, "ell4b") != nullptr);
    CHECK(find_body(entries, "nope") == nullptr);
    for (const auto& e : entries) CHECK(body_dim(e.body) == e.n);

    std::ifstream in(std::string(AFFIQ_SOURCE_DIR) + "/data/catalog.json");
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    // both load to the same composition
    const auto from_file = load_catalog(ss.str());
    REQUIRE(from_file.size() == entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) CHECK(from_file[i].id == entries[i].id);
}

TEST_CASE("catalog: generator entries are seed deterministic") {
    const auto a = default_catalog();
    const auto b = default_catalog();
    const auto* ra = find_body(a, "rand3a");
    const auto* rb = find_body(b, "rand3a");
    REQUIRE(ra != nullptr);
    const auto& va = std::get<VPolytope>(ra->body).vertices;
    const auto& vb = std::get<VPolytope>(rb->body).vertices;
    CHECK((va - vb).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("report: pass rules") {
    CHECK(one_sided_case("a", 1.0, 0.9, 0.1).pass);
    CHECK(one_sided_case("a", 0.9, 1.0, 0.1).pass);         // within -4 sigma
    CHECK_FALSE(one_sided_case("a", 0.0, 1.0, 0.1).pass);   // 10 sigma below
    CHECK(strict_case("a", 1.0, 0.0, 0.1).pass);
    CHECK_FALSE(strict_case("a", 0.2, 0.0, 0.1).pass);
    CHECK(equality_case("a", 1.0, 1.1, 0.05).pass);
    CHECK_FALSE(equality_case("a", 1.0, 2.0, 0.05).pass);
    CHECK(exact_case("a", 1.0, 1.0 + 1e-10, 1e-9).pass);
    CHECK_FALSE(exact_case("a", 1.0, 1.1, 1e-9).pass);
    CHECK(info_case("a", 5.0, 0.0, 0.0).pass);

    SuiteReport rep;
    rep.suite = "demo";
    rep.add(one_sided_case("z", 1.0, 0.0, 0.1));
    rep.add(info_case("b", 0.0, 1.0, 0.0));
    rep.add(one_sided_case("a", 1.0, 0.0, 0.1));
    rep.finalize();
    CHECK(rep.pass);
    CHECK(rep.cases.front().case_id == "a");  // sorted by id

    rep.add(one_sided_case("q", -1.0, 1.0, 0.01));
    rep.finalize();
    CHECK_FALSE(rep.pass);
}

TEST_CASE("report: csv columns are stable") {
    SuiteReport rep;
    rep.suite = "demo";
    rep.seed = 7;
    CaseRecord c = one_sided_case("x", 2.0, 1.0, 0.5);
    c.body = "cube3";
    c.n = 3;
    c.k = 2;
    rep.add(c);
    rep.finalize();
    const std::string csv = rep.to_csv();
    CHECK(csv.find("suite,case,body,n,k,p,t,u_hash,lhs,rhs,margin,stderr,pass") == 0);
    CHECK(csv.find("demo,x,cube3,3,2,,,,2,1,1,0.5,1") != std::string::npos);
}

TEST_CASE("suite registry") {
    const auto names = suite_names();
    CHECK(names.size() == 8);
    SuiteConfig cfg;
    CHECK_THROWS_AS((void)run_suite("unknown", cfg), Error);
}

TEST_CASE("lutwak suite: small run passes and is thread invariant") {
    SuiteConfig cfg;
    cfg.dims = {3};
    cfg.budget = 20000;
    cfg.seed = 5;
    cfg.bodies = {"cube3", "ell3a"};
    cfg.threads = 1;
    const auto rep1 = suite_lutwak(cfg);
    CHECK(rep1.pass);
    CHECK(rep1.cases.size() == 4);  // 2 bodies x k in {1, 2}

    cfg.threads = 2;
    const auto rep2 = suite_lutwak(cfg);
    CHECK(rep1.to_json_string() == rep2.to_json_string());
    CHECK(rep1.to_csv() == rep2.to_csv());
}

TEST_CASE("slab suite: small run passes") {
    SuiteConfig cfg;
    cfg.dims = {3};
    cfg.budget = 30000;
    cfg.seed = 3;
    cfg.slab_directions = 80;
    cfg.bodies = {"cube3", "simplex3"};
    const auto rep = suite_slab_body(cfg);
    CHECK(rep.pass);
    // cube is centrally symmetric after centering: containment case present
    bool has_containment = false;
    for (const auto& c : rep.cases)
        if (c.case_id.find("containment") != std::string::npos) has_containment = true;
    CHECK(has_containment);
}

TEST_CASE("af-chain suite: explore mode adds informational rows") {
    SuiteConfig cfg;
    cfg.dims = {3};
    cfg.budget = 15000;
    cfg.seed = 4;
    cfg.bodies = {"cube3"};
    cfg.p_grid = {-3.0};
    const auto strictly = suite_af_chain(cfg);
    cfg.explore = true;
    const auto exploring = suite_af_chain(cfg);
    CHECK(exploring.cases.size() > strictly.cases.size());
    for (const auto& c : exploring.cases)
        if (c.check == "info") CHECK(c.asserted == false);
}

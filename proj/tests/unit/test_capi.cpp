// Exercises the shared library through the C header only.
#include "doctest.h"
#include "loopforge.h"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>

using nlohmann::json;

namespace {

std::string fixture_text(const std::string& rel) {
    std::ifstream in(std::string(LOOPFORGE_FIXTURES) + "/" + rel);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json take(char* s) {
    REQUIRE(s != nullptr);
    json j = json::parse(s);
    lf_string_free(s);
    return j;
}

lf_algebra* algebra(const std::string& rel) {
    lf_algebra* a = nullptr;
    REQUIRE(lf_algebra_from_json(fixture_text(rel).c_str(), &a) == LF_OK);
    return a;
}

}  // namespace

TEST_CASE("status names and errors") {
    CHECK(std::string(lf_status_name(LF_OK)) == "ok");
    CHECK(std::string(lf_status_name(LF_E_TRUNCATION_TOO_SMALL)) == "truncation_too_small");
    CHECK(std::string(lf_status_name(LF_E_NULL_ARGUMENT)) == "null_argument");
    lf_algebra* a = nullptr;
    CHECK(lf_algebra_from_json(nullptr, &a) == LF_E_NULL_ARGUMENT);
    CHECK(lf_algebra_from_json("{\n  \"dim\": 2,\n  oops}", &a) == LF_E_PARSE);
    CHECK(std::string(lf_last_error()).find(":3:") != std::string::npos);
    CHECK(a == nullptr);
    CHECK(std::string(lf_version()).size() > 0);
}

TEST_CASE("fat graphs") {
    lf_fatgraph* g = nullptr;
    REQUIRE(lf_fatgraph_from_json(fixture_text("fatgraph/gamma2.json").c_str(), 1, &g) == LF_OK);
    char* out = nullptr;
    REQUIRE(lf_fatgraph_analyze(g, nullptr, 0, &out) == LF_OK);
    const json r = take(out);
    CHECK(r["genus"] == 1);
    CHECK(r["boundary_components"] == 2);
    lf_fatgraph_free(g);
    CHECK(lf_fatgraph_from_json(fixture_text("fatgraph/bad_involution.json").c_str(), 0, &g) == LF_E_MALFORMED_GRAPH);
}

TEST_CASE("tqft") {
    lf_group* s3 = nullptr;
    REQUIRE(lf_group_builtin("s3", &s3) == LF_OK);
    char* out = nullptr;
    REQUIRE(lf_tqft_dw(s3, 1, &out) == LF_OK);
    const json r = take(out);
    CHECK(r["invariant"] == "3");
    CHECK(r["agree"] == true);
    lf_group_free(s3);

    lf_algebra* a = algebra("algebras/dual_numbers.json");
    REQUIRE(lf_tqft_eval(a, fixture_text("cobordisms/torus.json").c_str(), &out) == LF_OK);
    const json m = take(out);
    CHECK(m["rows"] == 1);
    REQUIRE(lf_tqft_surface(a, 1, &out) == LF_OK);
    const json s = take(out);
    CHECK(s["agree"] == true);
    CHECK(m["matrix"][0][0] == s["invariant"]);
    lf_algebra_free(a);
    CHECK(lf_group_builtin("nope", &s3) == LF_E_INVALID_GROUP);
}

TEST_CASE("hochschild") {
    lf_algebra* a = algebra("algebras/dual_numbers.json");
    lf_hochschild_options opt{0, 0, 3, 8, 0, 0};
    char* out = nullptr;
    REQUIRE(lf_hochschild(a, &opt, &out) == LF_OK);
    const json r = take(out);
    CHECK(r["dims"] == json::array({2, 1, 1, 1}));
    CHECK(r["stable"] == true);
    opt.hi = 40;
    CHECK(lf_hochschild(a, &opt, &out) == LF_E_TRUNCATION_TOO_SMALL);
    CHECK(std::string(lf_last_error()).find("truncation") != std::string::npos);
    opt = {1, 0, 2, 8, 1, 1};
    REQUIRE(lf_hochschild(a, &opt, &out) == LF_OK);
    const json c = take(out);
    CHECK(c["basis_sizes_by_arity"] == json::array({2, 1, 1}));
    CHECK(c["cup"].size() > 0);
    CHECK(c["bracket"].size() > 0);
    lf_algebra_free(a);
}

TEST_CASE("checkers") {
    int passed = -1;
    char* out = nullptr;
    lf_algebra* m2 = algebra("algebras/m2q.json");
    REQUIRE(lf_check_operad("ass", m2, nullptr, nullptr, &passed, &out) == LF_OK);
    take(out);
    CHECK(passed == 1);
    lf_algebra_free(m2);

    lf_algebra* cross = algebra("algebras/cross_product.json");
    REQUIRE(lf_check_operad("ass", cross, nullptr, nullptr, &passed, &out) == LF_OK);
    const json fail = take(out);
    CHECK(passed == 0);
    CHECK(fail["pass"] == false);
    REQUIRE(lf_check_operad("lie", cross, nullptr, "dot", &passed, &out) == LF_OK);
    take(out);
    CHECK(passed == 1);
    lf_algebra_free(cross);

    lf_algebra* ext = algebra("gbv/exterior1.json");
    for (const char* conv : {"gbv", "sw"}) {
        REQUIRE(lf_check_gbv(ext, conv, 0, &passed, &out) == LF_OK);
        take(out);
        CHECK(passed == 1);
        REQUIRE(lf_check_gbv(ext, conv, 1, &passed, &out) == LF_OK);
        take(out);
        CHECK(passed == 1);
    }
    CHECK(lf_check_gbv(ext, "other", 0, &passed, &out) == LF_E_INVALID_INPUT);
    CHECK(lf_check_gbv(ext, "gbv", 3, &passed, &out) == LF_E_DEGREE_MISMATCH);
    lf_algebra_free(ext);
}

TEST_CASE("cacti") {
    lf_cactus *c = nullptr, *one = nullptr, *r = nullptr;
    REQUIRE(lf_cactus_from_json(fixture_text("cacti/four_lobes.json").c_str(), &c) == LF_OK);
    REQUIRE(lf_cactus_from_json(fixture_text("cacti/single.json").c_str(), &one) == LF_OK);
    REQUIRE(lf_cactus_compose(c, 2, one, &r) == LF_OK);
    int eq = 0;
    REQUIRE(lf_cactus_equal(c, r, &eq) == LF_OK);
    CHECK(eq == 1);
    size_t k = 0;
    REQUIRE(lf_cactus_lobes(r, &k) == LF_OK);
    CHECK(k == 4);
    char* out = nullptr;
    REQUIRE(lf_cactus_trace(one, &out) == LF_OK);
    CHECK(take(out)["arcs"].size() == 1);
    lf_cactus* bad = nullptr;
    CHECK(lf_cactus_compose(c, 9, one, &bad) == LF_E_INDEX_OUT_OF_RANGE);
    CHECK(lf_cactus_from_json(fixture_text("cacti/bad_cycle.json").c_str(), &bad) == LF_E_MALFORMED_CACTUS);
    lf_cactus_free(c);
    lf_cactus_free(one);
    lf_cactus_free(r);
}

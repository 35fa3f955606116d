#include "../support/fixtures.hpp"
#include "../support/gbv_models.hpp"
#include "acceptance.hpp"
#include "loopforge/gbv/gbv.hpp"

#include <random>

namespace acceptance {

using namespace loopforge;
using namespace loopforge::gbv;
using testsupport::failing;
using Names = std::vector<std::string>;

namespace {

GradedOperatorAlgebra fixture(const std::string& file) {
    return io::operator_algebra_from_json(testsupport::load_fixture("gbv/" + file));
}

std::string show(const Names& names) {
    std::string s = "{";
    for (const auto& n : names) s += (s.size() > 1 ? ", " : "") + n;
    return s + "}";
}

// Both characterizations agree, and a BV instance has a Gerstenhaber bracket.
void instance(Check& check, const GradedOperatorAlgebra& a, const std::string& name) {
    for (auto c : {Convention::Gbv, Convention::Sw}) {
        const Report r = check_bv(a, "delta", c);
        check.expect(r.clause("second_order").pass == r.clause("seven_term").pass &&
                         r.clause("characterizations_agree").pass,
                     name + ": Grothendieck and seven-term verdicts differ under " + convention_name(c));
    }
    if (check_bv(a).pass())
        check.expect(check_gerstenhaber(a, derive_bracket(a), a.op("delta").shift()).pass(),
                     name + ": derived bracket is not Gerstenhaber");
}

void fails_exactly(Check& check, const Report& r, const Names& want, const std::string& name) {
    check.expect(failing(r) == want, name + " fails " + show(failing(r)) + ", wanted " + show(want));
}

}  // namespace

void gbv_suite(Check& check) {
    using testsupport::xu3_algebra;
    using testsupport::xy_algebra;
    for (const char* f : {"exterior1.json", "odd_laplacian.json", "trunc_poly.json"}) instance(check, fixture(f), f);
    std::mt19937_64 rng(20261017);
    int bv = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const auto a = random_instance(rng, 6);
        check.expect(a.dim() <= 6, "random instance above dimension 6");
        instance(check, a, "random instance " + std::to_string(trial));
        bv += check_bv(a).pass() ? 1 : 0;
    }
    check.expect(bv >= 20, "fewer than 20 random BV instances");

    const auto sq = xy_algebra(R"({"delta": {"degree": 1, "entries": [["x","y","1"], ["y","xy","1"]]}})");
    const auto third = xu3_algebra(R"({"delta": {"degree": 1, "entries": [["xu","u","1"], ["xu2","u2","4"]]}})");
    const auto mult =
        xu3_algebra(R"({"delta": {"degree": -1, "entries": [["1","x","1"], ["u","xu","1"], ["u2","xu2","1"]]}})");
    auto even = fixture("exterior1.json");
    even.operators["delta"] = exactq::MultilinearMap({even.space}, even.space, 0);
    for (auto c : {Convention::Gbv, Convention::Sw}) {
        const std::string tag = std::string(" under ") + convention_name(c);
        fails_exactly(check, check_bv(sq, "delta", c), {"delta_squared"}, "derivation with nonzero square" + tag);
        fails_exactly(check, check_bv(third, "delta", c), {"second_order", "seven_term"}, "third-order operator" + tag);
        fails_exactly(check, check_bv(mult, "delta", c), {"second_order", "seven_term"}, "Delta(1) != 0" + tag);
        fails_exactly(check, check_bv(even, "delta", c), {"delta_odd"}, "even operator" + tag);
    }
    auto swapped = fixture("odd_laplacian.json");
    swapped.operators["bracket"] = seven_term_bracket(swapped, "delta", Convention::Sw);
    fails_exactly(check, check_bv_nplus1(swapped, 1, Convention::Gbv), {"seven_term"}, "bracket of the other convention");
    const auto b1 = xy_algebra(R"({"bracket": {"degree": 2, "entries": []},
                                   "B1": {"degree": 3, "entries": [["1","xy","1"]]}})");
    fails_exactly(check, check_bv_nplus1(b1, 2), {"B1_derivation_product"}, "non-derivation B1");
    check.expect(check_bv_nplus1(fixture("bv3_zero.json"), 2).pass(), "zero BV_3 structure fails");
}

}  // namespace acceptance

#include "doctest.h"

#include "../support/cacti_oracle.hpp"
#include "../support/fixtures.hpp"
#include "loopforge/cacti/cacti.hpp"
#include "loopforge/error.hpp"
#include "loopforge/io/json_io.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

using namespace loopforge;
using namespace loopforge::cacti;
using testsupport::block;
using testsupport::permutations;
using testsupport::substituted_trace;

namespace {

Cactus fixture(const std::string& file) { return io::cactus_from_json(testsupport::load_fixture("cacti/" + file)); }

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::InvalidInput;
}

Rational q(std::int64_t a, std::int64_t b = 1) { return Rational(a, b); }

std::string show(const Cactus& c) { return io::to_json(c).dump(); }

}  // namespace

TEST_CASE("validation") {
    CHECK(code_of([] { fixture("bad_cycle.json"); }) == ErrorCode::MalformedCactus);
    CHECK(code_of([] { make_cactus({}, {}, {1, q(0)}); }) == ErrorCode::MalformedCactus);
    CHECK(code_of([] { make_cactus({q(1)}, {}, {1, q(1)}); }) == ErrorCode::MalformedCactus);
    CHECK(code_of([] { make_cactus({q(0)}, {}, {1, q(0)}); }) == ErrorCode::MalformedCactus);
    CHECK(code_of([] { make_cactus({q(1), q(1)}, {}, {1, q(0)}); }) == ErrorCode::MalformedCactus);  // disconnected
    CHECK(code_of([] { make_cactus({q(1), q(1)}, {Node{{{1, q(0)}}}}, {1, q(0)}); }) == ErrorCode::MalformedCactus);
    CHECK(code_of([] {
              make_cactus({q(1), q(1), q(1)}, {Node{{{1, q(0)}, {2, q(0)}}}, Node{{{1, q(0)}, {3, q(0)}}}}, {1, q(0)});
          }) == ErrorCode::MalformedCactus);  // two nodes at one point
    CHECK(code_of([] { make_cactus({q(1), q(1)}, {Node{{{1, q(0)}, {2, q(0)}}}}, {3, q(0)}); }) ==
          ErrorCode::MalformedCactus);
    CHECK(code_of([] { compose(identity_cactus(), 2, identity_cactus()); }) == ErrorCode::IndexOutOfRange);
}

TEST_CASE("pinching traces of small cacti") {
    SUBCASE("single lobe") {
        const auto t = pinching_trace(fixture("single.json"));
        CHECK(t.arcs == std::vector<Arc>{{1, q(0), q(1)}});
        CHECK(t.total == q(1));
    }
    SUBCASE("two lobes marked at the node") {
        CHECK(pinching_trace(fixture("two_lobes.json")).arcs == std::vector<Arc>{{1, q(0), q(1)}, {2, q(0), q(1)}});
    }
    SUBCASE("four lobes, read counterclockwise") {
        // 1 from its origin to the node with 2, all of 2 with 4 hanging halfway,
        // back on 1 to the node with 3, around 3, and home on 1.
        const auto t = pinching_trace(fixture("four_lobes.json"));
        CHECK(t.arcs == std::vector<Arc>{{1, q(0), q(1, 4)}, {2, q(0), q(1, 2)}, {4, q(0), q(1, 2)},
                                         {2, q(1, 2), q(1, 2)}, {1, q(1, 4), q(1, 2)}, {3, q(0), q(1, 2)},
                                         {1, q(3, 4), q(1, 4)}});
        CHECK(t.total == q(3));
    }
    SUBCASE("three lobes at one point, marked there on lobe 2") {
        // order (1 3 2): leaving 2 goes on to 1, leaving 1 goes on to 3
        const auto t = pinching_trace(fixture("three_at_a_point.json"));
        CHECK(t.arcs == std::vector<Arc>{{2, q(1, 2), q(1)}, {1, q(1), q(2)}, {3, q(0), q(1)}});
    }
    SUBCASE("positions report the departing lobe at nodes") {
        const auto c = fixture("four_lobes.json");
        CHECK(trace_position(c, q(1, 4)) == Incidence{2, q(0)});
        CHECK(trace_position(c, q(1, 8)) == Incidence{1, q(1, 8)});
        CHECK(trace_position(c, q(1)) == Incidence{4, q(1, 4)});
        CHECK(trace_position(c, q(5, 4)) == Incidence{2, q(1, 2)});
        CHECK(trace_position(c, q(3)) == Incidence{1, q(0)});
    }
    SUBCASE("every lobe is covered exactly once") {
        std::mt19937_64 rng(3);
        for (int trial = 0; trial < 200; ++trial) {
            const auto c = random_cactus(rng, 1 + trial % 5);
            std::vector<Rational> covered(c.lobes());
            for (const auto& a : pinching_trace(c).arcs) {
                CHECK(a.length.sign() > 0);
                covered[static_cast<std::size_t>(a.lobe - 1)] += a.length;
            }
            CHECK(covered == c.circumference);
        }
    }
}

TEST_CASE("canonical form") {
    const auto a = fixture("two_lobes.json"), b = fixture("two_lobes_reordered.json");
    CHECK_FALSE(a == b);
    CHECK(canonical_form(a) == canonical_form(b));
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 100; ++trial) {
        const auto c = random_cactus(rng, 1 + trial % 4);
        CHECK(canonical_form(canonical_form(c)) == canonical_form(c));
        auto perms = permutations(static_cast<int>(c.lobes()));
        const auto& p = perms[static_cast<std::size_t>(trial) % perms.size()];
        CHECK(canonical_form(relabel(canonical_form(c), p)) == canonical_form(relabel(c, p)));
    }
}

TEST_CASE("unit laws") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const auto c = canonical_form(random_cactus(rng, 1 + trial % 4));
        CAPTURE(show(c));
        for (int i = 1; i <= static_cast<int>(c.lobes()); ++i) CHECK(compose(c, i, identity_cactus()) == c);
        CHECK(compose(identity_cactus(c.total()), 1, c) == c);
        CHECK(compose(identity_cactus(), 1, c) == canonical_form(dilate(c, Rational(1) / c.total())));
    }
}

TEST_CASE("composition: circumference, associativity, disjoint slots, trace substitution") {
    std::mt19937_64 rng(2026);
    for (int trial = 0; trial < 150; ++trial) {
        const auto f = random_cactus(rng, 1 + trial % 3);
        const auto g = random_cactus(rng, 1 + (trial / 3) % 3);
        const auto h = random_cactus(rng, 1 + (trial / 9) % 3);
        const int kf = static_cast<int>(f.lobes()), kg = static_cast<int>(g.lobes());
        CAPTURE(show(f));
        CAPTURE(show(g));
        CAPTURE(show(h));
        for (int i = 1; i <= kf; ++i) {
            const auto fg = compose(f, i, g);
            CHECK(fg.lobes() == f.lobes() + g.lobes() - 1);
            CHECK(fg.total() == f.total());
            CHECK(pinching_trace(fg).arcs == substituted_trace(f, i, g));
            for (int j = 1; j <= kg; ++j) {
                CAPTURE(i);
                CAPTURE(j);
                CHECK(compose(f, i, compose(g, j, h)) == compose(fg, i + j - 1, h));
            }
            for (int j = i + 1; j <= kf; ++j)
                CHECK(compose(fg, j + kg - 1, h) == compose(compose(f, j, h), i, g));
        }
    }
}

TEST_CASE("equivariance, exhaustive for up to three lobes") {
    std::mt19937_64 rng(5);
    for (int k = 1; k <= 3; ++k)
        for (int l = 1; l <= 3; ++l)
            for (int trial = 0; trial < 3; ++trial) {
                const auto c1 = random_cactus(rng, k), c2 = random_cactus(rng, l);
                for (const auto& p : permutations(k))
                    for (const auto& r : permutations(l))
                        for (int i = 1; i <= k; ++i) {
                            const auto lhs = compose(relabel(c1, p), p[static_cast<std::size_t>(i - 1)], relabel(c2, r));
                            const auto rhs = canonical_form(relabel(compose(c1, i, c2), block(p, i, r)));
                            CHECK(lhs == rhs);
                        }
            }
}

TEST_CASE("json round trip") {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 30; ++trial) {
        const auto c = random_cactus(rng, 1 + trial % 4);
        CHECK(io::cactus_from_json(io::to_json(c)) == c);
    }
}

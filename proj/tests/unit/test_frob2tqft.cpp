#include "doctest.h"

#include "../support/fixtures.hpp"
#include "../support/random_cobordism.hpp"
#include "loopforge/error.hpp"
#include "loopforge/exactq/linalg.hpp"
#include "loopforge/frob2tqft/frobenius.hpp"
#include "loopforge/io/json_io.hpp"

#include <random>

using namespace loopforge;
using namespace loopforge::frob2tqft;
using exactq::kron;
using testsupport::random_word;

namespace {

FrobeniusAlgebra algebra(const std::string& file) {
    return io::frobenius_from_json(testsupport::load_fixture("algebras/" + file));
}

CobordismWord word(const std::string& file) {
    return io::cobordism_from_json(testsupport::load_fixture("cobordisms/" + file));
}

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::InvalidInput;
}

std::vector<FrobeniusAlgebra> all_algebras() {
    std::vector<FrobeniusAlgebra> out;
    for (const char* f : {"ground_field.json", "dual_numbers.json", "q_sqrt2.json"}) out.push_back(algebra(f));
    for (const char* g : {"z2", "z3", "klein4", "s3"}) out.push_back(dw_center_algebra(FiniteGroup::builtin(g)));
    return out;
}

RationalMatrix I(std::size_t d) { return RationalMatrix::identity(d); }

}  // namespace

TEST_CASE("validate_frobenius examples") {
    CHECK_NOTHROW(algebra("ground_field.json"));
    const FrobeniusAlgebra dual = algebra("dual_numbers.json");
    // Pairing [[0,1],[1,0]], determinant -1.
    CHECK(dual.pairing() == RationalMatrix::from_rows({{0, 1}, {1, 0}}));
    CHECK(dual.pairing()(0, 0) * dual.pairing()(1, 1) - dual.pairing()(0, 1) * dual.pairing()(1, 0) == Rational(-1));

    const auto bad = io::algebra_from_json(testsupport::load_fixture("algebras/dual_numbers_bad_trace.json"));
    const auto vs = frobenius_violations(bad.space, bad.ops.at("dot"), bad.vectors.at("unit"), bad.vectors.at("trace"));
    REQUIRE(vs.size() == 1);
    CHECK(vs[0].axiom == "nondegeneracy");
    CHECK(code_of([] { algebra("dual_numbers_bad_trace.json"); }) == ErrorCode::NotAnAlgebra);

    // M2(Q) is not commutative; first witness (e11, e12).
    auto m2 = io::algebra_from_json(testsupport::load_fixture("algebras/m2q.json"));
    exactq::Vector tr{1, 0, 0, 1};
    const auto mv = frobenius_violations(m2.space, m2.ops.at("dot"), m2.vectors.at("unit"), tr);
    REQUIRE(!mv.empty());
    CHECK(mv[0].axiom == "commutativity");
    CHECK(mv[0].witness == std::vector<std::size_t>{0, 1});
}

TEST_CASE("comultiplication examples and coalgebra laws") {
    const Coalgebra g = coalgebra_of(algebra("ground_field.json"));
    CHECK(g.comultiplication == RationalMatrix::from_rows({{1}}));

    const FrobeniusAlgebra dual = algebra("dual_numbers.json");
    const Coalgebra c = coalgebra_of(dual);
    // Delta(1) = 1(x)x + x(x)1, Delta(x) = x(x)x.
    CHECK(c.comultiplication == RationalMatrix::from_rows({{0, 0}, {1, 0}, {1, 0}, {0, 1}}));

    for (const auto& f : all_algebras()) {
        const std::size_t d = f.dim();
        const Coalgebra co = coalgebra_of(f);
        const RationalMatrix& D = co.comultiplication;
        CHECK(kron(D, I(d)) * D == kron(I(d), D) * D);
        CHECK(token_matrix(f, Token::Swap) * D == D);
        CHECK(kron(RationalMatrix::row(co.counit), I(d)) * D == I(d));
        CHECK(kron(I(d), RationalMatrix::row(co.counit)) * D == I(d));
        CHECK(bimodule_violations(f, co).empty());
    }
}

TEST_CASE("cobordism relations hold for every algebra") {
    for (const auto& f : all_algebras()) {
        const std::size_t d = f.dim();
        CHECK(eval_cobordism(f, word("unit_left.json")) == I(d));
        CHECK(eval_cobordism(f, CobordismWord::parse("cylinder cap_unit | pants")) == I(d));
        CHECK(eval_cobordism(f, word("zigzag.json")) == I(d));
        CHECK(eval_cobordism(f, CobordismWord::parse("copairing cylinder | cylinder pairing")) == I(d));
        CHECK(eval_cobordism(f, word("assoc_left.json")) == eval_cobordism(f, word("assoc_right.json")));
        CHECK(eval_cobordism(f, CobordismWord::parse("pants | cap_trace")) ==
              eval_cobordism(f, CobordismWord::parse("pairing")));
        CHECK(eval_cobordism(f, CobordismWord::parse("swap | pants")) == f.product_matrix());
        // Frobenius relation: copants after pants equals both mixed composites.
        const auto frob = eval_cobordism(f, CobordismWord::parse("pants | copants"));
        CHECK(frob == eval_cobordism(f, CobordismWord::parse("copants cylinder | cylinder pants")));
        CHECK(frob == eval_cobordism(f, CobordismWord::parse("cylinder copants | pants cylinder")));
        CHECK(eval_cobordism(f, CobordismWord::parse("cap_unit | cap_trace"))(0, 0) == f.apply_trace(f.unit()));
    }
    CHECK(code_of([] { word("bad_wiring.json"); }) == ErrorCode::WiringMismatch);
    CHECK(code_of([] { CobordismWord::parse("pants | tube"); }) == ErrorCode::Parse);
}

TEST_CASE("sewing consistency on random words") {
    std::mt19937_64 rng(31);
    const auto algs = all_algebras();
    for (int trial = 0; trial < 50; ++trial) {
        const CobordismWord w = random_word(rng);
        const auto& f = algs[static_cast<std::size_t>(trial) % algs.size()];
        const RationalMatrix whole = eval_cobordism(f, w);
        for (std::size_t cut = 1; cut < w.layers.size(); ++cut) {
            CobordismWord lo, hi;
            lo.layers.assign(w.layers.begin(), w.layers.begin() + static_cast<long>(cut));
            hi.layers.assign(w.layers.begin() + static_cast<long>(cut), w.layers.end());
            CHECK(eval_cobordism(f, hi) * eval_cobordism(f, lo) == whole);
        }
        // Interchange: running a layer's first token before the rest changes nothing.
        for (std::size_t k = 0; k < w.layers.size(); ++k) {
            const auto& layer = w.layers[k];
            if (layer.size() < 2) continue;
            std::size_t pass_in = 0;
            for (std::size_t i = 1; i < layer.size(); ++i) pass_in += token_inputs(layer[i]);
            std::vector<Token> first{layer[0]};
            first.insert(first.end(), pass_in, Token::Cylinder);
            std::vector<Token> rest(token_outputs(layer[0]), Token::Cylinder);
            rest.insert(rest.end(), layer.begin() + 1, layer.end());
            CobordismWord split = w;
            split.layers[k] = first;
            split.layers.insert(split.layers.begin() + static_cast<long>(k) + 1, rest);
            CHECK(eval_cobordism(f, split) == whole);
        }
    }
}

TEST_CASE("closed surfaces: handle element against the explicit word") {
    for (const auto& f : all_algebras())
        for (std::size_t g = 0; g <= 3; ++g) {
            const Rational direct = closed_surface_invariant(f, g);
            CHECK(eval_cobordism(f, closed_surface_word(g))(0, 0) == direct);
            if (g == 1) CHECK(eval_cobordism(f, word("torus.json"))(0, 0) == direct);
        }
    CHECK(closed_surface_invariant(algebra("ground_field.json"), 5) == Rational(1));
    // Dual numbers: H = 2x, so trace(H) = 2 and H^2 = 0.
    const FrobeniusAlgebra dual = algebra("dual_numbers.json");
    CHECK(closed_surface_invariant(dual, 0) == Rational(0));
    CHECK(closed_surface_invariant(dual, 1) == Rational(2));
    CHECK(closed_surface_invariant(dual, 2) == Rational(0));
}

TEST_CASE("groups load and validate") {
    for (const char* g : {"z2", "z3", "z4", "klein4", "s3"}) {
        const FiniteGroup fromfile = io::group_from_json(testsupport::load_fixture(std::string("groups/") + g + ".json"));
        CHECK(fromfile.table() == FiniteGroup::builtin(g).table());
    }
    CHECK(code_of([] { io::group_from_json(testsupport::load_fixture("groups/not_a_group.json")); }) ==
          ErrorCode::InvalidGroup);
    CHECK(code_of([] { FiniteGroup::builtin("q8"); }) == ErrorCode::InvalidGroup);
    CHECK(FiniteGroup::builtin("z2xz3").order() == 6);

    // S3: classes of sizes 1, 3, 2 listed by smallest element (012, 021, 102).
    const auto cls = FiniteGroup::symmetric3().conjugacy_classes();
    REQUIRE(cls.size() == 3);
    CHECK(cls[0] == std::vector<std::size_t>{0});
    CHECK(cls[1] == std::vector<std::size_t>{1, 2, 5});
    CHECK(cls[2] == std::vector<std::size_t>{3, 4});
}

TEST_CASE("Dijkgraaf-Witten center algebras") {
    const FrobeniusAlgebra z2 = dw_center_algebra(FiniteGroup::cyclic(2));
    CHECK(z2.dim() == 2);
    CHECK(z2.trace() == exactq::Vector{Rational(1, 2), 0});
    CHECK(dw_center_algebra(FiniteGroup::symmetric3()).dim() == 3);
    const FrobeniusAlgebra triv = dw_center_algebra(FiniteGroup::builtin("trivial"));
    CHECK(triv.dim() == 1);
    CHECK(triv.trace() == exactq::Vector{1});
}

TEST_CASE("Dijkgraaf-Witten invariants agree with bundle counting") {
    CHECK(dw_partition_brute(FiniteGroup::cyclic(2), 1) == Rational(2));
    CHECK(dw_partition_brute(FiniteGroup::symmetric3(), 1) == Rational(3));
    CHECK(dw_partition_brute(FiniteGroup::cyclic(2), 2) == Rational(8));
    for (const char* name : {"z2", "z3", "z4", "klein4", "s3"}) {
        const FiniteGroup g = FiniteGroup::builtin(name);
        const FrobeniusAlgebra f = dw_center_algebra(g);
        for (std::size_t genus = 0; genus <= 2; ++genus)
            CHECK(closed_surface_invariant(f, genus) == dw_partition_brute(g, genus));
        CHECK(dw_partition_brute(g, 0) == Rational(1, static_cast<std::int64_t>(g.order())));
        // Commuting pairs / |G| is the class number.
        CHECK(dw_partition_brute(g, 1) == Rational(static_cast<std::int64_t>(g.conjugacy_classes().size())));
    }
    const FiniteGroup s3 = FiniteGroup::symmetric3();
    CHECK(dw_partition_brute(s3, 2, {1, 4000000000ULL}) == dw_partition_brute(s3, 2, {4, 4000000000ULL}));
    CHECK(code_of([&] { dw_partition_brute(s3, 3, {1, 1000}); }) == ErrorCode::SizeGuard);
}

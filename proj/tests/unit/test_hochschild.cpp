#include "doctest.h"

#include "../support/fixtures.hpp"
#include "../support/hochschild_helpers.hpp"
#include "loopforge/error.hpp"
#include "loopforge/exactq/linalg.hpp"
#include "loopforge/hochschild/hochschild.hpp"
#include "loopforge/io/json_io.hpp"

#include <functional>
#include <random>

using namespace loopforge;
using namespace loopforge::hochschild;
using exactq::RationalMatrix;

namespace {

DGAlgebra algebra(const std::string& file) {
    return io::dg_algebra_from_json(testsupport::load_fixture("algebras/" + file));
}

using namespace testsupport;
namespace oracle = testsupport::oracle;

std::map<int, std::size_t> dims(std::initializer_list<std::pair<const int, std::size_t>> l) { return l; }

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::InvalidInput;
}

}  // namespace

TEST_CASE("boundary on small chains") {
    const DGAlgebra q = algebra("ground_field.json");
    // c (x) a1 with c = a1 = 1: c a1 - a1 c = 0
    const Chain x = hochschild_boundary(q, self_bimodule(q), {1, {Rational(1)}});
    CHECK(x.length == 0);
    CHECK(is_zero(x.coeffs));

    const DGAlgebra dn = algebra("dual_numbers.json");
    const DGBimodule m = self_bimodule(dn);
    // basis 1, x: x (x) x -> x^2 - x^2 = 0, 1 (x) x -> x - x = 0
    CHECK(is_zero(hochschild_boundary(dn, m, {1, {0, 0, 0, Rational(1)}}).coeffs));
    CHECK(is_zero(hochschild_boundary(dn, m, {1, {0, Rational(1), 0, 0}}).coeffs));
    // x (x) 1 -> x - x = 0 as well; 1 (x) 1 -> 1 - 1
    CHECK(is_zero(hochschild_boundary(dn, m, {1, {0, 0, Rational(1), 0}}).coeffs));
    // length 2: 1 (x) x (x) x -> x (x) x - 1 (x) 0 + x (x) x = 2 x (x) x
    exactq::Vector c2(8);
    c2[3] = Rational(1);
    const Chain y = hochschild_boundary(dn, m, {2, c2});
    CHECK(y.coeffs == exactq::Vector{0, 0, 0, Rational(2)});
    CHECK(is_zero(hochschild_boundary(dn, m, {0, {Rational(1), Rational(1)}}).coeffs));
    CHECK(code_of([&] { hochschild_boundary(dn, m, {2, c2 = exactq::Vector(3)}); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("b^2 = 0 and delta^2 = 0 on every fixture") {
    for (const char* f : {"ground_field.json", "dual_numbers.json", "q_sqrt2.json", "m2q.json", "exterior_odd.json",
                          "koszul_dg.json"}) {
        CAPTURE(std::string(f));
        const DGAlgebra a = algebra(f);
        const DGBimodule m = self_bimodule(a);
        // exhaustive over basis chains of length <= 4, applied sparsely
        for (std::size_t n = 2; n <= 4; ++n) {
            const std::size_t count = m.space->dim() * power(a.dim(), n);
            for (std::size_t idx = 0; idx < count; ++idx) {
                Chain e{n, exactq::Vector(count)};
                e.coeffs[idx] = Rational(1);
                const Chain bb = hochschild_boundary(a, m, hochschild_boundary(a, m, e));
                REQUIRE(is_zero(bb.coeffs));
            }
        }
        const std::size_t top = a.dim() > 2 ? 2 : 4;
        for (std::size_t n = 0; n + 1 <= top; ++n) {
            CHECK((coboundary_matrix(a, m, n + 1) * coboundary_matrix(a, m, n)).is_zero());
            if (n >= 1) CHECK((boundary_matrix(a, m, n) * boundary_matrix(a, m, n + 1)).is_zero());
        }
    }
}

TEST_CASE("total differentials square to zero with internal differentials") {
    for (const char* f : {"exterior_odd.json", "koszul_dg.json", "dual_numbers.json"}) {
        CAPTURE(std::string(f));
        const DGAlgebra a = algebra(f);
        const DGBimodule m = self_bimodule(a);
        for (int t = -1; t <= 4; ++t) {
            CAPTURE(t);
            CHECK((total_chain_differential(a, m, 6, t) * total_chain_differential(a, m, 6, t + 1)).is_zero());
            CHECK((total_cochain_differential(a, m, 6, t + 1) * total_cochain_differential(a, m, 6, t)).is_zero());
        }
    }
}

TEST_CASE("cochain differential is the transpose of the chain differential with dual coefficients") {
    for (const char* f : {"dual_numbers.json", "m2q.json", "q_sqrt2.json"}) {
        CAPTURE(std::string(f));
        const DGAlgebra a = algebra(f);
        const std::size_t top = a.dim() > 2 ? 2 : 4;
        for (std::size_t n = 0; n <= top; ++n)
            CHECK(coboundary_matrix(a, dual_bimodule(a), n) == boundary_matrix(a, self_bimodule(a), n + 1).transpose());
    }
    CHECK(code_of([] { dual_bimodule(algebra("exterior_odd.json")); }) == ErrorCode::InvalidInput);
}

TEST_CASE("Hochschild homology of the ground field") {
    const DGAlgebra q = algebra("ground_field.json");
    const auto h = hochschild_homology(q, self_bimodule(q), 8, 0, 3);
    CHECK(h.dims == dims({{0, 1}, {1, 0}, {2, 0}, {3, 0}}));
    CHECK(h.stable);
    const auto c = hochschild_cohomology(q, self_bimodule(q), 8, 0, 3);
    CHECK(c.dims == dims({{0, 1}, {1, 0}, {2, 0}, {3, 0}}));
    CHECK(c.stable);
}

TEST_CASE("Hochschild homology agrees with the brute-force oracle") {
    SUBCASE("dual numbers") {
        const DGAlgebra a = algebra("dual_numbers.json");
        const auto h = hochschild_homology(a, self_bimodule(a), 8, 0, 3);
        CHECK(h.dims == dims({{0, 2}, {1, 1}, {2, 1}, {3, 1}}));
        CHECK(h.stable);
        CHECK(h.dims == oracle_dims(oracle_dual_numbers(), 0, 3, 5));
        // HH^* by the 2-periodic resolution A -0-> A -2x-> A -0-> ...
        const auto c = hochschild_cohomology(a, self_bimodule(a), 8, 0, 3);
        CHECK(c.dims == dims({{0, 2}, {1, 1}, {2, 1}, {3, 1}}));
        CHECK(c.stable);
    }
    SUBCASE("exterior algebra on an odd generator") {
        const DGAlgebra a = algebra("exterior_odd.json");
        const auto h = hochschild_homology(a, self_bimodule(a), 8, -1, 3);
        CHECK(h.dims == dims({{-1, 0}, {0, 1}, {1, 1}, {2, 1}, {3, 1}}));
        CHECK(h.stable);
        CHECK(h.dims == oracle_dims(oracle_exterior(), -1, 3, 6));
        // same total rank as the ungraded dual numbers over lengths <= 3, regraded
        std::size_t sum = 0;
        for (auto [t, d] : h.dims) sum += d;
        CHECK(sum == 4);
    }
    SUBCASE("Koszul-type DG algebra") {
        const DGAlgebra a = algebra("koszul_dg.json");
        const auto h = hochschild_homology(a, self_bimodule(a), 8, -1, 3);
        CHECK(h.stable);
        CHECK(h.dims == oracle_dims(oracle_koszul(), -1, 3, 5));
        CHECK(h.dims == dims({{-1, 0}, {0, 1}, {1, 1}, {2, 1}, {3, 1}}));
    }
    SUBCASE("matrix algebra is Morita trivial") {
        const DGAlgebra a = algebra("m2q.json");
        const auto h = hochschild_homology(a, self_bimodule(a), 3, 0, 2);
        CHECK(h.dims == dims({{0, 1}, {1, 0}, {2, 0}}));
        CHECK(h.dims == oracle_dims(oracle_m2(), 0, 2, 3));
        const auto c = hochschild_cohomology(a, self_bimodule(a), 3, 0, 2);
        CHECK(c.dims == dims({{0, 1}, {1, 0}, {2, 0}}));
    }
}

TEST_CASE("degree zero against direct linear solves") {
    for (const char* f : {"ground_field.json", "dual_numbers.json", "q_sqrt2.json", "m2q.json"}) {
        CAPTURE(std::string(f));
        const DGAlgebra a = algebra(f);
        const std::size_t d = a.dim();
        // center: z with z e_j - e_j z = 0 for all j
        RationalMatrix comm(d * d, d);
        std::vector<exactq::Vector> commutators;
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                const exactq::Vector v = combine(a.product.evaluate({i, j}), a.product.evaluate({j, i}), Rational(-1));
                commutators.push_back(v);
                for (std::size_t k = 0; k < d; ++k) comm(j * d + k, i) = v[k];
            }
        const std::size_t center = exactq::kernel_basis(comm).size();
        const std::size_t cocenter = d - exactq::mat_rank(RationalMatrix::from_rows(commutators));
        CHECK(hochschild_cohomology(a, self_bimodule(a), 2, 0, 0).dims.at(0) == center);
        CHECK(hochschild_homology(a, self_bimodule(a), 2, 0, 0).dims.at(0) == cocenter);
    }
}

TEST_CASE("truncation guard") {
    const DGAlgebra a = algebra("dual_numbers.json");
    CHECK(required_truncation(a, self_bimodule(a), 0, 3, false) == 4);
    CHECK(required_truncation(a, self_bimodule(a), 0, 3, true) == 4);
    CHECK(code_of([&] { hochschild_homology(a, self_bimodule(a), 3, 0, 3); }) == ErrorCode::TruncationTooSmall);
    try {
        hochschild_homology(a, self_bimodule(a), 2, 0, 3);
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("needs truncation >= 4") != std::string::npos);
    }
    const DGAlgebra e = algebra("exterior_odd.json");
    CHECK(required_truncation(e, self_bimodule(e), -1, 3, false) == 4);

    // a generator in degree 1 makes every total degree infinite
    const auto space = exactq::make_space(exactq::GradedVectorSpace({{"1", 0}, {"u", 1}}));
    exactq::MultilinearMap mul({space, space}, space);
    mul.set({0, 0, 0}, Rational(1));
    mul.set({1, 0, 1}, Rational(1));
    mul.set({1, 1, 0}, Rational(1));
    const DGAlgebra bad = make_dg_algebra(space, mul, {Rational(1), Rational(0)});
    CHECK(code_of([&] { hochschild_homology(bad, self_bimodule(bad), 8, 0, 1); }) == ErrorCode::TruncationTooSmall);
    CHECK(code_of([&] { hochschild_homology(a, self_bimodule(a), 8, 3, 0); }) == ErrorCode::InvalidInput);
}

TEST_CASE("DG algebra validation") {
    const auto j = testsupport::load_fixture("algebras/koszul_dg.json");
    auto broken = j;
    broken["operations"]["differential"]["entries"] = nlohmann::json::array({{"yz", "z", "1"}});
    // d(yz) = z breaks the Leibniz rule
    CHECK(code_of([&] { io::dg_algebra_from_json(broken); }) == ErrorCode::NotAnAlgebra);
    auto nonassoc = testsupport::load_fixture("algebras/cross_product.json");
    nonassoc["unit"] = "e1";
    CHECK(code_of([&] { io::dg_algebra_from_json(nonassoc); }) == ErrorCode::NotAnAlgebra);
    auto no_unit = j;
    no_unit.erase("unit");
    CHECK(code_of([&] { io::dg_algebra_from_json(no_unit); }) == ErrorCode::MissingOperator);
}

TEST_CASE("[m, m] = 0 exactly when the product is associative") {
    std::mt19937 rng(20261017);
    std::uniform_int_distribution<int> coeff(-2, 2);
    const DGAlgebra base = algebra("m2q.json");
    const auto space = base.space;
    const std::size_t d = base.dim();
    int associative_seen = 0, nonassociative_seen = 0;
    for (int trial = 0; trial < 20; ++trial) {
        exactq::MultilinearMap mu = base.product;
        if (trial % 2 == 0) {
            // transport along a random unitriangular change of basis: stays associative
            RationalMatrix p = RationalMatrix::identity(d);
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t k = i + 1; k < d; ++k) p(i, k) = Rational(coeff(rng));
            const RationalMatrix pinv = exactq::inverse(p);
            exactq::MultilinearMap t({space, space}, space);
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t k = 0; k < d; ++k) {
                    exactq::Vector x(d), y(d);
                    for (std::size_t r = 0; r < d; ++r) {
                        x[r] = p(r, i);
                        y[r] = p(r, k);
                    }
                    const exactq::Vector z = pinv.apply(mu.apply({x, y}));
                    for (std::size_t r = 0; r < d; ++r)
                        if (!z[r].is_zero()) t.set({r, i, k}, z[r]);
                }
            mu = t;
        } else {
            for (int k = 0; k < 2; ++k) {
                const std::size_t out = rng() % d, i = rng() % d, j = rng() % d;
                mu.add({out, i, j}, Rational(coeff(rng) == 0 ? 1 : coeff(rng)));
            }
        }
        bool assoc = true;
        for (std::size_t i = 0; i < d && assoc; ++i)
            for (std::size_t j = 0; j < d && assoc; ++j)
                for (std::size_t k = 0; k < d && assoc; ++k)
                    assoc = mu.apply({mu.evaluate({i, j}), [&] {
                                          exactq::Vector e(d);
                                          e[k] = Rational(1);
                                          return e;
                                      }()}) == mu.apply({[&] {
                                                             exactq::Vector e(d);
                                                             e[i] = Rational(1);
                                                             return e;
                                                         }(),
                                                         mu.evaluate({j, k})});
        // the bracket only reads the graded space, so an unvalidated product is fine here
        const DGAlgebra carrier{space, mu, base.unit, std::nullopt};
        Cochain m{2, exactq::Vector(d * d * d)};
        for (const auto& [key, v] : mu.coefficients()) m.coeffs[(key[0] * d + key[1]) * d + key[2]] = v;
        const Cochain mm = gerstenhaber_bracket(carrier, m, m);
        CHECK(mm.arity == 3);
        CHECK(is_zero(mm.coeffs) == assoc);
        (assoc ? associative_seen : nonassociative_seen)++;
    }
    CHECK(associative_seen >= 10);
    CHECK(nonassociative_seen >= 5);
    const DGAlgebra dn = algebra("dual_numbers.json");
    CHECK(is_zero(gerstenhaber_bracket(dn, product_cochain(dn), product_cochain(dn)).coeffs));
}

TEST_CASE("delta is a derivation of the cup product") {
    std::mt19937 rng(7);
    for (const char* f : {"dual_numbers.json", "exterior_odd.json", "m2q.json", "ground_field.json"}) {
        CAPTURE(std::string(f));
        const DGAlgebra a = algebra(f);
        const std::size_t top = a.dim() > 2 ? 1 : 2;
        for (std::size_t p = 0; p <= top; ++p)
            for (std::size_t q = 0; q <= top; ++q)
                for (int df : {0, 1})
                    for (int dg : {0, 1}) {
                        const Cochain x = random_cochain(a, p, df, rng), y = random_cochain(a, q, dg, rng);
                        if (is_zero(x.coeffs) || is_zero(y.coeffs)) continue;
                        CAPTURE(p);
                        CAPTURE(q);
                        const Cochain lhs = delta(a, cup(a, x, y));
                        const Cochain r1 = cup(a, delta(a, x), y), r2 = cup(a, x, delta(a, y));
                        CHECK(lhs.coeffs == combine(r1.coeffs, r2.coeffs, parity_sign(total(a, x))));
                    }
    }
}

TEST_CASE("cup product unit and associativity") {
    std::mt19937 rng(11);
    for (const char* f : {"dual_numbers.json", "exterior_odd.json", "m2q.json"}) {
        CAPTURE(std::string(f));
        const DGAlgebra a = algebra(f);
        const Cochain one = unit_cochain(a);
        for (std::size_t p = 0; p <= 2; ++p) {
            const Cochain x = random_cochain(a, p, 0, rng);
            CHECK(cup(a, one, x).coeffs == x.coeffs);
            CHECK(cup(a, x, one).coeffs == x.coeffs);
        }
        const Cochain x = random_cochain(a, 1, 0, rng), y = random_cochain(a, 1, -1, rng),
                      z = random_cochain(a, 0, 0, rng);
        CHECK(cup(a, cup(a, x, y), z).coeffs == cup(a, x, cup(a, y, z)).coeffs);
    }
}

TEST_CASE("bracket with the unit") {
    std::mt19937 rng(5);
    for (const char* f : {"dual_numbers.json", "exterior_odd.json", "m2q.json"}) {
        CAPTURE(std::string(f));
        const DGAlgebra a = algebra(f);
        const Cochain one = unit_cochain(a);
        CHECK(is_zero(gerstenhaber_bracket(a, product_cochain(a), one).coeffs));
        // normalized means vanishing on the first basis vector, which is the unit here
        const bool unit_is_e0 = a.unit[0] == Rational(1) && is_zero({a.unit.begin() + 1, a.unit.end()});
        for (std::size_t p = 0; p <= 2 && unit_is_e0; ++p) {
            const Cochain x = random_cochain(a, p, 0, rng, true);
            CHECK(is_zero(gerstenhaber_bracket(a, x, one).coeffs));
            CHECK(is_zero(gerstenhaber_bracket(a, one, x).coeffs));
        }
        for (std::size_t n = 1; n <= 2; ++n)
            for (const Cochain& u : cohomology_basis(a, n)) CHECK(is_coboundary(a, gerstenhaber_bracket(a, u, one)));
    }
}

TEST_CASE("graded Jacobi identity on random cochains") {
    std::mt19937 rng(3);
    for (const char* f : {"dual_numbers.json", "exterior_odd.json"}) {
        CAPTURE(std::string(f));
        const DGAlgebra a = algebra(f);
        auto norm = [&](const Cochain& x) { return total(a, x) - 1; };
        int checked = 0;
        for (int trial = 0; trial < 40; ++trial) {
            std::array<Cochain, 3> c;
            for (auto& x : c) {
                do x = random_cochain(a, rng() % 3, -static_cast<int>(rng() % 2), rng);
                while (is_zero(x.coeffs) || total(a, x) > 3);
            }
            const auto& [x, y, z] = c;
            const Cochain lhs = gerstenhaber_bracket(a, x, gerstenhaber_bracket(a, y, z));
            const Cochain r1 = gerstenhaber_bracket(a, gerstenhaber_bracket(a, x, y), z);
            const Cochain r2 = gerstenhaber_bracket(a, y, gerstenhaber_bracket(a, x, z));
            CHECK(is_zero(plus(lhs, plus(r1, r2, parity_sign(norm(x) * norm(y))), Rational(-1)).coeffs));
            ++checked;
        }
        CHECK(checked == 40);
    }
}

TEST_CASE("Gerstenhaber identities on cohomology classes") {
    for (const char* f : {"dual_numbers.json", "exterior_odd.json"}) {
        CAPTURE(std::string(f));
        const DGAlgebra a = algebra(f);
        std::vector<Cochain> classes;
        for (std::size_t n = 0; n <= 2; ++n)
            for (const Cochain& u : cohomology_basis(a, n)) classes.push_back(u);
        REQUIRE(classes.size() >= 3);
        for (const auto& u : classes)
            for (const auto& v : classes) {
                const long tu = total(a, u), tv = total(a, v);
                // graded commutativity of the cup product
                const Cochain uv = cup(a, u, v), vu = cup(a, v, u);
                CHECK(is_coboundary(a, plus(uv, vu, -parity_sign(tu * tv))));
                // graded skew symmetry of the bracket
                const Cochain b1 = gerstenhaber_bracket(a, u, v), b2 = gerstenhaber_bracket(a, v, u);
                CHECK(is_zero(plus(b1, b2, parity_sign((tu - 1) * (tv - 1))).coeffs));
                for (const auto& w : classes) {
                    if (u.arity + v.arity + w.arity > 4) continue;
                    // [u, v w] = [u, v] w + (-1)^{(|u|-1)|v|} v [u, w]
                    const Cochain lhs = gerstenhaber_bracket(a, u, cup(a, v, w));
                    const Cochain r1 = cup(a, gerstenhaber_bracket(a, u, v), w);
                    const Cochain r2 = cup(a, v, gerstenhaber_bracket(a, u, w));
                    CHECK(is_coboundary(a, plus(lhs, plus(r1, r2, parity_sign((tu - 1) * tv)), Rational(-1))));
                }
            }
    }
}

TEST_CASE("cup squares on the dual numbers") {
    const DGAlgebra a = algebra("dual_numbers.json");
    // coordinates (m; a_1..a_n) over the basis 1 = 0, x = 1
    auto basis_cochain = [&](std::size_t n, std::vector<std::size_t> t) {
        Cochain f{n, exactq::Vector(power(2, n + 1))};
        std::size_t idx = 0;
        for (auto i : t) idx = idx * 2 + i;
        f.coeffs[idx] = Rational(1);
        return f;
    };
    // x -> 1 is not a cocycle: delta f (x, x) = x f(x) - f(x^2) + f(x) x = 2x
    const Cochain naive = basis_cochain(1, {0, 1});
    const Cochain dn = delta(a, naive);
    CHECK(dn.coeffs[(1 * 2 + 1) * 2 + 1] == Rational(2));
    CHECK(cohomology_basis(a, 1).size() == 1);

    // HH^1 is spanned by the derivation x -> x; its cup square dies in cohomology
    const Cochain u = basis_cochain(1, {1, 1});
    CHECK(is_zero(delta(a, u).coeffs));
    CHECK_FALSE(is_coboundary(a, u));
    CHECK(is_coboundary(a, cup(a, u, u)));

    // HH^2 is spanned by (x, x) -> 1; its square is a nonzero class in HH^4
    const Cochain t = basis_cochain(2, {0, 1, 1});
    CHECK(is_zero(delta(a, t).coeffs));
    CHECK_FALSE(is_coboundary(a, t));
    const Cochain tt = cup(a, t, t);
    CHECK(is_zero(delta(a, tt).coeffs));
    CHECK_FALSE(is_coboundary(a, tt));
    // u t represents the HH^3 class
    CHECK_FALSE(is_coboundary(a, cup(a, u, t)));
}

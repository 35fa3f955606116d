#include "../support/fixtures.hpp"
#include "../support/hochschild_helpers.hpp"
#include "acceptance.hpp"
#include "loopforge/exactq/linalg.hpp"
#include "loopforge/hochschild/hochschild.hpp"

namespace acceptance {

using namespace loopforge;
using namespace loopforge::hochschild;
using exactq::RationalMatrix;
using namespace testsupport;

namespace {

const char* const fixtures[] = {"ground_field.json", "dual_numbers.json", "q_sqrt2.json",
                                "m2q.json",          "exterior_odd.json", "koszul_dg.json"};

DGAlgebra algebra(const std::string& file) {
    return io::dg_algebra_from_json(load_fixture("algebras/" + file));
}

exactq::Vector unit_vector(std::size_t d, std::size_t k) {
    exactq::Vector e(d);
    e[k] = Rational(1);
    return e;
}

bool associative(const exactq::MultilinearMap& mu, std::size_t d) {
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k)
                if (mu.apply({mu.evaluate({i, j}), unit_vector(d, k)}) != mu.apply({unit_vector(d, i), mu.evaluate({j, k})}))
                    return false;
    return true;
}

// Half the trials transport the product along a unitriangular change of basis
// (still associative), the rest add two random structure constants.
exactq::MultilinearMap perturbed(const DGAlgebra& base, int trial, std::mt19937& rng) {
    std::uniform_int_distribution<int> coeff(-2, 2);
    const auto space = base.space;
    const std::size_t d = base.dim();
    exactq::MultilinearMap mu = base.product;
    if (trial % 2 == 0) {
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
        return t;
    }
    for (int k = 0; k < 2; ++k) {
        const std::size_t out = rng() % d, i = rng() % d, j = rng() % d;
        const int c = coeff(rng);
        mu.add({out, i, j}, Rational(c == 0 ? 1 : c));
    }
    return mu;
}

}  // namespace

void hochschild_suite(Check& check) {
    for (const char* f : fixtures) {
        const DGAlgebra a = algebra(f);
        const DGBimodule m = self_bimodule(a);
        const std::string name(f);
        for (std::size_t n = 2; n <= 4; ++n) {
            const std::size_t count = m.space->dim() * power(a.dim(), n);
            for (std::size_t idx = 0; idx < count; ++idx) {
                Chain e{n, exactq::Vector(count)};
                e.coeffs[idx] = Rational(1);
                check.expect(is_zero(hochschild_boundary(a, m, hochschild_boundary(a, m, e)).coeffs),
                             name + ": b^2 != 0 at length " + std::to_string(n));
            }
        }
        // delta^2 lands in arity <= 4
        for (std::size_t n = 0; n <= 2; ++n)
            check.expect((coboundary_matrix(a, m, n + 1) * coboundary_matrix(a, m, n)).is_zero(),
                         name + ": delta^2 != 0 from arity " + std::to_string(n));
        for (int t = -1; t <= 3; ++t) {
            check.expect((total_chain_differential(a, m, 4, t) * total_chain_differential(a, m, 4, t + 1)).is_zero(),
                         name + ": total chain differential squares to nonzero");
            check.expect(
                (total_cochain_differential(a, m, 4, t + 1) * total_cochain_differential(a, m, 4, t)).is_zero(),
                name + ": total cochain differential squares to nonzero");
        }
    }

    for (const char* f : {"ground_field.json", "dual_numbers.json", "q_sqrt2.json", "m2q.json"}) {
        const DGAlgebra a = algebra(f);
        for (std::size_t n = 0; n <= 3; ++n)
            check.expect(coboundary_matrix(a, dual_bimodule(a), n) == boundary_matrix(a, self_bimodule(a), n + 1).transpose(),
                         std::string(f) + ": coboundary is not the transpose at arity " + std::to_string(n));
    }

    const DGAlgebra q = algebra("ground_field.json");
    const auto hq = hochschild_homology(q, self_bimodule(q), 8, 0, 3);
    check.expect(hq.dims == std::map<int, std::size_t>{{0, 1}, {1, 0}, {2, 0}, {3, 0}} && hq.stable,
                 "HH of the ground field is not (1, 0, 0, 0)");
    const DGAlgebra dn = algebra("dual_numbers.json");
    const auto h = hochschild_homology(dn, self_bimodule(dn), 8, 0, 3);
    check.expect(h.dims == std::map<int, std::size_t>{{0, 2}, {1, 1}, {2, 1}, {3, 1}}, "HH of the dual numbers");
    check.expect(h.stable, "dual numbers window is not stable");
    std::map<int, std::size_t> oracle;
    for (int t = 0; t <= 3; ++t) oracle[t] = static_cast<std::size_t>(testsupport::oracle::homology(oracle_dual_numbers(), t, 5));
    check.expect(h.dims == oracle, "dual numbers dims differ from the rank oracle");

    std::mt19937 rng(20261017);
    const DGAlgebra base = algebra("m2q.json");
    const std::size_t d = base.dim();
    for (int trial = 0; trial < 20; ++trial) {
        const exactq::MultilinearMap mu = perturbed(base, trial, rng);
        const DGAlgebra carrier{base.space, mu, base.unit, std::nullopt};
        Cochain c{2, exactq::Vector(d * d * d)};
        for (const auto& [key, v] : mu.coefficients()) c.coeffs[(key[0] * d + key[1]) * d + key[2]] = v;
        check.expect(is_zero(gerstenhaber_bracket(carrier, c, c).coeffs) == associative(mu, d),
                     "[m, m] = 0 disagrees with associativity on perturbation " + std::to_string(trial));
    }

    std::mt19937 crng(7);
    for (const char* f : {"dual_numbers.json", "exterior_odd.json", "m2q.json", "ground_field.json"}) {
        const DGAlgebra a = algebra(f);
        const std::size_t top = a.dim() > 2 ? 1 : 2;
        for (std::size_t p = 0; p <= top; ++p)
            for (std::size_t r = 0; r <= top; ++r)
                for (int df : {0, 1})
                    for (int dg : {0, 1}) {
                        const Cochain x = random_cochain(a, p, df, crng), y = random_cochain(a, r, dg, crng);
                        if (is_zero(x.coeffs) || is_zero(y.coeffs)) continue;
                        const Cochain lhs = delta(a, cup(a, x, y));
                        const Cochain r1 = cup(a, delta(a, x), y), r2 = cup(a, x, delta(a, y));
                        check.expect(lhs.coeffs == combine(r1.coeffs, r2.coeffs, parity_sign(total(a, x))),
                                     std::string(f) + ": delta is not a derivation of cup");
                    }
    }
}

}  // namespace acceptance

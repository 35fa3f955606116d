#include "loopforge/gbv/gbv.hpp"

#include "loopforge/error.hpp"

namespace loopforge::gbv {

namespace {

struct Factor {
    bool odd;       // exterior on an odd generator, else truncated polynomial
    int degree;
    int top;        // exponents 0..top-1
};

using Monomial = std::vector<int>;

struct Model {
    std::vector<Factor> factors;
    std::vector<Monomial> basis;
    std::map<Monomial, std::size_t> index;
    SpacePtr space;

    explicit Model(std::vector<Factor> fs) : factors(std::move(fs)) {
        Monomial m(factors.size(), 0);
        while (true) {
            index[m] = basis.size();
            basis.push_back(m);
            std::size_t p = factors.size();
            while (p > 0 && ++m[p - 1] == factors[p - 1].top) m[--p] = 0;
            if (p == 0) break;
        }
        std::vector<exactq::BasisElement> els;
        for (const auto& b : basis) els.push_back({name(b), degree(b)});
        space = exactq::make_space(exactq::GradedVectorSpace(els));
    }

    int degree(const Monomial& m) const {
        int d = 0;
        for (std::size_t f = 0; f < m.size(); ++f) d += m[f] * factors[f].degree;
        return d;
    }

    std::string name(const Monomial& m) const {
        std::string s;
        for (std::size_t f = 0; f < m.size(); ++f) {
            if (m[f] == 0) continue;
            if (!s.empty()) s += "*";
            s += (factors[f].odd ? "x" : "u") + std::to_string(f + 1);
            if (m[f] > 1) s += "^" + std::to_string(m[f]);
        }
        return s.empty() ? "1" : s;
    }

    // Product of monomials: (sign, result) or nullopt when it vanishes.
    std::optional<std::pair<int, Monomial>> mul(const Monomial& a, const Monomial& b) const {
        Monomial r(a.size());
        int swaps = 0;
        for (std::size_t f = 0; f < a.size(); ++f) {
            r[f] = a[f] + b[f];
            if (r[f] >= factors[f].top) return std::nullopt;
            if (factors[f].odd && b[f])
                for (std::size_t g = f + 1; g < a.size(); ++g) swaps += factors[g].odd ? a[g] : 0;
        }
        return std::make_pair(swaps % 2 ? -1 : 1, r);
    }

    MultilinearMap product() const {
        MultilinearMap p({space, space}, space, 0);
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (std::size_t j = 0; j < basis.size(); ++j)
                if (auto r = mul(basis[i], basis[j])) p.set({index.at(r->second), i, j}, Rational(r->first));
        return p;
    }
};

// Operators as sparse column maps: basis index -> list of (target, coeff).
using Sparse = std::map<std::size_t, std::map<std::size_t, Rational>>;

Sparse compose(const Sparse& outer, const Sparse& inner) {
    Sparse r;
    for (const auto& [j, col] : inner)
        for (const auto& [k, c] : col)
            if (auto it = outer.find(k); it != outer.end())
                for (const auto& [l, c2] : it->second) r[j][l] += c * c2;
    return r;
}

Sparse deriv_odd(const Model& m, std::size_t f) {
    Sparse r;
    for (std::size_t j = 0; j < m.basis.size(); ++j) {
        Monomial b = m.basis[j];
        if (!b[f]) continue;
        int before = 0;
        for (std::size_t g = 0; g < f; ++g) before += m.factors[g].odd ? b[g] : 0;
        b[f] = 0;
        r[j][m.index.at(b)] += Rational(before % 2 ? -1 : 1);
    }
    return r;
}

Sparse euler(const Model& m, std::size_t f) {
    Sparse r;
    for (std::size_t j = 0; j < m.basis.size(); ++j)
        if (m.basis[j][f]) r[j][j] += Rational(m.basis[j][f]);
    return r;
}

Sparse left_mult(const Model& m, std::size_t w) {
    Sparse r;
    for (std::size_t j = 0; j < m.basis.size(); ++j)
        if (auto p = m.mul(m.basis[w], m.basis[j])) r[j][m.index.at(p->second)] += Rational(p->first);
    return r;
}

}  // namespace

GradedOperatorAlgebra random_instance(std::mt19937_64& rng, std::size_t max_dim) {
    if (max_dim < 2) fail(ErrorCode::InvalidInput, "random instances need max_dim >= 2");
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    static const int odd_degrees[] = {1, -1, 3};
    static const int even_degrees[] = {0, 2, -2};

    // At least one exterior factor so that odd operators exist.
    std::vector<Factor> fs{{true, odd_degrees[pick(0, 2)], 2}};
    std::size_t dim = 2;
    for (int tries = pick(0, 2); tries > 0; --tries) {
        Factor f = pick(0, 1) ? Factor{true, odd_degrees[pick(0, 2)], 2}
                              : Factor{false, even_degrees[pick(0, 2)], pick(2, 3)};
        if (dim * static_cast<std::size_t>(f.top) > max_dim) continue;
        dim *= static_cast<std::size_t>(f.top);
        fs.insert(fs.begin() + pick(0, static_cast<int>(fs.size())), f);
    }
    const Model m(fs);

    std::vector<std::size_t> odd_f, even_f;
    for (std::size_t f = 0; f < fs.size(); ++f) (fs[f].odd ? odd_f : even_f).push_back(f);
    const std::size_t xi = odd_f[static_cast<std::size_t>(pick(0, static_cast<int>(odd_f.size()) - 1))];
    const int n = -fs[xi].degree;

    // Candidate terms of degree n.
    std::vector<Sparse> terms;
    for (auto f : odd_f)
        if (-fs[f].degree == n) {
            const Sparse d = deriv_odd(m, f);
            terms.push_back(d);
            for (auto u : even_f) {
                terms.push_back(compose(d, euler(m, u)));
                if (fs[u].degree == 0) {
                    Monomial b(fs.size(), 0);
                    b[u] = 1;
                    terms.push_back(compose(left_mult(m, m.index.at(b)), d));
                }
                terms.push_back(compose(compose(d, euler(m, u)), euler(m, u)));  // third order
            }
        }
    for (std::size_t w = 0; w < m.basis.size(); ++w)
        if (m.degree(m.basis[w]) == n) terms.push_back(left_mult(m, w));  // Delta(1) != 0

    Sparse delta;
    for (int k = pick(1, 3); k > 0; --k) {
        const auto& t = terms[static_cast<std::size_t>(pick(0, static_cast<int>(terms.size()) - 1))];
        const Rational c(pick(0, 1) ? pick(1, 2) : -pick(1, 2));
        for (const auto& [j, col] : t)
            for (const auto& [i, v] : col) delta[j][i] += c * v;
    }
    MultilinearMap dl({m.space}, m.space, n);
    for (const auto& [j, col] : delta)
        for (const auto& [i, v] : col)
            if (!v.is_zero()) dl.set({i, j}, v);
    if (pick(0, 3) == 0) {
        // Perturb one degree-compatible entry.
        std::vector<std::pair<std::size_t, std::size_t>> slots;
        for (std::size_t j = 0; j < dim; ++j)
            for (std::size_t i = 0; i < dim; ++i)
                if (m.degree(m.basis[i]) == m.degree(m.basis[j]) + n) slots.emplace_back(i, j);
        if (!slots.empty()) {
            const auto [i, j] = slots[static_cast<std::size_t>(pick(0, static_cast<int>(slots.size()) - 1))];
            dl.add({i, j}, Rational(1));
        }
    }
    Vector unit(dim);
    unit[0] = Rational(1);
    return make_operator_algebra(m.space, m.product(), unit, {{"delta", dl}});
}

}  // namespace loopforge::gbv

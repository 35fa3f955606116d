#include "loopforge/hochschild/hochschild.hpp"

#include "loopforge/error.hpp"
#include "loopforge/exactq/linalg.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <tuple>

namespace loopforge::hochschild {

namespace {

using Sparse = std::vector<std::pair<std::size_t, Rational>>;
using Tuple = std::vector<std::size_t>;  // (m, a_1..a_n)
using Emit = std::function<void(const Tuple&, const Rational&)>;

Rational sign(long parity) { return (parity % 2 + 2) % 2 ? Rational(-1) : Rational(1); }

// Dense structure-constant tables for one (A, M) pair.
struct Ctx {
    std::size_t da = 0, dm = 0;
    std::vector<int> dega, degm;
    std::vector<Sparse> mul;    // a*da+b -> ab
    std::vector<Sparse> left;   // a*dm+m -> am
    std::vector<Sparse> right;  // m*da+a -> ma
    std::vector<Sparse> difa, difm;
    std::vector<std::vector<std::tuple<std::size_t, std::size_t, Rational>>> mul_pre;  // c -> (a, b, coeff of c in ab)
    std::vector<Sparse> difa_pre;                                                      // c -> (x, coeff of c in dx)

    Ctx(const DGAlgebra& a, const DGBimodule& m) : da(a.dim()), dm(m.space->dim()) {
        for (std::size_t i = 0; i < da; ++i) dega.push_back(a.space->degree(i));
        for (std::size_t i = 0; i < dm; ++i) degm.push_back(m.space->degree(i));
        mul.resize(da * da);
        mul_pre.resize(da);
        for (const auto& [k, v] : a.product.coefficients()) {
            mul[k[1] * da + k[2]].emplace_back(k[0], v);
            mul_pre[k[0]].emplace_back(k[1], k[2], v);
        }
        left.resize(da * dm);
        for (const auto& [k, v] : m.left.coefficients()) left[k[1] * dm + k[2]].emplace_back(k[0], v);
        right.resize(dm * da);
        for (const auto& [k, v] : m.right.coefficients()) right[k[1] * da + k[2]].emplace_back(k[0], v);
        difa.resize(da);
        difa_pre.resize(da);
        if (a.differential)
            for (const auto& [k, v] : a.differential->coefficients()) {
                difa[k[1]].emplace_back(k[0], v);
                difa_pre[k[0]].emplace_back(k[1], v);
            }
        difm.resize(dm);
        if (m.differential)
            for (const auto& [k, v] : m.differential->coefficients()) difm[k[1]].emplace_back(k[0], v);
    }

    std::size_t count(std::size_t n) const {
        std::size_t c = dm;
        for (std::size_t i = 0; i < n; ++i) c *= da;
        return c;
    }
    std::size_t encode(const Tuple& t) const {
        std::size_t idx = t[0];
        for (std::size_t i = 1; i < t.size(); ++i) idx = idx * da + t[i];
        return idx;
    }
    Tuple decode(std::size_t idx, std::size_t n) const {
        Tuple t(n + 1);
        for (std::size_t i = n; i >= 1; --i) {
            t[i] = idx % da;
            idx /= da;
        }
        t[0] = idx;
        return t;
    }
    int internal(const Tuple& t) const {
        int s = degm[t[0]];
        for (std::size_t i = 1; i < t.size(); ++i) s += dega[t[i]];
        return s;
    }
    int chain_degree(const Tuple& t) const { return static_cast<int>(t.size() - 1) - internal(t); }
    int cochain_degree(const Tuple& t) const {
        int f = degm[t[0]];
        for (std::size_t i = 1; i < t.size(); ++i) f -= dega[t[i]];
        return static_cast<int>(t.size() - 1) + f;
    }

    // b(c, a_1..a_n)
    void chain_b(const Tuple& t, const Emit& emit) const {
        const std::size_t n = t.size() - 1;
        if (n == 0) return;
        Tuple k;
        for (const auto& [c, v] : right[t[0] * da + t[1]]) {
            k.assign({c});
            k.insert(k.end(), t.begin() + 2, t.end());
            emit(k, v);
        }
        for (std::size_t i = 1; i < n; ++i)
            for (const auto& [c, v] : mul[t[i] * da + t[i + 1]]) {
                k.assign(t.begin(), t.begin() + static_cast<long>(i));
                k.push_back(c);
                k.insert(k.end(), t.begin() + static_cast<long>(i) + 2, t.end());
                emit(k, sign(static_cast<long>(i)) * v);
            }
        // a_n moves past c, a_1..a_{n-1}
        int before = degm[t[0]];
        for (std::size_t i = 1; i < n; ++i) before += dega[t[i]];
        const Rational s = sign(static_cast<long>(n) + static_cast<long>(dega[t[n]]) * before);
        for (const auto& [c, v] : left[t[n] * dm + t[0]]) {
            k.assign({c});
            k.insert(k.end(), t.begin() + 1, t.end() - 1);
            emit(k, s * v);
        }
    }

    // Leibniz extension of the internal differentials
    void chain_d(const Tuple& t, const Emit& emit) const {
        int passed = 0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            const Sparse& d = i == 0 ? difm[t[0]] : difa[t[i]];
            const Rational s = sign(passed);
            for (const auto& [c, v] : d) {
                Tuple k = t;
                k[i] = c;
                emit(k, s * v);
            }
            passed += i == 0 ? degm[t[0]] : dega[t[i]];
        }
    }

    // delta applied to the basis cochain (m; b_1..b_n), emitting arity n+1
    // coordinates. Every term carries (-1)^{|f|} on top of the classical signs so
    // that delta + D is the total differential and all signs follow total degree.
    void cochain_delta(const Tuple& t, const Emit& emit) const {
        const std::size_t n = t.size() - 1;
        int f = degm[t[0]];
        for (std::size_t i = 1; i <= n; ++i) f -= dega[t[i]];
        Tuple k;
        // (-1)^{|a_1||f|} a_1 f(a_2..)
        for (std::size_t a1 = 0; a1 < da; ++a1)
            for (const auto& [c, v] : left[a1 * dm + t[0]]) {
                k.assign({c, a1});
                k.insert(k.end(), t.begin() + 1, t.end());
                emit(k, sign(static_cast<long>(dega[a1] + 1) * f) * v);
            }
        // (-1)^i f(.., a_i a_{i+1}, ..): slot i of f receives a product
        for (std::size_t i = 1; i <= n; ++i)
            for (const auto& [x, y, v] : mul_pre[t[i]]) {
                k.assign(t.begin(), t.begin() + static_cast<long>(i));
                k.push_back(x);
                k.push_back(y);
                k.insert(k.end(), t.begin() + static_cast<long>(i) + 1, t.end());
                emit(k, sign(static_cast<long>(i) + f) * v);
            }
        // (-1)^{n+1} f(a_1..a_n) a_{n+1}
        for (std::size_t an = 0; an < da; ++an)
            for (const auto& [c, v] : right[t[0] * da + an]) {
                k.assign({c});
                k.insert(k.end(), t.begin() + 1, t.end());
                k.push_back(an);
                emit(k, sign(static_cast<long>(n) + 1 + f) * v);
            }
    }

    // D f = d_M f - (-1)^{|f|} f d on the basis cochain (m; b)
    void cochain_d(const Tuple& t, const Emit& emit) const {
        const std::size_t n = t.size() - 1;
        int f = degm[t[0]];
        for (std::size_t i = 1; i <= n; ++i) f -= dega[t[i]];
        for (const auto& [c, v] : difm[t[0]]) {
            Tuple k = t;
            k[0] = c;
            emit(k, v);
        }
        int passed = 0;
        for (std::size_t i = 1; i <= n; ++i) {
            // (f d)(a) picks up f(.., d a_i, ..) with a_j = b_j before slot i
            for (const auto& [x, v] : difa_pre[t[i]]) {
                Tuple k = t;
                k[i] = x;
                emit(k, -sign(f + passed) * v);
            }
            passed += dega[t[i]];
        }
    }
};

constexpr std::size_t kMaxTuples = 50'000'000;
constexpr std::size_t kMaxBasis = 20'000;

using Basis = std::vector<std::pair<std::size_t, std::size_t>>;

std::map<int, Basis> bases_by_degree(const Ctx& c, std::size_t truncation, int lo, int hi, bool cochains) {
    std::size_t total = 0;
    for (std::size_t n = 0; n <= truncation; ++n) {
        total += c.count(n);
        if (total > kMaxTuples) fail(ErrorCode::SizeGuard, "truncated Hochschild complex has too many tensors");
    }
    std::map<int, Basis> out;
    for (int t = lo; t <= hi; ++t) out[t];
    for (std::size_t n = 0; n <= truncation; ++n)
        for (std::size_t idx = 0; idx < c.count(n); ++idx) {
            const Tuple t = c.decode(idx, n);
            const int deg = cochains ? c.cochain_degree(t) : c.chain_degree(t);
            if (deg < lo || deg > hi) continue;
            auto& b = out[deg];
            b.emplace_back(n, idx);
            if (b.size() > kMaxBasis)
                fail(ErrorCode::SizeGuard, "total degree " + std::to_string(deg) + " has more than " +
                                               std::to_string(kMaxBasis) + " basis tensors");
        }
    return out;
}

RationalMatrix assemble(const Ctx& c, const Basis& from, const Basis& to, bool cochains) {
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> row;
    for (std::size_t i = 0; i < to.size(); ++i) row[to[i]] = i;
    RationalMatrix m(to.size(), from.size());
    for (std::size_t j = 0; j < from.size(); ++j) {
        const auto [n, idx] = from[j];
        const Tuple t = c.decode(idx, n);
        const Rational outer = sign(static_cast<long>(n));
        auto put = [&](const Rational& s) {
            return [&, s](const Tuple& k, const Rational& v) {
                // terms beyond the truncation are dropped; the guard makes them zero
                const auto it = row.find({k.size() - 1, c.encode(k)});
                if (it != row.end()) m(it->second, j) += s * v;
            };
        };
        if (cochains) {
            c.cochain_delta(t, put(Rational(1)));
            c.cochain_d(t, put(Rational(1)));
        } else {
            c.chain_b(t, put(Rational(1)));
            c.chain_d(t, put(outer));
        }
    }
    return m;
}

HomologyResult compute(const DGAlgebra& a, const DGBimodule& m, std::size_t truncation, int lo, int hi,
                       bool cochains) {
    if (lo > hi) fail(ErrorCode::InvalidInput, "empty degree window");
    validate_bimodule(a, m);
    const std::size_t need = required_truncation(a, m, lo, hi, cochains);
    if (truncation < need)
        fail(ErrorCode::TruncationTooSmall, "degree window " + std::to_string(lo) + ".." + std::to_string(hi) +
                                                " needs truncation >= " + std::to_string(need) + ", got " +
                                                std::to_string(truncation) + "; raise --truncation or shrink the window");
    const Ctx c(a, m);
    auto dims_at = [&](std::size_t n) {
        const auto bases = bases_by_degree(c, n, lo - 1, hi + 1, cochains);
        std::map<int, std::size_t> dims;
        for (int t = lo; t <= hi; ++t) {
            const Basis &below = bases.at(t - 1), &mid = bases.at(t), &above = bases.at(t + 1);
            RationalMatrix d_in, d_out;
            if (cochains) {
                d_in = assemble(c, below, mid, true);
                d_out = assemble(c, mid, above, true);
            } else {
                d_in = assemble(c, above, mid, false);
                d_out = assemble(c, mid, below, false);
            }
            dims[t] = exactq::homology_dimension(d_in, d_out);
        }
        return dims;
    };
    HomologyResult r;
    r.truncation = truncation;
    r.dims = dims_at(truncation);
    r.stable = dims_at(truncation + 1) == r.dims;
    return r;
}

void require_spaces(const MultilinearMap& f, std::size_t arity, int shift, const std::string& what) {
    if (f.arity() != arity) fail(ErrorCode::ArityMismatch, what + " has arity " + std::to_string(f.arity()));
    if (f.shift() != shift)
        fail(ErrorCode::DegreeMismatch, what + " must have degree " + std::to_string(shift));
}

Vector add_scaled(Vector x, const Vector& y, const Rational& s) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += s * y[i];
    return x;
}

std::string basis_word(const exactq::GradedVectorSpace& v, const Tuple& t) {
    std::string s;
    for (auto i : t) s += (s.empty() ? "" : ",") + v.name(i);
    return "(" + s + ")";
}

void require_algebra_only(const DGAlgebra& a, const std::string& what) {
    if (a.differential && !a.differential->is_zero())
        fail(ErrorCode::InvalidInput, what + " is only available for algebras with zero differential");
}

Ctx self_ctx(const DGAlgebra& a) { return Ctx(a, self_bimodule(a)); }

void require_cochain(const Ctx& c, const Cochain& f) {
    if (f.coeffs.size() != c.count(f.arity))
        fail(ErrorCode::DimensionMismatch, "cochain of arity " + std::to_string(f.arity) + " needs " +
                                               std::to_string(c.count(f.arity)) + " coordinates");
}

}  // namespace

DGAlgebra make_dg_algebra(SpacePtr space, MultilinearMap product, Vector unit,
                          std::optional<MultilinearMap> differential) {
    require_spaces(product, 2, 0, "product");
    for (const auto& s : product.sources())
        if (!exactq::same_space(s, space)) fail(ErrorCode::DimensionMismatch, "product must act on the algebra");
    if (!exactq::same_space(product.target(), space))
        fail(ErrorCode::DimensionMismatch, "product must land in the algebra");
    if (unit.size() != space->dim()) fail(ErrorCode::DimensionMismatch, "unit has the wrong length");
    for (std::size_t i = 0; i < unit.size(); ++i)
        if (!unit[i].is_zero() && space->degree(i) != 0) fail(ErrorCode::DegreeMismatch, "unit must have degree 0");
    if (differential) {
        require_spaces(*differential, 1, 1, "differential");
        if (!exactq::same_space(differential->sources()[0], space) ||
            !exactq::same_space(differential->target(), space))
            fail(ErrorCode::DimensionMismatch, "differential must be an endomorphism of the algebra");
    }
    DGAlgebra a{std::move(space), std::move(product), std::move(unit), std::move(differential)};
    const std::size_t d = a.dim();
    const auto& v = *a.space;
    auto mulv = [&](const Vector& x, const Vector& y) { return a.product.apply({x, y}); };
    auto basis = [&](std::size_t i) {
        Vector e(d);
        e[i] = Rational(1);
        return e;
    };
    for (std::size_t i = 0; i < d; ++i) {
        if (mulv(a.unit, basis(i)) != basis(i) || mulv(basis(i), a.unit) != basis(i))
            fail(ErrorCode::NotAnAlgebra, "unit fails on " + v.name(i));
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k)
                if (mulv(mulv(basis(i), basis(j)), basis(k)) != mulv(basis(i), mulv(basis(j), basis(k))))
                    fail(ErrorCode::NotAnAlgebra, "not associative at " + basis_word(v, {i, j, k}));
    }
    if (a.differential) {
        const auto& dif = *a.differential;
        for (std::size_t i = 0; i < d; ++i) {
            if (dif.apply({dif.evaluate({i})}) != Vector(d))
                fail(ErrorCode::NotAnAlgebra, "d^2 is not zero on " + v.name(i));
            for (std::size_t j = 0; j < d; ++j) {
                const Vector lhs = dif.apply({a.product.evaluate({i, j})});
                const Vector rhs = add_scaled(mulv(dif.evaluate({i}), basis(j)), mulv(basis(i), dif.evaluate({j})),
                                              sign(v.degree(i)));
                if (lhs != rhs) fail(ErrorCode::NotAnAlgebra, "Leibniz rule fails at " + basis_word(v, {i, j}));
            }
        }
    }
    return a;
}

DGBimodule self_bimodule(const DGAlgebra& a) { return {a.space, a.product, a.product, a.differential}; }

DGBimodule dual_bimodule(const DGAlgebra& a) {
    if (!a.space->concentrated_in_zero() || (a.differential && !a.differential->is_zero()))
        fail(ErrorCode::InvalidInput, "the dual bimodule is only built for ungraded algebras with zero differential");
    const std::size_t d = a.dim();
    std::vector<exactq::BasisElement> basis;
    for (std::size_t i = 0; i < d; ++i) basis.push_back({a.space->name(i) + "*", 0});
    const SpacePtr dual = exactq::make_space(exactq::GradedVectorSpace(basis));
    MultilinearMap left({a.space, dual}, dual), right({dual, a.space}, dual);
    // (e_a phi_i)(e_x) = phi_i(e_x e_a), (phi_i e_a)(e_x) = phi_i(e_a e_x)
    for (const auto& [k, v] : a.product.coefficients()) {
        const std::size_t i = k[0], x = k[1], y = k[2];
        left.add({x, y, i}, v);
        right.add({y, i, x}, v);
    }
    return {dual, std::move(left), std::move(right), std::nullopt};
}

void validate_bimodule(const DGAlgebra& a, const DGBimodule& m) {
    require_spaces(m.left, 2, 0, "left action");
    require_spaces(m.right, 2, 0, "right action");
    if (!exactq::same_space(m.left.sources()[0], a.space) || !exactq::same_space(m.left.sources()[1], m.space) ||
        !exactq::same_space(m.left.target(), m.space) || !exactq::same_space(m.right.sources()[0], m.space) ||
        !exactq::same_space(m.right.sources()[1], a.space) || !exactq::same_space(m.right.target(), m.space))
        fail(ErrorCode::DimensionMismatch, "bimodule actions have the wrong spaces");
    if (m.differential) {
        require_spaces(*m.differential, 1, 1, "module differential");
        if (!exactq::same_space(m.differential->sources()[0], m.space) ||
            !exactq::same_space(m.differential->target(), m.space))
            fail(ErrorCode::DimensionMismatch, "module differential must be an endomorphism of M");
    }
    const std::size_t da = a.dim(), dm = m.space->dim();
    auto e = [](std::size_t n, std::size_t i) {
        Vector v(n);
        v[i] = Rational(1);
        return v;
    };
    auto L = [&](const Vector& x, const Vector& y) { return m.left.apply({x, y}); };
    auto R = [&](const Vector& x, const Vector& y) { return m.right.apply({x, y}); };
    auto P = [&](const Vector& x, const Vector& y) { return a.product.apply({x, y}); };
    const auto& mv = *m.space;
    for (std::size_t k = 0; k < dm; ++k) {
        const Vector mk = e(dm, k);
        if (L(a.unit, mk) != mk || R(mk, a.unit) != mk)
            fail(ErrorCode::NotAnAlgebra, "unit does not act as the identity on " + mv.name(k));
        for (std::size_t i = 0; i < da; ++i) {
            const Vector ai = e(da, i);
            for (std::size_t j = 0; j < da; ++j) {
                const Vector aj = e(da, j);
                const std::string at = " at (" + a.space->name(i) + "," + a.space->name(j) + "," + mv.name(k) + ")";
                if (L(P(ai, aj), mk) != L(ai, L(aj, mk))) fail(ErrorCode::NotAnAlgebra, "left action fails" + at);
                if (R(R(mk, ai), aj) != R(mk, P(ai, aj))) fail(ErrorCode::NotAnAlgebra, "right action fails" + at);
                if (R(L(ai, mk), aj) != L(ai, R(mk, aj)))
                    fail(ErrorCode::NotAnAlgebra, "left and right actions do not commute" + at);
            }
        }
    }
    if (!m.differential) return;
    const auto& dm_ = *m.differential;
    const Vector zero_a(da);
    for (std::size_t k = 0; k < dm; ++k) {
        const Vector mk = e(dm, k);
        if (dm_.apply({dm_.apply({mk})}) != Vector(dm)) fail(ErrorCode::NotAnAlgebra, "d_M^2 is not zero");
        for (std::size_t i = 0; i < da; ++i) {
            const Vector ai = e(da, i);
            const Vector dai = a.differential ? a.differential->apply({ai}) : zero_a;
            const Vector dl = dm_.apply({L(ai, mk)});
            const Vector rl = add_scaled(L(dai, mk), L(ai, dm_.apply({mk})), sign(a.space->degree(i)));
            const Vector dr = dm_.apply({R(mk, ai)});
            const Vector rr = add_scaled(R(dm_.apply({mk}), ai), R(mk, dai), sign(mv.degree(k)));
            if (dl != rl || dr != rr)
                fail(ErrorCode::NotAnAlgebra, "module differential is not compatible with the actions at (" +
                                                  a.space->name(i) + "," + mv.name(k) + ")");
        }
    }
}

Chain hochschild_boundary(const DGAlgebra& a, const DGBimodule& m, const Chain& x) {
    const Ctx c(a, m);
    if (x.coeffs.size() != c.count(x.length))
        fail(ErrorCode::DimensionMismatch, "chain of length " + std::to_string(x.length) + " needs " +
                                               std::to_string(c.count(x.length)) + " coordinates");
    if (x.length == 0) return {0, Vector(c.count(0))};
    Chain out{x.length - 1, Vector(c.count(x.length - 1))};
    for (std::size_t idx = 0; idx < x.coeffs.size(); ++idx) {
        if (x.coeffs[idx].is_zero()) continue;
        c.chain_b(c.decode(idx, x.length),
                  [&](const Tuple& k, const Rational& v) { out.coeffs[c.encode(k)] += x.coeffs[idx] * v; });
    }
    return out;
}

RationalMatrix boundary_matrix(const DGAlgebra& a, const DGBimodule& m, std::size_t n) {
    const Ctx c(a, m);
    if (n == 0) return RationalMatrix(0, c.count(0));
    RationalMatrix out(c.count(n - 1), c.count(n));
    for (std::size_t j = 0; j < c.count(n); ++j)
        c.chain_b(c.decode(j, n), [&](const Tuple& k, const Rational& v) { out(c.encode(k), j) += v; });
    return out;
}

RationalMatrix coboundary_matrix(const DGAlgebra& a, const DGBimodule& m, std::size_t n) {
    const Ctx c(a, m);
    RationalMatrix out(c.count(n + 1), c.count(n));
    for (std::size_t j = 0; j < c.count(n); ++j)
        c.cochain_delta(c.decode(j, n), [&](const Tuple& k, const Rational& v) { out(c.encode(k), j) += v; });
    return out;
}

std::vector<std::pair<std::size_t, std::size_t>> total_basis(const DGAlgebra& a, const DGBimodule& m,
                                                             std::size_t truncation, int t, bool cochains) {
    return bases_by_degree(Ctx(a, m), truncation, t, t, cochains).at(t);
}

RationalMatrix total_chain_differential(const DGAlgebra& a, const DGBimodule& m, std::size_t truncation, int t) {
    const Ctx c(a, m);
    const auto b = bases_by_degree(c, truncation, t - 1, t, false);
    return assemble(c, b.at(t), b.at(t - 1), false);
}

RationalMatrix total_cochain_differential(const DGAlgebra& a, const DGBimodule& m, std::size_t truncation, int t) {
    const Ctx c(a, m);
    const auto b = bases_by_degree(c, truncation, t, t + 1, true);
    return assemble(c, b.at(t), b.at(t + 1), true);
}

std::size_t required_truncation(const DGAlgebra& a, const DGBimodule& m, int lo, int hi, bool cochains) {
    auto range = [](const SpacePtr& v) {
        int mn = std::numeric_limits<int>::max(), mx = std::numeric_limits<int>::min();
        for (std::size_t i = 0; i < v->dim(); ++i) {
            mn = std::min(mn, v->degree(i));
            mx = std::max(mx, v->degree(i));
        }
        return std::pair{mn, mx};
    };
    const auto [amin, amax] = range(a.space);
    const auto [cmin, cmax] = range(m.space);
    if (m.space->dim() == 0) return 0;
    // total degree of a length-n tensor lies in [lower(n), upper(n)]
    auto lower = [&](long n) { return cochains ? n * (1 - amax) + cmin : n * (1 - amax) - cmax; };
    auto upper = [&](long n) { return cochains ? n * (1 - amin) + cmax : n * (1 - amin) - cmin; };
    const long need_lo = lo - 1, need_hi = hi + 1;
    long n = 0;
    if (amax <= 0) {
        while (lower(n + 1) <= need_hi) ++n;
    } else if (amin >= 2) {
        while (upper(n + 1) >= need_lo) ++n;
    } else {
        fail(ErrorCode::TruncationTooSmall,
             "algebra has generators in degrees " + std::to_string(amin) + ".." + std::to_string(amax) +
                 ", so each total degree meets tensors of every length; no finite truncation is exact");
    }
    return static_cast<std::size_t>(n);
}

HomologyResult hochschild_homology(const DGAlgebra& a, const DGBimodule& m, std::size_t truncation, int lo, int hi) {
    return compute(a, m, truncation, lo, hi, false);
}

HomologyResult hochschild_cohomology(const DGAlgebra& a, const DGBimodule& m, std::size_t truncation, int lo,
                                     int hi) {
    return compute(a, m, truncation, lo, hi, true);
}

Cochain unit_cochain(const DGAlgebra& a) { return {0, a.unit}; }

Cochain product_cochain(const DGAlgebra& a) {
    const Ctx c = self_ctx(a);
    Cochain f{2, Vector(c.count(2))};
    for (const auto& [k, v] : a.product.coefficients()) f.coeffs[c.encode({k[0], k[1], k[2]})] = v;
    return f;
}

int cochain_degree(const DGAlgebra& a, const Cochain& f) {
    const Ctx c = self_ctx(a);
    require_cochain(c, f);
    std::optional<int> deg;
    for (std::size_t idx = 0; idx < f.coeffs.size(); ++idx) {
        if (f.coeffs[idx].is_zero()) continue;
        const int d = c.cochain_degree(c.decode(idx, f.arity)) - static_cast<int>(f.arity);
        if (deg && *deg != d) fail(ErrorCode::DegreeMismatch, "cochain is not homogeneous");
        deg = d;
    }
    return deg.value_or(0);
}

Cochain cup(const DGAlgebra& a, const Cochain& f, const Cochain& g) {
    const Ctx c = self_ctx(a);
    require_cochain(c, f);
    require_cochain(c, g);
    Cochain out{f.arity + g.arity, Vector(c.count(f.arity + g.arity))};
    for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
        if (f.coeffs[i].is_zero()) continue;
        const Tuple tf = c.decode(i, f.arity);
        int passed = 0;  // sum of |a_j| + 1 over the inputs of f
        for (std::size_t k = 1; k < tf.size(); ++k) passed += c.dega[tf[k]] + 1;
        for (std::size_t j = 0; j < g.coeffs.size(); ++j) {
            if (g.coeffs[j].is_zero()) continue;
            const Tuple tg = c.decode(j, g.arity);
            const int gdeg = c.cochain_degree(tg) - static_cast<int>(g.arity);
            const Rational s = sign(static_cast<long>(gdeg) * passed) * f.coeffs[i] * g.coeffs[j];
            for (const auto& [m, v] : c.mul[tf[0] * c.da + tg[0]]) {
                Tuple k{m};
                k.insert(k.end(), tf.begin() + 1, tf.end());
                k.insert(k.end(), tg.begin() + 1, tg.end());
                out.coeffs[c.encode(k)] += s * v;
            }
        }
    }
    return out;
}

Cochain pre_lie(const DGAlgebra& a, const Cochain& f, const Cochain& g) {
    const Ctx c = self_ctx(a);
    require_cochain(c, f);
    require_cochain(c, g);
    const std::size_t p = f.arity, q = g.arity;
    // nothing to insert into; the arity matches the other bracket term
    if (p == 0) return {q == 0 ? 0 : q - 1, Vector(c.count(q == 0 ? 0 : q - 1))};
    Cochain out{p + q - 1, Vector(c.count(p + q - 1))};
    // Suspension sign of an n-cochain evaluated on a_1..a_n.
    auto eps = [&](const Tuple& t) {
        const long n = static_cast<long>(t.size()) - 1;
        long s = 0;
        for (long k = 1; k <= n; ++k) s += (n - k) * (c.dega[t[static_cast<std::size_t>(k)]] + 1);
        return sign(s);
    };
    for (std::size_t j = 0; j < g.coeffs.size(); ++j) {
        if (g.coeffs[j].is_zero()) continue;
        const Tuple tg = c.decode(j, q);
        const long gnorm = c.cochain_degree(tg) - 1;  // |g| + q - 1
        const Rational G = eps(tg) * g.coeffs[j];
        for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
            if (f.coeffs[i].is_zero()) continue;
            const Tuple tf = c.decode(i, p);
            const Rational F = eps(tf) * f.coeffs[i];
            long passed = 0;  // suspended degrees before the insertion slot
            for (std::size_t slot = 1; slot <= p; ++slot) {
                if (tf[slot] == tg[0]) {
                    Tuple k{tf[0]};
                    k.insert(k.end(), tf.begin() + 1, tf.begin() + static_cast<long>(slot));
                    k.insert(k.end(), tg.begin() + 1, tg.end());
                    k.insert(k.end(), tf.begin() + static_cast<long>(slot) + 1, tf.end());
                    out.coeffs[c.encode(k)] += eps(k) * sign(gnorm * passed) * F * G;
                }
                passed += c.dega[tf[slot]] - 1;
            }
        }
    }
    return out;
}

Cochain gerstenhaber_bracket(const DGAlgebra& a, const Cochain& f, const Cochain& g) {
    const long nf = cochain_degree(a, f) + static_cast<long>(f.arity) - 1;
    const long ng = cochain_degree(a, g) + static_cast<long>(g.arity) - 1;
    Cochain x = pre_lie(a, f, g);
    const Cochain y = pre_lie(a, g, f);
    if (x.arity != y.arity) fail(ErrorCode::ArityMismatch, "bracket terms disagree in arity");
    x.coeffs = add_scaled(x.coeffs, y.coeffs, -sign(nf * ng));
    return x;
}

bool is_coboundary(const DGAlgebra& a, const Cochain& z) {
    require_algebra_only(a, "is_coboundary");
    const Ctx c = self_ctx(a);
    require_cochain(c, z);
    if (z.arity == 0)
        return std::all_of(z.coeffs.begin(), z.coeffs.end(), [](const Rational& r) { return r.is_zero(); });
    Vector x;
    return exactq::solve(coboundary_matrix(a, self_bimodule(a), z.arity - 1), z.coeffs, x);
}

std::vector<Cochain> cohomology_basis(const DGAlgebra& a, std::size_t n) {
    require_algebra_only(a, "cohomology_basis");
    const DGBimodule m = self_bimodule(a);
    const auto cycles = exactq::kernel_basis(coboundary_matrix(a, m, n));
    std::vector<Vector> span;
    if (n > 0) {
        const RationalMatrix im = coboundary_matrix(a, m, n - 1);
        for (std::size_t j = 0; j < im.cols(); ++j) {
            Vector col(im.rows());
            for (std::size_t i = 0; i < im.rows(); ++i) col[i] = im(i, j);
            span.push_back(std::move(col));
        }
    }
    auto rank_of = [](const std::vector<Vector>& vs) {
        if (vs.empty()) return std::size_t{0};
        return exactq::mat_rank(RationalMatrix::from_rows(vs));
    };
    std::vector<Cochain> out;
    std::size_t r = rank_of(span);
    for (const auto& z : cycles) {
        span.push_back(z);
        const std::size_t r2 = rank_of(span);
        if (r2 > r) {
            out.push_back({n, z});
            r = r2;
        } else {
            span.pop_back();
        }
    }
    return out;
}

std::optional<Vector> cohomology_coordinates(const DGAlgebra& a, const std::vector<Cochain>& basis, const Cochain& z) {
    require_algebra_only(a, "cohomology_coordinates");
    const Ctx c = self_ctx(a);
    require_cochain(c, z);
    for (const auto& b : basis)
        if (b.arity != z.arity) fail(ErrorCode::ArityMismatch, "basis and cochain have different arities");
    RationalMatrix im(z.coeffs.size(), 0);
    if (z.arity > 0) im = coboundary_matrix(a, self_bimodule(a), z.arity - 1);
    RationalMatrix m(z.coeffs.size(), basis.size() + im.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < basis.size(); ++j) m(i, j) = basis[j].coeffs[i];
        for (std::size_t j = 0; j < im.cols(); ++j) m(i, basis.size() + j) = im(i, j);
    }
    Vector x;
    if (!exactq::solve(m, z.coeffs, x)) return std::nullopt;
    x.resize(basis.size());
    return x;
}

}  // namespace loopforge::hochschild

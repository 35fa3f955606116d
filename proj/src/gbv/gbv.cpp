#include "loopforge/gbv/gbv.hpp"

#include "loopforge/error.hpp"

#include <functional>

namespace loopforge::gbv {

namespace {

using exactq::sign_power;
using Tuple = std::vector<std::size_t>;
// Dense operator: column j is the image of basis vector j.
using Op = std::vector<Vector>;

Vector basis_vec(std::size_t d, std::size_t i) {
    Vector e(d);
    e[i] = Rational(1);
    return e;
}

Vector axpy(Vector x, const Vector& y, const Rational& s) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += s * y[i];
    return x;
}

bool is_zero_vec(const Vector& v) {
    for (const auto& c : v)
        if (!c.is_zero()) return false;
    return true;
}

std::string word(const exactq::GradedVectorSpace& v, const Tuple& t) {
    std::string s;
    for (auto i : t) s += (s.empty() ? "" : ",") + v.name(i);
    return "(" + s + ")";
}

void require_unary(const MultilinearMap& m, const SpacePtr& space, const std::string& name) {
    if (m.arity() != 1) fail(ErrorCode::ArityMismatch, "operator " + name + " must be unary");
    if (!exactq::same_space(m.sources()[0], space) || !exactq::same_space(m.target(), space))
        fail(ErrorCode::DimensionMismatch, "operator " + name + " must be an endomorphism of the algebra");
}

void require_bracket(const MultilinearMap& m, const SpacePtr& space) {
    if (m.arity() != 2) fail(ErrorCode::ArityMismatch, "bracket must be binary");
    for (const auto& s : m.sources())
        if (!exactq::same_space(s, space)) fail(ErrorCode::DimensionMismatch, "bracket must act on the algebra");
    if (!exactq::same_space(m.target(), space)) fail(ErrorCode::DimensionMismatch, "bracket must land in the algebra");
}

struct Tables {
    std::size_t d;
    const exactq::GradedVectorSpace& v;
    const MultilinearMap& product;
    std::vector<int> deg;

    explicit Tables(const GradedOperatorAlgebra& a) : d(a.dim()), v(*a.space), product(a.product) {
        for (std::size_t i = 0; i < d; ++i) deg.push_back(v.degree(i));
    }
    Vector e(std::size_t i) const { return basis_vec(d, i); }
    Vector mul(const Vector& x, const Vector& y) const { return product.apply({x, y}); }
    Vector mul(std::size_t i, std::size_t j) const { return product.evaluate({i, j}); }
};

// First failing tuple over {0..d-1}^k, or empty.
std::optional<Tuple> first_failure(std::size_t d, std::size_t k, const std::function<bool(const Tuple&)>& ok) {
    if (d == 0) return std::nullopt;
    Tuple t(k, 0);
    while (true) {
        if (!ok(t)) return t;
        std::size_t p = k;
        while (p > 0 && ++t[p - 1] == d) t[--p] = 0;
        if (p == 0) return std::nullopt;
    }
}

Clause make_clause(const std::string& name, const exactq::GradedVectorSpace& v, std::size_t k,
                   const std::function<bool(const Tuple&)>& ok, const std::string& what) {
    Clause c{name, true, {}, ""};
    if (auto w = first_failure(v.dim(), k, ok)) {
        c.pass = false;
        c.witness = *w;
        c.detail = what + " fails at " + word(v, *w);
    }
    return c;
}

Op to_op(const MultilinearMap& m, std::size_t d) {
    Op op(d);
    for (std::size_t j = 0; j < d; ++j) op[j] = m.evaluate({j});
    return op;
}

Vector op_apply(const Op& p, const Vector& x) {
    Vector out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j)
        if (!x[j].is_zero()) out = axpy(std::move(out), p[j], x[j]);
    return out;
}

// [P,Q] = PQ - (-1)^{|P||Q|} QP
Op commutator(const Op& p, int dp, const Op& q, int dq) {
    const Rational s = -sign_power(static_cast<long long>(dp) * dq);
    Op out(p.size());
    for (std::size_t j = 0; j < p.size(); ++j) out[j] = axpy(op_apply(p, q[j]), op_apply(q, p[j]), s);
    return out;
}

// deviation: Delta(ab) - Delta(a) b - (-1)^|a| a Delta(b)
Vector deviation(const Tables& t, const Op& delta, std::size_t a, std::size_t b) {
    Vector out = op_apply(delta, t.mul(a, b));
    out = axpy(std::move(out), t.mul(delta[a], t.e(b)), Rational(-1));
    return axpy(std::move(out), t.mul(t.e(a), delta[b]), -sign_power(t.deg[a]));
}

int delta_degree(const GradedOperatorAlgebra& a, const std::string& name) {
    const auto& m = a.op(name);
    require_unary(m, a.space, name);
    return m.shift();
}

Rational convention_sign(Convention c, int deg_a) {
    return c == Convention::Sw ? sign_power(deg_a) : sign_power(deg_a - 1);
}

MultilinearMap bracket_from(const GradedOperatorAlgebra& a, const std::string& delta,
                            const std::function<Rational(int)>& factor) {
    const int n = delta_degree(a, delta);
    const Tables t(a);
    const Op dl = to_op(a.op(delta), t.d);
    MultilinearMap out({a.space, a.space}, a.space, n);
    for (std::size_t i = 0; i < t.d; ++i)
        for (std::size_t j = 0; j < t.d; ++j) {
            const Vector v = deviation(t, dl, i, j);
            const Rational f = factor(t.deg[i]);
            for (std::size_t k = 0; k < t.d; ++k)
                if (!v[k].is_zero()) out.set({k, i, j}, f * v[k]);
        }
    return out;
}

Vector br(const MultilinearMap& b, const Vector& x, const Vector& y) { return b.apply({x, y}); }

Clause leibniz_clause(const std::string& name, const Tables& t, const MultilinearMap& b, int n) {
    return make_clause(name, t.v, 3, [&](const Tuple& w) {
        const auto [a, x, y] = std::tie(w[0], w[1], w[2]);
        const Vector lhs = br(b, t.e(a), t.mul(x, y));
        Vector rhs = t.mul(b.evaluate({a, x}), t.e(y));
        rhs = axpy(std::move(rhs), t.mul(t.e(x), b.evaluate({a, y})),
                   sign_power(static_cast<long long>(t.deg[a] + n) * t.deg[x]));
        return lhs == rhs;
    }, "[a,bc] = [a,b]c + (-1)^{(|a|+n)|b|} b[a,c]");
}

}  // namespace

const MultilinearMap& GradedOperatorAlgebra::op(const std::string& name) const {
    auto it = operators.find(name);
    if (it == operators.end()) fail(ErrorCode::MissingOperator, "operator '" + name + "' is not defined");
    return it->second;
}

GradedOperatorAlgebra make_operator_algebra(SpacePtr space, MultilinearMap product, Vector unit,
                                            std::map<std::string, MultilinearMap> operators) {
    if (!space) fail(ErrorCode::InvalidInput, "missing space");
    if (product.arity() != 2) fail(ErrorCode::ArityMismatch, "product must be binary");
    if (product.shift() != 0) fail(ErrorCode::DegreeMismatch, "product must have degree 0");
    for (const auto& s : product.sources())
        if (!exactq::same_space(s, space)) fail(ErrorCode::DimensionMismatch, "product must act on the algebra");
    if (!exactq::same_space(product.target(), space))
        fail(ErrorCode::DimensionMismatch, "product must land in the algebra");
    if (unit.size() != space->dim()) fail(ErrorCode::DimensionMismatch, "unit has the wrong length");
    for (std::size_t i = 0; i < unit.size(); ++i)
        if (!unit[i].is_zero() && space->degree(i) != 0) fail(ErrorCode::DegreeMismatch, "unit must have degree 0");
    for (const auto& [name, m] : operators) {
        if (m.arity() == 2 && name == "bracket")
            require_bracket(m, space);
        else
            require_unary(m, space, name);
    }
    GradedOperatorAlgebra a{std::move(space), std::move(product), std::move(unit), std::move(operators)};
    const Tables t(a);
    for (std::size_t i = 0; i < t.d; ++i) {
        if (t.mul(a.unit, t.e(i)) != t.e(i) || t.mul(t.e(i), a.unit) != t.e(i))
            fail(ErrorCode::NotAnAlgebra, "unit fails on " + t.v.name(i));
        for (std::size_t j = 0; j < t.d; ++j) {
            const Vector ij = t.mul(i, j);
            Vector ji = t.mul(j, i);
            for (auto& c : ji) c *= sign_power(static_cast<long long>(t.deg[i]) * t.deg[j]);
            if (ij != ji) fail(ErrorCode::NotAnAlgebra, "not graded commutative at " + word(t.v, {i, j}));
            for (std::size_t k = 0; k < t.d; ++k)
                if (t.mul(ij, t.e(k)) != t.mul(t.e(i), t.mul(j, k)))
                    fail(ErrorCode::NotAnAlgebra, "not associative at " + word(t.v, {i, j, k}));
        }
    }
    return a;
}

Convention convention_from_string(const std::string& s) {
    if (s == "gbv") return Convention::Gbv;
    if (s == "sw") return Convention::Sw;
    fail(ErrorCode::InvalidInput, "unknown sign convention '" + s + "' (expected gbv or sw)");
}

const char* convention_name(Convention c) { return c == Convention::Sw ? "sw" : "gbv"; }

MultilinearMap derive_bracket(const GradedOperatorAlgebra& a, const std::string& delta) {
    return bracket_from(a, delta, [](int da) { return sign_power(da); });
}

MultilinearMap seven_term_bracket(const GradedOperatorAlgebra& a, const std::string& delta, Convention c) {
    // deviation = s(a) [a,b] with s(a) = +-1, so [a,b] = s(a) * deviation
    return bracket_from(a, delta, [c](int da) { return convention_sign(c, da); });
}

bool Report::pass() const {
    for (const auto& c : clauses)
        if (!c.pass) return false;
    return true;
}

const Clause& Report::clause(const std::string& name) const {
    for (const auto& c : clauses)
        if (c.name == name) return c;
    fail(ErrorCode::InvalidInput, "report has no clause '" + name + "'");
}

Report check_gerstenhaber(const GradedOperatorAlgebra& a, const MultilinearMap& bracket, int n) {
    require_bracket(bracket, a.space);
    const Tables t(a);
    Report r;
    Clause deg{"bracket_degree", bracket.shift() == n || bracket.shift() == -n, {}, ""};
    if (!deg.pass) deg.detail = "bracket has degree " + std::to_string(bracket.shift()) + ", expected +-" + std::to_string(n);
    r.clauses.push_back(deg);
    auto sh = [&](std::size_t i) { return static_cast<long long>(t.deg[i] + n); };
    r.clauses.push_back(make_clause("skew", t.v, 2, [&](const Tuple& w) {
        Vector ba = bracket.evaluate({w[1], w[0]});
        for (auto& c : ba) c *= -sign_power(sh(w[0]) * sh(w[1]));
        return bracket.evaluate({w[0], w[1]}) == ba;
    }, "[a,b] = -(-1)^{(|a|+n)(|b|+n)} [b,a]"));
    r.clauses.push_back(make_clause("jacobi", t.v, 3, [&](const Tuple& w) {
        const Vector lhs = br(bracket, t.e(w[0]), bracket.evaluate({w[1], w[2]}));
        Vector rhs = br(bracket, bracket.evaluate({w[0], w[1]}), t.e(w[2]));
        rhs = axpy(std::move(rhs), br(bracket, t.e(w[1]), bracket.evaluate({w[0], w[2]})),
                   sign_power(sh(w[0]) * sh(w[1])));
        return lhs == rhs;
    }, "[a,[b,c]] = [[a,b],c] + (-1)^{(|a|+n)(|b|+n)} [b,[a,c]]"));
    r.clauses.push_back(leibniz_clause("leibniz", t, bracket, n));
    return r;
}

Report check_bv(const GradedOperatorAlgebra& a, const std::string& delta, Convention c) {
    const int n = delta_degree(a, delta);
    const Tables t(a);
    const Op dl = to_op(a.op(delta), t.d);
    Report r;

    Clause odd{"delta_odd", n % 2 != 0, {}, ""};
    if (!odd.pass) odd.detail = "Delta has even degree " + std::to_string(n);
    r.clauses.push_back(odd);

    r.clauses.push_back(make_clause("delta_squared", t.v, 1, [&](const Tuple& w) {
        return is_zero_vec(op_apply(dl, dl[w[0]]));
    }, "Delta^2 = 0"));

    Clause second{"second_order", true, {}, ""};
    if (!is_zero_vec(op_apply(dl, a.unit))) {
        second.pass = false;
        second.detail = "Delta(1) is not zero";
    } else {
        std::vector<Op> mult(t.d);
        for (std::size_t i = 0; i < t.d; ++i) {
            mult[i].resize(t.d);
            for (std::size_t j = 0; j < t.d; ++j) mult[i][j] = t.mul(i, j);
        }
        std::vector<Op> first(t.d);
        for (std::size_t i = 0; i < t.d; ++i) first[i] = commutator(dl, n, mult[i], t.deg[i]);
        second = make_clause("second_order", t.v, 3, [&](const Tuple& w) {
            const Op s = commutator(first[w[0]], n + t.deg[w[0]], mult[w[1]], t.deg[w[1]]);
            const Op th = commutator(s, n + t.deg[w[0]] + t.deg[w[1]], mult[w[2]], t.deg[w[2]]);
            for (const auto& col : th)
                if (!is_zero_vec(col)) return false;
            return true;
        }, "[[[Delta,L_a],L_b],L_c] = 0");
    }
    r.clauses.push_back(second);

    const MultilinearMap b = seven_term_bracket(a, delta, c);
    Clause seven = leibniz_clause("seven_term", t, b, n);
    if (!seven.pass)
        seven.detail = std::string("bracket solved from the seven-term relation (") + convention_name(c) +
                       ") is not a derivation: " + seven.detail;
    r.clauses.push_back(seven);

    Clause agree{"characterizations_agree", second.pass == seven.pass, {}, ""};
    if (!agree.pass)
        agree.detail = std::string("second-order test ") + (second.pass ? "passes" : "fails") +
                       " but the seven-term test " + (seven.pass ? "passes" : "fails");
    r.clauses.push_back(agree);
    return r;
}

Report check_bv_nplus1(const GradedOperatorAlgebra& a, int n, Convention c) {
    if (n < 1) fail(ErrorCode::InvalidInput, "BV_{n+1} needs n >= 1");
    const bool odd = n % 2 != 0;
    const int count = odd ? (n - 1) / 2 : n / 2;
    const Tables t(a);

    // Grading orientation: homological (+1) or cohomological (-1), read off
    // the bracket or Delta and then required of every operator.
    std::optional<MultilinearMap> bracket;
    if (auto it = a.operators.find("bracket"); it != a.operators.end()) bracket = it->second;
    if (!bracket && !odd) fail(ErrorCode::MissingOperator, "n is even, so operator 'bracket' must be given");
    int orient = 0;
    if (bracket) {
        require_bracket(*bracket, a.space);
        if (bracket->shift() != n && bracket->shift() != -n)
            fail(ErrorCode::DegreeMismatch, "bracket must have degree +-" + std::to_string(n));
        orient = bracket->shift() == n ? 1 : -1;
    }
    if (odd) {
        const int dd = delta_degree(a, "delta");
        if (dd != n && dd != -n) fail(ErrorCode::DegreeMismatch, "delta must have degree +-" + std::to_string(n));
        const int o = dd == n ? 1 : -1;
        if (orient != 0 && o != orient) fail(ErrorCode::DegreeMismatch, "delta and bracket disagree on the grading");
        orient = o;
        if (!bracket) bracket = seven_term_bracket(a, "delta", c);
    }
    for (int i = 1; i <= count; ++i) {
        const std::string name = "B" + std::to_string(i);
        const int want = orient * (4 * i - 1);
        if (delta_degree(a, name) != want)
            fail(ErrorCode::DegreeMismatch, name + " must have degree " + std::to_string(want));
    }
    for (const auto& [name, m] : a.operators) {
        if (name == "bracket" || name == "delta") continue;
        const bool known = name.size() > 1 && name[0] == 'B' &&
                           name.find_first_not_of("0123456789", 1) == std::string::npos &&
                           std::stoi(name.substr(1)) >= 1 && std::stoi(name.substr(1)) <= count;
        if (!known) fail(ErrorCode::InvalidInput, "unexpected operator '" + name + "' for n = " + std::to_string(n));
    }

    Report r = check_gerstenhaber(a, *bracket, n);
    const MultilinearMap& b = *bracket;
    for (int i = 1; i <= count; ++i) {
        const std::string name = "B" + std::to_string(i);
        const Op bo = to_op(a.op(name), t.d);
        const int db = orient * (4 * i - 1);
        r.clauses.push_back(make_clause(name + "_squared", t.v, 1, [&](const Tuple& w) {
            return is_zero_vec(op_apply(bo, bo[w[0]]));
        }, name + "^2 = 0"));
        r.clauses.push_back(make_clause(name + "_derivation_product", t.v, 2, [&](const Tuple& w) {
            Vector rhs = t.mul(bo[w[0]], t.e(w[1]));
            rhs = axpy(std::move(rhs), t.mul(t.e(w[0]), bo[w[1]]), sign_power(static_cast<long long>(db) * t.deg[w[0]]));
            return op_apply(bo, t.mul(w[0], w[1])) == rhs;
        }, name + "(ab) = " + name + "(a)b + (-1)^{|B||a|} a " + name + "(b)"));
        r.clauses.push_back(make_clause(name + "_derivation_bracket", t.v, 2, [&](const Tuple& w) {
            Vector rhs = br(b, bo[w[0]], t.e(w[1]));
            rhs = axpy(std::move(rhs), br(b, t.e(w[0]), bo[w[1]]),
                       sign_power(static_cast<long long>(db) * (t.deg[w[0]] + n)));
            return op_apply(bo, b.evaluate({w[0], w[1]})) == rhs;
        }, name + "[a,b] = [" + name + "a,b] + (-1)^{|B|(|a|+n)} [a," + name + "b]"));
    }
    if (odd) {
        const Op dl = to_op(a.op("delta"), t.d);
        r.clauses.push_back(make_clause("delta_squared", t.v, 1, [&](const Tuple& w) {
            return is_zero_vec(op_apply(dl, dl[w[0]]));
        }, "Delta^2 = 0"));
        r.clauses.push_back(make_clause("seven_term", t.v, 2, [&](const Tuple& w) {
            Vector rhs = b.evaluate({w[0], w[1]});
            for (auto& x : rhs) x *= convention_sign(c, t.deg[w[0]]);
            return deviation(t, dl, w[0], w[1]) == rhs;
        }, std::string("seven-term relation (") + convention_name(c) + ")"));
        r.clauses.push_back(make_clause("delta_derivation_bracket", t.v, 2, [&](const Tuple& w) {
            Vector rhs = br(b, dl[w[0]], t.e(w[1]));
            rhs = axpy(std::move(rhs), br(b, t.e(w[0]), dl[w[1]]), -sign_power(t.deg[w[0]]));
            return op_apply(dl, b.evaluate({w[0], w[1]})) == rhs;
        }, "Delta[a,b] = [Delta a,b] - (-1)^|a| [a,Delta b]"));
    }
    return r;
}

}  // namespace loopforge::gbv

#include "loopforge/frob2tqft/frobenius.hpp"

#include "loopforge/error.hpp"
#include "loopforge/exactq/linalg.hpp"

#include <sstream>

namespace loopforge::frob2tqft {

namespace {

Vector basis_vector(std::size_t d, std::size_t i) {
    Vector v(d);
    v[i] = Rational(1);
    return v;
}

std::string describe(const std::vector<Violation>& vs) {
    std::string out;
    for (const auto& v : vs) {
        if (!out.empty()) out += "; ";
        out += v.axiom;
        if (!v.witness.empty()) {
            out += " at (";
            for (std::size_t k = 0; k < v.witness.size(); ++k) out += (k ? "," : "") + std::to_string(v.witness[k]);
            out += ")";
        }
    }
    return out;
}

}  // namespace

Vector FrobeniusAlgebra::multiply(const Vector& a, const Vector& b) const { return product_.apply({a, b}); }

Rational FrobeniusAlgebra::apply_trace(const Vector& a) const {
    Rational s;
    for (std::size_t i = 0; i < a.size(); ++i) s += trace_[i] * a[i];
    return s;
}

std::vector<Violation> frobenius_violations(const exactq::SpacePtr& space, const MultilinearMap& product,
                                            const Vector& unit, const Vector& trace) {
    if (!space || !space->concentrated_in_zero())
        fail(ErrorCode::DegreeMismatch, "Frobenius algebras here live in degree 0");
    const std::size_t d = space->dim();
    if (product.arity() != 2 || product.shift() != 0 || !exactq::same_space(product.target(), space) ||
        !exactq::same_space(product.sources()[0], space) || !exactq::same_space(product.sources()[1], space))
        fail(ErrorCode::DimensionMismatch, "product must be a degree-0 bilinear map on the space");
    if (unit.size() != d || trace.size() != d)
        fail(ErrorCode::DimensionMismatch, "unit and trace must have length " + std::to_string(d));

    std::vector<Violation> out;
    auto first = [&](const std::string& axiom, auto&& bad, std::size_t arity) {
        std::vector<std::size_t> idx(arity, 0);
        for (;;) {
            if (bad(idx)) {
                out.push_back({axiom, idx});
                return;
            }
            std::size_t k = arity;
            while (k > 0 && ++idx[k - 1] == d) idx[--k] = 0;
            if (k == 0) return;
        }
    };
    first("commutativity", [&](const auto& i) { return product.evaluate({i[0], i[1]}) != product.evaluate({i[1], i[0]}); }, 2);
    first("associativity", [&](const auto& i) {
        const Vector l = product.apply({product.evaluate({i[0], i[1]}), basis_vector(d, i[2])});
        const Vector r = product.apply({basis_vector(d, i[0]), product.evaluate({i[1], i[2]})});
        return l != r;
    }, 3);
    first("unit", [&](const auto& i) {
        const Vector e = basis_vector(d, i[0]);
        return product.apply({unit, e}) != e || product.apply({e, unit}) != e;
    }, 1);
    RationalMatrix g(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const Vector p = product.evaluate({i, j});
            for (std::size_t k = 0; k < d; ++k) g(i, j) += trace[k] * p[k];
        }
    if (exactq::mat_rank(g) != d) out.push_back({"nondegeneracy", {}});
    return out;
}

FrobeniusAlgebra validate_frobenius(exactq::SpacePtr space, MultilinearMap product, Vector unit, Vector trace) {
    const auto vs = frobenius_violations(space, product, unit, trace);
    if (!vs.empty()) fail(ErrorCode::NotAnAlgebra, "not a Frobenius algebra: " + describe(vs));
    FrobeniusAlgebra f;
    const std::size_t d = space->dim();
    f.space_ = std::move(space);
    f.product_ = std::move(product);
    f.unit_ = std::move(unit);
    f.trace_ = std::move(trace);
    f.mult_ = f.product_.to_matrix();
    f.pairing_ = RationalMatrix(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k) f.pairing_(i, j) += f.trace_[k] * f.mult_(k, i * d + j);
    f.copairing_ = exactq::inverse(f.pairing_);
    return f;
}

Coalgebra coalgebra_of(const FrobeniusAlgebra& f) {
    const std::size_t d = f.dim();
    Coalgebra c{RationalMatrix(d * d, d), f.trace()};
    const RationalMatrix& ginv = f.copairing();
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                if (ginv(i, j).is_zero()) continue;
                // (a e_i) (x) e_j
                for (std::size_t k = 0; k < d; ++k) {
                    const Rational& ak = f.product_matrix()(k, a * d + i);
                    if (!ak.is_zero()) c.comultiplication(k * d + j, a) += ginv(i, j) * ak;
                }
            }
    return c;
}

std::vector<Violation> bimodule_violations(const FrobeniusAlgebra& f, const Coalgebra& c) {
    const std::size_t d = f.dim();
    const RationalMatrix& m = f.product_matrix();
    const RationalMatrix id = RationalMatrix::identity(d);
    std::vector<Violation> out;
    for (std::size_t x = 0; x < d; ++x) {
        // Left and right multiplication by e_x as d x d matrices.
        RationalMatrix lx(d, d), rx(d, d);
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t k = 0; k < d; ++k) {
                lx(k, a) = m(k, x * d + a);
                rx(k, a) = m(k, a * d + x);
            }
        const RationalMatrix delta_x = c.comultiplication * lx;        // Delta(x a)
        const RationalMatrix left = exactq::kron(lx, id) * c.comultiplication;   // x . Delta(a)
        const RationalMatrix right = exactq::kron(id, rx) * c.comultiplication;  // Delta(a) . x
        for (std::size_t a = 0; a < d; ++a) {
            bool ok = true;
            for (std::size_t r = 0; r < d * d && ok; ++r)
                ok = delta_x(r, a) == left(r, a) && delta_x(r, a) == right(r, a);
            if (!ok) {
                out.push_back({"bimodule", {x, a}});
                return out;
            }
        }
    }
    return out;
}

// ---- cobordisms

Token token_from_string(const std::string& s) {
    static const std::pair<const char*, Token> table[] = {
        {"pants", Token::Pants},         {"copants", Token::Copants},     {"cap_trace", Token::CapTrace},
        {"cap_unit", Token::CapUnit},    {"pairing", Token::Pairing},     {"copairing", Token::Copairing},
        {"cylinder", Token::Cylinder},   {"swap", Token::Swap}};
    for (const auto& [n, t] : table)
        if (s == n) return t;
    fail(ErrorCode::Parse, "unknown cobordism token '" + s + "'");
}

std::string token_name(Token t) {
    switch (t) {
        case Token::Pants: return "pants";
        case Token::Copants: return "copants";
        case Token::CapTrace: return "cap_trace";
        case Token::CapUnit: return "cap_unit";
        case Token::Pairing: return "pairing";
        case Token::Copairing: return "copairing";
        case Token::Cylinder: return "cylinder";
        case Token::Swap: return "swap";
    }
    return "?";
}

std::size_t token_inputs(Token t) {
    switch (t) {
        case Token::Pants: case Token::Pairing: case Token::Swap: return 2;
        case Token::Copants: case Token::CapTrace: case Token::Cylinder: return 1;
        case Token::CapUnit: case Token::Copairing: return 0;
    }
    return 0;
}

std::size_t token_outputs(Token t) {
    switch (t) {
        case Token::Copants: case Token::Copairing: case Token::Swap: return 2;
        case Token::Pants: case Token::CapUnit: case Token::Cylinder: return 1;
        case Token::CapTrace: case Token::Pairing: return 0;
    }
    return 0;
}

namespace {

std::size_t layer_in(const std::vector<Token>& l) {
    std::size_t n = 0;
    for (auto t : l) n += token_inputs(t);
    return n;
}

std::size_t layer_out(const std::vector<Token>& l) {
    std::size_t n = 0;
    for (auto t : l) n += token_outputs(t);
    return n;
}

void check_wiring(const CobordismWord& w) {
    for (std::size_t k = 1; k < w.layers.size(); ++k)
        if (layer_out(w.layers[k - 1]) != layer_in(w.layers[k]))
            fail(ErrorCode::WiringMismatch, "layer " + std::to_string(k) + " emits " +
                                                std::to_string(layer_out(w.layers[k - 1])) + " wires but layer " +
                                                std::to_string(k + 1) + " takes " +
                                                std::to_string(layer_in(w.layers[k])));
}

}  // namespace

std::size_t CobordismWord::inputs() const {
    check_wiring(*this);
    return layers.empty() ? 0 : layer_in(layers.front());
}

std::size_t CobordismWord::outputs() const {
    check_wiring(*this);
    return layers.empty() ? 0 : layer_out(layers.back());
}

CobordismWord CobordismWord::parse(const std::string& text) {
    CobordismWord w;
    std::stringstream all(text);
    std::string chunk;
    while (std::getline(all, chunk, '|')) {
        std::stringstream ls(chunk);
        std::string tok;
        std::vector<Token> layer;
        while (ls >> tok) layer.push_back(token_from_string(tok));
        if (layer.empty()) fail(ErrorCode::Parse, "empty layer in cobordism word");
        w.layers.push_back(std::move(layer));
    }
    check_wiring(w);
    return w;
}

std::string CobordismWord::str() const {
    std::string out;
    for (std::size_t k = 0; k < layers.size(); ++k) {
        if (k) out += " | ";
        for (std::size_t i = 0; i < layers[k].size(); ++i) out += (i ? " " : "") + token_name(layers[k][i]);
    }
    return out;
}

RationalMatrix token_matrix(const FrobeniusAlgebra& f, Token t) {
    const std::size_t d = f.dim();
    switch (t) {
        case Token::Pants: return f.product_matrix();
        case Token::Copants: return coalgebra_of(f).comultiplication;
        case Token::CapTrace: return RationalMatrix::row(f.trace());
        case Token::CapUnit: return RationalMatrix::column(f.unit());
        case Token::Cylinder: return RationalMatrix::identity(d);
        case Token::Pairing: {
            RationalMatrix m(1, d * d);
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j) m(0, i * d + j) = f.pairing()(i, j);
            return m;
        }
        case Token::Copairing: {
            RationalMatrix m(d * d, 1);
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j) m(i * d + j, 0) = f.copairing()(i, j);
            return m;
        }
        case Token::Swap: {
            RationalMatrix m(d * d, d * d);
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j) m(j * d + i, i * d + j) = Rational(1);
            return m;
        }
    }
    return {};
}

RationalMatrix layer_matrix(const FrobeniusAlgebra& f, const std::vector<Token>& layer) {
    RationalMatrix m = RationalMatrix::identity(1);
    for (auto t : layer) m = exactq::kron(m, token_matrix(f, t));
    return m;
}

RationalMatrix eval_cobordism(const FrobeniusAlgebra& f, const CobordismWord& w) {
    check_wiring(w);
    if (w.layers.empty()) return RationalMatrix::identity(1);
    RationalMatrix m = layer_matrix(f, w.layers.front());
    for (std::size_t k = 1; k < w.layers.size(); ++k) m = layer_matrix(f, w.layers[k]) * m;
    return m;
}

Rational closed_surface_invariant(const FrobeniusAlgebra& f, std::size_t genus) {
    const std::size_t d = f.dim();
    Vector h(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            if (!f.copairing()(i, j).is_zero()) {
                const Vector p = f.product().evaluate({i, j});
                for (std::size_t k = 0; k < d; ++k) h[k] += f.copairing()(i, j) * p[k];
            }
    Vector x = f.unit();
    for (std::size_t k = 0; k < genus; ++k) x = f.multiply(h, x);
    return f.apply_trace(x);
}

CobordismWord closed_surface_word(std::size_t genus) {
    CobordismWord w;
    w.layers.push_back({Token::CapUnit});
    for (std::size_t k = 0; k < genus; ++k) {
        w.layers.push_back({Token::Copants});
        w.layers.push_back({Token::Pants});
    }
    w.layers.push_back({Token::CapTrace});
    return w;
}

}  // namespace loopforge::frob2tqft

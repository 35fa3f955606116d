#include "loopforge/operad/operad.hpp"

#include "loopforge/error.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <set>

namespace loopforge::operad {

GeneratorCollection::GeneratorCollection(std::vector<Generator> gens) : gens_(std::move(gens)) {
    std::set<std::string> seen;
    for (const auto& g : gens_) {
        if (g.name.empty() || g.name == "leaf") fail(ErrorCode::InvalidInput, "bad generator name '" + g.name + "'");
        if (g.arity < 1) fail(ErrorCode::InvalidInput, "generator " + g.name + " has arity 0");
        if (!seen.insert(g.name).second) fail(ErrorCode::InvalidInput, "duplicate generator " + g.name);
    }
}

const Generator* GeneratorCollection::find(const std::string& name) const {
    for (const auto& g : gens_)
        if (g.name == name) return &g;
    return nullptr;
}

// ---- trees

Tree Tree::corolla(const std::string& gen, std::size_t k) {
    std::vector<Tree> ch;
    for (std::size_t i = 1; i <= k; ++i) ch.push_back(leaf(i));
    return node(gen, std::move(ch));
}

std::size_t Tree::leaf_count() const {
    if (is_leaf()) return 1;
    std::size_t n = 0;
    for (const auto& c : children) n += c.leaf_count();
    return n;
}

namespace {

void collect_labels(const Tree& t, std::vector<std::size_t>& out) {
    if (t.is_leaf()) {
        out.push_back(t.label);
        return;
    }
    for (const auto& c : t.children) collect_labels(c, out);
}

void write_tree(const Tree& t, std::string& out) {
    if (t.is_leaf()) {
        out += "leaf" + std::to_string(t.label);
        return;
    }
    out += t.gen;
    out += '(';
    for (std::size_t i = 0; i < t.children.size(); ++i) {
        if (i) out += ", ";
        write_tree(t.children[i], out);
    }
    out += ')';
}

struct TreeParser {
    const std::string& s;
    std::size_t pos = 0;

    [[noreturn]] void error(const std::string& what) const {
        fail(ErrorCode::Parse, "tree syntax at column " + std::to_string(pos + 1) + ": " + what);
    }
    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    std::string ident() {
        skip();
        const std::size_t start = pos;
        while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) ++pos;
        if (start == pos) error("expected a name");
        return s.substr(start, pos - start);
    }
    Tree term() {
        const std::string id = ident();
        skip();
        if (pos < s.size() && s[pos] == '(') {
            ++pos;
            std::vector<Tree> ch;
            for (;;) {
                ch.push_back(term());
                skip();
                if (pos < s.size() && s[pos] == ',') {
                    ++pos;
                    continue;
                }
                if (pos < s.size() && s[pos] == ')') {
                    ++pos;
                    break;
                }
                error("expected ',' or ')'");
            }
            return Tree::node(id, std::move(ch));
        }
        if (id.rfind("leaf", 0) == 0 && id.size() > 4 &&
            std::all_of(id.begin() + 4, id.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
            return Tree::leaf(std::stoul(id.substr(4)));
        error("expected leafN or gen(...)");
    }
};

}  // namespace

std::vector<std::size_t> Tree::leaf_labels() const {
    std::vector<std::size_t> out;
    collect_labels(*this, out);
    return out;
}

std::size_t Tree::vertex_count() const {
    if (is_leaf()) return 0;
    std::size_t n = 1;
    for (const auto& c : children) n += c.vertex_count();
    return n;
}

std::string Tree::str() const {
    std::string out;
    write_tree(*this, out);
    return out;
}

Tree Tree::parse(const std::string& text) {
    TreeParser p{text};
    Tree t = p.term();
    p.skip();
    if (p.pos != text.size()) p.error("trailing characters");
    return t;
}

bool operator==(const Tree& a, const Tree& b) { return (a <=> b) == 0; }

std::strong_ordering operator<=>(const Tree& a, const Tree& b) {
    if (auto c = a.gen <=> b.gen; c != 0) return c;
    if (auto c = a.label <=> b.label; c != 0) return c;
    const std::size_t n = std::min(a.children.size(), b.children.size());
    for (std::size_t i = 0; i < n; ++i)
        if (auto c = a.children[i] <=> b.children[i]; c != 0) return c;
    return a.children.size() <=> b.children.size();
}

// ---- elements

namespace {

void check_labels(const Tree& t) {
    std::vector<std::size_t> l = t.leaf_labels();
    std::sort(l.begin(), l.end());
    for (std::size_t i = 0; i < l.size(); ++i)
        if (l[i] != i + 1) fail(ErrorCode::InvalidInput, "leaf labels of " + t.str() + " are not 1..n");
    if (!t.is_leaf() && t.children.empty()) fail(ErrorCode::InvalidInput, "vertex without children in " + t.str());
}

template <class F>
Tree relabel(const Tree& t, const F& f) {
    if (t.is_leaf()) return Tree::leaf(f(t.label));
    std::vector<Tree> ch;
    ch.reserve(t.children.size());
    for (const auto& c : t.children) ch.push_back(relabel(c, f));
    return Tree::node(t.gen, std::move(ch));
}

// Replaces the leaf labelled `label` with `sub` (already relabelled).
Tree graft(const Tree& t, std::size_t label, const Tree& sub) {
    if (t.is_leaf()) return t.label == label ? sub : t;
    std::vector<Tree> ch;
    ch.reserve(t.children.size());
    for (const auto& c : t.children) ch.push_back(graft(c, label, sub));
    return Tree::node(t.gen, std::move(ch));
}

void validate_tree(const Tree& t, const GeneratorCollection& s) {
    if (t.is_leaf()) return;
    const Generator* g = s.find(t.gen);
    if (!g) fail(ErrorCode::UnassignedGenerator, "unknown generator '" + t.gen + "'");
    if (g->arity != t.children.size())
        fail(ErrorCode::ArityMismatch, "generator " + t.gen + " has arity " + std::to_string(g->arity) + " but " +
                                           std::to_string(t.children.size()) + " children");
    for (const auto& c : t.children) validate_tree(c, s);
}

}  // namespace

OperadElement::OperadElement(const Tree& t) : arity_(t.leaf_count()) {
    check_labels(t);
    terms_.emplace(t, Rational(1));
}

void OperadElement::add(const Tree& t, const Rational& c) {
    if (t.leaf_count() != arity_)
        fail(ErrorCode::ArityMismatch, "tree " + t.str() + " does not have " + std::to_string(arity_) + " leaves");
    check_labels(t);
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.emplace(t, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

OperadElement& OperadElement::operator+=(const OperadElement& o) {
    if (o.arity_ != arity_) fail(ErrorCode::ArityMismatch, "adding operad elements of different arity");
    for (const auto& [t, c] : o.terms_) add(t, c);
    return *this;
}

OperadElement& OperadElement::operator-=(const OperadElement& o) { return *this += o.scaled(Rational(-1)); }

OperadElement OperadElement::scaled(const Rational& s) const {
    OperadElement r(arity_);
    if (s.is_zero()) return r;
    for (const auto& [t, c] : terms_) r.terms_.emplace(t, c * s);
    return r;
}

void OperadElement::validate(const GeneratorCollection& s) const {
    for (const auto& [t, c] : terms_) validate_tree(t, s);
}

std::string OperadElement::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [t, c] : terms_) {
        Rational mag = c.sign() < 0 ? -c : c;
        if (first) {
            if (c.sign() < 0) out += "-";
        } else {
            out += c.sign() < 0 ? " - " : " + ";
        }
        if (mag != Rational(1)) out += mag.str() + "*";
        out += t.str();
        first = false;
    }
    return out;
}

OperadElement compose_i(const OperadElement& f, std::size_t i, const OperadElement& g) {
    if (i < 1 || i > f.arity())
        fail(ErrorCode::IndexOutOfRange,
             "compose_i slot " + std::to_string(i) + " outside 1.." + std::to_string(f.arity()));
    const std::size_t m = g.arity();
    OperadElement r(f.arity() + m - 1);
    for (const auto& [tg, cg] : g.terms()) {
        const Tree sub = relabel(tg, [&](std::size_t l) { return l + i - 1; });
        for (const auto& [tf, cf] : f.terms()) {
            const Tree shifted = relabel(tf, [&](std::size_t l) { return l > i ? l + m - 1 : l; });
            r.add(graft(shifted, i, sub), cf * cg);
        }
    }
    return r;
}

OperadElement gamma(const OperadElement& f, const std::vector<OperadElement>& gs) {
    if (gs.size() != f.arity())
        fail(ErrorCode::ArityMismatch, "gamma needs " + std::to_string(f.arity()) + " inputs, got " +
                                           std::to_string(gs.size()));
    // Right to left keeps the earlier slots at their original positions.
    OperadElement r = f;
    for (std::size_t j = gs.size(); j-- > 0;) r = compose_i(r, j + 1, gs[j]);
    return r;
}

OperadElement sigma_action(const std::vector<std::size_t>& p, const OperadElement& f) {
    const std::size_t n = f.arity();
    if (p.size() != n) fail(ErrorCode::ArityMismatch, "permutation size does not match arity");
    std::vector<std::size_t> inv(n + 1, 0);
    for (std::size_t k = 1; k <= n; ++k) {
        const std::size_t v = p[k - 1];
        if (v < 1 || v > n || inv[v] != 0) fail(ErrorCode::InvalidInput, "not a permutation of 1..n");
        inv[v] = k;
    }
    OperadElement r(n);
    for (const auto& [t, c] : f.terms()) r.add(relabel(t, [&](std::size_t l) { return inv[l]; }), c);
    return r;
}

// ---- evaluation

GeneratorCollection EndomorphismAssignment::collection() const {
    std::vector<Generator> gens;
    for (const auto& [name, m] : ops) gens.push_back({name, m.arity(), m.shift()});
    return GeneratorCollection(std::move(gens));
}

namespace {

MultilinearMap eval_planar(const Tree& t, const EndomorphismAssignment& a) {
    if (t.is_leaf()) return MultilinearMap::identity(a.space);
    const auto it = a.ops.find(t.gen);
    if (it == a.ops.end()) fail(ErrorCode::UnassignedGenerator, "no map assigned to generator '" + t.gen + "'");
    const MultilinearMap& op = it->second;
    if (op.arity() != t.children.size())
        fail(ErrorCode::ArityMismatch, "map for " + t.gen + " has arity " + std::to_string(op.arity()));
    MultilinearMap m = op;
    std::size_t slot = 1;
    for (const auto& c : t.children) {
        const MultilinearMap inner = eval_planar(c, a);
        m = compose_multilinear(m, slot, inner);
        slot += inner.arity();
    }
    return m;
}

}  // namespace

MultilinearMap eval(const OperadElement& f, const EndomorphismAssignment& a) {
    if (!a.space) fail(ErrorCode::InvalidInput, "assignment has no space");
    for (const auto& [name, m] : a.ops) {
        bool ok = exactq::same_space(m.target(), a.space);
        for (const auto& s : m.sources()) ok = ok && exactq::same_space(s, a.space);
        if (!ok) fail(ErrorCode::DimensionMismatch, "map for " + name + " is not an endomorphism of the space");
    }
    const std::size_t n = f.arity();
    int shift = 0;
    bool first = true;
    std::optional<MultilinearMap> total;
    for (const auto& [t, c] : f.terms()) {
        const MultilinearMap planar = eval_planar(t, a);
        std::vector<std::size_t> p;
        for (auto l : t.leaf_labels()) p.push_back(l - 1);
        MultilinearMap term = planar.permute_inputs(p).scaled(c);
        if (first) {
            shift = term.shift();
            first = false;
        } else if (term.shift() != shift) {
            fail(ErrorCode::DegreeMismatch, "terms of the element evaluate to maps of different degree");
        }
        if (total)
            *total += term;
        else
            total = std::move(term);
    }
    if (!total) return MultilinearMap(std::vector<exactq::SpacePtr>(n, a.space), a.space, 0);
    return *total;
}

// ---- presets

Preset preset_from_string(const std::string& s) {
    std::string l = s;
    std::transform(l.begin(), l.end(), l.begin(), [](unsigned char c) { return std::tolower(c); });
    if (l == "comm") return Preset::Comm;
    if (l == "ass") return Preset::Ass;
    if (l == "lie") return Preset::Lie;
    if (l == "poisson") return Preset::Poisson;
    fail(ErrorCode::InvalidInput, "unknown preset '" + s + "' (comm, ass, lie, poisson)");
}

std::string preset_name(Preset p) {
    switch (p) {
        case Preset::Comm: return "comm";
        case Preset::Ass: return "ass";
        case Preset::Lie: return "lie";
        case Preset::Poisson: return "poisson";
    }
    return "?";
}

namespace {

OperadElement elem(const char* text) { return OperadElement(Tree::parse(text)); }

Relation commutativity() { return {"commutativity", elem("dot(leaf1, leaf2)") - elem("dot(leaf2, leaf1)")}; }
Relation associativity() {
    return {"associativity", elem("dot(dot(leaf1, leaf2), leaf3)") - elem("dot(leaf1, dot(leaf2, leaf3))")};
}
Relation skew() { return {"skew_symmetry", elem("bracket(leaf1, leaf2)") + elem("bracket(leaf2, leaf1)")}; }
Relation jacobi() {
    return {"jacobi", elem("bracket(bracket(leaf1, leaf2), leaf3)") + elem("bracket(bracket(leaf2, leaf3), leaf1)") +
                          elem("bracket(bracket(leaf3, leaf1), leaf2)")};
}
Relation leibniz() {
    return {"leibniz", elem("bracket(leaf1, dot(leaf2, leaf3))") - elem("dot(bracket(leaf1, leaf2), leaf3)") -
                           elem("dot(leaf2, bracket(leaf1, leaf3))")};
}

bool uses(Preset p, const char* gen) {
    if (std::string(gen) == "dot") return p != Preset::Lie;
    return p == Preset::Lie || p == Preset::Poisson;
}

void fill_witness(ClauseResult& r, const MultilinearMap& m) {
    if (m.is_zero()) return;
    r.pass = false;
    std::optional<std::vector<std::size_t>> best;
    for (const auto& [key, c] : m.coefficients()) {
        std::vector<std::size_t> in(key.begin() + 1, key.end());
        if (!best || in < *best) best = std::move(in);
    }
    r.witness = *best;
    r.witness_value = m.evaluate(r.witness);
}

}  // namespace

std::vector<Relation> preset_relations(Preset p) {
    switch (p) {
        case Preset::Comm: return {commutativity(), associativity()};
        case Preset::Ass: return {associativity()};
        case Preset::Lie: return {skew(), jacobi()};
        case Preset::Poisson: return {commutativity(), associativity(), skew(), jacobi(), leibniz()};
    }
    return {};
}

bool AlgebraReport::pass() const {
    return std::all_of(clauses.begin(), clauses.end(), [](const ClauseResult& c) { return c.pass; });
}

AlgebraReport check_algebra(Preset preset, const EndomorphismAssignment& a) {
    for (const char* g : {"dot", "bracket"})
        if (uses(preset, g) && !a.ops.count(g))
            fail(ErrorCode::UnassignedGenerator, preset_name(preset) + " needs a map for '" + g + "'");
    if (preset == Preset::Comm && !a.unit) fail(ErrorCode::UnassignedGenerator, "comm needs a unit vector");

    AlgebraReport rep{preset, {}};
    for (const auto& rel : preset_relations(preset)) {
        ClauseResult r;
        r.name = rel.name;
        fill_witness(r, eval(rel.element, a));
        rep.clauses.push_back(std::move(r));
    }
    if (a.unit && uses(preset, "dot")) {
        const exactq::Vector& u = *a.unit;
        if (u.size() != a.space->dim()) fail(ErrorCode::DimensionMismatch, "unit vector has the wrong length");
        const MultilinearMap& dot = a.ops.at("dot");
        ClauseResult left, right;
        left.name = "left_unit";
        right.name = "right_unit";
        for (std::size_t j = 0; j < a.space->dim(); ++j) {
            exactq::Vector ej(a.space->dim());
            ej[j] = Rational(1);
            if (left.pass && dot.apply({u, ej}) != ej) {
                left.pass = false;
                left.witness = {j};
                left.witness_value = dot.apply({u, ej});
            }
            if (right.pass && dot.apply({ej, u}) != ej) {
                right.pass = false;
                right.witness = {j};
                right.witness_value = dot.apply({ej, u});
            }
        }
        rep.clauses.push_back(std::move(left));
        rep.clauses.push_back(std::move(right));
    }
    return rep;
}

std::vector<Tree> planar_binary_trees(std::size_t n, const std::string& gen) {
    // Trees over labels [lo, lo+n).
    std::function<std::vector<Tree>(std::size_t, std::size_t)> build = [&](std::size_t lo, std::size_t k) {
        std::vector<Tree> out;
        if (k == 1) {
            out.push_back(Tree::leaf(lo));
            return out;
        }
        for (std::size_t left = 1; left < k; ++left)
            for (const auto& l : build(lo, left))
                for (const auto& r : build(lo + left, k - left)) out.push_back(Tree::node(gen, {l, r}));
        return out;
    };
    if (n == 0) fail(ErrorCode::InvalidInput, "binary trees need at least one leaf");
    return build(1, n);
}

}  // namespace loopforge::operad

#pragma once

#include "loopforge/exactq/graded.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace loopforge::operad {

using exactq::MultilinearMap;
using exactq::Rational;

struct Generator {
    std::string name;
    std::size_t arity = 2;
    int degree = 0;
};

class GeneratorCollection {
public:
    GeneratorCollection() = default;
    explicit GeneratorCollection(std::vector<Generator> gens);

    const Generator* find(const std::string& name) const;
    const std::vector<Generator>& generators() const { return gens_; }

private:
    std::vector<Generator> gens_;
};

/// Planar rooted tree. A leaf has an empty generator name and a label in
/// 1..n; an internal vertex carries a generator and its ordered children.
/// The bare leaf labelled 1 is the identity.
struct Tree {
    std::string gen;
    std::size_t label = 0;
    std::vector<Tree> children;

    static Tree leaf(std::size_t label) { return Tree{"", label, {}}; }
    static Tree node(std::string gen, std::vector<Tree> children) { return Tree{std::move(gen), 0, std::move(children)}; }
    /// Generator applied to leaves 1..k in order.
    static Tree corolla(const std::string& gen, std::size_t k);

    bool is_leaf() const { return gen.empty(); }
    std::size_t leaf_count() const;
    /// Leaf labels in planar (left to right) order.
    std::vector<std::size_t> leaf_labels() const;
    std::size_t vertex_count() const;

    std::string str() const;
    static Tree parse(const std::string& text);
};

bool operator==(const Tree& a, const Tree& b);
std::strong_ordering operator<=>(const Tree& a, const Tree& b);

/// Finite linear combination of trees of a common arity.
class OperadElement {
public:
    explicit OperadElement(std::size_t arity) : arity_(arity) {}
    /// Single tree with coefficient 1; leaf labels must be a bijection onto 1..n.
    OperadElement(const Tree& t);  // NOLINT(google-explicit-constructor)

    static OperadElement identity() { return OperadElement(Tree::leaf(1)); }

    std::size_t arity() const { return arity_; }
    const std::map<Tree, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(const Tree& t, const Rational& c);
    OperadElement& operator+=(const OperadElement& o);
    OperadElement& operator-=(const OperadElement& o);
    friend OperadElement operator+(OperadElement a, const OperadElement& b) { return a += b; }
    friend OperadElement operator-(OperadElement a, const OperadElement& b) { return a -= b; }
    OperadElement scaled(const Rational& s) const;

    /// Throws UnassignedGenerator for unknown decorations and ArityMismatch
    /// when a vertex has the wrong number of children.
    void validate(const GeneratorCollection& s) const;

    /// "2*dot(leaf1, leaf2) - dot(leaf2, leaf1)"; "0" for the zero element.
    std::string str() const;

    friend bool operator==(const OperadElement&, const OperadElement&) = default;

private:
    std::size_t arity_;
    std::map<Tree, Rational> terms_;
};

/// f o_i g: graft g onto the leaf labelled i (1-based). Labels of g shift
/// by i-1, labels of f above i shift by arity(g)-1.
OperadElement compose_i(const OperadElement& f, std::size_t i, const OperadElement& g);

/// gamma(f; g_1..g_n): leaf j of f receives g_j, labels in block order.
OperadElement gamma(const OperadElement& f, const std::vector<OperadElement>& gs);

/// Right action: the leaf labelled j gets label p^{-1}(j). p is 1-based,
/// p[k-1] = p(k). (f.p).q = f.(p o q).
OperadElement sigma_action(const std::vector<std::size_t>& p, const OperadElement& f);

/// Generator name -> multilinear map on one space V.
struct EndomorphismAssignment {
    exactq::SpacePtr space;
    std::map<std::string, MultilinearMap> ops;
    /// Optional unit vector, for presets with unit axioms.
    std::optional<exactq::Vector> unit;

    /// Generator collection implied by the assigned maps.
    GeneratorCollection collection() const;
};

/// Bottom-up composition; children are substituted left to right so an
/// inner operation moves past the leaves before it. The leaf labelling then
/// reorders the inputs with Koszul signs.
MultilinearMap eval(const OperadElement& f, const EndomorphismAssignment& a);

enum class Preset { Comm, Ass, Lie, Poisson };

Preset preset_from_string(const std::string& s);
std::string preset_name(Preset p);

struct Relation {
    std::string name;
    OperadElement element;
};

/// Defining relations of the preset, using generators "dot" and "bracket".
std::vector<Relation> preset_relations(Preset p);

struct ClauseResult {
    std::string name;
    bool pass = true;
    /// Smallest input basis tuple (0-based) with nonzero output, on failure.
    std::vector<std::size_t> witness;
    exactq::Vector witness_value;
};

struct AlgebraReport {
    Preset preset;
    std::vector<ClauseResult> clauses;
    bool pass() const;
};

/// Comm requires a unit; Ass checks the unit laws only when one is given.
AlgebraReport check_algebra(Preset preset, const EndomorphismAssignment& a);

/// All planar binary trees on leaves 1..n (in order) decorated by `gen`.
std::vector<Tree> planar_binary_trees(std::size_t n, const std::string& gen = "dot");

}  // namespace loopforge::operad

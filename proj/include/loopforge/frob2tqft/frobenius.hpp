#pragma once

#include "loopforge/exactq/graded.hpp"
#include "loopforge/exactq/matrix.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace loopforge::frob2tqft {

using exactq::MultilinearMap;
using exactq::Rational;
using exactq::RationalMatrix;
using exactq::Vector;

struct Violation {
    std::string axiom;                ///< commutativity, associativity, unit, nondegeneracy, ...
    std::vector<std::size_t> witness;  ///< basis indices; empty for nondegeneracy
};

/// Commutative Frobenius algebra over Q, concentrated in degree 0.
class FrobeniusAlgebra {
public:
    std::size_t dim() const { return space_->dim(); }
    const exactq::SpacePtr& space() const { return space_; }
    const MultilinearMap& product() const { return product_; }
    const Vector& unit() const { return unit_; }
    const Vector& trace() const { return trace_; }

    /// dim x dim^2, column a*dim+b holds e_a e_b.
    const RationalMatrix& product_matrix() const { return mult_; }
    /// g_ij = trace(e_i e_j) and its inverse g^ij.
    const RationalMatrix& pairing() const { return pairing_; }
    const RationalMatrix& copairing() const { return copairing_; }

    Vector multiply(const Vector& a, const Vector& b) const;
    Rational apply_trace(const Vector& a) const;

private:
    friend FrobeniusAlgebra validate_frobenius(exactq::SpacePtr, MultilinearMap, Vector, Vector);
    exactq::SpacePtr space_;
    MultilinearMap product_;
    Vector unit_, trace_;
    RationalMatrix mult_, pairing_, copairing_;
};

/// Every violated axiom with its first witness, in a fixed order.
std::vector<Violation> frobenius_violations(const exactq::SpacePtr& space, const MultilinearMap& product,
                                            const Vector& unit, const Vector& trace);

/// Throws NotAnAlgebra listing the violations.
FrobeniusAlgebra validate_frobenius(exactq::SpacePtr space, MultilinearMap product, Vector unit, Vector trace);

struct Coalgebra {
    /// dim^2 x dim: Delta(a) = sum g^ij (a e_i) (x) e_j, first factor most significant.
    RationalMatrix comultiplication;
    Vector counit;
};

Coalgebra coalgebra_of(const FrobeniusAlgebra& f);

/// x.Delta(a) = Delta(xa) = Delta(a).x on all basis pairs; returns the
/// failing (x, a) or nothing.
std::vector<Violation> bimodule_violations(const FrobeniusAlgebra& f, const Coalgebra& c);

// ---- cobordisms

enum class Token { Pants, Copants, CapTrace, CapUnit, Pairing, Copairing, Cylinder, Swap };

Token token_from_string(const std::string& s);
std::string token_name(Token t);
std::size_t token_inputs(Token t);
std::size_t token_outputs(Token t);

/// Layers listed from the incoming end to the outgoing end. Inside a layer
/// the tokens sit side by side and consume wires left to right.
struct CobordismWord {
    std::vector<std::vector<Token>> layers;

    /// Wire count entering the word; throws WiringMismatch if layers disagree.
    std::size_t inputs() const;
    std::size_t outputs() const;
    /// Text form: layers separated by '|', tokens by spaces.
    static CobordismWord parse(const std::string& text);
    std::string str() const;
};

RationalMatrix token_matrix(const FrobeniusAlgebra& f, Token t);
RationalMatrix layer_matrix(const FrobeniusAlgebra& f, const std::vector<Token>& layer);
/// dim^out x dim^in.
RationalMatrix eval_cobordism(const FrobeniusAlgebra& f, const CobordismWord& w);

/// trace(H^g) with H = sum g^ij e_i e_j the handle element.
Rational closed_surface_invariant(const FrobeniusAlgebra& f, std::size_t genus);
/// cap_unit | (copants | pants)^g | cap_trace
CobordismWord closed_surface_word(std::size_t genus);

// ---- groups

class FiniteGroup {
public:
    /// Validates the table: closure, identity, associativity, inverses.
    explicit FiniteGroup(std::vector<std::vector<std::size_t>> cayley, std::vector<std::string> names = {});

    /// z<n>, s3, klein4, trivial, and products joined with 'x' (z2xz3).
    static FiniteGroup builtin(const std::string& name);
    static FiniteGroup cyclic(std::size_t n);
    static FiniteGroup symmetric3();
    static FiniteGroup product(const FiniteGroup& a, const FiniteGroup& b);

    std::size_t order() const { return table_.size(); }
    std::size_t identity() const { return identity_; }
    std::size_t mul(std::size_t a, std::size_t b) const { return table_[a][b]; }
    std::size_t inverse(std::size_t a) const { return inverse_[a]; }
    const std::vector<std::vector<std::size_t>>& table() const { return table_; }
    const std::vector<std::string>& names() const { return names_; }

    /// Orbits under conjugation, each sorted, listed by smallest element.
    std::vector<std::vector<std::size_t>> conjugacy_classes() const;

private:
    std::vector<std::vector<std::size_t>> table_;
    std::vector<std::string> names_;
    std::size_t identity_ = 0;
    std::vector<std::size_t> inverse_;
};

/// Center of Q[G] on class sums, trace(C) = [e in C]/|G|.
FrobeniusAlgebra dw_center_algebra(const FiniteGroup& g);

struct BruteOptions {
    unsigned threads = 0;                   ///< 0: LOOPFORGE_THREADS or hardware concurrency
    std::uint64_t max_tuples = 4000000000ULL;  ///< SizeGuard above this
};

/// #{(a1,b1,..,ag,bg) : prod [ai,bi] = e} / |G|.
Rational dw_partition_brute(const FiniteGroup& g, std::size_t genus, const BruteOptions& opt = {});

/// Thread count from LOOPFORGE_THREADS, else hardware concurrency (at least 1).
unsigned default_threads();

}  // namespace loopforge::frob2tqft

#pragma once

#include "loopforge/exactq/graded.hpp"

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace loopforge::gbv {

using exactq::MultilinearMap;
using exactq::Rational;
using exactq::SpacePtr;
using exactq::Vector;

/// Graded commutative, associative, unital algebra with named unary
/// operators (Delta, B_i) and optionally a named bracket.
struct GradedOperatorAlgebra {
    SpacePtr space;
    MultilinearMap product;
    Vector unit;
    std::map<std::string, MultilinearMap> operators;  ///< arity 1 or 2 ("bracket")

    std::size_t dim() const { return space->dim(); }
    const MultilinearMap& op(const std::string& name) const;  ///< MissingOperator if absent
};

/// Validates the product exhaustively on basis elements; throws NotAnAlgebra.
GradedOperatorAlgebra make_operator_algebra(SpacePtr space, MultilinearMap product, Vector unit,
                                            std::map<std::string, MultilinearMap> operators = {});

/// Which sign the seven-term relation carries:
/// gbv: Delta(ab) - (Delta a)b - (-1)^|a| a Delta b = (-1)^{|a|-1} [a,b]
/// sw:  the same left side = (-1)^|a| [a,b]
enum class Convention { Gbv, Sw };
Convention convention_from_string(const std::string& s);
const char* convention_name(Convention c);

/// {a,b} = (-1)^|a| Delta(ab) - (-1)^|a| Delta(a) b - a Delta(b), of degree deg Delta.
/// Any degree is accepted here; oddness is a clause of check_bv.
MultilinearMap derive_bracket(const GradedOperatorAlgebra& a, const std::string& delta = "delta");
/// Bracket solved from the seven-term relation under a convention. Sw agrees with derive_bracket.
MultilinearMap seven_term_bracket(const GradedOperatorAlgebra& a, const std::string& delta, Convention c);

struct Clause {
    std::string name;
    bool pass = true;
    std::vector<std::size_t> witness;  ///< basis indices of the first failing tuple
    std::string detail;
};

struct Report {
    std::vector<Clause> clauses;
    bool pass() const;
    const Clause& clause(const std::string& name) const;
};

/// Skew symmetry and Jacobi on V[n], and Leibniz
/// [a,bc] = [a,b]c + (-1)^{(|a|+n)|b|} b[a,c], all on basis tuples.
Report check_gerstenhaber(const GradedOperatorAlgebra& a, const MultilinearMap& bracket, int n);

/// Clauses, in order: delta_odd, delta_squared, second_order (Delta(1) = 0 and
/// [[[Delta,L_a],L_b],L_c] = 0), seven_term (the bracket solved under the
/// convention is a derivation of the product), characterizations_agree.
Report check_bv(const GradedOperatorAlgebra& a, const std::string& delta = "delta",
                Convention c = Convention::Gbv);

/// Operators "B1".."Bk" of degree 4i-1, plus "delta" of degree n when n is odd.
/// The bracket is operator "bracket" if present, else (n odd) solved from delta.
/// Missing or mis-graded operators throw MissingOperator / DegreeMismatch.
Report check_bv_nplus1(const GradedOperatorAlgebra& a, int n, Convention c = Convention::Gbv);

/// Tensor product of exterior factors (odd generator) and truncated polynomial
/// factors (even generator), dimension <= max_dim, with an odd operator "delta"
/// assembled from odd derivations, derivation-times-Euler terms, third-order
/// terms and multiplications. Most instances are BV; the rest fail Delta^2 = 0
/// or second order.
GradedOperatorAlgebra random_instance(std::mt19937_64& rng, std::size_t max_dim = 6);

}  // namespace loopforge::gbv

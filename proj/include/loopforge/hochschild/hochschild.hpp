#pragma once

#include "loopforge/exactq/graded.hpp"
#include "loopforge/exactq/matrix.hpp"

#include <map>
#include <optional>
#include <vector>

namespace loopforge::hochschild {

using exactq::MultilinearMap;
using exactq::Rational;
using exactq::RationalMatrix;
using exactq::SpacePtr;
using exactq::Vector;

/// Degrees are cochain degrees: the differential raises them by one.
struct DGAlgebra {
    SpacePtr space;
    MultilinearMap product;
    Vector unit;
    std::optional<MultilinearMap> differential;

    std::size_t dim() const { return space->dim(); }
};

/// Checks associativity, the unit, d^2 = 0 and the Leibniz rule on basis
/// elements. Throws NotAnAlgebra naming the first failure.
DGAlgebra make_dg_algebra(SpacePtr space, MultilinearMap product, Vector unit,
                          std::optional<MultilinearMap> differential = std::nullopt);

struct DGBimodule {
    SpacePtr space;
    MultilinearMap left;   ///< A x M -> M
    MultilinearMap right;  ///< M x A -> M
    std::optional<MultilinearMap> differential;
};

DGBimodule self_bimodule(const DGAlgebra& a);
/// A* with (a.phi)(x) = phi(xa), (phi.a)(x) = phi(ax). Ungraded, d = 0 only.
DGBimodule dual_bimodule(const DGAlgebra& a);
/// Action axioms and compatibility with the differentials. Throws NotAnAlgebra.
void validate_bimodule(const DGAlgebra& a, const DGBimodule& m);

/// Element of M (x) A^n, coordinates indexed with the M factor most significant.
struct Chain {
    std::size_t length = 0;
    Vector coeffs;
};

/// Element of Hom(A^n, M), coordinate (m; a_1..a_n) with m most significant.
struct Cochain {
    std::size_t arity = 0;
    Vector coeffs;
};

/// Hochschild boundary b alone (no internal differential); zero for length 0.
Chain hochschild_boundary(const DGAlgebra& a, const DGBimodule& m, const Chain& x);
/// Matrix of b from length n to length n-1.
RationalMatrix boundary_matrix(const DGAlgebra& a, const DGBimodule& m, std::size_t n);
/// Matrix of delta from arity n to arity n+1 (no internal differential):
/// (-1)^{|f|} times the classical alternating sum, with (-1)^{|a_1||f|} on a_1 f(..).
RationalMatrix coboundary_matrix(const DGAlgebra& a, const DGBimodule& m, std::size_t n);

/// Basis of total degree t among tensor lengths <= truncation: pairs
/// (length, coordinate index), ordered by length then index. Chains have
/// total degree n - (|c| + sum |a_i|); n-cochains have n + |f|.
std::vector<std::pair<std::size_t, std::size_t>> total_basis(const DGAlgebra& a, const DGBimodule& m,
                                                             std::size_t truncation, int t, bool cochains);

/// b + (-1)^n d_int from total degree t to t-1. d_int follows the Leibniz
/// rule across the tensor factors.
RationalMatrix total_chain_differential(const DGAlgebra& a, const DGBimodule& m, std::size_t truncation, int t);
/// delta + D from total degree t to t+1, D f = d_M f - (-1)^|f| f d.
RationalMatrix total_cochain_differential(const DGAlgebra& a, const DGBimodule& m, std::size_t truncation, int t);

struct HomologyResult {
    std::map<int, std::size_t> dims;  ///< total degree -> dimension
    std::size_t truncation = 0;
    bool stable = false;  ///< same dimensions with truncation + 1
};

/// Smallest tensor length N for which total degrees lo-1..hi+1 are complete.
/// Throws TruncationTooSmall when the degrees are not locally finite.
std::size_t required_truncation(const DGAlgebra& a, const DGBimodule& m, int lo, int hi, bool cochains);

/// Chain total degree n - (|c| + sum |a_i|); window [lo, hi].
HomologyResult hochschild_homology(const DGAlgebra& a, const DGBimodule& m, std::size_t truncation, int lo, int hi);
/// Cochain total degree n + |f|; window [lo, hi].
HomologyResult hochschild_cohomology(const DGAlgebra& a, const DGBimodule& m, std::size_t truncation, int lo,
                                     int hi);

// ---- cochain operations, coefficients in A itself

Cochain unit_cochain(const DGAlgebra& a);
Cochain product_cochain(const DGAlgebra& a);

/// (f u g)(a_1..a_{p+q}) = (-1)^{|g|(|a_1|+..+|a_p|+p)} f(a_1..a_p) g(a_{p+1}..).
/// delta(f u g) = delta f u g + (-1)^{p+|f|} f u delta g.
Cochain cup(const DGAlgebra& a, const Cochain& f, const Cochain& g);

/// Gerstenhaber composition, conjugated from the composition of maps on the
/// suspension sA. Ungraded it reads
/// f o g = (-1)^{(p-1)(q-1)} sum_i (-1)^{i(q-1)} f(a_1..a_i, g(..), ..).
Cochain pre_lie(const DGAlgebra& a, const Cochain& f, const Cochain& g);
/// [f, g] = f o g - (-1)^{(p-1+|f|)(q-1+|g|)} g o f, for homogeneous f, g.
Cochain gerstenhaber_bracket(const DGAlgebra& a, const Cochain& f, const Cochain& g);

/// Cochain degree |f| = |m| - sum |a_i| of a homogeneous cochain; throws
/// DegreeMismatch for mixed cochains. Zero cochains report 0.
int cochain_degree(const DGAlgebra& a, const Cochain& f);

/// Whether z is delta of some cochain of arity z.arity-1; zero differential only.
bool is_coboundary(const DGAlgebra& a, const Cochain& z);
/// Representatives of a basis of HH^n (arity n, ungraded part only: total
/// cocycles of arity n modulo coboundaries), for algebras without differential.
std::vector<Cochain> cohomology_basis(const DGAlgebra& a, std::size_t n);
/// Coordinates of the class of z in a basis from cohomology_basis, or nullopt
/// when z is not a cocycle.
std::optional<Vector> cohomology_coordinates(const DGAlgebra& a, const std::vector<Cochain>& basis, const Cochain& z);

}  // namespace loopforge::hochschild

#pragma once

#include "loopforge/exactq/matrix.hpp"

#include <vector>

namespace loopforge::exactq {

/// Rank over Q by fraction-free (Bareiss) elimination.
std::size_t mat_rank(const RationalMatrix& m);

/// Basis of the null space, one vector per free column of the reduced row
/// echelon form. Each vector has a 1 in its free column.
std::vector<Vector> kernel_basis(const RationalMatrix& m);

/// Reduced row echelon form over Q together with its pivot columns.
struct Echelon {
    RationalMatrix reduced;
    std::vector<std::size_t> pivots;
};
Echelon row_reduce(const RationalMatrix& m);

/// Solve m x = b; returns false when the system is inconsistent.
bool solve(const RationalMatrix& m, const Vector& b, Vector& x);

/// Exact inverse of a square matrix; throws DimensionMismatch when singular.
RationalMatrix inverse(const RationalMatrix& m);

/// dim ker(d_out) - rank(d_in) at the middle term of C_{k+1} -> C_k -> C_{k-1}.
/// Both maps act on column vectors. Throws CompositionNotZero unless
/// d_out * d_in vanishes exactly.
std::size_t homology_dimension(const RationalMatrix& d_in, const RationalMatrix& d_out);

}  // namespace loopforge::exactq

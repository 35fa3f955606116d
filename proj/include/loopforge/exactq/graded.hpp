#pragma once

#include "loopforge/exactq/matrix.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace loopforge::exactq {

struct BasisElement {
    std::string name;
    int degree = 0;

    friend bool operator==(const BasisElement&, const BasisElement&) = default;
};

/// Finite-dimensional Z-graded vector space with a fixed ordered basis.
/// Basis labels are unique within each degree.
class GradedVectorSpace {
public:
    GradedVectorSpace() = default;
    explicit GradedVectorSpace(std::vector<BasisElement> basis);

    /// Ungraded space with basis labels e1..en in degree 0.
    static GradedVectorSpace ungraded(std::size_t dim);

    std::size_t dim() const { return basis_.size(); }
    const std::vector<BasisElement>& basis() const { return basis_; }
    int degree(std::size_t i) const { return basis_[i].degree; }
    const std::string& name(std::size_t i) const { return basis_[i].name; }
    bool concentrated_in_zero() const;

    /// degree -> basis indices of that degree, in basis order
    std::map<int, std::vector<std::size_t>> components() const;

    friend bool operator==(const GradedVectorSpace&, const GradedVectorSpace&) = default;

private:
    std::vector<BasisElement> basis_;
};

using SpacePtr = std::shared_ptr<const GradedVectorSpace>;

inline SpacePtr make_space(GradedVectorSpace v) { return std::make_shared<const GradedVectorSpace>(std::move(v)); }

bool same_space(const SpacePtr& a, const SpacePtr& b);

/// Multi-index (output index, input index_1, ..., input index_k).
using MultiIndex = std::vector<std::size_t>;

/// A k-linear map V_1 x ... x V_k -> W of fixed degree shift, stored as
/// sparse structure constants. A coefficient may be nonzero only when
/// deg(output) = sum of input degrees + shift. Keys are kept in
/// lexicographic order so serialization is deterministic.
class MultilinearMap {
public:
    MultilinearMap() = default;
    MultilinearMap(std::vector<SpacePtr> sources, SpacePtr target, int shift = 0);

    static MultilinearMap identity(const SpacePtr& v);
    /// A linear map (arity 1) from a matrix acting on column vectors.
    static MultilinearMap from_matrix(const SpacePtr& source, const SpacePtr& target,
                                      const RationalMatrix& m, int shift);

    std::size_t arity() const { return sources_.size(); }
    const std::vector<SpacePtr>& sources() const { return sources_; }
    const SpacePtr& target() const { return target_; }
    int shift() const { return shift_; }
    const std::map<MultiIndex, Rational>& coefficients() const { return coeffs_; }

    Rational coefficient(const MultiIndex& key) const;
    void set(const MultiIndex& key, const Rational& value);
    void add(const MultiIndex& key, const Rational& value);

    /// Image of a tuple of basis vectors, as a coordinate vector in the target.
    Vector evaluate(const std::vector<std::size_t>& inputs) const;
    /// Image of a tuple of arbitrary vectors (multilinear extension, no signs:
    /// the inputs are assumed homogeneous or the caller accounts for grading).
    Vector apply(const std::vector<Vector>& inputs) const;

    /// Matrix of shape dim(target) x prod dim(sources), input multi-index
    /// flattened with the first input most significant.
    RationalMatrix to_matrix() const;

    bool is_zero() const { return coeffs_.empty(); }

    /// g(x_1..x_k) = koszul * f(x_{p[0]}, ..., x_{p[k-1]}), with p 0-based.
    MultilinearMap permute_inputs(const std::vector<std::size_t>& p) const;

    MultilinearMap& operator+=(const MultilinearMap& o);
    MultilinearMap& operator-=(const MultilinearMap& o);
    friend MultilinearMap operator+(MultilinearMap a, const MultilinearMap& b) { return a += b; }
    friend MultilinearMap operator-(MultilinearMap a, const MultilinearMap& b) { return a -= b; }
    MultilinearMap scaled(const Rational& s) const;

    friend bool operator==(const MultilinearMap& a, const MultilinearMap& b);

private:
    void check_key(const MultiIndex& key) const;
    void check_compatible(const MultilinearMap& o) const;

    std::vector<SpacePtr> sources_;
    SpacePtr target_;
    int shift_ = 0;
    std::map<MultiIndex, Rational> coeffs_;
};

/// Partial composition outer o_slot inner (slot is 1-based):
/// (x_1..x_{slot-1}, inner(x_slot..), ...) with the Koszul sign
/// (-1)^{shift(inner) * (|x_1| + ... + |x_{slot-1}|)}.
MultilinearMap compose_multilinear(const MultilinearMap& outer, std::size_t slot, const MultilinearMap& inner);

}  // namespace loopforge::exactq

#include "loopforge/exactq/graded.hpp"

#include "loopforge/error.hpp"

#include <set>
#include <string>
#include <utility>

namespace loopforge::exactq {

GradedVectorSpace::GradedVectorSpace(std::vector<BasisElement> basis) : basis_(std::move(basis)) {
    std::set<std::pair<int, std::string>> seen;
    for (const auto& b : basis_) {
        if (!seen.insert({b.degree, b.name}).second)
            fail(ErrorCode::InvalidInput, "duplicate basis label '" + b.name + "' in degree " + std::to_string(b.degree));
    }
}

GradedVectorSpace GradedVectorSpace::ungraded(std::size_t dim) {
    std::vector<BasisElement> basis;
    for (std::size_t i = 0; i < dim; ++i) basis.push_back({"e" + std::to_string(i + 1), 0});
    return GradedVectorSpace(std::move(basis));
}

bool GradedVectorSpace::concentrated_in_zero() const {
    for (const auto& b : basis_)
        if (b.degree != 0) return false;
    return true;
}

std::map<int, std::vector<std::size_t>> GradedVectorSpace::components() const {
    std::map<int, std::vector<std::size_t>> out;
    for (std::size_t i = 0; i < basis_.size(); ++i) out[basis_[i].degree].push_back(i);
    return out;
}

bool same_space(const SpacePtr& a, const SpacePtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

MultilinearMap::MultilinearMap(std::vector<SpacePtr> sources, SpacePtr target, int shift)
    : sources_(std::move(sources)), target_(std::move(target)), shift_(shift) {
    if (!target_) fail(ErrorCode::InvalidInput, "multilinear map without target space");
    for (const auto& s : sources_)
        if (!s) fail(ErrorCode::InvalidInput, "multilinear map with a null source space");
}

MultilinearMap MultilinearMap::identity(const SpacePtr& v) {
    MultilinearMap id({v}, v, 0);
    for (std::size_t i = 0; i < v->dim(); ++i) id.coeffs_[{i, i}] = 1;
    return id;
}

MultilinearMap MultilinearMap::from_matrix(const SpacePtr& source, const SpacePtr& target, const RationalMatrix& m,
                                           int shift) {
    if (m.rows() != target->dim() || m.cols() != source->dim())
        fail(ErrorCode::DimensionMismatch, "matrix shape does not match source/target dimensions");
    MultilinearMap f({source}, target, shift);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_zero()) f.set({i, j}, m(i, j));
    return f;
}

void MultilinearMap::check_key(const MultiIndex& key) const {
    if (key.size() != sources_.size() + 1)
        fail(ErrorCode::DimensionMismatch, "multi-index length " + std::to_string(key.size()) + " for arity " +
                                               std::to_string(sources_.size()));
    if (key[0] >= target_->dim()) fail(ErrorCode::IndexOutOfRange, "output basis index out of range");
    for (std::size_t s = 0; s < sources_.size(); ++s)
        if (key[s + 1] >= sources_[s]->dim()) fail(ErrorCode::IndexOutOfRange, "input basis index out of range");
}

Rational MultilinearMap::coefficient(const MultiIndex& key) const {
    auto it = coeffs_.find(key);
    return it == coeffs_.end() ? Rational(0) : it->second;
}

void MultilinearMap::set(const MultiIndex& key, const Rational& value) {
    check_key(key);
    if (value.is_zero()) {
        coeffs_.erase(key);
        return;
    }
    long long in_degree = 0;
    for (std::size_t s = 0; s < sources_.size(); ++s) in_degree += sources_[s]->degree(key[s + 1]);
    if (target_->degree(key[0]) != in_degree + shift_)
        fail(ErrorCode::DegreeMismatch, "nonzero coefficient violates the declared degree shift");
    coeffs_[key] = value;
}

void MultilinearMap::add(const MultiIndex& key, const Rational& value) {
    if (value.is_zero()) return;
    set(key, coefficient(key) + value);
}

Vector MultilinearMap::evaluate(const std::vector<std::size_t>& inputs) const {
    if (inputs.size() != sources_.size()) fail(ErrorCode::ArityMismatch, "wrong number of inputs");
    Vector out(target_->dim());
    // Keys are sorted by output index first, so scan everything.
    for (const auto& [key, c] : coeffs_) {
        bool match = true;
        for (std::size_t s = 0; s < inputs.size() && match; ++s) match = key[s + 1] == inputs[s];
        if (match) out[key[0]] += c;
    }
    return out;
}

Vector MultilinearMap::apply(const std::vector<Vector>& inputs) const {
    if (inputs.size() != sources_.size()) fail(ErrorCode::ArityMismatch, "wrong number of inputs");
    for (std::size_t s = 0; s < inputs.size(); ++s)
        if (inputs[s].size() != sources_[s]->dim()) fail(ErrorCode::DimensionMismatch, "input vector size");
    Vector out(target_->dim());
    for (const auto& [key, c] : coeffs_) {
        Rational term = c;
        for (std::size_t s = 0; s < inputs.size() && !term.is_zero(); ++s) term *= inputs[s][key[s + 1]];
        if (!term.is_zero()) out[key[0]] += term;
    }
    return out;
}

RationalMatrix MultilinearMap::to_matrix() const {
    std::size_t cols = 1;
    for (const auto& s : sources_) cols *= s->dim();
    RationalMatrix m(target_->dim(), cols);
    for (const auto& [key, c] : coeffs_) {
        std::size_t flat = 0;
        for (std::size_t s = 0; s < sources_.size(); ++s) flat = flat * sources_[s]->dim() + key[s + 1];
        m(key[0], flat) = c;
    }
    return m;
}

MultilinearMap MultilinearMap::permute_inputs(const std::vector<std::size_t>& p) const {
    const std::size_t k = arity();
    if (p.size() != k) fail(ErrorCode::ArityMismatch, "permutation size does not match arity");
    std::vector<bool> hit(k, false);
    for (auto x : p) {
        if (x >= k || hit[x]) fail(ErrorCode::InvalidInput, "not a permutation");
        hit[x] = true;
    }
    std::vector<SpacePtr> src(k);
    for (std::size_t m = 0; m < k; ++m) src[p[m]] = sources_[m];
    MultilinearMap g(std::move(src), target_, shift_);
    for (const auto& [key, c] : coeffs_) {
        // key[m+1] is the basis index fed into slot m, i.e. the index of x_{p[m]}.
        MultiIndex gk(k + 1);
        gk[0] = key[0];
        for (std::size_t m = 0; m < k; ++m) gk[p[m] + 1] = key[m + 1];
        // Koszul sign of reordering (x_1..x_k) into (x_{p[0]}..x_{p[k-1]}).
        int sign = 1;
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = a + 1; b < k; ++b)
                if (p[a] > p[b])
                    sign *= koszul(g.sources_[p[a]]->degree(gk[p[a] + 1]), g.sources_[p[b]]->degree(gk[p[b] + 1]));
        g.coeffs_[gk] = sign > 0 ? c : -c;
    }
    return g;
}

void MultilinearMap::check_compatible(const MultilinearMap& o) const {
    bool ok = arity() == o.arity() && shift_ == o.shift_ && same_space(target_, o.target_);
    for (std::size_t s = 0; ok && s < arity(); ++s) ok = same_space(sources_[s], o.sources_[s]);
    if (!ok) fail(ErrorCode::DimensionMismatch, "multilinear maps have different signatures");
}

MultilinearMap& MultilinearMap::operator+=(const MultilinearMap& o) {
    check_compatible(o);
    for (const auto& [key, c] : o.coeffs_) {
        Rational& slot = coeffs_[key];
        slot += c;
        if (slot.is_zero()) coeffs_.erase(key);
    }
    return *this;
}

MultilinearMap& MultilinearMap::operator-=(const MultilinearMap& o) {
    check_compatible(o);
    for (const auto& [key, c] : o.coeffs_) {
        Rational& slot = coeffs_[key];
        slot -= c;
        if (slot.is_zero()) coeffs_.erase(key);
    }
    return *this;
}

MultilinearMap MultilinearMap::scaled(const Rational& s) const {
    MultilinearMap g(sources_, target_, shift_);
    if (s.is_zero()) return g;
    for (const auto& [key, c] : coeffs_) g.coeffs_[key] = c * s;
    return g;
}

bool operator==(const MultilinearMap& a, const MultilinearMap& b) {
    if (a.arity() != b.arity() || a.shift_ != b.shift_ || !same_space(a.target_, b.target_)) return false;
    for (std::size_t s = 0; s < a.arity(); ++s)
        if (!same_space(a.sources_[s], b.sources_[s])) return false;
    return a.coeffs_ == b.coeffs_;
}

MultilinearMap compose_multilinear(const MultilinearMap& outer, std::size_t slot, const MultilinearMap& inner) {
    if (slot < 1 || slot > outer.arity())
        fail(ErrorCode::IndexOutOfRange, "composition slot " + std::to_string(slot) + " outside 1.." +
                                             std::to_string(outer.arity()));
    const std::size_t i = slot - 1;
    if (!same_space(outer.sources()[i], inner.target()))
        fail(ErrorCode::DimensionMismatch, "inner target does not match the outer slot's source");

    std::vector<SpacePtr> src(outer.sources().begin(), outer.sources().begin() + static_cast<long>(i));
    src.insert(src.end(), inner.sources().begin(), inner.sources().end());
    src.insert(src.end(), outer.sources().begin() + static_cast<long>(i) + 1, outer.sources().end());
    MultilinearMap result(std::move(src), outer.target(), outer.shift() + inner.shift());

    std::map<std::size_t, std::vector<std::pair<const MultiIndex*, const Rational*>>> by_output;
    for (const auto& [key, c] : inner.coefficients()) by_output[key[0]].push_back({&key, &c});

    for (const auto& [okey, oc] : outer.coefficients()) {
        auto it = by_output.find(okey[i + 1]);
        if (it == by_output.end()) continue;
        long long before = 0;
        for (std::size_t s = 0; s < i; ++s) before += outer.sources()[s]->degree(okey[s + 1]);
        const bool negate = koszul(inner.shift(), before) < 0;
        for (const auto& [ikey, ic] : it->second) {
            MultiIndex key(okey.begin(), okey.begin() + static_cast<long>(i) + 1);
            key.insert(key.end(), ikey->begin() + 1, ikey->end());
            key.insert(key.end(), okey.begin() + static_cast<long>(i) + 2, okey.end());
            Rational v = oc * *ic;
            result.add(key, negate ? -v : v);
        }
    }
    return result;
}

}  // namespace loopforge::exactq

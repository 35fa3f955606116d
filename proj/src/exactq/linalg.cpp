#include "loopforge/exactq/linalg.hpp"

#include "loopforge/error.hpp"

#include <string>
#include <utility>

namespace loopforge::exactq {

namespace {

using IntRow = std::vector<mpz_class>;

// Clear denominators row by row; rank is unchanged.
std::vector<IntRow> integer_rows(const RationalMatrix& m) {
    std::vector<IntRow> rows(m.rows(), IntRow(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        mpz_class l = 1;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const mpz_class d = m(i, j).denominator();
            if (d != 1) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
        }
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const Rational& x = m(i, j);
            if (!x.is_zero()) rows[i][j] = x.numerator() * (l / x.denominator());
        }
    }
    return rows;
}

}  // namespace

std::size_t mat_rank(const RationalMatrix& m) {
    std::vector<IntRow> a = integer_rows(m);
    const std::size_t nrows = m.rows();
    const std::size_t ncols = m.cols();
    mpz_class prev = 1;
    std::size_t r = 0;
    mpz_class t;
    for (std::size_t c = 0; c < ncols && r < nrows; ++c) {
        std::size_t p = r;
        while (p < nrows && a[p][c] == 0) ++p;
        if (p == nrows) continue;
        std::swap(a[p], a[r]);
        const mpz_class pivot = a[r][c];
        for (std::size_t i = r + 1; i < nrows; ++i) {
            IntRow& row = a[i];
            const mpz_class factor = row[c];
            for (std::size_t j = c + 1; j < ncols; ++j) {
                // Entries are minors of the original matrix, so the division is exact.
                if (factor == 0) {
                    if (row[j] == 0) continue;
                    t = pivot * row[j];
                } else {
                    t = pivot * row[j] - factor * a[r][j];
                    if (t == 0) {
                        row[j] = 0;
                        continue;
                    }
                }
                mpz_divexact(row[j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            row[c] = 0;
        }
        prev = pivot;
        ++r;
    }
    return r;
}

Echelon row_reduce(const RationalMatrix& m) {
    Echelon e{m, {}};
    RationalMatrix& a = e.reduced;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t p = r;
        while (p < a.rows() && a(p, c).is_zero()) ++p;
        if (p == a.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
        const Rational inv = Rational(1) / a(r, c);
        for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || a(i, c).is_zero()) continue;
            const Rational f = a(i, c);
            for (std::size_t j = c; j < a.cols(); ++j)
                if (!a(r, j).is_zero()) a(i, j) -= f * a(r, j);
        }
        e.pivots.push_back(c);
        ++r;
    }
    return e;
}

std::vector<Vector> kernel_basis(const RationalMatrix& m) {
    const Echelon e = row_reduce(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : e.pivots) is_pivot[c] = true;
    std::vector<Vector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vector v(m.cols());
        v[free] = 1;
        for (std::size_t k = 0; k < e.pivots.size(); ++k) v[e.pivots[k]] = -e.reduced(k, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

bool solve(const RationalMatrix& m, const Vector& b, Vector& x) {
    if (b.size() != m.rows()) fail(ErrorCode::DimensionMismatch, "solve: right-hand side size");
    RationalMatrix aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    const Echelon e = row_reduce(aug);
    if (!e.pivots.empty() && e.pivots.back() == m.cols()) return false;
    x.assign(m.cols(), Rational(0));
    for (std::size_t k = 0; k < e.pivots.size(); ++k) x[e.pivots[k]] = e.reduced(k, m.cols());
    return true;
}

RationalMatrix inverse(const RationalMatrix& m) {
    if (m.rows() != m.cols()) fail(ErrorCode::DimensionMismatch, "inverse of a non-square matrix");
    const std::size_t n = m.rows();
    RationalMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    const Echelon e = row_reduce(aug);
    if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) fail(ErrorCode::DimensionMismatch, "matrix is singular");
    RationalMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
    return inv;
}

std::size_t homology_dimension(const RationalMatrix& d_in, const RationalMatrix& d_out) {
    if (d_in.rows() != d_out.cols())
        fail(ErrorCode::DimensionMismatch, "homology_dimension: d_in has " + std::to_string(d_in.rows()) +
                                               " rows but d_out has " + std::to_string(d_out.cols()) + " columns");
    if (!(d_out * d_in).is_zero()) fail(ErrorCode::CompositionNotZero, "d_out * d_in is not zero");
    const std::size_t kernel = d_out.cols() - mat_rank(d_out);
    return kernel - mat_rank(d_in);
}

}  // namespace loopforge::exactq

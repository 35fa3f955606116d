#include "loopforge/exactq/matrix.hpp"

#include "loopforge/error.hpp"

#include <string>

namespace loopforge::exactq {

namespace {

void require_same_shape(const RationalMatrix& a, const RationalMatrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        fail(ErrorCode::DimensionMismatch, std::string(op) + ": shapes " + std::to_string(a.rows()) + "x" +
                                               std::to_string(a.cols()) + " and " + std::to_string(b.rows()) +
                                               "x" + std::to_string(b.cols()));
}

}  // namespace

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_)
        fail(ErrorCode::DimensionMismatch, "matrix entry count does not equal rows*cols");
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RationalMatrix RationalMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.front().size();
    RationalMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) fail(ErrorCode::DimensionMismatch, "ragged matrix rows");
        for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

RationalMatrix RationalMatrix::column(const Vector& v) { return RationalMatrix(v.size(), 1, v); }
RationalMatrix RationalMatrix::row(const Vector& v) { return RationalMatrix(1, v.size(), v); }

RationalMatrix RationalMatrix::transpose() const {
    RationalMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool RationalMatrix::is_zero() const {
    for (const auto& x : data_)
        if (!x.is_zero()) return false;
    return true;
}

Vector RationalMatrix::apply(const Vector& v) const {
    if (v.size() != cols_) fail(ErrorCode::DimensionMismatch, "matrix-vector size mismatch");
    Vector out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) {
            const Rational& a = (*this)(i, j);
            if (!a.is_zero() && !v[j].is_zero()) out[i] += a * v[j];
        }
    return out;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.cols() != b.rows())
        fail(ErrorCode::DimensionMismatch, "matrix product: " + std::to_string(a.rows()) + "x" +
                                               std::to_string(a.cols()) + " times " + std::to_string(b.rows()) +
                                               "x" + std::to_string(b.cols()));
    RationalMatrix c(a.rows(), b.cols());
    // Skip zeros: most operators here are sparse.
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Rational& x = a(i, k);
            if (x.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                const Rational& y = b(k, j);
                if (!y.is_zero()) c(i, j) += x * y;
            }
        }
    return c;
}

RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b) {
    require_same_shape(a, b, "matrix sum");
    RationalMatrix c = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) += b(i, j);
    return c;
}

RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b) {
    require_same_shape(a, b, "matrix difference");
    RationalMatrix c = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) -= b(i, j);
    return c;
}

RationalMatrix scale(const RationalMatrix& a, const Rational& s) {
    RationalMatrix c = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) *= s;
    return c;
}

RationalMatrix kron(const RationalMatrix& a, const RationalMatrix& b) {
    RationalMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Rational& x = a(i, j);
            if (x.is_zero()) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    const Rational& y = b(k, l);
                    if (!y.is_zero()) c(i * b.rows() + k, j * b.cols() + l) = x * y;
                }
        }
    return c;
}

}  // namespace loopforge::exactq

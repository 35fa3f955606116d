#pragma once

#include "loopforge/exactq/rational.hpp"

#include <cstddef>
#include <vector>

namespace loopforge::exactq {

using Vector = std::vector<Rational>;

/// Dense row-major matrix over Q.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    RationalMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries);

    static RationalMatrix identity(std::size_t n);
    static RationalMatrix from_rows(const std::vector<std::vector<Rational>>& rows);
    static RationalMatrix column(const Vector& v);
    static RationalMatrix row(const Vector& v);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const std::vector<Rational>& entries() const { return data_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    RationalMatrix transpose() const;
    bool is_zero() const;
    Vector apply(const Vector& v) const;

    friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix scale(const RationalMatrix& a, const Rational& s);

/// Kronecker product; the left factor indexes the most significant digit.
RationalMatrix kron(const RationalMatrix& a, const RationalMatrix& b);

}  // namespace loopforge::exactq

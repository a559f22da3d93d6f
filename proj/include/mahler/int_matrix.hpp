#pragma once

#include <mahler/common.hpp>

#include <initializer_list>
#include <vector>

namespace mahler {

/// Dense integer matrix with exact (arbitrary-precision) entries, row-major.
/// The 0xk empty matrix is a valid value; it is the rank-0 substitution matrix.
class int_matrix {
public:
    int_matrix() = default;
    int_matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    int_matrix(std::initializer_list<std::initializer_list<std::int64_t>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        a_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw std::invalid_argument("ragged initializer for int_matrix");
            for (auto v : row) a_.emplace_back(v);
        }
    }

    static int_matrix identity(std::size_t n) {
        int_matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static int_matrix empty(std::size_t cols) { return int_matrix(0, cols); }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bigint& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const bigint& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool operator==(const int_matrix& o) const = default;

    bool is_zero() const {
        for (const auto& v : a_)
            if (v != 0) return false;
        return true;
    }

    bool row_is_zero(std::size_t i) const {
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(i, j) != 0) return false;
        return true;
    }

    int_matrix operator*(const int_matrix& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("int_matrix product: inner dimensions differ");
        int_matrix r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t t = 0; t < cols_; ++t) {
                const bigint& x = (*this)(i, t);
                if (x == 0) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += x * o(t, j);
            }
        return r;
    }

    int_matrix transposed() const {
        int_matrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    /// Keeps the first n rows.
    int_matrix top_rows(std::size_t n) const {
        int_matrix r(n, cols_);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
        return r;
    }

    /// Exact determinant (fraction-free Gaussian elimination).
    bigint det() const {
        if (rows_ != cols_) throw std::invalid_argument("det: matrix not square");
        std::size_t n = rows_;
        if (n == 0) return 1;
        int_matrix m = *this;
        bigint denom = 1;
        int sign = 1;
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t p = c;
            while (p < n && m(p, c) == 0) ++p;
            if (p == n) return 0;
            if (p != c) {
                for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
                sign = -sign;
            }
            for (std::size_t i = c + 1; i < n; ++i) {
                for (std::size_t j = c + 1; j < n; ++j)
                    m(i, j) = (m(i, j) * m(c, c) - m(i, c) * m(c, j)) / denom;
                m(i, c) = 0;
            }
            denom = m(c, c);
        }
        return sign > 0 ? m(n - 1, n - 1) : -m(n - 1, n - 1);
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<bigint> a_;
};

} // namespace mahler

#pragma once

#include "linconfig/error.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace linconfig {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int abs_int(const Int &a) { return a < 0 ? Int(-a) : a; }

inline Int gcd_int(Int a, Int b) {
    a = abs_int(a);
    b = abs_int(b);
    while (b != 0) {
        Int r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

/// gcd of a vector; 0 for the zero vector.
inline Int gcd_of(std::span<const Int> v) {
    Int g = 0;
    for (const auto &x : v) g = gcd_int(g, x);
    return g;
}

/// Floor division (rounds toward negative infinity).
inline Int floor_div(const Int &a, const Int &b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

/// Quotient q minimising |a - q*b|; ties go toward zero.
inline Int nearest_div(const Int &a, const Int &b) {
    Int q = floor_div(a, b);
    Int r = a - q * b;                // same sign as b, |r| < |b|
    Int alt = r - b;                  // remainder for q + 1
    if (abs_int(alt) < abs_int(r)) return q + 1;
    if (abs_int(alt) == abs_int(r) && abs_int(q + 1) < abs_int(q)) return q + 1;
    return q;
}

/// Dense row-major integer matrix with arbitrary-precision entries.
class IntMatrix {
  public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    IntMatrix(std::initializer_list<std::initializer_list<long long>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto &row : init) {
            if (row.size() != cols_) fail(ErrorKind::ShapeMismatch, "ragged matrix literal");
            for (long long v : row) data_.emplace_back(v);
        }
    }

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static IntMatrix from_rows(const std::vector<std::vector<Int>> &rows, std::size_t cols = 0) {
        IntMatrix m(rows.size(), rows.empty() ? cols : rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_) fail(ErrorKind::ShapeMismatch, "ragged row list");
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    Int &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Int &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    [[nodiscard]] std::span<Int> row_span(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    [[nodiscard]] std::span<const Int> row_span(std::size_t i) const {
        return {data_.data() + i * cols_, cols_};
    }
    [[nodiscard]] std::vector<Int> row(std::size_t i) const {
        auto s = row_span(i);
        return {s.begin(), s.end()};
    }
    [[nodiscard]] std::vector<Int> col(std::size_t j) const {
        std::vector<Int> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }
    [[nodiscard]] const std::vector<Int> &data() const noexcept { return data_; }

    [[nodiscard]] bool is_zero() const {
        return std::all_of(data_.begin(), data_.end(), [](const Int &x) { return x == 0; });
    }
    [[nodiscard]] bool row_is_zero(std::size_t i) const {
        auto s = row_span(i);
        return std::all_of(s.begin(), s.end(), [](const Int &x) { return x == 0; });
    }

    // elementary operations, used by the normal-form routines
    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
    }
    /// row[dst] += c * row[src]
    void add_row_multiple(std::size_t dst, std::size_t src, const Int &c) {
        if (c == 0) return;
        for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += c * (*this)(src, j);
    }
    /// col[dst] += c * col[src]
    void add_col_multiple(std::size_t dst, std::size_t src, const Int &c) {
        if (c == 0) return;
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += c * (*this)(i, src);
    }
    void negate_row(std::size_t i) {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
    }
    void negate_col(std::size_t j) {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
    }

    [[nodiscard]] IntMatrix transpose() const {
        IntMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    [[nodiscard]] IntMatrix select(std::span<const std::size_t> rows,
                                   std::span<const std::size_t> cols) const {
        IntMatrix s(rows.size(), cols.size());
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = (*this)(rows[i], cols[j]);
        return s;
    }
    [[nodiscard]] IntMatrix select_rows(std::span<const std::size_t> rows) const {
        std::vector<std::size_t> all(cols_);
        std::iota(all.begin(), all.end(), std::size_t{0});
        return select(rows, all);
    }
    [[nodiscard]] IntMatrix select_cols(std::span<const std::size_t> cols) const {
        std::vector<std::size_t> all(rows_);
        std::iota(all.begin(), all.end(), std::size_t{0});
        return select(all, cols);
    }
    /// Rows [first, first+count) as a new matrix.
    [[nodiscard]] IntMatrix row_block(std::size_t first, std::size_t count) const {
        IntMatrix s(count, cols_);
        std::copy(data_.begin() + static_cast<std::ptrdiff_t>(first * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((first + count) * cols_), s.data_.begin());
        return s;
    }
    [[nodiscard]] IntMatrix col_block(std::size_t first, std::size_t count) const {
        std::vector<std::size_t> c(count);
        std::iota(c.begin(), c.end(), first);
        return select_cols(c);
    }
    [[nodiscard]] IntMatrix without_row(std::size_t r) const {
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < rows_; ++i)
            if (i != r) keep.push_back(i);
        return select_rows(keep);
    }
    [[nodiscard]] IntMatrix without_col(std::size_t c) const {
        std::vector<std::size_t> keep;
        for (std::size_t j = 0; j < cols_; ++j)
            if (j != c) keep.push_back(j);
        return select_cols(keep);
    }

    void append_row(std::span<const Int> r) {
        if (rows_ == 0 && cols_ == 0) cols_ = r.size();
        if (r.size() != cols_) fail(ErrorKind::ShapeMismatch, "append_row: wrong length");
        data_.insert(data_.end(), r.begin(), r.end());
        ++rows_;
    }

    friend bool operator==(const IntMatrix &a, const IntMatrix &b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    friend IntMatrix operator*(const IntMatrix &a, const IntMatrix &b) {
        if (a.cols_ != b.rows_) fail(ErrorKind::ShapeMismatch, "matrix product: inner dimensions differ");
        IntMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Int &aik = a(i, k);
                if (aik == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend IntMatrix operator-(const IntMatrix &a) {
        IntMatrix c = a;
        for (auto &x : c.data_) x = -x;
        return c;
    }

    [[nodiscard]] std::vector<Int> apply(std::span<const Int> x) const {
        if (x.size() != cols_) fail(ErrorKind::ShapeMismatch, "matrix-vector product: wrong length");
        std::vector<Int> y(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
        return y;
    }

    friend std::ostream &operator<<(std::ostream &os, const IntMatrix &m) {
        os << '[';
        for (std::size_t i = 0; i < m.rows_; ++i) {
            os << (i ? ",[" : "[");
            for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? "," : "") << m(i, j);
            os << ']';
        }
        return os << ']';
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> data_;
};

inline IntMatrix hstack(const IntMatrix &a, const IntMatrix &b) {
    if (a.rows() != b.rows()) fail(ErrorKind::ShapeMismatch, "hstack: row counts differ");
    IntMatrix c(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
    }
    return c;
}

inline IntMatrix vstack(const IntMatrix &a, const IntMatrix &b) {
    if (a.rows() == 0) return b;
    if (b.rows() == 0) return a;
    if (a.cols() != b.cols()) fail(ErrorKind::ShapeMismatch, "vstack: column counts differ");
    IntMatrix c = a;
    for (std::size_t i = 0; i < b.rows(); ++i) c.append_row(b.row_span(i));
    return c;
}

/// Exact determinant by Bareiss fraction-free elimination.
inline Int determinant(IntMatrix a) {
    if (a.rows() != a.cols()) fail(ErrorKind::ShapeMismatch, "determinant of a non-square matrix");
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    Int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
            }
            a(i, k) = 0;
        }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

/// Rank over the rationals (fraction-free elimination).
inline std::size_t rank(IntMatrix a) {
    std::size_t r = 0;
    Int prev = 1;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t p = r;
        while (p < a.rows() && a(p, c) == 0) ++p;
        if (p == a.rows()) continue;
        a.swap_rows(r, p);
        for (std::size_t i = r + 1; i < a.rows(); ++i) {
            for (std::size_t j = c + 1; j < a.cols(); ++j)
                a(i, j) = (a(i, j) * a(r, c) - a(i, c) * a(r, j)) / prev;
            a(i, c) = 0;
        }
        prev = a(r, c);
        ++r;
    }
    return r;
}

inline bool is_unimodular(const IntMatrix &a) {
    return a.rows() == a.cols() && abs_int(determinant(a)) == 1;
}

/// Solve a * x = b for square unimodular a, exactly over the integers.
inline std::vector<Int> solve_unimodular(const IntMatrix &a, std::span<const Int> b) {
    const std::size_t n = a.rows();
    if (a.cols() != n || b.size() != n) fail(ErrorKind::ShapeMismatch, "solve_unimodular: bad shapes");
    // Row-reduce [a | b] with unimodular integer row operations to upper
    // triangular form; the diagonal then consists of units.
    IntMatrix aug(n, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n) = b[i];
    }
    for (std::size_t c = 0; c < n; ++c) {
        for (;;) {
            std::size_t piv = n;
            for (std::size_t i = c; i < n; ++i)
                if (aug(i, c) != 0 && (piv == n || abs_int(aug(i, c)) < abs_int(aug(piv, c)))) piv = i;
            if (piv == n) fail(ErrorKind::NotUnimodular, "solve_unimodular: singular matrix");
            aug.swap_rows(c, piv);
            bool clean = true;
            for (std::size_t i = c + 1; i < n; ++i) {
                if (aug(i, c) == 0) continue;
                aug.add_row_multiple(i, c, -floor_div(aug(i, c), aug(c, c)));
                if (aug(i, c) != 0) clean = false;
            }
            if (clean) break;
        }
        if (abs_int(aug(c, c)) != 1) fail(ErrorKind::NotUnimodular, "solve_unimodular: determinant is not a unit");
    }
    std::vector<Int> x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        Int s = aug(ii, n);
        for (std::size_t j = ii + 1; j < n; ++j) s -= aug(ii, j) * x[j];
        x[ii] = s * aug(ii, ii); // aug(ii,ii) = ±1 is its own inverse
    }
    return x;
}

/// Exact inverse of a unimodular matrix.
inline IntMatrix inverse_unimodular(const IntMatrix &a) {
    const std::size_t n = a.rows();
    IntMatrix inv(n, n);
    std::vector<Int> e(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::fill(e.begin(), e.end(), Int(0));
        e[j] = 1;
        auto x = solve_unimodular(a, e);
        for (std::size_t i = 0; i < n; ++i) inv(i, j) = x[i];
    }
    return inv;
}

} // namespace linconfig

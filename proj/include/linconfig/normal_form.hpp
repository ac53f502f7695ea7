#pragma once

#include "linconfig/int_matrix.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace linconfig {

/// a = u * d * v with u, v unimodular and d diagonal (d_1 | d_2 | ...).
/// The inverses of u and v are carried along since most callers need them.
struct SnfDecomposition {
    IntMatrix u;
    IntMatrix d;
    IntMatrix v;
    IntMatrix u_inv;
    IntMatrix v_inv;

    [[nodiscard]] std::size_t rank() const {
        std::size_t r = 0;
        const std::size_t n = std::min(d.rows(), d.cols());
        while (r < n && d(r, r) != 0) ++r;
        return r;
    }
    [[nodiscard]] std::vector<Int> diagonal() const {
        std::vector<Int> out;
        for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i) out.push_back(d(i, i));
        return out;
    }
};

namespace detail {

// Tracks u*d*v = a under elementary operations applied to d.
struct SnfState {
    IntMatrix u, d, v, u_inv, v_inv;

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        d.swap_rows(a, b);
        u.swap_cols(a, b);
        u_inv.swap_rows(a, b);
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        d.swap_cols(a, b);
        v.swap_rows(a, b);
        v_inv.swap_cols(a, b);
    }
    // row a of d += c * row b
    void add_row(std::size_t a, std::size_t b, const Int &c) {
        if (c == 0) return;
        d.add_row_multiple(a, b, c);
        u.add_col_multiple(b, a, -c);
        u_inv.add_row_multiple(a, b, c);
    }
    // col a of d += c * col b
    void add_col(std::size_t a, std::size_t b, const Int &c) {
        if (c == 0) return;
        d.add_col_multiple(a, b, c);
        v.add_row_multiple(b, a, -c);
        v_inv.add_col_multiple(a, b, c);
    }
    void negate_row(std::size_t a) {
        d.negate_row(a);
        u.negate_col(a);
        u_inv.negate_row(a);
    }
};

} // namespace detail

/// Smith normal form with transforms. Pivots are chosen with minimal
/// absolute value in the remaining block to limit coefficient growth.
inline SnfDecomposition smith_normal_form(const IntMatrix &a) {
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();
    detail::SnfState s{IntMatrix::identity(rows), a, IntMatrix::identity(cols), IntMatrix::identity(rows),
                       IntMatrix::identity(cols)};
    auto &d = s.d;

    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
        // smallest nonzero entry of the trailing block becomes the pivot
        std::size_t pi = rows, pj = cols;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (d(i, j) != 0 && (pi == rows || abs_int(d(i, j)) < abs_int(d(pi, pj)))) {
                    pi = i;
                    pj = j;
                }
        if (pi == rows) break;
        s.swap_rows(t, pi);
        s.swap_cols(t, pj);

        for (;;) {
            for (std::size_t i = t + 1; i < rows; ++i)
                if (d(i, t) != 0) s.add_row(i, t, -nearest_div(d(i, t), d(t, t)));
            for (std::size_t j = t + 1; j < cols; ++j)
                if (d(t, j) != 0) s.add_col(j, t, -nearest_div(d(t, j), d(t, t)));

            // any leftover in the pivot row/column is smaller than the pivot
            std::size_t bi = rows, bj = cols;
            for (std::size_t i = t + 1; i < rows; ++i)
                if (d(i, t) != 0 && (bi == rows || abs_int(d(i, t)) < abs_int(d(bi, t)))) bi = i;
            for (std::size_t j = t + 1; j < cols; ++j)
                if (d(t, j) != 0 && (bj == cols || abs_int(d(t, j)) < abs_int(d(t, bj)))) bj = j;
            if (bi != rows || bj != cols) {
                if (bi != rows && (bj == cols || abs_int(d(bi, t)) <= abs_int(d(t, bj))))
                    s.swap_rows(t, bi);
                else
                    s.swap_cols(t, bj);
                continue;
            }

            // divisibility chain: fold an offending row into the pivot row
            std::size_t bad = rows;
            for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (d(i, j) % d(t, t) != 0) {
                        bad = i;
                        break;
                    }
            if (bad == rows) break;
            s.add_row(t, bad, 1);
        }
        if (d(t, t) < 0) s.negate_row(t);
    }
    return {std::move(s.u), std::move(s.d), std::move(s.v), std::move(s.u_inv), std::move(s.v_inv)};
}

/// gcd of the nonzero r x r minors (enumerated; falls back to the SNF
/// diagonal when the number of minors is large).
inline Int determinantal_divisor(const IntMatrix &m, std::size_t r) {
    if (r > std::min(m.rows(), m.cols())) fail(ErrorKind::InvalidArgument, "determinantal_divisor: r too large");
    if (rank(m) < r) fail(ErrorKind::RankDeficient, "matrix rank is below r");
    if (r == 0) return 1;

    auto binom = [](std::size_t n, std::size_t k) {
        long double b = 1;
        for (std::size_t i = 0; i < k; ++i) b = b * static_cast<long double>(n - i) / static_cast<long double>(i + 1);
        return b;
    };
    if (binom(m.rows(), r) * binom(m.cols(), r) > 20000.0L) {
        auto snf = smith_normal_form(m);
        Int p = 1;
        for (std::size_t i = 0; i < r; ++i) p *= snf.d(i, i);
        return p;
    }

    // enumerate combinations of rows and columns
    auto next_comb = [](std::vector<std::size_t> &c, std::size_t n) {
        const std::size_t k = c.size();
        for (std::size_t i = k; i-- > 0;) {
            if (c[i] < n - k + i) {
                ++c[i];
                for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
                return true;
            }
        }
        return false;
    };
    Int g = 0;
    std::vector<std::size_t> rs(r);
    for (std::size_t i = 0; i < r; ++i) rs[i] = i;
    do {
        std::vector<std::size_t> cs(r);
        for (std::size_t i = 0; i < r; ++i) cs[i] = i;
        do {
            Int det = determinant(m.select(rs, cs));
            if (det != 0) {
                g = gcd_int(g, det);
                if (g == 1) return g;
            }
        } while (next_comb(cs, m.cols()));
    } while (next_comb(rs, m.rows()));
    return g;
}

/// Square unimodular matrix whose first row is v (requires gcd(v) = 1).
inline IntMatrix unimodular_completion_row(const std::vector<Int> &v) {
    if (v.empty() || gcd_of(v) != 1) fail(ErrorKind::NotCoprime, "unimodular_completion_row: gcd of entries is not 1");
    IntMatrix row(1, v.size());
    for (std::size_t j = 0; j < v.size(); ++j) row(0, j) = v[j];
    // v = u * (1 0 ... 0) * V with u = ±1, so the first row of V is ±v
    auto snf = smith_normal_form(row);
    IntMatrix out = snf.v;
    if (snf.u(0, 0) == -1) out.negate_row(0);
    return out;
}

/// cols x cols unimodular matrix whose top rows are m (requires d_r(m) = 1).
inline IntMatrix unimodular_completion_block(const IntMatrix &m) {
    const std::size_t r = m.rows();
    auto snf = smith_normal_form(m);
    if (snf.rank() != r) fail(ErrorKind::DeterminantalNotOne, "matrix does not have full row rank");
    for (std::size_t i = 0; i < r; ++i)
        if (snf.d(i, i) != 1) fail(ErrorKind::DeterminantalNotOne, "d_r(M) != 1");
    // m = u (I|0) v, so (m; rows r.. of v) = diag(u, I) v
    IntMatrix out = m;
    for (std::size_t i = r; i < m.cols(); ++i) out.append_row(snf.v.row_span(i));
    if (out.rows() > r && determinant(out) < 0) out.negate_row(out.rows() - 1);
    return out;
}

namespace detail {

inline IntMatrix reverse_rows(const IntMatrix &a) {
    IntMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(a.rows() - 1 - i, j);
    return out;
}

inline IntMatrix reverse_cols(const IntMatrix &a) {
    IntMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, a.cols() - 1 - j);
    return out;
}

inline std::vector<Int> combine(std::span<const Int> a, std::span<const Int> b, const Int &cb) {
    std::vector<Int> out(a.begin(), a.end());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += cb * b[j];
    return out;
}

// Returns (b; T; I_r) with every window of r consecutive rows unimodular.
inline IntMatrix extend_down(const IntMatrix &b) {
    const std::size_t r = b.rows();
    IntMatrix out = b;
    if (r == 1) {
        std::vector<Int> one{Int(1)};
        out.append_row(one);
        return out;
    }
    auto window_row = [&](std::size_t k) { return out.row_span(out.rows() - r + k); };

    // Euclid phase on the first column until the newest row starts with 1.
    for (;;) {
        if (out(out.rows() - 1, 0) == 1) break;
        std::size_t p = r;
        for (std::size_t k = 1; k < r; ++k) {
            const Int &x = window_row(k)[0];
            if (x != 0 && (p == r || abs_int(x) < abs_int(window_row(p)[0]))) p = k;
        }
        std::vector<Int> next;
        if (p == r) {
            // w_2..w_r vanish in the first column, so w_1 starts with ±1
            next = combine(window_row(0), window_row(r - 1), 1);
        } else {
            const Int a = window_row(0)[0];
            const Int c = window_row(p)[0];
            Int q = abs_int(c) == 1 ? Int((a - 1) / c) : nearest_div(a, c);
            next = combine(window_row(0), window_row(p), -q);
        }
        out.append_row(next);
    }

    // Clearing phase: subtract multiples of the pivot row from w_1..w_{r-1}.
    const std::vector<Int> pivot = out.row(out.rows() - 1);
    std::vector<std::vector<Int>> cleared;
    for (std::size_t k = 0; k + 1 < r; ++k) {
        auto w = out.row(out.rows() - r); // always the oldest row of the current window
        std::vector<Int> next = combine(w, pivot, -w[0]);
        out.append_row(next);
        cleared.push_back(next);
    }
    IntMatrix sub(r - 1, r - 1);
    for (std::size_t i = 0; i + 1 < r; ++i)
        for (std::size_t j = 1; j < r; ++j) sub(i, j - 1) = cleared[i][j];

    // Recurse, then pad with (1,...,1; I) gadgets until the length is a
    // multiple of r-1 so the interleaved e_1 rows land before the final block.
    IntMatrix lower = extend_down(sub);
    const std::size_t n = r - 1;
    while (lower.rows() % n != 0) {
        std::vector<Int> ones(n, Int(1));
        lower.append_row(ones);
        auto id = IntMatrix::identity(n);
        for (std::size_t i = 0; i < n; ++i) lower.append_row(id.row_span(i));
    }

    std::vector<Int> e1(r);
    e1[0] = 1;
    for (std::size_t i = n; i < lower.rows(); ++i) {
        if (i % n == 0) out.append_row(e1);
        std::vector<Int> row(r);
        for (std::size_t j = 0; j < n; ++j) row[j + 1] = lower(i, j);
        out.append_row(row);
    }
    return out;
}

} // namespace detail

/// (I_r; S; b; T; I_r) with every r consecutive rows unimodular.
struct GoodCompletion {
    IntMatrix matrix;
    std::size_t block_offset = 0; ///< index of the first row of b
};

/// Every window of r consecutive rows has determinant ±1.
inline bool is_good(const IntMatrix &m) {
    const std::size_t r = m.cols();
    if (m.rows() < r) return false;
    for (std::size_t i = 0; i + r <= m.rows(); ++i)
        if (!is_unimodular(m.row_block(i, r))) return false;
    return true;
}

inline GoodCompletion good_completion(const IntMatrix &b) {
    if (!is_unimodular(b)) fail(ErrorKind::NotUnimodular, "good_completion: input is not unimodular");
    const std::size_t r = b.rows();
    IntMatrix bottom = detail::extend_down(b);
    // top part: run the same routine on the row- and column-reversed block
    IntMatrix top = detail::extend_down(detail::reverse_cols(detail::reverse_rows(b)));
    top = detail::reverse_rows(detail::reverse_cols(top));
    GoodCompletion out;
    out.block_offset = top.rows() - r;
    out.matrix = vstack(top.row_block(0, top.rows() - r), bottom);
    return out;
}

/// 1-based cyclic index with representative in [1, m].
inline std::size_t cyclic_index(long long i, std::size_t m) {
    const long long mm = static_cast<long long>(m);
    return static_cast<std::size_t>(((i - 1) % mm + mm) % mm + 1);
}

/// Columns j-r, ..., j-1 (cyclic, 1-based j), as 0-based indices.
inline std::vector<std::size_t> circular_window(std::size_t j, std::size_t r, std::size_t m) {
    std::vector<std::size_t> cols;
    for (std::size_t s = r; s >= 1; --s)
        cols.push_back(cyclic_index(static_cast<long long>(j) - static_cast<long long>(s), m) - 1);
    return cols;
}

namespace detail {

/// Square column selection with its unit columns (a single ±1 entry) peeled
/// off: det(A) = ±det(rest) and solving A y = b reduces to the rest block.
struct PeeledWindow {
    std::vector<std::size_t> unit_cols, unit_rows; ///< positions within the window
    std::vector<Int> unit_signs;
    std::vector<std::size_t> rest_rows, rest_cols;
    bool singular = false;
};

inline PeeledWindow peel_window(const IntMatrix &m, std::span<const std::size_t> cols) {
    PeeledWindow p;
    std::vector<bool> row_used(m.rows(), false);
    for (std::size_t k = 0; k < cols.size(); ++k) {
        std::size_t nz = 0, at = 0;
        for (std::size_t i = 0; i < m.rows() && nz < 2; ++i)
            if (m(i, cols[k]) != 0) {
                ++nz;
                at = i;
            }
        if (nz == 1 && abs_int(m(at, cols[k])) == 1 && !row_used[at]) {
            row_used[at] = true;
            p.unit_cols.push_back(k);
            p.unit_rows.push_back(at);
            p.unit_signs.push_back(m(at, cols[k]));
        } else if (nz == 0) {
            p.singular = true;
            p.rest_cols.push_back(k);
        } else {
            p.rest_cols.push_back(k);
        }
    }
    for (std::size_t i = 0; i < m.rows(); ++i)
        if (!row_used[i]) p.rest_rows.push_back(i);
    return p;
}

inline IntMatrix rest_block(const IntMatrix &m, std::span<const std::size_t> cols, const PeeledWindow &p) {
    std::vector<std::size_t> rc;
    for (auto k : p.rest_cols) rc.push_back(cols[k]);
    return m.select(p.rest_rows, rc);
}

} // namespace detail

/// |det| of the square submatrix on `cols` is 1.
inline bool window_unimodular(const IntMatrix &m, std::span<const std::size_t> cols) {
    auto p = detail::peel_window(m, cols);
    if (p.singular) return false;
    if (p.rest_cols.empty()) return true;
    return is_unimodular(detail::rest_block(m, cols, p));
}

/// y with sum_k y_k m[:, cols[k]] = b, for a unimodular column selection.
inline std::vector<Int> solve_window(const IntMatrix &m, std::span<const std::size_t> cols, std::span<const Int> b) {
    auto p = detail::peel_window(m, cols);
    if (p.singular) fail(ErrorKind::NotUnimodular, "solve_window: singular window");
    std::vector<Int> y(cols.size());
    if (!p.rest_cols.empty()) {
        std::vector<Int> rb;
        for (auto i : p.rest_rows) rb.push_back(b[i]);
        auto yr = solve_unimodular(detail::rest_block(m, cols, p), rb);
        for (std::size_t k = 0; k < p.rest_cols.size(); ++k) y[p.rest_cols[k]] = yr[k];
    }
    for (std::size_t u = 0; u < p.unit_cols.size(); ++u) {
        const std::size_t i = p.unit_rows[u];
        Int acc = b[i];
        for (auto k : p.rest_cols) acc -= m(i, cols[k]) * y[k];
        y[p.unit_cols[u]] = acc * p.unit_signs[u]; // sign is ±1, its own inverse
    }
    return y;
}

struct CircularCheck {
    bool circular = false;
    std::optional<std::size_t> failing_index; ///< 1-based j of the first bad window
};

inline CircularCheck is_circular(const IntMatrix &m) {
    const std::size_t r = m.rows();
    if (r == 0 || r > m.cols()) return {false, std::nullopt};
    for (std::size_t j = 1; j <= m.cols(); ++j) {
        if (!window_unimodular(m, circular_window(j, r, m.cols()))) return {false, j};
    }
    return {true, std::nullopt};
}

} // namespace linconfig

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace linconfig;

namespace {

bool divisibility_chain(const IntMatrix &d) {
    const std::size_t n = std::min(d.rows(), d.cols());
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (d(i, i) == 0) {
            if (d(i + 1, i + 1) != 0) return false;
        } else if (d(i + 1, i + 1) % d(i, i) != 0) {
            return false;
        }
    }
    for (std::size_t i = 0; i < d.rows(); ++i)
        for (std::size_t j = 0; j < d.cols(); ++j)
            if (i != j && d(i, j) != 0) return false;
    return true;
}

void expect_snf(const IntMatrix &a) {
    auto s = smith_normal_form(a);
    EXPECT_EQ(s.u * s.d * s.v, a);
    EXPECT_EQ(abs_int(oracle::cofactor_det(s.u)), 1);
    EXPECT_EQ(abs_int(oracle::cofactor_det(s.v)), 1);
    EXPECT_EQ(s.u * s.u_inv, IntMatrix::identity(a.rows()));
    EXPECT_EQ(s.v * s.v_inv, IntMatrix::identity(a.cols()));
    EXPECT_TRUE(divisibility_chain(s.d));
}

} // namespace

TEST(Snf, Examples) {
    auto s = smith_normal_form(IntMatrix{{1, 1, -1}});
    EXPECT_EQ(s.d, (IntMatrix{{1, 0, 0}}));
    EXPECT_EQ(abs_int(s.u(0, 0)), 1);
    expect_snf(IntMatrix{{1, 1, -1}});

    auto t = smith_normal_form(IntMatrix{{2, 0}, {0, 3}});
    EXPECT_EQ(t.d, (IntMatrix{{1, 0}, {0, 6}}));
    expect_snf(IntMatrix{{2, 0}, {0, 3}});

    expect_snf(IntMatrix::identity(3));
    EXPECT_EQ(smith_normal_form(IntMatrix::identity(3)).d, IntMatrix::identity(3));
}

TEST(Snf, RandomRoundTrip) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 500; ++trial) {
        std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
        auto a = oracle::random_matrix(r, c, -9, 9, rng);
        expect_snf(a);
    }
}

TEST(Snf, RankAndZeroMatrix) {
    auto s = smith_normal_form(IntMatrix(2, 3));
    EXPECT_EQ(s.rank(), 0u);
    auto t = smith_normal_form(IntMatrix{{1, 2}, {2, 4}});
    EXPECT_EQ(t.rank(), 1u);
}

TEST(Determinantal, Examples) {
    EXPECT_EQ(determinantal_divisor(IntMatrix{{1, 1, -1}}, 1), 1);
    EXPECT_EQ(determinantal_divisor(IntMatrix{{2, 4}}, 1), 2);
    EXPECT_EQ(determinantal_divisor(IntMatrix{{2, 0}, {0, 3}}, 2), 6);
    try {
        (void)determinantal_divisor(IntMatrix{{1, 2}, {2, 4}}, 2);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::RankDeficient);
    }
}

TEST(Determinantal, MatchesSnfAndMinorOracle) {
    std::mt19937_64 rng(12);
    int checked = 0;
    while (checked < 150) {
        std::size_t r = 1 + rng() % 3, c = r + rng() % 3;
        auto a = oracle::random_matrix(r, c, -6, 6, rng);
        if (rank(a) < r) continue;
        auto s = smith_normal_form(a);
        Int prod = 1;
        for (std::size_t i = 0; i < r; ++i) prod *= s.d(i, i);
        Int dr = determinantal_divisor(a, r);
        EXPECT_EQ(dr, prod);
        EXPECT_EQ(dr, oracle::gcd_minors(a, r));
        ++checked;
    }
}

TEST(Determinant, BareissMatchesCofactor) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 1 + rng() % 5;
        auto a = oracle::random_matrix(n, n, -7, 7, rng);
        EXPECT_EQ(determinant(a), oracle::cofactor_det(a));
    }
}

TEST(Completion, Row) {
    EXPECT_EQ(unimodular_completion_row({1, 0, 0}), IntMatrix::identity(3));
    for (auto v : std::vector<std::vector<Int>>{{2, 3}, {2, 2, 1}, {-4, 6, 9}, {0, 0, -1}, {-1}}) {
        auto u = unimodular_completion_row(v);
        EXPECT_EQ(abs_int(oracle::cofactor_det(u)), 1);
        EXPECT_EQ(u.row(0), v);
    }
    try {
        (void)unimodular_completion_row({2, 4});
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotCoprime);
    }
}

TEST(Completion, RowRandom) {
    std::mt19937_64 rng(14);
    int done = 0;
    while (done < 200) {
        std::size_t n = 1 + rng() % 5;
        auto a = oracle::random_matrix(1, n, -20, 20, rng);
        auto v = a.row(0);
        if (gcd_of(v) != 1) continue;
        auto u = unimodular_completion_row(v);
        ASSERT_EQ(abs_int(oracle::cofactor_det(u)), 1);
        ASSERT_EQ(u.row(0), v);
        ++done;
    }
}

TEST(Completion, Block) {
    EXPECT_EQ(unimodular_completion_block(IntMatrix::identity(2)), IntMatrix::identity(2));
    for (auto m : {IntMatrix{{1, 1, -1}}, IntMatrix{{1, 2, 2}}, IntMatrix{{1, 0, 2, 3}, {0, 1, 5, 7}},
                   IntMatrix{{2, 3, 0}, {0, 5, 7}}}) {
        auto u = unimodular_completion_block(m);
        EXPECT_EQ(u.rows(), m.cols());
        EXPECT_EQ(determinant(u), 1);
        EXPECT_EQ(u.row_block(0, m.rows()), m);
    }
    try {
        (void)unimodular_completion_block(IntMatrix{{2, 4, 6}});
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::DeterminantalNotOne);
    }
}

TEST(GoodCompletion, Examples) {
    auto one = good_completion(IntMatrix{{1}});
    EXPECT_EQ(one.matrix, (IntMatrix{{1}, {1}, {1}}));
    for (auto b : {IntMatrix{{2, 3}, {1, 2}}, IntMatrix{{0, 1}, {-1, 0}}, IntMatrix{{-1}},
                   IntMatrix{{1, 2, 2}, {0, 1, 0}, {0, 0, 1}}}) {
        auto g = good_completion(b);
        const std::size_t r = b.rows();
        EXPECT_TRUE(oracle::windows_unimodular(g.matrix)) << g.matrix;
        EXPECT_EQ(g.matrix.row_block(0, r), IntMatrix::identity(r));
        EXPECT_EQ(g.matrix.row_block(g.matrix.rows() - r, r), IntMatrix::identity(r));
        EXPECT_EQ(g.matrix.row_block(g.block_offset, r), b);
    }
    try {
        (void)good_completion(IntMatrix{{2, 0}, {0, 1}});
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotUnimodular);
    }
}

TEST(GoodCompletion, RandomUnimodular) {
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t r = 1 + rng() % 4;
        auto b = oracle::random_unimodular(r, rng);
        auto g = good_completion(b);
        ASSERT_TRUE(oracle::windows_unimodular(g.matrix)) << b;
        ASSERT_EQ(g.matrix.row_block(0, r), IntMatrix::identity(r));
        ASSERT_EQ(g.matrix.row_block(g.matrix.rows() - r, r), IntMatrix::identity(r));
        ASSERT_EQ(g.matrix.row_block(g.block_offset, r), b);
    }
}

TEST(Circular, Examples) {
    EXPECT_TRUE(is_circular(IntMatrix{{1, 1, -1}}).circular);
    auto ap = is_circular(IntMatrix{{1, -2, 1}});
    EXPECT_FALSE(ap.circular);
    ASSERT_TRUE(ap.failing_index.has_value());
    // window of j is column j-1 (cyclic), so the -2 entry fails at j = 3
    EXPECT_EQ(*ap.failing_index, 3u);
    EXPECT_FALSE(is_circular(IntMatrix{{1, 2, 2, 1}}).circular);
    EXPECT_TRUE(is_circular(IntMatrix{{1, 1, 1}}).circular);
}

TEST(Circular, IndexConvention) {
    EXPECT_EQ(cyclic_index(0, 5), 5u);
    EXPECT_EQ(cyclic_index(6, 5), 1u);
    EXPECT_EQ(cyclic_index(-4, 5), 1u);
    EXPECT_EQ(circular_window(1, 2, 4), (std::vector<std::size_t>{2, 3}));
    EXPECT_EQ(circular_window(3, 2, 4), (std::vector<std::size_t>{0, 1}));
}

TEST(SolveUnimodular, RoundTrip) {
    std::mt19937_64 rng(16);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 1 + rng() % 4;
        auto u = oracle::random_unimodular(n, rng);
        auto x = oracle::random_matrix(1, n, -9, 9, rng).row(0);
        auto b = u.apply(x);
        EXPECT_EQ(solve_unimodular(u, b), x);
        EXPECT_EQ(u * inverse_unimodular(u), IntMatrix::identity(n));
    }
}

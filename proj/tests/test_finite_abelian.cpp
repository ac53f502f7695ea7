#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

using namespace linconfig;

namespace {

std::set<GroupElement> as_set(const std::vector<GroupElement> &v) { return {v.begin(), v.end()}; }

FiniteAbelianGroup random_group(std::mt19937_64 &rng, Residue max_order) {
    for (;;) {
        std::size_t s = 1 + rng() % 3;
        std::vector<Residue> m;
        Residue o = 1;
        for (std::size_t i = 0; i < s; ++i) {
            Residue n = 1 + static_cast<Residue>(rng() % 9);
            m.push_back(n);
            o *= n;
        }
        if (o <= max_order) return FiniteAbelianGroup(m);
    }
}

GroupHom random_hom(std::mt19937_64 &rng) {
    auto dom = random_group(rng, 40);
    auto cod = random_group(rng, 40);
    std::vector<std::vector<Residue>> flat(cod.rank(), std::vector<Residue>(dom.rank()));
    for (std::size_t i = 0; i < cod.rank(); ++i)
        for (std::size_t j = 0; j < dom.rank(); ++j) {
            // the entry must be killed by the source order
            Residue step = cod.moduli()[i] / std::gcd(cod.moduli()[i], dom.moduli()[j]);
            flat[i][j] = step * static_cast<Residue>(rng() % 7);
        }
    return GroupHom({dom}, {cod}, flat);
}

} // namespace

TEST(Group, Basics) {
    FiniteAbelianGroup g({4, 9});
    EXPECT_EQ(g.order(), 36);
    EXPECT_TRUE(g.contains(GroupElement{3, 8}));
    EXPECT_FALSE(g.contains(GroupElement{4, 0}));
    EXPECT_EQ(g.add(GroupElement{3, 8}, GroupElement{2, 2}), (GroupElement{1, 1}));
    for (std::uint64_t i = 0; i < 36; ++i) EXPECT_EQ(g.index_of(g.element_at(i)), i);
}

TEST(Torsion, Examples) {
    auto t = d_torsion(FiniteAbelianGroup({4}), 2);
    EXPECT_EQ(t.subgroup.order(), 2);
    EXPECT_EQ(as_set(t.subgroup.elements()), (std::set<GroupElement>{{0}, {2}}));
    EXPECT_EQ(d_torsion(FiniteAbelianGroup({5}), 2).subgroup.order(), 1);

    FiniteAbelianGroup g({6, 4});
    auto t2 = d_torsion(g, 2);
    std::set<GroupElement> brute;
    for (const auto &x : g.elements())
        if (g.scale(x, 2) == g.zero()) brute.insert(x);
    EXPECT_EQ(brute.size(), 4u);
    EXPECT_EQ(as_set(t2.subgroup.elements()), brute);
    EXPECT_EQ(t2.abstract_group.moduli(), (std::vector<Residue>{2, 2}));
    EXPECT_EQ(t2.embed(GroupElement{1, 1}), (GroupElement{3, 2}));
}

TEST(Subgroup, Examples) {
    FiniteAbelianGroup v4({2, 2});
    std::vector<GroupElement> gens{{1, 0}};
    EXPECT_EQ(subgroup_from_generators(v4, gens).order(), 2);

    FiniteAbelianGroup z44({4, 4});
    std::vector<GroupElement> diag{{1, 1}};
    auto s = subgroup_from_generators(z44, diag);
    EXPECT_EQ(s.order(), 4);
    EXPECT_TRUE(s.contains(GroupElement{2, 2}));
    EXPECT_FALSE(s.contains(GroupElement{1, 2}));
    EXPECT_EQ(as_set(s.elements()), oracle::closure(z44, diag));

    EXPECT_EQ(subgroup_from_generators(z44, {}).order(), 1);
}

TEST(Subgroup, CanonicalUnderShuffleAndSums) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 200; ++trial) {
        auto g = random_group(rng, 60);
        std::vector<GroupElement> gens;
        std::size_t n = rng() % 4;
        for (std::size_t i = 0; i < n; ++i) gens.push_back(g.random_element(rng));
        auto a = subgroup_from_generators(g, gens);
        auto mixed = gens;
        for (int k = 0; k < 3 && !gens.empty(); ++k)
            mixed.push_back(g.add(gens[rng() % gens.size()], gens[rng() % gens.size()]));
        std::shuffle(mixed.begin(), mixed.end(), rng);
        auto b = subgroup_from_generators(g, mixed);
        ASSERT_EQ(a, b);
        auto closed = oracle::closure(g, gens);
        ASSERT_EQ(a.order(), Int(closed.size()));
        ASSERT_EQ(as_set(a.elements()), closed);
        ASSERT_EQ(g.order() % a.order(), 0);
    }
}

TEST(HomKernel, Examples) {
    FiniteAbelianGroup z4({4});
    GroupHom twice({z4}, {z4}, {{2}});
    EXPECT_EQ(as_set(hom_kernel(twice).elements()), (std::set<GroupElement>{{0}, {2}}));

    FiniteAbelianGroup z3({3});
    GroupHom zero({z3}, {z3}, {{0}});
    EXPECT_EQ(hom_kernel(zero).order(), 3);

    auto z5 = FiniteAbelianGroup::cyclic(5);
    IntMatrix schur_psi{{1, -1, 0}, {0, 1, -1}, {1, 0, -1}};
    auto h = GroupHom::from_integer_matrix(schur_psi, z5);
    auto ker = hom_kernel(h);
    std::set<GroupElement> brute;
    for (const auto &x : h.domain().elements())
        if (h(x) == h.codomain().zero()) brute.insert(x);
    EXPECT_EQ(brute.size(), 5u);
    EXPECT_EQ(as_set(ker.elements()), brute);
    for (const auto &x : brute) EXPECT_EQ(x[0], x[1]);
}

TEST(HomKernel, FirstIsomorphismTheorem) {
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 200; ++trial) {
        auto h = random_hom(rng);
        auto st = hom_structure(h);
        ASSERT_EQ(st.kernel.order() * st.image.order(), h.domain().order());
        for (const auto &row : st.kernel.generators()) ASSERT_EQ(h(row), h.codomain().zero());
        // additivity and image membership on random pairs
        auto a = h.domain().random_element(rng), b = h.domain().random_element(rng);
        ASSERT_EQ(h(h.domain().add(a, b)), h.codomain().add(h(a), h(b)));
        ASSERT_TRUE(st.image.contains(h(a)));
        // brute force when small
        if (h.domain().order() <= 400) {
            std::set<GroupElement> ker, img;
            for (const auto &x : h.domain().elements()) {
                img.insert(h(x));
                if (h(x) == h.codomain().zero()) ker.insert(x);
            }
            ASSERT_EQ(as_set(st.kernel.elements()), ker);
            ASSERT_EQ(as_set(st.image.elements()), img);
        }
    }
}

TEST(GroupHom, RejectsIllDefined) {
    FiniteAbelianGroup z2({2}), z4({4});
    EXPECT_THROW(GroupHom({z2}, {z4}, {{1}}), Error);
    EXPECT_NO_THROW(GroupHom({z2}, {z4}, {{2}}));
}

TEST(Solve, Examples) {
    auto z5 = FiniteAbelianGroup::cyclic(5);
    GroupHom id({z5}, {z5}, {{1}});
    auto x = solve(id, GroupElement{3});
    ASSERT_TRUE(x);
    EXPECT_EQ(*x, (GroupElement{3}));

    IntMatrix schur_psi{{1, -1, 0}, {0, 1, -1}, {1, 0, -1}};
    auto h = GroupHom::from_integer_matrix(schur_psi, z5);
    // every target in the image, with g_1 fixed to 0, cross-checked by scan
    for (const auto &target : h.codomain().elements()) {
        FixedCoordinates fixed{{0, GroupElement{0}}};
        auto sol = solve(h, target, fixed);
        bool exists = false;
        for (const auto &g : h.domain().elements())
            if (g[0] == 0 && h(g) == target) exists = true;
        ASSERT_EQ(sol.has_value(), exists);
        if (sol) {
            ASSERT_EQ(h(*sol), target);
            ASSERT_EQ((*sol)[0], 0);
        }
    }
    // psi_1(g) = g_1 - g_2 = 1 cannot hold with g_1 = g_2 = 2
    FixedCoordinates both{{0, GroupElement{2}}, {1, GroupElement{2}}};
    EXPECT_FALSE(solve(h, GroupElement{1, 0, 1}, both).has_value());
}

TEST(Solve, RandomAgainstScan) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 150; ++trial) {
        auto h = random_hom(rng);
        if (h.domain().order() > 300) continue;
        auto target = h.codomain().random_element(rng);
        if (rng() % 2) target = h(h.domain().random_element(rng));
        auto sol = solve(h, target);
        bool exists = false;
        for (const auto &g : h.domain().elements())
            if (h(g) == target) {
                exists = true;
                break;
            }
        ASSERT_EQ(sol.has_value(), exists);
        if (sol) ASSERT_EQ(h(*sol), target);
    }
}

TEST(KernelParametrization, Examples) {
    auto z5 = FiniteAbelianGroup::cyclic(5);
    for (auto m : {IntMatrix{{1, 1, -1}}, IntMatrix{{1, -2, 1}}}) {
        auto w = kernel_parametrization(m, z5);
        EXPECT_EQ(w.rows(), 3u);
        EXPECT_EQ(w.cols(), 2u);
        EXPECT_TRUE((m * w).is_zero());
        std::set<GroupElement> image;
        for (Residue a = 0; a < 5; ++a)
            for (Residue b = 0; b < 5; ++b) {
                GroupElement x(3);
                for (std::size_t j = 0; j < 3; ++j) x[j] = detail::mod_floor(w(j, 0) * a + w(j, 1) * b, 5);
                image.insert(x);
            }
        EXPECT_EQ(image.size(), 25u);
        EXPECT_EQ(image, as_set(oracle::brute_kernel(m, z5)));
    }
    auto w = kernel_parametrization(IntMatrix::identity(2), z5);
    EXPECT_EQ(w.cols(), 0u);

    try {
        (void)kernel_parametrization(IntMatrix{{2, 4}}, FiniteAbelianGroup::cyclic(4));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::DeterminantalObstruction);
    }
    // coprime relaxation: d_1 = 2 and |G| = 5
    auto w2 = kernel_parametrization(IntMatrix{{2, 4}}, z5);
    EXPECT_EQ(column_span(w2, z5), matrix_kernel(IntMatrix{{2, 4}}, z5));
}

TEST(KernelParametrization, BruteForceSweep) {
    std::mt19937_64 rng(24);
    int done = 0;
    while (done < 60) {
        auto g = random_group(rng, 64);
        std::size_t r = 1 + rng() % 2, m = r + 1 + rng() % 3;
        if (m - r > 3) continue;
        auto mat = oracle::random_matrix(r, m, -4, 4, rng);
        if (rank(mat) < r) continue;
        Int dr = determinantal_divisor(mat, r);
        if (dr != 1 && gcd_int(dr, g.order()) != 1) continue;
        if (pow(g.order(), static_cast<unsigned>(m)) > Int(300000)) continue;
        auto w = kernel_parametrization(mat, g);
        auto span = column_span(w, g);
        auto brute = oracle::brute_kernel(mat, g);
        ASSERT_EQ(span.order(), pow(g.order(), static_cast<unsigned>(m - r)));
        ASSERT_EQ(Int(brute.size()), span.order());
        ASSERT_EQ(as_set(span.elements()), as_set(brute));
        ASSERT_EQ(span, matrix_kernel(mat, g));
        ++done;
    }
}

TEST(QuotientMap, Examples) {
    auto q = quotient_map(FiniteAbelianGroup({4}), std::vector<Residue>{2});
    EXPECT_EQ(q(GroupElement{3}), (GroupElement{1}));
    auto q2 = quotient_map(FiniteAbelianGroup({4, 9}), std::vector<Residue>{2, 3});
    EXPECT_EQ(q2(GroupElement{3, 7}), (GroupElement{1, 1}));
    EXPECT_EQ(hom_image(q2), whole_group(q2.codomain()));
    EXPECT_THROW((void)quotient_map(FiniteAbelianGroup({6}), std::vector<Residue>{4}), Error);
}

TEST(Projection, MatchesBruteForce) {
    std::mt19937_64 rng(25);
    for (int trial = 0; trial < 100; ++trial) {
        auto g = random_group(rng, 60);
        std::vector<GroupElement> gens{g.random_element(rng), g.random_element(rng)};
        auto s = subgroup_from_generators(g, gens);
        std::vector<std::size_t> coords;
        for (std::size_t i = 0; i < g.rank(); ++i)
            if (rng() % 2) coords.push_back(i);
        auto p = project_subgroup(s, coords);
        std::set<GroupElement> brute;
        for (const auto &x : s.elements()) {
            GroupElement y;
            for (auto c : coords) y.push_back(x[c]);
            brute.insert(y);
        }
        ASSERT_EQ(as_set(p.elements()), brute);
    }
}

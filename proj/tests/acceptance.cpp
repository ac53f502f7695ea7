// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// usage: acceptance <corpus dir>

#include "oracles.hpp"

#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

using namespace linconfig;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool ok = true;
    std::string detail;
};

/// Collects the first failure message; later checks still run.
struct Checker {
    Outcome out;
    void require(bool cond, const std::string &what) {
        if (!cond && out.ok) {
            out.ok = false;
            out.detail = what;
        }
    }
};

std::vector<FiniteAbelianGroup> battery() { return parse_battery("2;3;4;5;6;7;8;9;2x2;2x4;2x3x3"); }

Representation schur_psi() {
    Representation rep;
    rep.psi = IntMatrix{{1, -1, 0}, {0, 1, -1}, {1, 0, -1}};
    rep.t = 3;
    rep.k = 2;
    rep.color_classes = {{0, 1}, {1, 2}, {0, 2}};
    return rep;
}

const IntMatrix schur_m{{1, 1, -1}};
const IntMatrix ap3_m{{1, -2, 1}};

ElementSet random_set(const FiniteAbelianGroup &g, std::mt19937_64 &rng, bool nonempty = false) {
    ElementSet a;
    const auto elems = g.elements();
    const std::uint64_t keep = 1 + rng() % 3; // density 1/4, 1/2 or 3/4
    for (const auto &x : elems)
        if (rng() % 4 < keep) a.insert(x);
    if (nonempty && a.empty()) a.insert(elems[rng() % elems.size()]);
    return a;
}

std::string str(const auto &x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

std::vector<std::pair<std::string, IntMatrix>> load_corpus(const std::filesystem::path &dir) {
    std::vector<std::pair<std::string, IntMatrix>> out;
    for (const auto &e : std::filesystem::directory_iterator(dir / "matrices"))
        out.emplace_back(e.path().stem().string(), matrix_from_json(read_json_file(e.path().string())));
    std::sort(out.begin(), out.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
    return out;
}

// 1. the Schur matrix Psi on Z_2..Z_9 and Z_2 x Z_4
Outcome schur_golden() {
    Checker c;
    std::vector<FiniteAbelianGroup> groups;
    for (Residue n = 2; n <= 9; ++n) groups.push_back(FiniteAbelianGroup::cyclic(n));
    groups.emplace_back(std::vector<Residue>{2, 4});
    for (const auto &g : groups) {
        auto v = verify_representation(schur_psi(), schur_m, g, 2, 1);
        c.require(v.cond_i && v.cond_ii && v.cond_iii, "fails on " + g.name());
    }
    return c.out;
}

// 2. represent + full verification over the corpus
Outcome corpus_pipeline(const std::filesystem::path &dir) {
    Checker c;
    auto corpus = load_corpus(dir);
    c.require(corpus.size() >= 20, "corpus has fewer than 20 matrices");
    for (const auto &[name, m] : corpus) {
        RepresentResult res;
        try {
            res = represent(m);
        } catch (const Error &e) {
            // a fully plain system has nothing to represent
            c.require(e.kind() == ErrorKind::Degenerate && plain_reduce(m).degenerate(), name + ": " + e.what());
            continue;
        }
        for (const auto &g : battery()) {
            auto v = verify_representation(res.representation, res.target, g, 2, 1);
            c.require(v.passed(), name + " on " + g.name() + (v.failures.empty() ? "" : ": " + v.failures.front()));
        }
        for (const auto &ext : res.trail)
            c.require(check_extension(ext, FiniteAbelianGroup::cyclic(6)), name + ": extension " + to_string(ext.kind));
    }
    return c.out;
}

// 3. hd(F,H) against the kernel density; hd comes from the Psi push-forward, the
//    density from the kernel parametrization
Outcome density_identity() {
    Checker c;
    std::mt19937_64 rng(2024);
    auto ap = represent(ap3_m);
    struct Case {
        std::string name;
        Representation rep;
        IntMatrix m;
        FiniteAbelianGroup g;
    };
    std::vector<Case> cases{{"Schur/Z_5", schur_psi(), schur_m, FiniteAbelianGroup::cyclic(5)},
                            {"Schur/Z_7", schur_psi(), schur_m, FiniteAbelianGroup::cyclic(7)},
                            {"AP3/Z_5", ap.representation, ap.target, FiniteAbelianGroup::cyclic(5)}};
    for (const auto &cs : cases) {
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<ElementSet> sets;
            for (std::size_t j = 0; j < cs.m.cols(); ++j) sets.push_back(random_set(cs.g, rng));
            auto h = build_cayley(cs.rep, cs.m, cs.g, sets);
            auto hd = copy_count(h, CopyMode::Convolution).hd;
            auto mu = solution_count(cs.m, cs.g, sets).density;
            c.require(hd == mu, cs.name + ": hd " + str(hd) + " != " + str(mu));
            if (cs.rep.t == 3) c.require(copy_count(h, CopyMode::ExactBruteforce).hd == mu, cs.name + ": brute force");
        }
    }
    return c.out;
}

Rational brute_density(const IntMatrix &m, const FiniteAbelianGroup &g, const ElementSet &a) {
    auto ker = oracle::brute_kernel(m, g);
    const std::size_t s = g.rank();
    Int n = 0;
    for (const auto &x : ker) {
        bool ok = true;
        for (std::size_t j = 0; j < m.cols() && ok; ++j)
            ok = a.count(GroupElement(x.begin() + static_cast<std::ptrdiff_t>(j * s),
                                      x.begin() + static_cast<std::ptrdiff_t>((j + 1) * s))) > 0;
        if (ok) ++n;
    }
    return Rational(n, Int(ker.size()));
}

Rational brute_ap(Residue n, const std::set<Residue> &a, int k) {
    Int cnt = 0;
    for (Residue x = 0; x < n; ++x)
        for (Residue r = 0; r < n; ++r) {
            bool ok = true;
            for (int i = 0; i < k && ok; ++i) ok = a.count((x + i * r) % n) > 0;
            if (ok) ++cnt;
        }
    return Rational(cnt, Int(n * n));
}

// 4. desk-scale exact counts
Outcome desk_counts() {
    Checker c;
    auto z5 = FiniteAbelianGroup::cyclic(5), z4 = FiniteAbelianGroup::cyclic(4);
    ElementSet a12{{1}, {2}}, a01{{0}, {1}}, a02{{0}, {2}};
    auto schur = solution_count(schur_m, z5, {a12, a12, a12}).density;
    auto ap = solution_count(ap3_m, z5, {a01, a01, a01}).density;
    auto apd = ap_density(z4, a02, 3);
    c.require(schur == Rational(1, 25) && brute_density(schur_m, z5, a12) == schur, "Schur/Z_5 gives " + str(schur));
    c.require(ap == Rational(2, 25) && brute_density(ap3_m, z5, a01) == ap, "AP3/Z_5 gives " + str(ap));
    c.require(apd == Rational(1, 4) && brute_ap(4, {0, 2}, 3) == apd, "ap_density(Z_4) gives " + str(apd));
    return c.out;
}

// 5. windows of good completions
Outcome good_matrices() {
    Checker c;
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t r = 1 + rng() % 4;
        auto b = oracle::random_unimodular(r, rng);
        auto g = good_completion(b);
        c.require(oracle::windows_unimodular(g.matrix), "window not unimodular for " + str(b));
        c.require(g.matrix.row_block(g.block_offset, r) == b, "input block missing for " + str(b));
    }
    return c.out;
}

// 6. coset symmetrization of greedy F-free-making removals
Outcome symmetrization() {
    Checker c;
    std::mt19937_64 rng(6);
    std::size_t removed = 0;
    for (Residue n : {5, 7}) {
        auto g = FiniteAbelianGroup::cyclic(n);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<ElementSet> sets;
            for (int j = 0; j < 3; ++j) sets.push_back(random_set(g, rng, true));
            auto h = build_cayley(schur_psi(), schur_m, g, sets);
            auto removal = greedy_removal(h, &rng, 1000000);
            c.require(is_f_free(h, removal, 1000000), "greedy removal left a copy");
            for (const auto &r : removal) removed += r.size();
            auto sym = symmetrize_removal(h, removal);
            std::vector<ElementSet> s_sets;
            for (std::size_t j = 0; j < h.m(); ++j) {
                const auto &col = sym.colors[j];
                c.require(col.measure_s <= Rational(2 * 3) * col.measure_r, "measure bound fails");
                auto sj = sym.s_set(h, j);
                const auto &dom = h.row_maps[j].domain();
                for (const auto &v : sj) {
                    c.require(h.has_edge(j, v), "S_j leaves E_j");
                    for (const auto &k : h.edge_kernels[j].generators())
                        c.require(sj.count(dom.add(v, k)) > 0, "S_j is not a union of K_j-cosets");
                }
                s_sets.push_back(std::move(sj));
            }
            c.require(is_f_free(h, s_sets, 1000000), "symmetrized removal is not F-free on Z_" + std::to_string(n));
        }
    }
    c.require(removed > 0, "every removal was empty");
    return c.out;
}

// 7. structured representation of (1 2 2) and lifts
Outcome structured() {
    Checker c;
    const IntMatrix m{{1, 2, 2}};
    auto rep = general_representation(m);
    c.require(rep.structured() && rep.divisors == std::vector<Int>{2}, "expected divisors [2]");
    std::mt19937_64 rng(7);
    for (Residue n : {4, 8}) {
        auto g = FiniteAbelianGroup::cyclic(n);
        auto v = verify_representation(rep, m, g, 0);
        c.require(v.cond_i && v.cond_ii && v.cond_iii, "verification fails on Z_" + std::to_string(n));
        auto psi = instantiate(rep, g);
        for (int s = 0; s < 100; ++s) {
            const std::size_t j = rng() % 3;
            auto g0 = psi.domain().random_element(rng);
            auto x = psi(g0);
            auto kj = hom_kernel(row_restriction(psi, rep, j));
            auto coords = psi.domain_coords(rep.color_classes[j]);
            auto noise = kj.random_element(rng);
            GroupElement gp;
            for (std::size_t i = 0; i < coords.size(); ++i)
                gp.push_back((g0[coords[i]] + noise[i]) % psi.domain().moduli()[coords[i]]);
            try {
                auto w = lift(rep, m, g, j, gp, x);
                bool fixed = true;
                for (std::size_t i = 0; i < coords.size(); ++i) fixed = fixed && w[coords[i]] == gp[i];
                c.require(psi.domain().contains(w) && psi(w) == x && fixed, "lift recheck fails");
            } catch (const Error &e) {
                c.require(false, std::string("lift threw: ") + e.what());
            }
        }
    }
    return c.out;
}

// 8. quotient surjectivity on kernels and the averaging inequality
Outcome appendix_properties() {
    Checker c;
    std::mt19937_64 rng(8);
    std::vector<std::vector<Residue>> shapes;
    for (Residue n = 2; n <= 24; ++n) shapes.push_back({n});
    for (auto s : {std::vector<Residue>{2, 2}, {2, 4}, {2, 6}, {3, 3}, {2, 8}, {4, 4}, {2, 2, 2}, {2, 2, 4}, {2, 3, 3},
                   {2, 2, 6}, {3, 6}, {2, 10}, {2, 12}})
        shapes.push_back(s);
    for (int trial = 0; trial < 200; ++trial) {
        FiniteAbelianGroup g(shapes[rng() % shapes.size()]);
        IntMatrix m;
        do {
            const std::size_t r = 1 + rng() % 2;
            m = oracle::random_matrix(r, r + 1 + rng() % 2, -3, 3, rng);
        } while (analyze(m).d_r != 1);
        std::vector<Residue> divisors;
        for (Residue n : g.moduli()) {
            std::vector<Residue> ds;
            for (Residue d = 1; d <= n; ++d)
                if (n % d == 0) ds.push_back(d);
            divisors.push_back(ds[rng() % ds.size()]);
        }
        c.require(quotient_surjects_on_kernels(m, g, divisors), "surjectivity fails for " + str(m) + " on " + g.name());
        std::vector<GroupFunction> f(m.cols());
        for (auto &fj : f)
            for (std::uint64_t x = 0; x < g.order_u64(); ++x)
                fj.push_back(Rational(static_cast<long long>(rng() % 9) - 4, 4));
        auto sides = basic2_sides(m, g, f);
        c.require(sides.lhs <= sides.rhs, "inequality fails for " + str(m) + " on " + g.name());
    }
    return c.out;
}

// 9. invariant systems always have the constant solutions
Outcome invariant_positivity(const std::filesystem::path &dir) {
    Checker c;
    std::mt19937_64 rng(9);
    std::size_t invariant = 0;
    for (const auto &[name, m] : load_corpus(dir)) {
        if (!analyze(m).invariant) continue;
        ++invariant;
        for (const auto &g : battery())
            for (int trial = 0; trial < 100; ++trial) {
                auto a = random_set(g, rng, true);
                auto d = solution_count(m, g, std::vector<ElementSet>(m.cols(), a));
                c.require(d.density > 0 && d.count >= Int(a.size()), name + " on " + g.name() + ": density " + str(d.density));
            }
    }
    c.require(invariant > 0, "no invariant matrix in the corpus");
    return c.out;
}

} // namespace

int main(int argc, char **argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <corpus dir>\n";
        return 2;
    }
    const std::filesystem::path corpus = argv[1];
    struct Criterion {
        const char *name;
        double limit_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {"schur-golden", 1, schur_golden},
        {"pipeline-corpus", 60, [&] { return corpus_pipeline(corpus); }},
        {"density-identity", 30, density_identity},
        {"desk-counts", 10, desk_counts},
        {"good-completion", 30, good_matrices},
        {"symmetrization", 60, symmetrization},
        {"structured-122", 60, structured},
        {"basic1-basic2", 60, appendix_properties},
        {"invariant-positivity", 60, [&] { return invariant_positivity(corpus); }},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto &cr = criteria[i];
        auto t0 = Clock::now();
        Outcome o;
        try {
            o = cr.run();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        if (o.ok && secs > cr.limit_s) o = {false, "over the time limit"};
        failed += !o.ok;
        std::printf("%s %zu %-22s %.3fs (limit %.0fs)%s%s\n", o.ok ? "PASS" : "FAIL", i + 1, cr.name, secs, cr.limit_s,
                    o.ok ? "" : "  ", o.detail.c_str());
    }
    return failed ? 1 : 0;
}

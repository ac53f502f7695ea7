#pragma once

#include "linconfig/finite_abelian.hpp"
#include "linconfig/representation.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <vector>

namespace linconfig {

using ElementSet = std::set<GroupElement>;

/// The template F: t vertices, edges C_1..C_m.
struct TemplateHypergraph {
    std::size_t t = 0;
    std::vector<std::vector<std::size_t>> edges;
};

inline TemplateHypergraph template_of(const Representation &rep) { return {rep.t, rep.color_classes}; }

struct Density {
    Int count = 0;
    Rational density = 0;
};

/// Cayley (t,m,k)-graph: vertex class c is the c-th domain block of Psi,
/// E_j = psi_{C_j}^{-1}(A_j), A_j already cut down to G^{(j)}.
struct CayleyHypergraph {
    FiniteAbelianGroup group;
    Representation rep;
    IntMatrix system;
    GroupHom psi;
    std::vector<GroupHom> row_maps;         ///< psi_{C_j}
    std::vector<Subgroup> edge_kernels;     ///< K_j = ker psi_{C_j}
    std::vector<Subgroup> coordinate_groups; ///< G^{(j)} = p_j(ker_G M)
    std::vector<ElementSet> generators;

    [[nodiscard]] std::size_t m() const { return generators.size(); }
    [[nodiscard]] bool has_edge(std::size_t j, std::span<const Residue> v) const {
        return generators[j].count(row_maps[j](v)) > 0;
    }
    [[nodiscard]] Int edge_count(std::size_t j) const {
        return Int(generators[j].size()) * edge_kernels[j].order();
    }
    /// |V_{C_j}| = |G_*^{C_j}|
    [[nodiscard]] Int vertex_space_order(std::size_t j) const { return row_maps[j].domain().order(); }
    /// p_{C_j} on a flat element of G_*^t
    [[nodiscard]] GroupElement project(std::size_t j, std::span<const Residue> v) const {
        GroupElement out;
        for (auto i : psi.domain_coords(rep.color_classes[j])) out.push_back(v[i]);
        return out;
    }
};

inline void check_sets(const FiniteAbelianGroup &g, const std::vector<ElementSet> &sets, std::size_t m) {
    if (sets.size() != m) fail(ErrorKind::ShapeMismatch, "one element set per column required");
    for (const auto &s : sets)
        for (const auto &x : s)
            if (!g.contains(x)) fail(ErrorKind::InvalidArgument, "set element outside the group");
}

/// G^{(j)} = p_j(ker_G M) for every column j.
inline std::vector<Subgroup> coordinate_groups(const IntMatrix &m, const FiniteAbelianGroup &g) {
    auto ker = matrix_kernel(m, g);
    std::vector<Subgroup> out;
    const std::size_t s = g.rank();
    for (std::size_t j = 0; j < m.cols(); ++j) {
        std::vector<std::size_t> coords;
        for (std::size_t f = 0; f < s; ++f) coords.push_back(j * s + f);
        out.push_back(project_subgroup(ker, coords));
    }
    return out;
}

inline CayleyHypergraph build_cayley(const Representation &rep, const IntMatrix &m, const FiniteAbelianGroup &g,
                                     const std::vector<ElementSet> &sets) {
    check_sets(g, sets, m.cols());
    auto report = verify_representation(rep, m, g, 0);
    if (!report.cond_i || !report.cond_ii || !report.cond_iii)
        fail(ErrorKind::UnverifiedRepresentation, "build_cayley: representation fails verification on this group");
    CayleyHypergraph h;
    h.group = g;
    h.rep = rep;
    h.system = m;
    h.psi = instantiate(rep, g);
    h.coordinate_groups = coordinate_groups(m, g);
    for (std::size_t j = 0; j < rep.m(); ++j) {
        h.row_maps.push_back(row_restriction(h.psi, rep, j));
        h.edge_kernels.push_back(hom_kernel(h.row_maps.back()));
        ElementSet a;
        for (const auto &x : sets[j])
            if (h.coordinate_groups[j].contains(x)) a.insert(x);
        h.generators.push_back(std::move(a));
    }
    return h;
}

/// #{y in G^{m-r} : (W y)_j in A_j} through the kernel parametrization.
inline Density solution_count(const IntMatrix &m, const FiniteAbelianGroup &g, const std::vector<ElementSet> &sets,
                              std::uint64_t budget = 100000000) {
    check_sets(g, sets, m.cols());
    IntMatrix w = kernel_parametrization(m, g);
    const std::size_t s = g.rank(), free = w.cols(), cols = m.cols();
    auto dom = g.power(free);
    if (dom.order() > Int(budget)) fail(ErrorKind::BudgetExceeded, "solution_count: |G|^(m-r) exceeds the budget");
    // residues of W mod each factor, then a mixed-radix walk over y
    std::vector<std::vector<Residue>> wr(cols * s, std::vector<Residue>(free));
    for (std::size_t j = 0; j < cols; ++j)
        for (std::size_t f = 0; f < s; ++f)
            for (std::size_t c = 0; c < free; ++c) wr[j * s + f][c] = detail::mod_floor(w(j, c), g.moduli()[f]);
    Int count = 0;
    const std::uint64_t total = dom.order_u64();
    GroupElement y(free * s, 0), x(s);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        bool ok = true;
        for (std::size_t j = 0; j < cols && ok; ++j) {
            for (std::size_t f = 0; f < s; ++f) {
                __int128 acc = 0;
                for (std::size_t c = 0; c < free; ++c) acc += static_cast<__int128>(wr[j * s + f][c]) * y[c * s + f];
                x[f] = static_cast<Residue>(acc % g.moduli()[f]);
            }
            ok = sets[j].count(x) > 0;
        }
        if (ok) ++count;
        for (std::size_t i = 0; i < y.size(); ++i) {
            if (++y[i] < dom.moduli()[i]) break;
            y[i] = 0;
        }
    }
    return {count, Rational(count, dom.order())};
}

enum class CopyMode { ExactBruteforce, ViaKernel, Convolution };

struct CopyCount {
    Int count = 0;   ///< homomorphic copies of F, i.e. v in G_*^t with every p_{C_j}(v) in E_j
    Rational hd = 0; ///< count / |G_*^t|
};

namespace detail {

template <class F>
void for_each_tuple(const FiniteAbelianGroup &g, F &&f) {
    const std::uint64_t total = g.order_u64();
    GroupElement v(g.rank(), 0);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        f(static_cast<const GroupElement &>(v));
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (++v[i] < g.moduli()[i]) break;
            v[i] = 0;
        }
    }
}

} // namespace detail

inline CopyCount copy_count(const CayleyHypergraph &h, CopyMode mode, std::uint64_t budget = 100000000) {
    const auto &dom = h.psi.domain();
    CopyCount out;
    switch (mode) {
    case CopyMode::ExactBruteforce: {
        if (dom.order() > Int(budget)) fail(ErrorKind::BudgetExceeded, "copy_count: |G_*|^t exceeds the budget");
        std::uint64_t count = 0;
        detail::for_each_tuple(dom, [&](const GroupElement &v) {
            auto x = h.psi(v);
            for (std::size_t j = 0; j < h.m(); ++j) {
                auto [lo, hi] = h.psi.codomain_range(j);
                if (!h.generators[j].count(GroupElement(x.begin() + static_cast<std::ptrdiff_t>(lo),
                                                        x.begin() + static_cast<std::ptrdiff_t>(hi))))
                    return;
            }
            ++count;
        });
        out.count = count;
        break;
    }
    case CopyMode::ViaKernel: {
        std::vector<ElementSet> sets = h.generators;
        out.count = hom_kernel(h.psi).order() * solution_count(h.system, h.group, sets, budget).count;
        break;
    }
    case CopyMode::Convolution: {
        // push the uniform measure on G_*^t forward through Psi column by column
        const auto &cod = h.psi.codomain();
        if (cod.order() > Int(budget)) fail(ErrorKind::BudgetExceeded, "copy_count: |G^m| exceeds the budget");
        const std::uint64_t states = cod.order_u64();
        std::vector<Int> hist(states, Int(0)), next(states);
        hist[0] = 1;
        for (std::size_t c = 0; c < h.rep.t; ++c) {
            auto [lo, hi] = h.psi.domain_range(c);
            FiniteAbelianGroup block = h.psi.domain_blocks()[c];
            std::vector<std::uint64_t> shifts;
            detail::for_each_tuple(block, [&](const GroupElement &b) {
                GroupElement v(dom.rank(), 0);
                for (std::size_t i = lo; i < hi; ++i) v[i] = b[i - lo];
                shifts.push_back(cod.index_of(h.psi(v)));
            });
            std::fill(next.begin(), next.end(), Int(0));
            for (std::uint64_t x = 0; x < states; ++x) {
                if (hist[x] == 0) continue;
                auto xe = cod.element_at(x);
                for (auto sidx : shifts) next[cod.index_of(cod.add(xe, cod.element_at(sidx)))] += hist[x];
            }
            std::swap(hist, next);
        }
        Int count = 0;
        for (std::uint64_t x = 0; x < states; ++x) {
            if (hist[x] == 0) continue;
            auto xe = cod.element_at(x);
            bool ok = true;
            for (std::size_t j = 0; j < h.m() && ok; ++j) {
                auto [lo, hi] = h.psi.codomain_range(j);
                ok = h.generators[j].count(GroupElement(xe.begin() + static_cast<std::ptrdiff_t>(lo),
                                                        xe.begin() + static_cast<std::ptrdiff_t>(hi))) > 0;
            }
            if (ok) count += hist[x];
        }
        out.count = count;
        break;
    }
    }
    out.hd = Rational(out.count, dom.order());
    return out;
}

/// h_j restricted to the cosets where it is nonzero, keyed by canonical
/// coset representative.
struct AveragedFunction {
    std::map<GroupElement, Rational> values;
    [[nodiscard]] Rational at(const Subgroup &k, std::span<const Residue> v) const {
        auto it = values.find(k.coset_representative(v));
        return it == values.end() ? Rational(0) : it->second;
    }
};

inline void check_removal(const CayleyHypergraph &h, std::size_t j, const ElementSet &r_set) {
    for (const auto &v : r_set) {
        if (!h.row_maps[j].domain().contains(v))
            fail(ErrorKind::NotASubsetOfEdges, "removal element is not a vertex tuple of this color");
        if (!h.has_edge(j, v)) fail(ErrorKind::NotASubsetOfEdges, "removal set contains a non-edge");
    }
}

/// h_j(v) = #{g in K_j : v - g in R} / |K_j|.
inline AveragedFunction average_operator(const CayleyHypergraph &h, std::size_t j, const ElementSet &r_set,
                                         std::uint64_t budget = 10000000) {
    if (h.vertex_space_order(j) > Int(budget)) fail(ErrorKind::BudgetExceeded, "average_operator: |G_*|^k too large");
    check_removal(h, j, r_set);
    const auto &k = h.edge_kernels[j];
    std::map<GroupElement, Int> hits;
    for (const auto &v : r_set) ++hits[k.coset_representative(v)];
    AveragedFunction out;
    for (auto &[rep, n] : hits) out.values.emplace(rep, Rational(n, k.order()));
    return out;
}

struct ColorSymmetrization {
    AveragedFunction h;
    std::vector<GroupElement> s_cosets; ///< canonical representatives of the cosets forming S_j
    Rational measure_r = 0;
    Rational measure_s = 0;
};

struct SymmetrizationResult {
    std::vector<ColorSymmetrization> colors;
    /// All members of S_j (expanded cosets).
    [[nodiscard]] ElementSet s_set(const CayleyHypergraph &h, std::size_t j) const {
        ElementSet out;
        const auto &k = h.edge_kernels[j];
        const auto &dom = h.row_maps[j].domain();
        for (const auto &rep : colors[j].s_cosets)
            k.for_each([&](const GroupElement &g) { out.insert(dom.add(rep, g)); });
        return out;
    }
};

/// S_j = {v : h_j(v) > 1/(2m)} with h_j the K_j-average of 1_{R_j}.
inline SymmetrizationResult symmetrize_removal(const CayleyHypergraph &h, const std::vector<ElementSet> &removal,
                                               std::uint64_t budget = 10000000) {
    if (removal.size() != h.m()) fail(ErrorKind::ShapeMismatch, "one removal set per color required");
    const Rational threshold(1, 2 * static_cast<long long>(h.m()));
    SymmetrizationResult out;
    for (std::size_t j = 0; j < h.m(); ++j) {
        ColorSymmetrization c;
        c.h = average_operator(h, j, removal[j], budget);
        for (const auto &[rep, val] : c.h.values)
            if (val > threshold) c.s_cosets.push_back(rep);
        const Int vj = h.vertex_space_order(j);
        c.measure_r = Rational(Int(removal[j].size()), vj);
        c.measure_s = Rational(Int(c.s_cosets.size()) * h.edge_kernels[j].order(), vj);
        out.colors.push_back(std::move(c));
    }
    return out;
}

/// Every v in G_*^t whose projections are edges outside the removed sets.
inline std::vector<GroupElement> enumerate_copies(const CayleyHypergraph &h, const std::vector<ElementSet> &removed,
                                                  std::uint64_t budget = 10000000, std::size_t limit = SIZE_MAX) {
    const auto &dom = h.psi.domain();
    if (dom.order() > Int(budget)) fail(ErrorKind::BudgetExceeded, "copy enumeration exceeds the budget");
    std::vector<GroupElement> out;
    detail::for_each_tuple(dom, [&](const GroupElement &v) {
        if (out.size() >= limit) return;
        for (std::size_t j = 0; j < h.m(); ++j) {
            auto p = h.project(j, v);
            if (!h.has_edge(j, p)) return;
            if (!removed.empty() && removed[j].count(p)) return;
        }
        out.push_back(v);
    });
    return out;
}

inline bool is_f_free(const CayleyHypergraph &h, const std::vector<ElementSet> &removed,
                      std::uint64_t budget = 10000000) {
    return enumerate_copies(h, removed, budget, 1).empty();
}

/// Edge sets R_j whose removal leaves no copy of F. Without an RNG each step
/// removes the edge lying in the most remaining copies; with one, a random
/// color of the first remaining copy.
inline std::vector<ElementSet> greedy_removal(const CayleyHypergraph &h, std::mt19937_64 *rng = nullptr,
                                              std::uint64_t budget = 10000000) {
    auto copies = enumerate_copies(h, {}, budget);
    std::vector<ElementSet> removal(h.m());
    std::vector<bool> alive(copies.size(), true);
    std::size_t remaining = copies.size();
    while (remaining > 0) {
        std::size_t best_j = 0;
        GroupElement best_edge;
        if (rng) {
            std::size_t first = 0;
            while (!alive[first]) ++first;
            best_j = (*rng)() % h.m();
            best_edge = h.project(best_j, copies[first]);
        } else {
            std::map<std::pair<std::size_t, GroupElement>, std::size_t> cover;
            std::size_t best = 0;
            for (std::size_t i = 0; i < copies.size(); ++i) {
                if (!alive[i]) continue;
                for (std::size_t j = 0; j < h.m(); ++j) {
                    auto key = std::make_pair(j, h.project(j, copies[i]));
                    const std::size_t n = ++cover[key];
                    if (n > best) {
                        best = n;
                        best_j = j;
                        best_edge = key.second;
                    }
                }
            }
        }
        removal[best_j].insert(best_edge);
        for (std::size_t i = 0; i < copies.size(); ++i)
            if (alive[i] && h.project(best_j, copies[i]) == best_edge) {
                alive[i] = false;
                --remaining;
            }
    }
    return removal;
}

/// (1/|G|^2) #{(x, r) : x + i r in A for 0 <= i < k}.
inline Rational ap_density(const FiniteAbelianGroup &g, const ElementSet &a, std::size_t k) {
    if (k < 2) fail(ErrorKind::InvalidArgument, "ap_density: k must be at least 2");
    for (const auto &x : a)
        if (!g.contains(x)) fail(ErrorKind::InvalidArgument, "ap_density: element outside the group");
    const auto elems = g.elements();
    Int count = 0;
    for (const auto &x : elems) {
        if (!a.count(x)) continue;
        for (const auto &r : elems) {
            bool ok = true;
            GroupElement y = x;
            for (std::size_t i = 1; i < k && ok; ++i) {
                y = g.add(y, r);
                ok = a.count(y) > 0;
            }
            if (ok) ++count;
        }
    }
    return Rational(count, g.order() * g.order());
}

/// theta^m maps ker_G M onto ker_H M, for the coordinatewise quotient theta.
inline bool quotient_surjects_on_kernels(const IntMatrix &m, const FiniteAbelianGroup &g,
                                         std::span<const Residue> divisors) {
    auto theta = quotient_map(g, divisors);
    const auto &h = theta.codomain();
    const std::size_t s = g.rank();
    auto ker_g = matrix_kernel(m, g);
    std::vector<GroupElement> images;
    for (const auto &x : ker_g.generators()) {
        GroupElement y(x.size());
        for (std::size_t j = 0; j < m.cols(); ++j) {
            auto t = theta(std::span<const Residue>(x).subspan(j * s, s));
            std::copy(t.begin(), t.end(), y.begin() + static_cast<std::ptrdiff_t>(j * s));
        }
        images.push_back(y);
    }
    return subgroup_from_generators(h.power(m.cols()), images) == matrix_kernel(m, h);
}

/// Function G -> Q stored by element index.
using GroupFunction = std::vector<Rational>;

struct Basic2Sides {
    Rational lhs; ///< |avg over ker_G M of prod_j f_j(x_j)|
    Rational rhs; ///< min_j kappa_j * avg_G |f_j 1_{G_j}|
};

inline Basic2Sides basic2_sides(const IntMatrix &m, const FiniteAbelianGroup &g, const std::vector<GroupFunction> &f) {
    if (f.size() != m.cols()) fail(ErrorKind::ShapeMismatch, "basic2: one function per column");
    const std::size_t s = g.rank();
    auto ker = matrix_kernel(m, g);
    Rational sum = 0;
    ker.for_each([&](const GroupElement &x) {
        Rational p = 1;
        for (std::size_t j = 0; j < m.cols() && p != 0; ++j)
            p *= f[j][g.index_of(std::span<const Residue>(x).subspan(j * s, s))];
        sum += p;
    });
    Basic2Sides out;
    out.lhs = abs(sum / Rational(ker.order()));
    auto gj = coordinate_groups(m, g);
    std::optional<Rational> best;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        Rational acc = 0;
        gj[j].for_each([&](const GroupElement &y) { acc += abs(f[j][g.index_of(y)]); });
        Rational avg = acc / Rational(g.order());
        Rational bound = Rational(gj[j].index()) * avg;
        if (!best || bound < *best) best = bound;
    }
    out.rhs = best.value_or(Rational(0));
    return out;
}

} // namespace linconfig

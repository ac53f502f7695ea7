#pragma once

#include "linconfig/finite_abelian.hpp"
#include "linconfig/int_matrix.hpp"
#include "linconfig/normal_form.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace linconfig {

/// Integer matrix together with the facts the pipeline branches on.
struct LinearSystemMatrix {
    IntMatrix matrix;
    std::size_t rank = 0;
    Int d_r = 0; ///< 0 when the rows are dependent
    bool invariant = false;
    std::vector<std::size_t> plain_indices; ///< 0-based
    bool identity_form = false;
    bool simple = false;
    bool circular = false;
    std::optional<std::size_t> circular_failure; ///< 1-based window index
};

inline bool has_identity_form(const IntMatrix &m) {
    const std::size_t r = m.rows();
    if (r == 0 || m.cols() < r) return false;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            if (m(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

/// (I_r|B) with every row of B nonzero.
inline bool has_full_identity_form(const IntMatrix &m) {
    if (!has_identity_form(m)) return false;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        bool nz = false;
        for (std::size_t j = m.rows(); j < m.cols(); ++j) nz = nz || m(i, j) != 0;
        if (!nz) return false;
    }
    return true;
}

inline bool is_simple(const IntMatrix &m) {
    if (!has_identity_form(m)) fail(ErrorKind::NotIdentityForm, "is_simple: matrix is not of the form (I_r|B)");
    const std::size_t r = m.rows();
    if (m.cols() < r + 2) return false;
    for (std::size_t i = 0; i < r; ++i) {
        std::vector<Int> b(m.row_span(i).begin() + static_cast<std::ptrdiff_t>(r), m.row_span(i).end());
        if (gcd_of(b) != 1) return false;
    }
    return true;
}

inline LinearSystemMatrix analyze(const IntMatrix &m) {
    LinearSystemMatrix a;
    a.matrix = m;
    a.rank = rank(m);
    if (m.rows() > 0 && a.rank == m.rows()) a.d_r = determinantal_divisor(m, m.rows());
    a.invariant = true;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Int s = 0;
        for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j);
        a.invariant = a.invariant && s == 0;
    }
    for (std::size_t l = 0; l < m.cols(); ++l)
        if (rank(m.without_col(l)) + 1 == a.rank) a.plain_indices.push_back(l);
    a.identity_form = has_identity_form(m);
    a.simple = a.identity_form && is_simple(m);
    if (m.rows() > 0 && a.rank == m.rows()) {
        auto c = is_circular(m);
        a.circular = c.circular;
        a.circular_failure = c.failing_index;
    }
    return a;
}

enum class ExtensionKind { PlainReduce, IdentityForm, Circular, Widen };

inline constexpr const char *to_string(ExtensionKind k) {
    switch (k) {
    case ExtensionKind::PlainReduce: return "plain_reduce";
    case ExtensionKind::IdentityForm: return "identity_form";
    case ExtensionKind::Circular: return "circular";
    case ExtensionKind::Widen: return "widen";
    }
    return "?";
}

/// Child system whose kernel maps onto the parent's through the coordinate
/// selection j_set (0-based child columns, increasing). For PlainReduce the
/// direction is reversed: j_set lists the parent columns that survive and the
/// child kernel embeds into the parent's by zero filling.
struct MatrixExtension {
    ExtensionKind kind = ExtensionKind::IdentityForm;
    IntMatrix parent;
    IntMatrix child;
    std::vector<std::size_t> j_set;
};

struct PlainStep {
    IntMatrix u;            ///< unimodular row transform applied before deleting row 1
    std::size_t column = 0; ///< deleted column, index into the matrix at that step
};

struct PlainReport {
    std::vector<std::size_t> eliminated; ///< original 0-based columns forced to zero
    std::vector<std::size_t> kept;       ///< original 0-based columns of the reduced matrix
    std::vector<PlainStep> steps;
    IntMatrix reduced;
    [[nodiscard]] bool degenerate() const { return reduced.cols() == 0; }
};

inline PlainReport plain_reduce(const IntMatrix &m) {
    if (m.rows() == 0 || rank(m) != m.rows() || determinantal_divisor(m, m.rows()) != 1)
        fail(ErrorKind::DeterminantalNotOne, "plain_reduce: d_r(M) must be 1");
    PlainReport rep;
    rep.kept.resize(m.cols());
    std::iota(rep.kept.begin(), rep.kept.end(), std::size_t{0});
    IntMatrix cur = m;
    while (cur.rows() > 0) {
        std::optional<std::size_t> plain;
        for (std::size_t l = 0; l < cur.cols() && !plain; ++l)
            if (rank(cur.without_col(l)) + 1 == cur.rows()) plain = l;
        if (!plain) break;
        const std::size_t l = *plain;
        // e_l lies in the integer row space; read coefficients off the SNF
        auto snf = smith_normal_form(cur);
        const std::size_t r = cur.rows();
        std::vector<Int> head(r);
        for (std::size_t i = 0; i < r; ++i) head[i] = snf.v_inv(l, i);
        std::vector<Int> n(r, Int(0));
        for (std::size_t c = 0; c < r; ++c)
            for (std::size_t i = 0; i < r; ++i) n[c] += head[i] * snf.u_inv(i, c);
        IntMatrix u = unimodular_completion_row(n);
        IntMatrix m0 = u * cur;
        for (std::size_t j = 0; j < cur.cols(); ++j)
            if (m0(0, j) != (j == l ? 1 : 0))
                fail(ErrorKind::InternalInconsistency, "plain_reduce: combination does not give e_l");
        rep.steps.push_back({u, l});
        rep.eliminated.push_back(rep.kept[l]);
        rep.kept.erase(rep.kept.begin() + static_cast<std::ptrdiff_t>(l));
        cur = m0.without_row(0).without_col(l);
    }
    std::sort(rep.eliminated.begin(), rep.eliminated.end());
    rep.reduced = cur;
    return rep;
}

struct IdentityFormResult {
    MatrixExtension extension;
    IntMatrix u; ///< unimodular witness with M' = U (I|B)
};

inline IdentityFormResult identity_form_extension(const IntMatrix &m) {
    if (!analyze(m).plain_indices.empty()) fail(ErrorKind::PlainInput, "identity_form_extension: plain input");
    const std::size_t r = m.rows(), c = m.cols();
    IntMatrix u = unimodular_completion_block(m);
    IntMatrix b0(c, c - r);
    for (std::size_t i = 0; i < c - r; ++i) b0(r + i, i) = 1;
    IntMatrix b = inverse_unimodular(u) * b0;
    IntMatrix child = hstack(IntMatrix::identity(c), b);
    if (!has_full_identity_form(child))
        fail(ErrorKind::PlainInput, "identity_form_extension: a row of B vanished, so the input is plain");
    std::vector<std::size_t> j(c);
    std::iota(j.begin(), j.end(), std::size_t{0});
    return {{ExtensionKind::IdentityForm, m, child, j}, u};
}

inline MatrixExtension circular_extension(const IntMatrix &m) {
    if (!is_simple(m)) fail(ErrorKind::NotSimple, "circular_extension: matrix is not simple");
    const std::size_t r = m.rows(), w = m.cols() - r;
    IntMatrix bprime;
    std::vector<std::size_t> j;
    for (std::size_t i = 0; i < r; ++i) {
        std::vector<Int> bi(m.row_span(i).begin() + static_cast<std::ptrdiff_t>(r), m.row_span(i).end());
        auto good = good_completion(unimodular_completion_row(bi));
        j.push_back(bprime.rows() + good.block_offset);
        bprime = vstack(bprime, good.matrix);
    }
    const std::size_t rp = bprime.rows();
    for (std::size_t c = 0; c < w; ++c) j.push_back(rp + c);
    return {ExtensionKind::Circular, m, hstack(IntMatrix::identity(rp), bprime), j};
}

/// (I_r|B) with one B column -> the (r+1) x (r+3) widening; pi_J is onto.
inline MatrixExtension widen_r_plus_1(const IntMatrix &m) {
    const std::size_t r = m.rows();
    if (!has_identity_form(m) || m.cols() != r + 1)
        fail(ErrorKind::WrongShape, "widen_r_plus_1: expected (I_r|B) with r+1 columns");
    IntMatrix child(r + 1, r + 3);
    for (std::size_t i = 0; i <= r; ++i) child(i, i) = 1;
    for (std::size_t i = 0; i < r; ++i) child(i, r + 1) = m(i, r);
    child(r, r + 2) = -1;
    std::vector<std::size_t> j(r);
    std::iota(j.begin(), j.end(), std::size_t{0});
    j.push_back(r + 1);
    return {ExtensionKind::Widen, m, child, j};
}

/// Hypergraph representation. For the structured variant psi is the
/// assembled matrix [P Psi^(0) | P Psi^(1)_top | ...] whose column c ranges
/// over the d-torsion of G for d = divisors[column_tags[c]-1] (tag 0 is G).
struct Representation {
    enum class Variant { Integer, Structured };
    Variant variant = Variant::Integer;
    IntMatrix psi;
    std::size_t t = 0;
    std::size_t k = 0;
    std::vector<std::vector<std::size_t>> color_classes; ///< sorted 0-based columns
    std::vector<Int> divisors;
    std::vector<std::size_t> column_tags;
    std::vector<Representation> blocks;

    [[nodiscard]] std::size_t m() const { return psi.rows(); }
    [[nodiscard]] bool structured() const { return variant == Variant::Structured; }
};

inline Representation circular_representation(const IntMatrix &m) {
    const std::size_t r = m.rows(), c = m.cols();
    auto chk = is_circular(m);
    if (!chk.circular) fail(ErrorKind::NotCircular, "circular_representation: matrix is not circular");
    if (c < r + 2) fail(ErrorKind::TooFewColumns, "circular_representation: need at least r+2 columns");
    Representation rep;
    rep.psi = IntMatrix(c, c);
    for (std::size_t j = 1; j <= c; ++j) {
        auto win = circular_window(j, r, c);
        auto y = solve_window(m, win, m.col(j - 1));
        for (std::size_t i = 0; i < r; ++i) rep.psi(win[i], j - 1) = y[i];
        rep.psi(j - 1, j - 1) = -1;
    }
    rep.t = c;
    rep.k = r + 1;
    for (std::size_t j = 1; j <= c; ++j) {
        std::vector<std::size_t> cls;
        for (std::size_t s = 0; s <= r; ++s) cls.push_back(cyclic_index(static_cast<long long>(j + s), c) - 1);
        std::sort(cls.begin(), cls.end());
        rep.color_classes.push_back(cls);
    }
    return rep;
}

inline Representation project_representation(const Representation &rep, const MatrixExtension &ext) {
    if (rep.m() != ext.child.cols()) fail(ErrorKind::ShapeMismatch, "project_representation: row count differs");
    Representation out = rep;
    out.psi = rep.psi.select_rows(ext.j_set);
    out.color_classes.clear();
    for (auto j : ext.j_set) out.color_classes.push_back(rep.color_classes[j]);
    return out;
}

inline Representation simple_representation(const IntMatrix &m) {
    auto ext = circular_extension(m);
    return project_representation(circular_representation(ext.child), ext);
}

inline Representation identity_representation(std::size_t m) {
    Representation rep;
    rep.psi = IntMatrix::identity(m);
    rep.t = m;
    rep.k = 1;
    for (std::size_t j = 0; j < m; ++j) rep.color_classes.push_back({j});
    return rep;
}

/// Covering construction for (I_r|B) with nonzero rows and m >= r+2.
inline Representation general_representation(const IntMatrix &m) {
    if (!has_identity_form(m)) fail(ErrorKind::NotIdentityForm, "general_representation: expected (I_r|B)");
    if (!has_full_identity_form(m)) fail(ErrorKind::ZeroRow, "general_representation: B has a zero row");
    const std::size_t r = m.rows(), c = m.cols();
    if (c < r + 2) fail(ErrorKind::TooFewColumns, "general_representation: need m >= r+2");

    std::vector<Int> d(r);
    IntMatrix m0 = m;
    for (std::size_t i = 0; i < r; ++i) {
        std::vector<Int> bi(m.row_span(i).begin() + static_cast<std::ptrdiff_t>(r), m.row_span(i).end());
        d[i] = gcd_of(bi);
        for (std::size_t j = r; j < c; ++j) m0(i, j) /= d[i];
    }
    std::vector<IntMatrix> systems{m0};
    for (std::size_t i = 0; i < r; ++i) {
        IntMatrix mi(r, c + 1);
        for (std::size_t u = 0; u < r; ++u)
            for (std::size_t j = 0; j < c; ++j) mi(u, j) = u == i ? m(u, j) : m0(u, j);
        mi(i, c) = 1;
        systems.push_back(mi);
    }

    Representation out;
    out.variant = Representation::Variant::Structured;
    out.divisors = d;
    out.psi = IntMatrix(c, 0);
    out.color_classes.assign(c, {});
    for (std::size_t b = 0; b < systems.size(); ++b) {
        if (!is_simple(systems[b])) fail(ErrorKind::InternalInconsistency, "covering block is not simple");
        Representation rb = simple_representation(systems[b]);
        IntMatrix top = rb.psi.row_block(0, c);
        for (std::size_t u = 0; u < r; ++u)
            for (std::size_t j = 0; j < top.cols(); ++j) top(u, j) *= d[u];
        const std::size_t shift = out.psi.cols();
        out.psi = out.psi.cols() == 0 ? top : hstack(out.psi, top);
        for (std::size_t j = 0; j < c; ++j)
            for (auto col : rb.color_classes[j]) out.color_classes[j].push_back(shift + col);
        out.column_tags.insert(out.column_tags.end(), rb.t, b);
        out.k += rb.k;
        out.blocks.push_back(std::move(rb));
    }
    out.t = out.psi.cols();
    for (auto &cls : out.color_classes) std::sort(cls.begin(), cls.end());
    return out;
}

struct RepresentResult {
    Representation representation;
    PlainReport plain;
    std::vector<MatrixExtension> trail; ///< applied extensions, outermost first
    IntMatrix target;                   ///< the plain-reduced system the representation is for
    std::string path;                   ///< which branch produced the representation
};

inline RepresentResult represent(const IntMatrix &m) {
    auto a = analyze(m);
    if (a.d_r != 1) fail(ErrorKind::DeterminantalNotOne, "represent: d_r(M) must be 1");
    RepresentResult res;
    res.plain = plain_reduce(m);
    res.target = res.plain.reduced;
    const IntMatrix &m1 = res.target;
    if (m1.cols() == 0)
        fail(ErrorKind::Degenerate, "represent: every coordinate is forced to zero (only solution 0)");
    if (m1.rows() == 0) {
        res.representation = identity_representation(m1.cols());
        res.path = "unconstrained";
        return res;
    }
    if (m1.cols() >= m1.rows() + 2 && is_circular(m1).circular) {
        res.representation = circular_representation(m1);
        res.path = "circular";
        return res;
    }
    IntMatrix cur = m1;
    if (!has_full_identity_form(cur)) {
        auto ext = identity_form_extension(cur).extension;
        cur = ext.child;
        res.trail.push_back(std::move(ext));
    }
    if (cur.cols() == cur.rows() + 1) {
        auto ext = widen_r_plus_1(cur);
        cur = ext.child;
        res.trail.push_back(std::move(ext));
    }
    Representation rep;
    if (is_simple(cur)) {
        rep = simple_representation(cur);
        res.path = "simple";
    } else {
        rep = general_representation(cur);
        res.path = "covering";
    }
    for (auto it = res.trail.rbegin(); it != res.trail.rend(); ++it) rep = project_representation(rep, *it);
    res.representation = std::move(rep);
    return res;
}

/// Column domains of the instantiated homomorphism G_*^t -> G^m.
inline std::vector<ColumnDomain> column_domains(const Representation &rep, const FiniteAbelianGroup &g) {
    std::vector<ColumnDomain> cols;
    std::vector<ColumnDomain> by_tag{ColumnDomain::identity(g)};
    for (const auto &d : rep.divisors) {
        if (d < 1) fail(ErrorKind::InvalidArgument, "divisors must be positive");
        by_tag.push_back(ColumnDomain::torsion(d_torsion(g, static_cast<Residue>(d))));
    }
    for (std::size_t c = 0; c < rep.t; ++c) {
        std::size_t tag = rep.structured() ? rep.column_tags.at(c) : 0;
        if (tag >= by_tag.size()) fail(ErrorKind::InvalidArgument, "column tag without a divisor");
        cols.push_back(by_tag[tag]);
    }
    return cols;
}

inline GroupHom instantiate(const Representation &rep, const FiniteAbelianGroup &g) {
    if (rep.psi.cols() != rep.t) fail(ErrorKind::ShapeMismatch, "representation: psi has the wrong column count");
    return GroupHom::from_integer_matrix(rep.psi, column_domains(rep, g), g);
}

/// psi_{C_j}: the restriction of row j to the coordinates in C_j.
inline GroupHom row_restriction(const GroupHom &psi, const Representation &rep, std::size_t j) {
    std::vector<std::size_t> row{j};
    return psi.restrict(rep.color_classes[j], row);
}

struct VerificationReport {
    bool cond_i = false;
    bool cond_ii = false;
    bool cond_iii = false;
    std::size_t iii_prime_samples = 0;
    std::size_t iii_prime_failures = 0;
    std::vector<std::string> failures;

    [[nodiscard]] bool passed() const { return cond_i && cond_ii && cond_iii && iii_prime_failures == 0; }
};

inline std::string element_string(std::span<const Residue> x) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i];
    os << ')';
    return os.str();
}

/// Symbolic checks of (i): supports, class sizes, distinctness.
inline bool check_condition_i(const Representation &rep, std::vector<std::string> &why) {
    bool ok = true;
    if (rep.color_classes.size() != rep.m()) {
        why.push_back("(i) one color class per row required");
        return false;
    }
    std::set<std::vector<std::size_t>> seen;
    for (std::size_t j = 0; j < rep.m(); ++j) {
        const auto &cls = rep.color_classes[j];
        std::set<std::size_t> members(cls.begin(), cls.end());
        if (cls.size() != rep.k || members.size() != rep.k) {
            why.push_back("(i) class " + std::to_string(j + 1) + " does not have k distinct members");
            ok = false;
        }
        for (auto c : cls)
            if (c >= rep.t) {
                why.push_back("(i) class " + std::to_string(j + 1) + " leaves [t]");
                ok = false;
            }
        for (std::size_t c = 0; c < rep.t; ++c)
            if (rep.psi(j, c) != 0 && !members.count(c)) {
                why.push_back("(i) row " + std::to_string(j + 1) + " has support outside its class at column " +
                              std::to_string(c + 1));
                ok = false;
            }
        if (!seen.insert(std::vector<std::size_t>(members.begin(), members.end())).second) {
            why.push_back("(i) class " + std::to_string(j + 1) + " repeats an earlier class");
            ok = false;
        }
    }
    return ok;
}

inline VerificationReport verify_representation(const Representation &rep, const IntMatrix &m,
                                                const FiniteAbelianGroup &g, std::size_t samples_per_row = 2,
                                                std::uint64_t seed = 1) {
    if (rep.m() != m.cols()) fail(ErrorKind::ShapeMismatch, "verify: representation rows differ from matrix columns");
    VerificationReport out;
    out.cond_i = check_condition_i(rep, out.failures);
    if (!out.cond_i) return out;

    auto psi = instantiate(rep, g);
    auto st = hom_structure(psi);
    auto ker_m = matrix_kernel(m, g);
    out.cond_ii = st.image == ker_m;
    if (!out.cond_ii) {
        for (const auto &x : ker_m.generators())
            if (!st.image.contains(x)) {
                out.failures.push_back("(ii) kernel element " + element_string(x) + " is not in the image");
                break;
            }
        for (const auto &x : st.image.generators())
            if (!ker_m.contains(x)) {
                out.failures.push_back("(ii) image element " + element_string(x) + " is not a solution");
                break;
            }
    }

    out.cond_iii = true;
    for (std::size_t j = 0; j < rep.m(); ++j) {
        auto coords = psi.domain_coords(rep.color_classes[j]);
        auto lhs = project_subgroup(st.kernel, coords);
        auto rhs = hom_kernel(row_restriction(psi, rep, j));
        if (!(lhs == rhs)) {
            out.cond_iii = false;
            for (const auto &y : rhs.generators())
                if (!lhs.contains(y)) {
                    out.failures.push_back("(iii) row " + std::to_string(j + 1) + ": " + element_string(y) +
                                           " in ker psi_C but not a projected kernel element");
                    break;
                }
        }
    }

    // (iii'): pick g0, x = Psi(g0), g' = p_C(g0) + kernel noise, then lift.
    if (out.cond_ii && out.cond_iii && samples_per_row > 0) {
        std::mt19937_64 rng(seed);
        for (std::size_t j = 0; j < rep.m(); ++j) {
            auto pj = row_restriction(psi, rep, j);
            auto kj = hom_kernel(pj);
            for (std::size_t s = 0; s < samples_per_row; ++s) {
                auto g0 = psi.domain().random_element(rng);
                auto x = psi(g0);
                auto noise = kj.random_element(rng);
                FixedCoordinates fixed;
                std::size_t off = 0;
                for (auto c : rep.color_classes[j]) {
                    auto [lo, hi] = psi.domain_range(c);
                    GroupElement v(hi - lo);
                    for (std::size_t i = lo; i < hi; ++i) {
                        const Residue n = psi.domain().moduli()[i];
                        v[i - lo] = (g0[i] + noise[off + i - lo]) % n;
                    }
                    off += hi - lo;
                    fixed.emplace(c, std::move(v));
                }
                ++out.iii_prime_samples;
                auto sol = solve(psi, x, fixed);
                if (!sol || psi(*sol) != x) {
                    ++out.iii_prime_failures;
                    out.failures.push_back("(iii') no lift for row " + std::to_string(j + 1));
                }
            }
        }
    }
    return out;
}

/// Some g with Psi(g) = x and p_{C_j}(g) = g'.
inline GroupElement lift(const Representation &rep, const IntMatrix &m, const FiniteAbelianGroup &g, std::size_t j,
                         std::span<const Residue> g_prime, std::span<const Residue> x) {
    auto psi = instantiate(rep, g);
    if (j >= rep.m()) fail(ErrorKind::PreconditionViolated, "lift: color index out of range");
    if (!psi.codomain().contains(x)) fail(ErrorKind::PreconditionViolated, "lift: x is not an element of G^m");
    if (!matrix_kernel(m, g).contains(x)) fail(ErrorKind::PreconditionViolated, "lift: x is not a solution");
    auto pj = row_restriction(psi, rep, j);
    if (!pj.domain().contains(g_prime)) fail(ErrorKind::PreconditionViolated, "lift: g' is not in G_*^{C_j}");
    auto [lo, hi] = psi.codomain_range(j);
    GroupElement xj(x.begin() + static_cast<std::ptrdiff_t>(lo), x.begin() + static_cast<std::ptrdiff_t>(hi));
    if (pj(g_prime) != xj) fail(ErrorKind::PreconditionViolated, "lift: psi_{C_j}(g') differs from x_j");
    FixedCoordinates fixed;
    std::size_t off = 0;
    for (auto c : rep.color_classes[j]) {
        auto [a, b] = psi.domain_range(c);
        fixed.emplace(c, GroupElement(g_prime.begin() + static_cast<std::ptrdiff_t>(off),
                                      g_prime.begin() + static_cast<std::ptrdiff_t>(off + b - a)));
        off += b - a;
    }
    auto sol = solve(psi, x, fixed);
    if (!sol) fail(ErrorKind::InternalInconsistency, "lift: no witness although the preconditions hold");
    return *sol;
}

/// pi_J applied to ker child equals ker parent; for non-widen kinds also
/// |ker child| = |ker parent| (so pi_J is a bijection).
inline bool check_extension(const MatrixExtension &ext, const FiniteAbelianGroup &g) {
    const std::size_t s = g.rank();
    if (ext.kind == ExtensionKind::PlainReduce) {
        // zero filling embeds ker child onto ker parent
        auto kp = matrix_kernel(ext.parent, g);
        auto kc = matrix_kernel(ext.child, g);
        std::vector<std::size_t> kept, dropped;
        std::vector<bool> is_kept(ext.parent.cols(), false);
        for (auto c : ext.j_set) is_kept[c] = true;
        for (std::size_t c = 0; c < ext.parent.cols(); ++c)
            for (std::size_t f = 0; f < s; ++f) (is_kept[c] ? kept : dropped).push_back(c * s + f);
        return project_subgroup(kp, dropped).order() == 1 && project_subgroup(kp, kept) == kc &&
               kp.order() == kc.order();
    }
    auto kc = matrix_kernel(ext.child, g);
    auto kp = matrix_kernel(ext.parent, g);
    std::vector<std::size_t> coords;
    for (auto c : ext.j_set)
        for (std::size_t f = 0; f < s; ++f) coords.push_back(c * s + f);
    if (!(project_subgroup(kc, coords) == kp)) return false;
    return ext.kind == ExtensionKind::Widen || kc.order() == kp.order();
}

inline MatrixExtension plain_extension(const PlainReport &rep, const IntMatrix &original) {
    return {ExtensionKind::PlainReduce, original, rep.reduced, rep.kept};
}

} // namespace linconfig

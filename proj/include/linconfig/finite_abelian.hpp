#pragma once

#include "linconfig/int_matrix.hpp"
#include "linconfig/normal_form.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace linconfig {

using Residue = std::int64_t;
/// Residues, one per cyclic factor, each in [0, n_i).
using GroupElement = std::vector<Residue>;

namespace detail {

inline Residue mod_floor(__int128 a, Residue n) {
    __int128 r = a % n;
    if (r < 0) r += n;
    return static_cast<Residue>(r);
}

inline Residue mod_floor(const Int &a, Residue n) {
    Int r = a % n;
    if (r < 0) r += n;
    return static_cast<Residue>(r);
}

// g = gcd(a, b) >= 0 with x*a + y*b = g
inline void ext_gcd(Residue a, Residue b, Residue &g, Residue &x, Residue &y) {
    Residue old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        Residue q = old_r / r;
        Residue tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    g = old_r;
    x = old_s;
    y = old_t;
}

inline Residue checked_modulus(const Int &v) {
    if (v < 1 || v > Int(std::numeric_limits<std::int32_t>::max()))
        fail(ErrorKind::InvalidArgument, "group moduli must lie in [1, 2^31)");
    return static_cast<Residue>(v);
}

/// Full-rank lattice L with diag(moduli) ⊆ L ⊆ Z^n, kept as an upper
/// triangular basis. Quotients L / diag(moduli) are exactly the subgroups
/// of Z_{n_1} x ... x Z_{n_k}; the canonical form is the row HNF.
class ModularLattice {
  public:
    explicit ModularLattice(std::vector<Residue> moduli) : mod_(std::move(moduli)) {
        const std::size_t n = mod_.size();
        basis_.assign(n, std::vector<Residue>(n, 0));
        for (std::size_t i = 0; i < n; ++i) basis_[i][i] = mod_[i];
    }

    [[nodiscard]] std::size_t dim() const noexcept { return mod_.size(); }
    [[nodiscard]] const std::vector<Residue> &moduli() const noexcept { return mod_; }
    [[nodiscard]] const std::vector<std::vector<Residue>> &basis() const noexcept { return basis_; }
    [[nodiscard]] Residue pivot(std::size_t i) const { return basis_[i][i]; }

    void insert(std::vector<Residue> v) {
        const std::size_t n = dim();
        for (std::size_t j = 0; j < n; ++j) v[j] = mod_floor(static_cast<__int128>(v[j]), mod_[j]);
        for (std::size_t i = 0; i < n; ++i) {
            if (v[i] == 0) continue;
            auto &row = basis_[i];
            const Residue a = row[i];
            const Residue b = v[i];
            Residue g, x, y;
            ext_gcd(a, b, g, x, y);
            const Residue ag = a / g, bg = b / g;
            std::vector<Residue> new_row(n, 0), new_v(n, 0);
            for (std::size_t j = i; j < n; ++j) {
                __int128 r = static_cast<__int128>(x) * row[j] + static_cast<__int128>(y) * v[j];
                __int128 w = static_cast<__int128>(ag) * v[j] - static_cast<__int128>(bg) * row[j];
                new_row[j] = j == i ? g : mod_floor(r, mod_[j]);
                new_v[j] = j == i ? 0 : mod_floor(w, mod_[j]);
            }
            row = std::move(new_row);
            v = std::move(new_v);
        }
    }

    /// Bring the basis to the unique reduced (Hermite) form.
    void canonicalize() {
        const std::size_t n = dim();
        for (std::size_t i = 0; i < n; ++i) {
            const Residue p = basis_[i][i];
            for (std::size_t k = 0; k < i; ++k) {
                auto &row = basis_[k];
                Residue q = row[i] / p; // entries are non-negative here
                if (q == 0) continue;
                for (std::size_t j = i; j < n; ++j)
                    row[j] = mod_floor(static_cast<__int128>(row[j]) - static_cast<__int128>(q) * basis_[i][j],
                                       j == i ? std::numeric_limits<Residue>::max() : mod_[j]);
            }
        }
    }

    /// Writes r = v - w for a lattice vector w agreeing with v on the first
    /// `upto` coordinates; returns false when no such w exists.
    bool reduce_prefix(std::vector<Residue> &v, std::size_t upto) const {
        const std::size_t n = dim();
        for (std::size_t j = 0; j < n; ++j) v[j] = mod_floor(static_cast<__int128>(v[j]), mod_[j]);
        for (std::size_t i = 0; i < upto; ++i) {
            if (v[i] == 0) continue;
            const Residue p = basis_[i][i];
            if (v[i] % p != 0) return false;
            const Residue q = v[i] / p;
            for (std::size_t j = i; j < n; ++j)
                v[j] = mod_floor(static_cast<__int128>(v[j]) - static_cast<__int128>(q) * basis_[i][j], mod_[j]);
        }
        return true;
    }

  private:
    std::vector<Residue> mod_;
    std::vector<std::vector<Residue>> basis_;
};

} // namespace detail

/// Z_{n_1} x ... x Z_{n_s}; the factors need not form a divisibility chain.
class FiniteAbelianGroup {
  public:
    FiniteAbelianGroup() = default;
    explicit FiniteAbelianGroup(std::vector<Residue> moduli) : moduli_(std::move(moduli)) {
        for (Residue n : moduli_)
            if (n < 1) fail(ErrorKind::InvalidArgument, "group moduli must be positive");
    }
    static FiniteAbelianGroup cyclic(Residue n) { return FiniteAbelianGroup({n}); }

    [[nodiscard]] const std::vector<Residue> &moduli() const noexcept { return moduli_; }
    [[nodiscard]] std::size_t rank() const noexcept { return moduli_.size(); }
    [[nodiscard]] Int order() const {
        Int o = 1;
        for (Residue n : moduli_) o *= n;
        return o;
    }
    /// order as a machine integer; throws BudgetExceeded when it does not fit
    [[nodiscard]] std::uint64_t order_u64() const {
        Int o = order();
        if (o > Int(std::numeric_limits<std::int64_t>::max())) fail(ErrorKind::BudgetExceeded, "group too large");
        return static_cast<std::uint64_t>(o);
    }

    [[nodiscard]] bool contains(std::span<const Residue> x) const {
        if (x.size() != moduli_.size()) return false;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (x[i] < 0 || x[i] >= moduli_[i]) return false;
        return true;
    }
    [[nodiscard]] GroupElement zero() const { return GroupElement(moduli_.size(), 0); }
    [[nodiscard]] GroupElement reduce(std::span<const Residue> x) const {
        GroupElement out(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) out[i] = detail::mod_floor(static_cast<__int128>(x[i]), moduli_[i]);
        return out;
    }
    [[nodiscard]] GroupElement add(std::span<const Residue> a, std::span<const Residue> b) const {
        GroupElement out(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) out[i] = (a[i] + b[i]) % moduli_[i];
        return out;
    }
    [[nodiscard]] GroupElement sub(std::span<const Residue> a, std::span<const Residue> b) const {
        GroupElement out(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) out[i] = (a[i] - b[i] + moduli_[i]) % moduli_[i];
        return out;
    }
    [[nodiscard]] GroupElement scale(std::span<const Residue> a, const Int &c) const {
        GroupElement out(a.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            out[i] = detail::mod_floor(Int(c % moduli_[i]) * a[i], moduli_[i]);
        return out;
    }

    /// Mixed-radix index (factor 0 varies fastest).
    [[nodiscard]] std::uint64_t index_of(std::span<const Residue> x) const {
        std::uint64_t idx = 0;
        for (std::size_t i = x.size(); i-- > 0;) idx = idx * static_cast<std::uint64_t>(moduli_[i]) + static_cast<std::uint64_t>(x[i]);
        return idx;
    }
    [[nodiscard]] GroupElement element_at(std::uint64_t idx) const {
        GroupElement x(moduli_.size());
        for (std::size_t i = 0; i < moduli_.size(); ++i) {
            x[i] = static_cast<Residue>(idx % static_cast<std::uint64_t>(moduli_[i]));
            idx /= static_cast<std::uint64_t>(moduli_[i]);
        }
        return x;
    }
    [[nodiscard]] std::vector<GroupElement> elements() const {
        std::vector<GroupElement> out;
        const auto n = order_u64();
        out.reserve(n);
        for (std::uint64_t i = 0; i < n; ++i) out.push_back(element_at(i));
        return out;
    }
    [[nodiscard]] GroupElement random_element(std::mt19937_64 &rng) const {
        GroupElement x(moduli_.size());
        for (std::size_t i = 0; i < moduli_.size(); ++i)
            x[i] = std::uniform_int_distribution<Residue>(0, moduli_[i] - 1)(rng);
        return x;
    }

    /// Direct power G^k, flattened (copy-major order).
    [[nodiscard]] FiniteAbelianGroup power(std::size_t k) const {
        std::vector<Residue> m;
        for (std::size_t c = 0; c < k; ++c) m.insert(m.end(), moduli_.begin(), moduli_.end());
        return FiniteAbelianGroup(std::move(m));
    }

    friend bool operator==(const FiniteAbelianGroup &, const FiniteAbelianGroup &) = default;

    [[nodiscard]] std::string name() const {
        if (moduli_.empty()) return "1";
        std::string s;
        for (std::size_t i = 0; i < moduli_.size(); ++i) s += (i ? "xZ_" : "Z_") + std::to_string(moduli_[i]);
        return s;
    }

  private:
    std::vector<Residue> moduli_;
};

inline FiniteAbelianGroup direct_product(std::span<const FiniteAbelianGroup> parts) {
    std::vector<Residue> m;
    for (const auto &p : parts) m.insert(m.end(), p.moduli().begin(), p.moduli().end());
    return FiniteAbelianGroup(std::move(m));
}

/// Subgroup in canonical form: the row HNF of the lattice spanned by the
/// generators and diag(moduli). Equal subgroups have identical bases.
class Subgroup {
  public:
    Subgroup() = default;
    explicit Subgroup(FiniteAbelianGroup ambient) : ambient_(std::move(ambient)), lattice_(ambient_.moduli()) {}
    Subgroup(FiniteAbelianGroup ambient, detail::ModularLattice lattice)
        : ambient_(std::move(ambient)), lattice_(std::move(lattice)) {
        lattice_.canonicalize();
    }

    [[nodiscard]] const FiniteAbelianGroup &ambient() const noexcept { return ambient_; }

    [[nodiscard]] IntMatrix basis() const {
        const std::size_t n = lattice_.dim();
        IntMatrix b(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) b(i, j) = lattice_.basis()[i][j];
        return b;
    }
    [[nodiscard]] const std::vector<std::vector<Residue>> &basis_rows() const noexcept { return lattice_.basis(); }

    [[nodiscard]] Int order() const {
        Int o = 1;
        for (std::size_t i = 0; i < lattice_.dim(); ++i) o *= ambient_.moduli()[i] / lattice_.pivot(i);
        return o;
    }
    [[nodiscard]] Int index() const { return ambient_.order() / order(); }

    [[nodiscard]] bool contains(std::span<const Residue> x) const {
        std::vector<Residue> v(x.begin(), x.end());
        if (!lattice_.reduce_prefix(v, v.size())) return false;
        return std::all_of(v.begin(), v.end(), [](Residue r) { return r == 0; });
    }

    /// Canonical representative of the coset x + S (pivot coordinates
    /// reduced into [0, pivot)); equal exactly when the cosets are equal.
    [[nodiscard]] GroupElement coset_representative(std::span<const Residue> x) const {
        const std::size_t n = lattice_.dim();
        GroupElement v = ambient_.reduce(x);
        for (std::size_t i = 0; i < n; ++i) {
            const Residue q = v[i] / lattice_.pivot(i);
            if (q == 0) continue;
            for (std::size_t j = i; j < n; ++j)
                v[j] = detail::mod_floor(static_cast<__int128>(v[j]) - static_cast<__int128>(q) * lattice_.basis()[i][j],
                                         ambient_.moduli()[j]);
        }
        return v;
    }

    /// Generators: the nontrivial basis rows reduced into the ambient group.
    [[nodiscard]] std::vector<GroupElement> generators() const {
        std::vector<GroupElement> out;
        for (std::size_t i = 0; i < lattice_.dim(); ++i) {
            if (lattice_.pivot(i) == ambient_.moduli()[i]) continue;
            out.push_back(ambient_.reduce(lattice_.basis()[i]));
        }
        return out;
    }

    /// Calls f on every element exactly once.
    void for_each(const std::function<void(const GroupElement &)> &f) const {
        const std::size_t n = lattice_.dim();
        GroupElement acc(n, 0);
        enumerate(0, acc, f);
    }
    [[nodiscard]] std::vector<GroupElement> elements() const {
        std::vector<GroupElement> out;
        for_each([&](const GroupElement &x) { out.push_back(x); });
        return out;
    }
    [[nodiscard]] GroupElement random_element(std::mt19937_64 &rng) const {
        const std::size_t n = lattice_.dim();
        GroupElement acc(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            const Residue span = ambient_.moduli()[i] / lattice_.pivot(i);
            const Residue c = std::uniform_int_distribution<Residue>(0, span - 1)(rng);
            for (std::size_t j = i; j < n; ++j)
                acc[j] = detail::mod_floor(static_cast<__int128>(acc[j]) + static_cast<__int128>(c) * lattice_.basis()[i][j],
                                           ambient_.moduli()[j]);
        }
        return acc;
    }

    friend bool operator==(const Subgroup &a, const Subgroup &b) {
        return a.ambient_ == b.ambient_ && a.lattice_.basis() == b.lattice_.basis();
    }

  private:
    void enumerate(std::size_t i, GroupElement &acc, const std::function<void(const GroupElement &)> &f) const {
        const std::size_t n = lattice_.dim();
        if (i == n) {
            f(acc);
            return;
        }
        const Residue span = ambient_.moduli()[i] / lattice_.pivot(i);
        GroupElement saved = acc;
        for (Residue c = 0; c < span; ++c) {
            enumerate(i + 1, acc, f);
            for (std::size_t j = i; j < n; ++j)
                acc[j] = (acc[j] + lattice_.basis()[i][j]) % ambient_.moduli()[j];
        }
        acc = saved;
    }

    FiniteAbelianGroup ambient_;
    detail::ModularLattice lattice_{std::vector<Residue>{}};
};

inline Subgroup subgroup_from_generators(const FiniteAbelianGroup &g, std::span<const GroupElement> gens) {
    detail::ModularLattice lat(g.moduli());
    for (const auto &x : gens) {
        if (x.size() != g.rank()) fail(ErrorKind::ShapeMismatch, "generator has the wrong number of residues");
        lat.insert(x);
    }
    return Subgroup(g, std::move(lat));
}

inline Subgroup trivial_subgroup(const FiniteAbelianGroup &g) { return subgroup_from_generators(g, {}); }

inline Subgroup whole_group(const FiniteAbelianGroup &g) {
    std::vector<GroupElement> units;
    for (std::size_t i = 0; i < g.rank(); ++i) {
        GroupElement e(g.rank(), 0);
        e[i] = 1 % g.moduli()[i];
        units.push_back(e);
    }
    return subgroup_from_generators(g, units);
}

/// Image of a subgroup under a coordinate selection (flat indices).
inline Subgroup project_subgroup(const Subgroup &s, std::span<const std::size_t> coords) {
    std::vector<Residue> mods;
    for (auto c : coords) mods.push_back(s.ambient().moduli()[c]);
    FiniteAbelianGroup target(mods);
    detail::ModularLattice lat(mods);
    for (const auto &row : s.basis_rows()) {
        std::vector<Residue> v;
        for (auto c : coords) v.push_back(row[c]);
        lat.insert(v);
    }
    return Subgroup(target, std::move(lat));
}

/// The d-torsion {x : d x = 0} of G, both as an abstract group
/// prod Z_{gcd(d, n_i)} and as a subgroup of G. The unit of abstract factor
/// i maps to n_i / gcd(d, n_i) in factor i of G.
struct TorsionSubgroup {
    FiniteAbelianGroup abstract_group;
    std::vector<Residue> embedding;
    Subgroup subgroup;

    [[nodiscard]] GroupElement embed(std::span<const Residue> x) const {
        GroupElement out(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] * embedding[i];
        return out;
    }
};

inline TorsionSubgroup d_torsion(const FiniteAbelianGroup &g, Residue d) {
    if (d < 1) fail(ErrorKind::InvalidArgument, "d_torsion: d must be positive");
    std::vector<Residue> mods, emb;
    std::vector<GroupElement> gens;
    for (std::size_t i = 0; i < g.rank(); ++i) {
        const Residue n = g.moduli()[i];
        const Residue gd = std::gcd(d, n);
        mods.push_back(gd);
        emb.push_back(n / gd);
        GroupElement e(g.rank(), 0);
        e[i] = (n / gd) % n;
        gens.push_back(e);
    }
    return {FiniteAbelianGroup(mods), emb, subgroup_from_generators(g, gens)};
}

/// Domain of one coordinate of a homomorphism G_*^t -> G^m: an abstract
/// group whose factor i embeds into factor i of G by multiplication.
struct ColumnDomain {
    FiniteAbelianGroup group;
    std::vector<Residue> embedding;

    static ColumnDomain identity(const FiniteAbelianGroup &g) {
        return {g, std::vector<Residue>(g.rank(), 1)};
    }
    static ColumnDomain torsion(const TorsionSubgroup &t) { return {t.abstract_group, t.embedding}; }
};

/// Homomorphism between products of finite abelian groups, stored as a flat
/// integer matrix acting on residues. Coordinates are grouped in blocks.
class GroupHom {
  public:
    GroupHom() = default;
    GroupHom(std::vector<FiniteAbelianGroup> domain_blocks, std::vector<FiniteAbelianGroup> codomain_blocks,
             std::vector<std::vector<Residue>> flat)
        : dom_blocks_(std::move(domain_blocks)), cod_blocks_(std::move(codomain_blocks)), flat_(std::move(flat)) {
        dom_ = direct_product(dom_blocks_);
        cod_ = direct_product(cod_blocks_);
        if (flat_.size() != cod_.rank()) fail(ErrorKind::ShapeMismatch, "hom matrix row count");
        for (std::size_t i = 0; i < flat_.size(); ++i) {
            if (flat_[i].size() != dom_.rank()) fail(ErrorKind::ShapeMismatch, "hom matrix column count");
            for (std::size_t j = 0; j < flat_[i].size(); ++j) {
                flat_[i][j] = detail::mod_floor(static_cast<__int128>(flat_[i][j]), cod_.moduli()[i]);
                // well-definedness: the order of the source factor kills the entry
                if ((static_cast<__int128>(dom_.moduli()[j]) * flat_[i][j]) % cod_.moduli()[i] != 0)
                    fail(ErrorKind::InvalidArgument, "hom is not well defined on its domain");
            }
        }
        offsets(dom_blocks_, dom_off_);
        offsets(cod_blocks_, cod_off_);
    }

    /// Integer matrix psi (m x t) acting from prod_c D_c to G^m, where
    /// column c ranges over columns[c] embedded into G.
    static GroupHom from_integer_matrix(const IntMatrix &psi, const std::vector<ColumnDomain> &columns,
                                        const FiniteAbelianGroup &g) {
        if (columns.size() != psi.cols()) fail(ErrorKind::ShapeMismatch, "one column domain per column required");
        const std::size_t s = g.rank();
        std::vector<FiniteAbelianGroup> dom, cod(psi.rows(), g);
        for (const auto &c : columns) {
            if (c.group.rank() != s) fail(ErrorKind::ShapeMismatch, "column domain rank differs from G");
            dom.push_back(c.group);
        }
        std::vector<std::vector<Residue>> flat(psi.rows() * s, std::vector<Residue>(psi.cols() * s, 0));
        for (std::size_t j = 0; j < psi.rows(); ++j)
            for (std::size_t c = 0; c < psi.cols(); ++c)
                for (std::size_t f = 0; f < s; ++f) {
                    const Residue n = g.moduli()[f];
                    flat[j * s + f][c * s + f] = detail::mod_floor(Int(psi(j, c) % n) * columns[c].embedding[f], n);
                }
        return GroupHom(std::move(dom), std::move(cod), std::move(flat));
    }

    /// Integer matrix acting as G^cols -> G^rows.
    static GroupHom from_integer_matrix(const IntMatrix &a, const FiniteAbelianGroup &g) {
        return from_integer_matrix(a, std::vector<ColumnDomain>(a.cols(), ColumnDomain::identity(g)), g);
    }

    [[nodiscard]] const FiniteAbelianGroup &domain() const noexcept { return dom_; }
    [[nodiscard]] const FiniteAbelianGroup &codomain() const noexcept { return cod_; }
    [[nodiscard]] const std::vector<FiniteAbelianGroup> &domain_blocks() const noexcept { return dom_blocks_; }
    [[nodiscard]] const std::vector<FiniteAbelianGroup> &codomain_blocks() const noexcept { return cod_blocks_; }
    [[nodiscard]] const std::vector<std::vector<Residue>> &flat() const noexcept { return flat_; }

    /// Flat coordinate range of domain block c.
    [[nodiscard]] std::pair<std::size_t, std::size_t> domain_range(std::size_t c) const {
        return {dom_off_[c], dom_off_[c + 1]};
    }
    [[nodiscard]] std::pair<std::size_t, std::size_t> codomain_range(std::size_t j) const {
        return {cod_off_[j], cod_off_[j + 1]};
    }
    [[nodiscard]] std::vector<std::size_t> domain_coords(std::span<const std::size_t> blocks) const {
        std::vector<std::size_t> out;
        for (auto c : blocks)
            for (std::size_t i = dom_off_[c]; i < dom_off_[c + 1]; ++i) out.push_back(i);
        return out;
    }
    [[nodiscard]] std::vector<std::size_t> codomain_coords(std::span<const std::size_t> blocks) const {
        std::vector<std::size_t> out;
        for (auto j : blocks)
            for (std::size_t i = cod_off_[j]; i < cod_off_[j + 1]; ++i) out.push_back(i);
        return out;
    }

    [[nodiscard]] GroupElement operator()(std::span<const Residue> x) const {
        GroupElement y(cod_.rank(), 0);
        for (std::size_t i = 0; i < flat_.size(); ++i) {
            __int128 acc = 0;
            const Residue n = cod_.moduli()[i];
            for (std::size_t j = 0; j < x.size(); ++j)
                if (flat_[i][j] != 0) acc = (acc + static_cast<__int128>(flat_[i][j]) * x[j]) % n;
            y[i] = static_cast<Residue>(acc);
        }
        return y;
    }

    /// Restriction to the domain blocks `blocks` and codomain blocks `rows`.
    [[nodiscard]] GroupHom restrict(std::span<const std::size_t> blocks, std::span<const std::size_t> rows) const {
        std::vector<FiniteAbelianGroup> dom, cod;
        for (auto c : blocks) dom.push_back(dom_blocks_[c]);
        for (auto j : rows) cod.push_back(cod_blocks_[j]);
        auto dc = domain_coords(blocks);
        auto rc = codomain_coords(rows);
        std::vector<std::vector<Residue>> flat;
        for (auto i : rc) {
            std::vector<Residue> r;
            for (auto c : dc) r.push_back(flat_[i][c]);
            flat.push_back(std::move(r));
        }
        return GroupHom(std::move(dom), std::move(cod), std::move(flat));
    }

  private:
    static void offsets(const std::vector<FiniteAbelianGroup> &blocks, std::vector<std::size_t> &off) {
        off.assign(1, 0);
        for (const auto &b : blocks) off.push_back(off.back() + b.rank());
    }

    std::vector<FiniteAbelianGroup> dom_blocks_, cod_blocks_;
    FiniteAbelianGroup dom_, cod_;
    std::vector<std::vector<Residue>> flat_;
    std::vector<std::size_t> dom_off_{0}, cod_off_{0};
};

namespace detail {

// Echelon lattice of the graph {(h(x), x)} plus relations, codomain first.
inline ModularLattice graph_lattice(const GroupHom &h, std::span<const std::size_t> cols) {
    const std::size_t m = h.codomain().rank();
    std::vector<Residue> mods = h.codomain().moduli();
    for (auto c : cols) mods.push_back(h.domain().moduli()[c]);
    ModularLattice lat(mods);
    for (std::size_t k = 0; k < cols.size(); ++k) {
        std::vector<Residue> v(m + cols.size(), 0);
        for (std::size_t i = 0; i < m; ++i) v[i] = h.flat()[i][cols[k]];
        v[m + k] = 1;
        lat.insert(v);
    }
    return lat;
}

inline std::vector<std::size_t> iota_n(std::size_t n) {
    std::vector<std::size_t> v(n);
    std::iota(v.begin(), v.end(), std::size_t{0});
    return v;
}

} // namespace detail

struct HomStructure {
    Subgroup kernel; ///< subgroup of the domain
    Subgroup image;  ///< subgroup of the codomain
};

inline HomStructure hom_structure(const GroupHom &h) {
    const std::size_t m = h.codomain().rank();
    const std::size_t n = h.domain().rank();
    auto lat = detail::graph_lattice(h, detail::iota_n(n));
    lat.canonicalize();
    // upper triangular: the trailing block spans lattice ∩ (0 x Z^n)
    detail::ModularLattice ker(h.domain().moduli());
    for (std::size_t i = m; i < m + n; ++i)
        ker.insert(std::vector<Residue>(lat.basis()[i].begin() + static_cast<std::ptrdiff_t>(m), lat.basis()[i].end()));
    detail::ModularLattice img(h.codomain().moduli());
    for (std::size_t i = 0; i < m; ++i)
        img.insert(std::vector<Residue>(lat.basis()[i].begin(), lat.basis()[i].begin() + static_cast<std::ptrdiff_t>(m)));
    return {Subgroup(h.domain(), std::move(ker)), Subgroup(h.codomain(), std::move(img))};
}

inline Subgroup hom_kernel(const GroupHom &h) { return hom_structure(h).kernel; }
inline Subgroup hom_image(const GroupHom &h) { return hom_structure(h).image; }

/// Domain block index -> fixed value on that block.
using FixedCoordinates = std::map<std::size_t, GroupElement>;

/// Some x with h(x) = target agreeing with `fixed`, or nullopt when the
/// congruence system has no solution. Decided exactly on the lattice.
inline std::optional<GroupElement> solve(const GroupHom &h, std::span<const Residue> target,
                                         const FixedCoordinates &fixed = {}) {
    if (!h.codomain().contains(target)) fail(ErrorKind::InvalidArgument, "solve: target outside the codomain");
    const std::size_t m = h.codomain().rank();
    const std::size_t n = h.domain().rank();
    GroupElement x(n, 0);
    std::vector<bool> is_fixed(n, false);
    for (const auto &[block, value] : fixed) {
        if (block >= h.domain_blocks().size()) fail(ErrorKind::InvalidArgument, "solve: fixed block out of range");
        if (!h.domain_blocks()[block].contains(value))
            fail(ErrorKind::InvalidArgument, "solve: fixed value outside its block");
        auto [lo, hi] = h.domain_range(block);
        for (std::size_t i = lo; i < hi; ++i) {
            x[i] = value[i - lo];
            is_fixed[i] = true;
        }
    }
    std::vector<std::size_t> free;
    for (std::size_t i = 0; i < n; ++i)
        if (!is_fixed[i]) free.push_back(i);

    auto partial = h(x);
    std::vector<Residue> v(m + free.size(), 0);
    for (std::size_t i = 0; i < m; ++i) v[i] = target[i] - partial[i];

    auto lat = detail::graph_lattice(h, free);
    if (!lat.reduce_prefix(v, m)) return std::nullopt;
    for (std::size_t k = 0; k < free.size(); ++k) {
        const Residue a = h.domain().moduli()[free[k]];
        x[free[k]] = detail::mod_floor(-static_cast<__int128>(v[m + k]), a);
    }
    return x;
}

/// Columns of an integer W with M W = 0 such that y -> W y is a bijection
/// G^{m-r} -> ker_G M. Needs d_r(M) = 1 or gcd(d_r(M), |G|) = 1.
inline IntMatrix kernel_parametrization(const IntMatrix &m, const FiniteAbelianGroup &g) {
    auto snf = smith_normal_form(m);
    const std::size_t r = snf.rank();
    if (r != m.rows()) fail(ErrorKind::DeterminantalObstruction, "matrix lacks full row rank");
    Int dr = 1;
    for (std::size_t i = 0; i < r; ++i) dr *= snf.d(i, i);
    if (dr != 1 && gcd_int(dr, g.order()) != 1)
        fail(ErrorKind::DeterminantalObstruction, "d_r(M) shares a factor with |G|");
    // M = U (D|0) V  =>  M V^{-1} (0; I) = 0
    return snf.v_inv.col_block(r, m.cols() - r);
}

/// Coordinatewise reduction G -> prod Z_{d_i} (each d_i must divide n_i).
inline GroupHom quotient_map(const FiniteAbelianGroup &g, std::span<const Residue> divisors) {
    if (divisors.size() != g.rank()) fail(ErrorKind::ShapeMismatch, "quotient_map: one divisor per factor");
    std::vector<std::vector<Residue>> flat(g.rank(), std::vector<Residue>(g.rank(), 0));
    for (std::size_t i = 0; i < g.rank(); ++i) {
        if (divisors[i] < 1 || g.moduli()[i] % divisors[i] != 0)
            fail(ErrorKind::NotADivisor, "quotient_map: divisor does not divide the modulus");
        flat[i][i] = 1 % divisors[i];
    }
    FiniteAbelianGroup h(std::vector<Residue>(divisors.begin(), divisors.end()));
    return GroupHom({g}, {h}, std::move(flat));
}

/// ker_G M computed directly as the kernel of M : G^m -> G^r.
inline Subgroup matrix_kernel(const IntMatrix &m, const FiniteAbelianGroup &g) {
    return hom_kernel(GroupHom::from_integer_matrix(m, g));
}

/// Subgroup of G^m generated by the columns of W applied to factor units.
inline Subgroup column_span(const IntMatrix &w, const FiniteAbelianGroup &g) {
    const std::size_t s = g.rank();
    auto gm = g.power(w.rows());
    std::vector<GroupElement> gens;
    for (std::size_t c = 0; c < w.cols(); ++c)
        for (std::size_t f = 0; f < s; ++f) {
            GroupElement e(w.rows() * s, 0);
            for (std::size_t j = 0; j < w.rows(); ++j)
                e[j * s + f] = detail::mod_floor(w(j, c), g.moduli()[f]);
            gens.push_back(e);
        }
    return subgroup_from_generators(gm, gens);
}

} // namespace linconfig

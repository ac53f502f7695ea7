#pragma once
// JSON encodings of matrices, groups, representations and reports. Index sets
// (color classes, J, eliminated columns) are written 1-based.

#include "linconfig/cayley.hpp"
#include "linconfig/representation.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

namespace linconfig {

using Json = nlohmann::ordered_json;

namespace detail {

[[noreturn]] inline void parse_fail(const std::string &what) { fail(ErrorKind::ParseError, what); }

inline void expect(bool ok, const std::string &what) {
    if (!ok) parse_fail(what);
}

inline const Json &field(const Json &j, const char *key) {
    expect(j.is_object(), std::string("expected an object with key \"") + key + "\"");
    auto it = j.find(key);
    expect(it != j.end(), std::string("missing key \"") + key + "\"");
    return *it;
}

inline std::size_t size_field(const Json &j, const char *key) {
    const auto &v = field(j, key);
    expect(v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0),
           std::string("\"") + key + "\" must be a nonnegative integer");
    return v.get<std::size_t>();
}

} // namespace detail

inline Json int_to_json(const Int &x) {
    if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
        return static_cast<std::int64_t>(x);
    return x.str();
}

inline Int int_from_json(const Json &j) {
    if (j.is_number_integer()) return j.is_number_unsigned() ? Int(j.get<std::uint64_t>()) : Int(j.get<std::int64_t>());
    if (j.is_string()) {
        const auto &s = j.get_ref<const std::string &>();
        std::size_t i = (!s.empty() && s[0] == '-') ? 1 : 0;
        detail::expect(i < s.size(), "empty integer string");
        for (std::size_t k = i; k < s.size(); ++k) detail::expect(s[k] >= '0' && s[k] <= '9', "bad integer string \"" + s + "\"");
        return Int(s);
    }
    detail::parse_fail("expected an integer, got " + j.dump());
}

inline Json to_json(const IntMatrix &m) {
    Json entries = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(int_to_json(m(i, c)));
        entries.push_back(std::move(row));
    }
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

inline IntMatrix matrix_from_json(const Json &j) {
    const std::size_t r = detail::size_field(j, "rows"), c = detail::size_field(j, "cols");
    const auto &e = detail::field(j, "entries");
    detail::expect(e.is_array() && e.size() == r, "\"entries\" must hold \"rows\" arrays");
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        detail::expect(e[i].is_array() && e[i].size() == c, "row " + std::to_string(i + 1) + " must have \"cols\" entries");
        for (std::size_t k = 0; k < c; ++k) m(i, k) = int_from_json(e[i][k]);
    }
    return m;
}

inline Json to_json(const FiniteAbelianGroup &g) { return Json{{"moduli", g.moduli()}}; }

inline FiniteAbelianGroup group_from_json(const Json &j) {
    const auto &mods = detail::field(j, "moduli");
    detail::expect(mods.is_array(), "\"moduli\" must be an array");
    std::vector<Residue> out;
    for (const auto &x : mods) {
        detail::expect(x.is_number_integer() && x.get<long long>() >= 1, "moduli must be positive integers");
        out.push_back(x.get<Residue>());
    }
    return FiniteAbelianGroup(out);
}

inline Json element_to_json(std::span<const Residue> x) { return Json(std::vector<Residue>(x.begin(), x.end())); }

inline GroupElement element_from_json(const Json &j, const FiniteAbelianGroup &g) {
    detail::expect(j.is_array() && j.size() == g.rank(), "element must be an array of " + std::to_string(g.rank()) + " integers");
    GroupElement x;
    for (const auto &v : j) {
        detail::expect(v.is_number_integer(), "element entries must be integers");
        x.push_back(v.get<Residue>());
    }
    detail::expect(g.contains(x), "element " + j.dump() + " is not reduced for moduli " + to_json(g).dump());
    return x;
}

inline Json to_json(const Subgroup &s) { return Json{{"moduli", s.ambient().moduli()}, {"basis", to_json(s.basis())}}; }

inline Subgroup subgroup_from_json(const Json &j) {
    auto g = group_from_json(j);
    auto b = matrix_from_json(detail::field(j, "basis"));
    detail::expect(b.cols() == g.rank(), "subgroup basis width must match the number of moduli");
    std::vector<GroupElement> gens;
    for (std::size_t i = 0; i < b.rows(); ++i) {
        GroupElement x;
        for (std::size_t c = 0; c < b.cols(); ++c) x.push_back(static_cast<Residue>(detail::mod_floor(b(i, c), g.moduli()[c])));
        gens.push_back(x);
    }
    return subgroup_from_generators(g, gens);
}

inline Json index_set_to_json(const std::vector<std::size_t> &s) {
    Json out = Json::array();
    for (auto i : s) out.push_back(i + 1);
    return out;
}

inline std::vector<std::size_t> index_set_from_json(const Json &j) {
    detail::expect(j.is_array(), "index set must be an array");
    std::vector<std::size_t> out;
    for (const auto &v : j) {
        detail::expect(v.is_number_integer() && v.get<long long>() >= 1, "indices are 1-based positive integers");
        out.push_back(v.get<std::size_t>() - 1);
    }
    return out;
}

inline Json to_json(const Representation &rep) {
    Json classes = Json::array();
    for (const auto &c : rep.color_classes) classes.push_back(index_set_to_json(c));
    Json divisors = Json::array();
    for (const auto &d : rep.divisors) divisors.push_back(int_to_json(d));
    Json blocks = Json::array();
    for (const auto &b : rep.blocks) blocks.push_back(to_json(b));
    Json out{{"variant", rep.structured() ? "structured" : "integer"},
             {"t", rep.t},
             {"k", rep.k},
             {"color_classes", std::move(classes)},
             {"psi", to_json(rep.psi)},
             {"divisors", std::move(divisors)},
             {"blocks", std::move(blocks)}};
    if (rep.structured()) out["column_tags"] = rep.column_tags;
    return out;
}

inline Representation representation_from_json(const Json &j) {
    Representation rep;
    const auto &variant = detail::field(j, "variant");
    detail::expect(variant == "integer" || variant == "structured", "\"variant\" must be \"integer\" or \"structured\"");
    rep.variant = variant == "structured" ? Representation::Variant::Structured : Representation::Variant::Integer;
    rep.t = detail::size_field(j, "t");
    rep.k = detail::size_field(j, "k");
    rep.psi = matrix_from_json(detail::field(j, "psi"));
    const auto &classes = detail::field(j, "color_classes");
    detail::expect(classes.is_array(), "\"color_classes\" must be an array");
    for (const auto &c : classes) {
        auto s = index_set_from_json(c);
        for (auto i : s) detail::expect(i < rep.t, "color class index exceeds t");
        rep.color_classes.push_back(std::move(s));
    }
    if (j.contains("divisors"))
        for (const auto &d : j["divisors"]) rep.divisors.push_back(int_from_json(d));
    if (j.contains("blocks"))
        for (const auto &b : j["blocks"]) rep.blocks.push_back(representation_from_json(b));
    if (j.contains("column_tags"))
        for (const auto &t : j["column_tags"]) {
            detail::expect(t.is_number_integer() && t.get<long long>() >= 0, "column tags must be nonnegative");
            rep.column_tags.push_back(t.get<std::size_t>());
        }
    detail::expect(rep.psi.cols() == rep.t, "psi must have t columns");
    detail::expect(rep.color_classes.size() == rep.psi.rows(), "one color class per row of psi");
    if (rep.structured()) {
        detail::expect(rep.column_tags.size() == rep.t, "structured representations need t column tags");
        detail::expect(rep.blocks.empty() || rep.blocks.size() == rep.divisors.size() + 1, "blocks: one for G plus one per divisor");
        for (auto t : rep.column_tags) detail::expect(t <= rep.divisors.size(), "column tag exceeds the divisor count");
    }
    return rep;
}

inline Json to_json(const MatrixExtension &e) {
    return Json{{"kind", to_string(e.kind)}, {"J", index_set_to_json(e.j_set)}, {"parent", to_json(e.parent)},
                {"child", to_json(e.child)}};
}

inline Json to_json(const PlainReport &p) {
    return Json{{"eliminated", index_set_to_json(p.eliminated)},
                {"kept", index_set_to_json(p.kept)},
                {"reduced", to_json(p.reduced)}};
}

inline Json to_json(const LinearSystemMatrix &a) {
    Json out{{"rows", a.matrix.rows()},
             {"cols", a.matrix.cols()},
             {"rank", a.rank},
             {"d_r", int_to_json(a.d_r)},
             {"invariant", a.invariant},
             {"plain_indices", index_set_to_json(a.plain_indices)},
             {"identity_form", a.identity_form},
             {"simple", a.simple},
             {"circular", a.circular}};
    out["circular_failure"] = a.circular_failure ? Json(*a.circular_failure) : Json(nullptr);
    return out;
}

inline Json to_json(const VerificationReport &v) {
    return Json{{"cond_i", v.cond_i},
                {"cond_ii", v.cond_ii},
                {"cond_iii", v.cond_iii},
                {"iii_prime_samples", v.iii_prime_samples},
                {"iii_prime_failures", v.iii_prime_failures},
                {"passed", v.passed()},
                {"failures", v.failures}};
}

/// Exact fraction plus a 6-significant-digit rendering.
inline Json to_json(const Rational &q, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, boost::multiprecision::numerator(q).convert_to<double>() /
                                                        boost::multiprecision::denominator(q).convert_to<double>());
    return Json{{"num", boost::multiprecision::numerator(q).str()},
                {"den", boost::multiprecision::denominator(q).str()},
                {"decimal", buf}};
}

inline Rational rational_from_json(const Json &j) {
    Int n = int_from_json(detail::field(j, "num")), d = int_from_json(detail::field(j, "den"));
    detail::expect(d != 0, "zero denominator");
    return Rational(n, d);
}

inline Json sets_to_json(const std::vector<ElementSet> &sets) {
    Json out = Json::array();
    for (const auto &s : sets) {
        Json a = Json::array();
        for (const auto &x : s) a.push_back(element_to_json(x));
        out.push_back(std::move(a));
    }
    return Json{{"sets", std::move(out)}};
}

inline std::vector<ElementSet> sets_from_json(const Json &j, const FiniteAbelianGroup &g) {
    const auto &sets = detail::field(j, "sets");
    detail::expect(sets.is_array(), "\"sets\" must be an array");
    std::vector<ElementSet> out;
    for (const auto &s : sets) {
        detail::expect(s.is_array(), "each set must be an array of elements");
        ElementSet a;
        for (const auto &x : s) a.insert(element_from_json(x, g));
        out.push_back(std::move(a));
    }
    return out;
}

/// An edge of color j as a k-tuple, one element per vertex class of C_j.
inline Json edge_to_json(const CayleyHypergraph &h, std::size_t j, std::span<const Residue> v) {
    Json out = Json::array();
    std::size_t pos = 0;
    for (const auto &b : h.row_maps[j].domain_blocks()) {
        out.push_back(element_to_json(v.subspan(pos, b.rank())));
        pos += b.rank();
    }
    return out;
}

inline GroupElement edge_from_json(const CayleyHypergraph &h, std::size_t j, const Json &e) {
    const auto &blocks = h.row_maps[j].domain_blocks();
    detail::expect(e.is_array() && e.size() == blocks.size(),
                   "an edge of color " + std::to_string(j + 1) + " is a " + std::to_string(blocks.size()) + "-tuple");
    GroupElement v;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        auto x = element_from_json(e[i], blocks[i]);
        v.insert(v.end(), x.begin(), x.end());
    }
    return v;
}

inline Json removal_to_json(const CayleyHypergraph &h, const std::vector<ElementSet> &removal) {
    Json out = Json::array();
    for (std::size_t j = 0; j < removal.size(); ++j) {
        Json edges = Json::array();
        for (const auto &v : removal[j]) edges.push_back(edge_to_json(h, j, v));
        out.push_back(std::move(edges));
    }
    return Json{{"removal", std::move(out)}};
}

inline std::vector<ElementSet> removal_from_json(const CayleyHypergraph &h, const Json &j) {
    const auto &rem = detail::field(j, "removal");
    detail::expect(rem.is_array() && rem.size() == h.m(), "\"removal\" must hold one edge list per color");
    std::vector<ElementSet> out(h.m());
    for (std::size_t c = 0; c < h.m(); ++c) {
        detail::expect(rem[c].is_array(), "edge lists must be arrays");
        for (const auto &e : rem[c]) out[c].insert(edge_from_json(h, c, e));
    }
    return out;
}

/// Parses a file; syntax errors carry the byte offset.
inline Json read_json_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::ParseError, path + ": cannot open file");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return Json::parse(buf.str());
    } catch (const nlohmann::json::parse_error &e) {
        fail(ErrorKind::ParseError, path + ": parse error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

/// Semicolon-separated groups, factors joined by 'x': "5;2x4;2x3x3".
inline std::vector<FiniteAbelianGroup> parse_battery(const std::string &spec) {
    std::vector<FiniteAbelianGroup> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ';')) {
        if (item.empty()) continue;
        std::vector<Residue> mods;
        std::stringstream fs(item);
        std::string f;
        while (std::getline(fs, f, 'x')) {
            std::size_t used = 0;
            long long n = 0;
            try {
                n = std::stoll(f, &used);
            } catch (const std::exception &) {
                fail(ErrorKind::ParseError, "battery: bad modulus \"" + f + "\" in \"" + item + "\"");
            }
            if (used != f.size() || n < 1) fail(ErrorKind::ParseError, "battery: bad modulus \"" + f + "\" in \"" + item + "\"");
            mods.push_back(n);
        }
        if (mods.empty()) fail(ErrorKind::ParseError, "battery: empty group");
        out.emplace_back(mods);
    }
    if (out.empty()) fail(ErrorKind::ParseError, "battery: no groups given");
    return out;
}

} // namespace linconfig

// linconfig command-line driver. Reports are JSON on stdout (or -o), with a
// plain-text summary under --table.

#include "linconfig/linconfig.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

using namespace linconfig;

namespace {

constexpr const char *default_battery = "2;3;4;5;6;7;8;9;2x2;2x4;2x3x3";

enum Exit { Ok = 0, Internal = 1, Parse = 2, Precondition = 3, Degenerate = 4, VerificationFailure = 5 };

struct Options {
    std::uint64_t budget = 0; // 0: per-command default
    std::string battery = default_battery;
    std::uint64_t seed = 1;
    std::string out;
    bool table = false;
};

struct CommandError {
    int code;
    std::string message;
    Json body;
};

int exit_code(ErrorKind k) {
    switch (k) {
    case ErrorKind::ParseError:
    case ErrorKind::InvalidArgument:
    case ErrorKind::WrongShape: return Parse;
    case ErrorKind::Degenerate: return Degenerate;
    case ErrorKind::InternalInconsistency: return Internal;
    default: return Precondition;
    }
}

void write_text(const std::string &path, const std::string &text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) fail(ErrorKind::InvalidArgument, path + ": cannot write");
    f << text;
}

/// The JSON report goes to -o when given, stdout otherwise; --table adds the summary on stdout.
void emit(const Options &o, const Json &report, const std::string &table) {
    const std::string text = report.dump(2) + "\n";
    if (!o.out.empty()) write_text(o.out, text);
    if (o.table) std::cout << table;
    else if (o.out.empty()) std::cout << text;
}

Representation load_representation(const std::string &path) {
    auto j = read_json_file(path);
    return representation_from_json(j.contains("representation") ? j["representation"] : j);
}

/// The system a representation file was built for: M itself, or its plain reduction.
struct System {
    IntMatrix matrix;
    std::optional<PlainReport> plain;
};

System system_for(const Representation &rep, const IntMatrix &m) {
    if (rep.m() == m.cols()) return {m, std::nullopt};
    auto p = plain_reduce(m);
    if (!p.degenerate() && rep.m() == p.reduced.cols()) return {p.reduced, p};
    fail(ErrorKind::ShapeMismatch, "representation has " + std::to_string(rep.m()) + " rows but the system has " +
                                       std::to_string(m.cols()) + " columns");
}

std::string rational_text(const Rational &q) {
    auto j = to_json(q);
    return j["num"].get<std::string>() + "/" + j["den"].get<std::string>() + " (" + j["decimal"].get<std::string>() + ")";
}

Rational parse_rational(const std::string &s) {
    auto slash = s.find('/');
    try {
        std::size_t used = 0;
        long long n = std::stoll(s.substr(0, slash), &used);
        if (used != (slash == std::string::npos ? s.size() : slash)) throw std::invalid_argument(s);
        long long d = 1;
        if (slash != std::string::npos) {
            d = std::stoll(s.substr(slash + 1), &used);
            if (used != s.size() - slash - 1 || d == 0) throw std::invalid_argument(s);
        }
        return Rational(n, d);
    } catch (const std::exception &) {
        fail(ErrorKind::ParseError, "bad rational \"" + s + "\"");
    }
}

FiniteAbelianGroup parse_group_flag(const std::string &s) {
    std::string spec = s;
    if (!spec.empty() && (spec[0] == 'Z' || spec[0] == 'z')) spec = spec.substr(spec[1] == '_' ? 2 : 1);
    auto groups = parse_battery(spec);
    if (groups.size() != 1) fail(ErrorKind::ParseError, "--group takes a single group such as 64 or 2x4");
    return groups.front();
}

/// Random subset of exactly round(alpha |G|) elements, at least one.
ElementSet random_subset(const FiniteAbelianGroup &g, const Rational &alpha, std::mt19937_64 &rng) {
    auto elems = g.elements();
    Rational target = alpha * Rational(Int(elems.size()));
    Int size = (boost::multiprecision::numerator(target) * 2 + boost::multiprecision::denominator(target)) /
               (2 * boost::multiprecision::denominator(target));
    std::size_t n = std::clamp<std::size_t>(size.convert_to<std::size_t>(), 1, elems.size());
    for (std::size_t i = 0; i < n; ++i) std::swap(elems[i], elems[i + rng() % (elems.size() - i)]);
    return ElementSet(elems.begin(), elems.begin() + static_cast<std::ptrdiff_t>(n));
}

// -- commands ---------------------------------------------------------------

int cmd_analyze(const Options &o, const std::string &matrix_path) {
    auto m = matrix_from_json(read_json_file(matrix_path));
    auto a = analyze(m);
    auto report = to_json(a);
    std::ostringstream t;
    t << "rank " << a.rank << "  d_r " << a.d_r << "  invariant " << a.invariant << "  simple " << a.simple
      << "  circular " << a.circular << "  plain " << index_set_to_json(a.plain_indices).dump() << "\n";
    emit(o, Json{{"command", "analyze"}, {"matrix", to_json(m)}, {"analysis", report}}, t.str());
    return Ok;
}

int cmd_represent(const Options &o, const std::string &matrix_path) {
    auto m = matrix_from_json(read_json_file(matrix_path));
    RepresentResult res;
    try {
        res = represent(m);
    } catch (const Error &e) {
        if (e.kind() != ErrorKind::Degenerate) throw;
        throw CommandError{Degenerate, e.what(), Json{{"command", "represent"}, {"plain", to_json(plain_reduce(m))}}};
    }
    Json trail = Json::array();
    for (const auto &ext : res.trail) trail.push_back(to_json(ext));
    Json file{{"representation", to_json(res.representation)},
              {"path", res.path},
              {"target", to_json(res.target)},
              {"plain", to_json(res.plain)},
              {"trail", std::move(trail)}};
    std::ostringstream t;
    t << "t " << res.representation.t << "  k " << res.representation.k << "  m " << res.representation.m()
      << "  path " << res.path << "  variant " << (res.representation.structured() ? "structured" : "integer") << "\n";
    emit(o, file, t.str());
    if (!o.table) std::cerr << t.str();
    return Ok;
}

int cmd_verify(const Options &o, const std::string &rep_path, const std::string &matrix_path,
               const std::string &group_path, std::size_t samples) {
    auto rep = load_representation(rep_path);
    auto m = matrix_from_json(read_json_file(matrix_path));
    std::vector<FiniteAbelianGroup> groups =
        group_path.empty() ? parse_battery(o.battery) : std::vector{group_from_json(read_json_file(group_path))};
    auto sys = system_for(rep, m);
    Json results = Json::array();
    std::ostringstream t;
    bool all = true;
    for (const auto &g : groups) {
        auto v = verify_representation(rep, sys.matrix, g, samples, o.seed);
        all = all && v.passed();
        results.push_back(Json{{"group", to_json(g)}, {"report", to_json(v)}});
        t << g.name() << ": i " << (v.cond_i ? "pass" : "FAIL") << "  ii " << (v.cond_ii ? "pass" : "FAIL") << "  iii "
          << (v.cond_iii ? "pass" : "FAIL") << "  lifts " << v.iii_prime_samples - v.iii_prime_failures << "/"
          << v.iii_prime_samples << "\n";
        for (const auto &f : v.failures) t << "  " << f << "\n";
    }
    Json report{{"command", "verify"}, {"passed", all}, {"results", std::move(results)}};
    if (sys.plain) report["plain"] = to_json(*sys.plain);
    emit(o, report, t.str());
    if (!all) {
        for (const auto &r : report["results"])
            for (const auto &f : r["report"]["failures"]) std::cerr << f.get<std::string>() << "\n";
    }
    return all ? Ok : VerificationFailure;
}

int cmd_count(const Options &o, const std::string &matrix_path, const std::string &group_path,
              const std::string &sets_path) {
    auto m = matrix_from_json(read_json_file(matrix_path));
    auto g = group_from_json(read_json_file(group_path));
    auto sets = sets_from_json(read_json_file(sets_path), g);
    auto d = solution_count(m, g, sets, o.budget ? o.budget : 100000000);
    std::ostringstream t;
    t << "solutions " << d.count << "  density " << rational_text(d.density) << "\n";
    emit(o, Json{{"command", "count"}, {"count", d.count.str()}, {"density", to_json(d.density)}}, t.str());
    return Ok;
}

struct Instance {
    Representation rep;
    IntMatrix m;
    System sys;
    FiniteAbelianGroup g;
    std::vector<ElementSet> sets;     ///< one per column of M
    std::vector<ElementSet> kept_sets; ///< one per column of the represented system
    bool zero_in_plain = true;
};

Instance load_instance(const std::string &rep_path, const std::string &matrix_path, const std::string &group_path,
                       const std::string &sets_path) {
    Instance in;
    in.rep = load_representation(rep_path);
    in.m = matrix_from_json(read_json_file(matrix_path));
    in.g = group_from_json(read_json_file(group_path));
    in.sets = sets_from_json(read_json_file(sets_path), in.g);
    if (in.sets.size() != in.m.cols()) fail(ErrorKind::ShapeMismatch, "one set per column of the matrix required");
    in.sys = system_for(in.rep, in.m);
    if (in.sys.plain) {
        for (auto c : in.sys.plain->kept) in.kept_sets.push_back(in.sets[c]);
        for (auto c : in.sys.plain->eliminated) in.zero_in_plain = in.zero_in_plain && in.sets[c].count(in.g.zero());
    } else {
        in.kept_sets = in.sets;
    }
    return in;
}

int cmd_hd(const Options &o, const std::string &rep_path, const std::string &matrix_path,
           const std::string &group_path, const std::string &sets_path, const std::string &mode) {
    auto in = load_instance(rep_path, matrix_path, group_path, sets_path);
    auto h = build_cayley(in.rep, in.sys.matrix, in.g, in.kept_sets);
    const std::uint64_t budget = o.budget ? o.budget : 100000000;
    std::vector<std::pair<std::string, CopyMode>> modes;
    if (mode == "all" || mode == "kernel") modes.emplace_back("kernel", CopyMode::ViaKernel);
    if (mode == "all" || mode == "convolution") modes.emplace_back("convolution", CopyMode::Convolution);
    if (mode == "all" || mode == "bruteforce") modes.emplace_back("bruteforce", CopyMode::ExactBruteforce);
    if (modes.empty()) fail(ErrorKind::ParseError, "--mode must be kernel, convolution, bruteforce or all");
    auto direct = solution_count(in.m, in.g, in.sets, budget);
    Json counts = Json::array();
    std::ostringstream t;
    bool agree = true;
    for (const auto &[name, cm] : modes) {
        CopyCount c;
        try {
            c = copy_count(h, cm, budget);
        } catch (const Error &e) {
            if (e.kind() != ErrorKind::BudgetExceeded || mode == name) throw;
            counts.push_back(Json{{"mode", name}, {"skipped", e.what()}});
            t << name << ": skipped (" << e.what() << ")\n";
            continue;
        }
        Rational hd = in.zero_in_plain ? c.hd : Rational(0);
        agree = agree && hd == direct.density;
        counts.push_back(Json{{"mode", name}, {"copies", c.count.str()}, {"hd", to_json(hd)}});
        t << name << ": copies " << c.count << "  hd " << rational_text(hd) << "\n";
    }
    t << "solution density " << rational_text(direct.density) << "  identity " << (agree ? "holds" : "FAILS") << "\n";
    Json edges = Json::array();
    for (std::size_t j = 0; j < h.m(); ++j) edges.push_back(h.edge_count(j).str());
    Json report{{"command", "hd"},
                {"t", in.rep.t},
                {"k", in.rep.k},
                {"edge_counts", std::move(edges)},
                {"copy_counts", std::move(counts)},
                {"solution_density", to_json(direct.density)},
                {"identity_holds", agree}};
    if (in.sys.plain) {
        report["plain"] = to_json(*in.sys.plain);
        report["zero_in_plain_sets"] = in.zero_in_plain;
    }
    emit(o, report, t.str());
    return agree ? Ok : VerificationFailure;
}

int cmd_symmetrize(const Options &o, const std::string &rep_path, const std::string &matrix_path,
                   const std::string &group_path, const std::string &sets_path, const std::string &removal_path) {
    auto in = load_instance(rep_path, matrix_path, group_path, sets_path);
    auto h = build_cayley(in.rep, in.sys.matrix, in.g, in.kept_sets);
    const std::uint64_t budget = o.budget ? o.budget : 10000000;
    std::vector<ElementSet> removal;
    std::string source;
    if (removal_path.empty()) {
        std::mt19937_64 rng(o.seed);
        removal = greedy_removal(h, &rng, budget);
        source = "greedy";
    } else {
        removal = removal_from_json(h, read_json_file(removal_path));
        source = removal_path;
    }
    auto sym = symmetrize_removal(h, removal, budget);
    const bool removal_free = is_f_free(h, removal, budget);
    std::vector<ElementSet> s_sets;
    Json colors = Json::array();
    std::ostringstream t;
    bool bound = true;
    const Rational two_m(2 * static_cast<long long>(h.m()));
    for (std::size_t j = 0; j < h.m(); ++j) {
        const auto &c = sym.colors[j];
        s_sets.push_back(sym.s_set(h, j));
        const bool ok = c.measure_s <= two_m * c.measure_r;
        bound = bound && ok;
        Json reps = Json::array();
        for (const auto &r : c.s_cosets) reps.push_back(edge_to_json(h, j, r));
        colors.push_back(Json{{"color", j + 1},
                              {"removed", removal[j].size()},
                              {"measure_r", to_json(c.measure_r)},
                              {"measure_s", to_json(c.measure_s)},
                              {"kernel_order", h.edge_kernels[j].order().str()},
                              {"s_coset_representatives", std::move(reps)},
                              {"bound_holds", ok}});
        t << "color " << j + 1 << ": |R| " << removal[j].size() << "  mu(R) " << rational_text(c.measure_r)
          << "  mu(S) " << rational_text(c.measure_s) << "  cosets " << c.s_cosets.size() << "\n";
    }
    const bool s_free = is_f_free(h, s_sets, budget);
    t << "removal F-free " << removal_free << "  symmetrized F-free " << s_free << "  bound " << bound << "\n";
    Json report{{"command", "symmetrize"},
                {"removal_source", source},
                {"removal", removal_to_json(h, removal)["removal"]},
                {"colors", std::move(colors)},
                {"removal_f_free", removal_free},
                {"symmetrized_f_free", s_free},
                {"bound_holds", bound}};
    emit(o, report, t.str());
    return bound && (!removal_free || s_free) ? Ok : VerificationFailure;
}

// -- experiments ------------------------------------------------------------

struct ExperimentParams {
    std::string kind;
    std::string group = "64";
    std::string density = "1/2";
    std::size_t k = 3;
    std::size_t trials = 100;
    std::size_t max_n = 32;
    std::string matrix_path;
};

int experiment_ap(const Options &o, const ExperimentParams &p) {
    auto g = parse_group_flag(p.group);
    auto alpha = parse_rational(p.density);
    if (alpha <= 0 || alpha > 1) fail(ErrorKind::ParseError, "--density must lie in (0,1]");
    if (p.k < 2) fail(ErrorKind::ParseError, "--k must be at least 2");
    std::mt19937_64 rng(o.seed);
    Json rows = Json::array();
    std::ostringstream t;
    t << "trial,size,ap_density\n";
    std::optional<Rational> lo;
    for (std::size_t i = 0; i < p.trials; ++i) {
        auto a = random_subset(g, alpha, rng);
        auto d = ap_density(g, a, p.k);
        if (!lo || d < *lo) lo = d;
        rows.push_back(Json{{"trial", i + 1}, {"size", a.size()}, {"density", to_json(d)}});
        t << i + 1 << "," << a.size() << "," << rational_text(d) << "\n";
    }
    Json report{{"command", "experiment"}, {"kind", "ap"}, {"group", to_json(g)}, {"alpha", to_json(alpha)},
                {"k", p.k},               {"seed", o.seed}, {"rows", std::move(rows)}};
    report["minimum"] = lo ? to_json(*lo) : Json(nullptr);
    report["all_positive"] = lo && *lo > 0;
    emit(o, report, t.str());
    return Ok;
}

int experiment_szemeredi(const Options &o, const ExperimentParams &p) {
    IntMatrix m = p.matrix_path.empty() ? IntMatrix{{1, -2, 1}} : matrix_from_json(read_json_file(p.matrix_path));
    auto alpha = parse_rational(p.density);
    if (alpha <= 0 || alpha > 1) fail(ErrorKind::ParseError, "--density must lie in (0,1]");
    std::mt19937_64 rng(o.seed);
    Json rows = Json::array();
    std::ostringstream t;
    t << "n,min_density\n";
    std::optional<Rational> overall;
    for (Residue n = 2; n <= static_cast<Residue>(p.max_n); ++n) {
        auto g = FiniteAbelianGroup::cyclic(n);
        std::optional<Rational> lo;
        for (std::size_t i = 0; i < p.trials; ++i) {
            auto a = random_subset(g, alpha, rng);
            auto d = solution_count(m, g, std::vector<ElementSet>(m.cols(), a), o.budget ? o.budget : 100000000).density;
            if (!lo || d < *lo) lo = d;
        }
        if (lo && (!overall || *lo < *overall)) overall = lo;
        rows.push_back(Json{{"n", n}, {"min_density", lo ? to_json(*lo) : Json(nullptr)}});
        t << n << "," << (lo ? rational_text(*lo) : "-") << "\n";
    }
    Json report{{"command", "experiment"}, {"kind", "szemeredi-scan"}, {"matrix", to_json(m)},
                {"alpha", to_json(alpha)},  {"trials_per_n", p.trials},    {"seed", o.seed},
                {"rows", std::move(rows)}};
    report["minimum"] = overall ? to_json(*overall) : Json(nullptr);
    report["all_positive"] = overall && *overall > 0;
    emit(o, report, t.str());
    return Ok;
}

int experiment_basic2(const Options &o, const ExperimentParams &p) {
    auto g = parse_group_flag(p.group);
    std::mt19937_64 rng(o.seed);
    std::size_t basic1_ok = 0, basic2_ok = 0;
    Json rows = Json::array();
    std::ostringstream t;
    t << "trial,matrix,basic1,lhs,rhs\n";
    for (std::size_t i = 0; i < p.trials; ++i) {
        IntMatrix m;
        do {
            const std::size_t r = 1 + rng() % 2;
            m = IntMatrix(r, r + 1 + rng() % 2);
            for (std::size_t a = 0; a < m.rows(); ++a)
                for (std::size_t b = 0; b < m.cols(); ++b) m(a, b) = static_cast<long long>(rng() % 7) - 3;
        } while (analyze(m).d_r != 1);
        std::vector<Residue> divisors;
        for (Residue n : g.moduli()) {
            std::vector<Residue> ds;
            for (Residue d = 1; d <= n; ++d)
                if (n % d == 0) ds.push_back(d);
            divisors.push_back(ds[rng() % ds.size()]);
        }
        const bool b1 = quotient_surjects_on_kernels(m, g, divisors);
        std::vector<GroupFunction> f(m.cols());
        for (auto &fj : f)
            for (std::uint64_t x = 0; x < g.order_u64(); ++x) fj.push_back(Rational(static_cast<long long>(rng() % 9) - 4, 4));
        auto sides = basic2_sides(m, g, f);
        const bool b2 = sides.lhs <= sides.rhs;
        basic1_ok += b1;
        basic2_ok += b2;
        std::ostringstream ms;
        ms << m;
        rows.push_back(Json{{"trial", i + 1},
                            {"matrix", to_json(m)},
                            {"divisors", divisors},
                            {"basic1", b1},
                            {"lhs", to_json(sides.lhs)},
                            {"rhs", to_json(sides.rhs)},
                            {"basic2", b2}});
        t << i + 1 << "," << to_json(m)["entries"].dump() << "," << b1 << "," << rational_text(sides.lhs) << ","
          << rational_text(sides.rhs) << "\n";
    }
    const bool all = basic1_ok == p.trials && basic2_ok == p.trials;
    Json report{{"command", "experiment"}, {"kind", "basic2"}, {"group", to_json(g)}, {"seed", o.seed},
                {"rows", std::move(rows)},  {"basic1_passed", basic1_ok}, {"basic2_passed", basic2_ok},
                {"all_passed", all}};
    emit(o, report, t.str());
    return all ? Ok : VerificationFailure;
}

int cmd_experiment(const Options &o, const ExperimentParams &p) {
    if (p.kind == "ap") return experiment_ap(o, p);
    if (p.kind == "szemeredi-scan") return experiment_szemeredi(o, p);
    if (p.kind == "basic2") return experiment_basic2(o, p);
    fail(ErrorKind::ParseError, "unknown experiment \"" + p.kind + "\" (ap, szemeredi-scan, basic2)");
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Hypergraph representations of integer linear systems over finite abelian groups", "linconfig"};
    app.require_subcommand(1);
    Options o;
    auto common = [&o](CLI::App *c) {
        c->add_option("--budget", o.budget, "enumeration budget (tuples)");
        c->add_option("--battery", o.battery, "groups, e.g. \"5;2x4;2x3x3\"");
        c->add_option("--seed", o.seed, "random seed");
        c->add_option("-o,--output", o.out, "write the JSON report here");
        c->add_flag("--table", o.table, "print a plain-text summary instead of JSON on stdout");
    };

    std::string matrix, rep, group, sets, removal, mode = "all";
    std::size_t samples = 2;
    ExperimentParams ep;

    auto *analyze_cmd = app.add_subcommand("analyze", "rank, d_r and structural flags of a matrix");
    analyze_cmd->add_option("matrix", matrix)->required();
    common(analyze_cmd);

    auto *represent_cmd = app.add_subcommand("represent", "build a representation; -o writes the file");
    represent_cmd->add_option("matrix", matrix)->required();
    common(represent_cmd);

    auto *verify_cmd = app.add_subcommand("verify", "check conditions (i)-(iii) on a group or the battery");
    verify_cmd->add_option("representation", rep)->required();
    verify_cmd->add_option("matrix", matrix)->required();
    verify_cmd->add_option("group", group, "group file; the battery is used when omitted");
    verify_cmd->add_option("--samples", samples, "random lifts per row");
    common(verify_cmd);

    auto *count_cmd = app.add_subcommand("count", "solutions of M x = 0 with x_j in A_j");
    count_cmd->add_option("matrix", matrix)->required();
    count_cmd->add_option("group", group)->required();
    count_cmd->add_option("sets", sets)->required();
    common(count_cmd);

    auto *hd_cmd = app.add_subcommand("hd", "copies of F in the Cayley hypergraph against the solution density");
    hd_cmd->add_option("representation", rep)->required();
    hd_cmd->add_option("matrix", matrix)->required();
    hd_cmd->add_option("group", group)->required();
    hd_cmd->add_option("sets", sets)->required();
    hd_cmd->add_option("--mode", mode, "kernel, convolution, bruteforce or all");
    common(hd_cmd);

    auto *sym_cmd = app.add_subcommand("symmetrize", "coset symmetrization of a removal set");
    sym_cmd->add_option("representation", rep)->required();
    sym_cmd->add_option("matrix", matrix)->required();
    sym_cmd->add_option("group", group)->required();
    sym_cmd->add_option("sets", sets)->required();
    sym_cmd->add_option("removal", removal, "removal file; a seeded greedy removal otherwise");
    common(sym_cmd);

    auto *exp_cmd = app.add_subcommand("experiment", "ap | szemeredi-scan | basic2");
    exp_cmd->add_option("kind", ep.kind)->required();
    exp_cmd->add_option("--group", ep.group, "e.g. 64, Z_64 or 2x4");
    exp_cmd->add_option("--density", ep.density, "alpha as a fraction");
    exp_cmd->add_option("--k", ep.k, "progression length");
    exp_cmd->add_option("--trials", ep.trials);
    exp_cmd->add_option("--max-n", ep.max_n, "largest n for szemeredi-scan");
    exp_cmd->add_option("--matrix", ep.matrix_path, "system for szemeredi-scan (default 1 -2 1)");
    common(exp_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return Parse;
    }

    try {
        if (*analyze_cmd) return cmd_analyze(o, matrix);
        if (*represent_cmd) return cmd_represent(o, matrix);
        if (*verify_cmd) return cmd_verify(o, rep, matrix, group, samples);
        if (*count_cmd) return cmd_count(o, matrix, group, sets);
        if (*hd_cmd) return cmd_hd(o, rep, matrix, group, sets, mode);
        if (*sym_cmd) return cmd_symmetrize(o, rep, matrix, group, sets, removal);
        if (*exp_cmd) return cmd_experiment(o, ep);
    } catch (const CommandError &e) {
        std::cerr << "error: " << e.message << "\n";
        if (!e.body.is_null()) std::cout << e.body.dump(2) << "\n";
        return e.code;
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const Json::exception &e) {
        std::cerr << "error [parse]: " << e.what() << "\n";
        return Parse;
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return Internal;
    }
    return Internal;
}

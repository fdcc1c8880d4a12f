#include "subcode/cli.hpp"

#include "subcode/bounds.hpp"
#include "subcode/constructions.hpp"
#include "subcode/iso.hpp"
#include "subcode/search.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

namespace subcode {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string join_ints(const std::vector<int>& xs)
{
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
    return s;
}

std::string code_line(const SubspaceCode& c)
{
    std::string s;
    for (const auto& w : c.words()) s += (s.empty() ? "" : ";") + w.str();
    return s.empty() ? "{}" : s;
}

std::vector<int> dims_or_all(const std::vector<int>& dims, int v)
{
    if (!dims.empty()) return dims;
    std::vector<int> all(v + 1);
    for (int i = 0; i <= v; ++i) all[i] = i;
    return all;
}

struct Options {
    int threads = 1;
    std::uint64_t budget_nodes = 0;
    double budget_secs = 0;
    bool timing = false;
    std::string out_file;

    // gauss / bounds / table / search / construct
    std::vector<int> ints;
    std::vector<int> dims;
    std::vector<int> tag;
    bool details = false;
    std::string kind;
    std::size_t target = 0;
    std::string extend_file;

    // file verbs
    std::vector<std::string> files;
    int claimed_d = 0;
    std::size_t claimed_m = 0;
    std::string point, hyperplane, second_file;
    std::vector<int> enumerate;
    bool no_canonical = false;
};

SearchBudget budget_of(const Options& o)
{
    SearchBudget b = SearchBudget::from_env();
    if (o.budget_nodes) b.max_nodes = o.budget_nodes;
    if (o.budget_secs > 0) b.max_seconds = o.budget_secs;
    if (o.target) b.target = o.target;
    return b;
}

void emit_code(const Options& o, const SubspaceCode& c, std::ostream& out)
{
    if (o.out_file.empty()) out << c.serialize();
    else write_code_file(o.out_file, c);
}

void need(const std::vector<int>& xs, std::size_t n, const char* what)
{
    if (xs.size() != n) throw UsageError(std::string("expected ") + what);
}

int cmd_gauss(const Options& o, std::ostream& out)
{
    need(o.ints, 3, "q v k");
    out << gauss(o.ints[1], o.ints[2], o.ints[0]) << '\n';
    return exit_ok;
}

void print_provenance(const BoundRecord& r, std::ostream& out)
{
    for (const auto& p : r.provenance) out << "  source: " << p << '\n';
}

int cmd_bounds(const Options& o, std::ostream& out)
{
    need(o.ints, 3, "q v d");
    int q = o.ints[0], v = o.ints[1], d = o.ints[2];
    std::optional<BoundRecord> rec;
    int vmax = q == 2 ? 7 : 5;
    if (v >= 2 && v <= vmax && d >= 2 && d <= v) {
        for (auto& r : bounds_table(q, v))
            if (r.v == v && r.d == d) rec = r;
    } else if (has_closed_form(q, v, d)) {
        rec = closed_form(q, v, d);
    }
    if (!rec) {
        out << "q=" << q << " v=" << v << " d=" << d << " unknown\n";
        return exit_negative;
    }
    out << "q=" << q << " v=" << v << " d=" << d << " A=" << rec->value_string() << '\n';
    print_provenance(*rec, out);
    if (o.details && q == 2 && v == 7 && d == 4) {
        auto res = upper_bound_A2_7_4(o.threads);
        out << "interior=" << res.interior << " optima=";
        for (std::size_t i = 0; i < res.optima.size(); ++i) {
            const auto& s = res.optima[i];
            out << (i ? "," : "") << '(' << s.d2 << ',' << s.d3 << ',' << s.d4 << ',' << s.d5 << ')';
        }
        out << " bound=" << res.bound << '\n';
    }
    return exit_ok;
}

int cmd_table(const Options& o, std::ostream& out)
{
    need(o.ints, 2, "q v_max");
    int q = o.ints[0], vmax = o.ints[1];
    auto recs = bounds_table(q, vmax);
    std::map<std::pair<int, int>, std::string> cell;
    std::size_t width = 3;
    for (const auto& r : recs) {
        cell[{r.v, r.d}] = r.value_string();
        width = std::max(width, r.value_string().size());
    }
    out << "q=" << q << '\n' << std::setw(4) << "v\\d";
    for (int d = 2; d <= vmax; ++d) out << ' ' << std::setw(int(width)) << d;
    out << '\n';
    for (int v = 2; v <= vmax; ++v) {
        out << std::setw(4) << v;
        for (int d = 2; d <= vmax; ++d) {
            auto it = cell.find({v, d});
            out << ' ' << std::setw(int(width)) << (it == cell.end() ? "" : it->second);
        }
        out << '\n';
    }
    out << '\n';
    for (const auto& r : recs) {
        out << "A(" << r.v << ',' << r.d << ")=" << r.value_string();
        for (std::size_t i = 0; i < r.provenance.size(); ++i) out << (i ? " | " : "  ") << r.provenance[i];
        out << '\n';
    }
    return exit_ok;
}

int cmd_construct(const Options& o, std::ostream& out)
{
    const auto& a = o.ints;
    SubspaceCode c;
    if (o.kind == "gabidulin") {
        need(a, 4, "q v k delta");
        c = lifted_gabidulin({a[0], a[1], a[2], a[3]});
    } else if (o.kind == "spread") {
        need(a, 2, "q k");
        c = spread(a[0], a[1]);
    } else if (o.kind == "partial-spread") {
        need(a, 2, "q k");
        c = max_partial_spread(a[0], a[1]);
    } else if (o.kind == "v5d3") {
        need(a, 1, "q");
        c = construct_v5_d3(a[0]);
    } else if (o.kind == "code-7-34-5") {
        need(a, 0, "no parameters");
        c = embedded_7_34_5();
    } else if (o.kind == "d2") {
        need(a, 2, "q v");
        c = optimal_d2_code(a[0], a[1]);
    } else if (o.kind == "dvminus1") {
        need(a, 2, "q v");
        if (o.tag.empty()) throw UsageError("dvminus1 needs --tag");
        c = optimal_d_vminus1_variant(a[0], a[1], o.tag);
    } else if (o.kind == "mixed-6-9-5") {
        need(a, 1, "variant");
        c = mixed_6_9_5_code(a[0]);
    } else {
        throw UsageError("unknown construction '" + o.kind + "'");
    }
    emit_code(o, c, out);
    return exit_ok;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err)
{
    auto c = read_code_file(o.files.at(0));
    if (c.duplicates_removed()) err << "warning: " << c.duplicates_removed() << " duplicate words merged\n";
    int claimed = o.claimed_d ? o.claimed_d : c.min_distance();
    auto r = verify(c, claimed);
    if (o.claimed_m && r.size != o.claimed_m) r.ok = false;
    out << "q=" << c.ambient().q() << " v=" << c.ambient().v() << ' ' << r.summary() << '\n';
    if (o.claimed_m && r.size != o.claimed_m) out << "size " << r.size << " differs from " << o.claimed_m << '\n';
    for (const auto& x : r.violations)
        out << "violation " << c[x.i].str() << ' ' << c[x.j].str() << " distance=" << x.distance << '\n';
    return r.ok ? exit_ok : exit_negative;
}

int cmd_dualize(const Options& o, std::ostream& out)
{
    emit_code(o, dualize(read_code_file(o.files.at(0))), out);
    return exit_ok;
}

int cmd_derive(const Options& o, std::ostream& out, bool shorten)
{
    auto c = read_code_file(o.files.at(0));
    std::optional<Subspace> p, h;
    if (!o.point.empty()) p = Subspace::parse(c.ambient(), o.point);
    if (!o.hyperplane.empty()) h = Subspace::parse(c.ambient(), o.hyperplane);
    if (p && p->dim() != 1) throw UsageError("--point must be 1-dimensional");
    if (h && h->dim() != c.ambient().v() - 1) throw UsageError("--hyperplane must have codimension 1");
    SubspaceCode r;
    if (!o.second_file.empty()) {
        if (shorten || !p || !h) throw UsageError("--split needs puncture with --point and --hyperplane");
        r = puncture_split(c, read_code_file(o.second_file), *p, *h);
    } else if (p && h) {
        if (!shorten) throw UsageError("puncturing takes one of --point, --hyperplane (or --split)");
        r = shorten_PH(c, *p, *h);
    } else if (p) {
        r = shorten ? shorten_P(c, *p) : puncture_P(c, *p);
    } else if (h) {
        r = shorten ? shorten_H(c, *h) : puncture_H(c, *h);
    } else {
        throw UsageError("give --point and/or --hyperplane");
    }
    emit_code(o, r, out);
    return exit_ok;
}

int cmd_search(const Options& o, std::ostream& out)
{
    auto budget = budget_of(o);
    SubspaceCode code;
    bool optimal = false;
    std::uint64_t nodes = 0;
    if (!o.extend_file.empty()) {
        need(o.ints, 1, "d");
        auto seed = read_code_file(o.extend_file);
        auto r = extend(seed, dims_or_all(o.dims, seed.ambient().v()), o.ints[0], budget);
        code = r.code;
        optimal = r.optimal;
        nodes = r.nodes;
    } else {
        need(o.ints, 3, "q v d");
        auto r = exhaustive_optimum(o.ints[0], o.ints[1], o.ints[2], dims_or_all(o.dims, o.ints[1]), budget);
        code = r.witness;
        optimal = r.optimal;
        nodes = r.nodes;
    }
    out << "size=" << code.size() << " optimal=" << (optimal ? "yes" : "no")
        << " delta=" << join_ints(code.dimension_distribution()) << " nodes=" << nodes << '\n';
    if (!o.out_file.empty()) write_code_file(o.out_file, code);
    bool hit_target = o.target && code.size() >= o.target;
    return optimal || hit_target ? exit_ok : exit_budget;
}

int cmd_classify(const Options& o, std::ostream& out)
{
    auto budget = budget_of(o);
    std::vector<SubspaceCode> codes;
    bool exhaustive = true;
    if (!o.enumerate.empty()) {
        need(o.enumerate, 4, "--enumerate q,v,d,M");
        const auto& e = o.enumerate;
        auto en = enumerate_max_codes(e[0], e[1], e[2], dims_or_all(o.dims, e[1]), std::size_t(e[3]), budget, true);
        codes = en.codes;
        exhaustive = en.exhaustive;
    }
    for (const auto& f : o.files) codes.push_back(read_code_file(f));
    if (codes.empty()) throw UsageError("nothing to classify");
    for (const auto& c : codes)
        if (!(c.ambient() == codes.front().ambient())) throw UsageError("codes live in different ambient spaces");
    auto cls = classify(codes, budget, !o.no_canonical);
    for (std::size_t i = 0; i < cls.classes.size(); ++i) {
        const auto& k = cls.classes[i];
        const auto& rep = o.no_canonical ? codes[k.members.front()] : k.canonical;
        out << "class=" << i + 1 << " size=" << rep.size() << " members=" << k.members.size() << " aut=" << k.aut_order
            << " orbit=" << k.orbit_size << " rep=" << code_line(rep) << '\n';
    }
    bool complete = cls.complete && exhaustive;
    out << "classes=" << cls.classes.size() << " complete=" << (complete ? "yes" : "no") << '\n';
    return complete ? exit_ok : exit_budget;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Options o;
    CLI::App app{"Subspace codes: bounds, constructions, search and classification", "subcode"};
    app.require_subcommand(1, 1);
    app.fallthrough();
    app.add_option("--threads", o.threads, "worker threads (results do not depend on it)")->check(CLI::PositiveNumber);
    app.add_option("--budget-nodes", o.budget_nodes, "node limit for searches (default $SUBCODE_BUDGET_NODES)");
    app.add_option("--budget-secs", o.budget_secs, "time limit for searches (default $SUBCODE_BUDGET_SECS)");
    app.add_flag("--timing", o.timing, "print the elapsed time as a final comment line");

    auto* gauss_cmd = app.add_subcommand("gauss", "Gaussian binomial [v k]_q");
    gauss_cmd->add_option("params", o.ints, "q v k")->required()->expected(3);

    auto* bounds_cmd = app.add_subcommand("bounds", "known bounds for A_q(v,d)");
    bounds_cmd->add_option("params", o.ints, "q v d")->required()->expected(3);
    bounds_cmd->add_flag("--details", o.details, "show the layer program behind A_2(7,4)");

    auto* table_cmd = app.add_subcommand("table", "bounds table for 2 <= d <= v <= v_max");
    table_cmd->add_option("params", o.ints, "q v_max")->required()->expected(2);

    auto* construct_cmd = app.add_subcommand("construct", "build a code and print it in .scode format");
    construct_cmd
        ->add_option("kind", o.kind,
                     "gabidulin q v k delta | spread q k | partial-spread q k | v5d3 q | code-7-34-5 | d2 q v | "
                     "dvminus1 q v --tag a,b,c | mixed-6-9-5 variant")
        ->required();
    construct_cmd->add_option("params", o.ints);
    construct_cmd->add_option("--tag", o.tag, "layer counts of the d=v-1 variant")->delimiter(',');
    construct_cmd->add_option("-o,--out", o.out_file);

    auto* verify_cmd = app.add_subcommand("verify", "recompute the parameters of a code");
    verify_cmd->add_option("file", o.files)->required()->expected(1);
    verify_cmd->add_option("-d,--distance", o.claimed_d, "claimed minimum distance");
    verify_cmd->add_option("-M,--size", o.claimed_m, "claimed size");

    auto* dualize_cmd = app.add_subcommand("dualize", "orthogonal complements of all words");
    dualize_cmd->add_option("file", o.files)->required()->expected(1);
    dualize_cmd->add_option("-o,--out", o.out_file);

    auto add_derive = [&](const char* name, const char* help) {
        auto* c = app.add_subcommand(name, help);
        c->add_option("file", o.files)->required()->expected(1);
        c->add_option("--point", o.point, "point, e.g. 10000");
        c->add_option("--hyperplane", o.hyperplane, "hyperplane as rows, e.g. 1000,0100,0010");
        c->add_option("-o,--out", o.out_file);
        return c;
    };
    auto* shorten_cmd = add_derive("shorten", "shortened code at a point and/or hyperplane");
    auto* puncture_cmd = add_derive("puncture", "punctured code at a point or hyperplane");
    puncture_cmd->add_option("--split", o.second_file, "second part C2 for the split puncturing of C1 and C2");

    auto* search_cmd = app.add_subcommand("search", "exhaustive search for A_q(v,d;T), or extension of a seed code");
    search_cmd->add_option("params", o.ints, "q v d, or only d with --extend")->required();
    search_cmd->add_option("--dims", o.dims, "admissible dimensions")->delimiter(',');
    search_cmd->add_option("--extend", o.extend_file, "seed code to extend");
    search_cmd->add_option("--target", o.target, "stop once a code of this size is found");
    search_cmd->add_option("-o,--out", o.out_file);

    auto* classify_cmd = app.add_subcommand("classify", "isomorphism classes under the isometries");
    classify_cmd->add_option("files", o.files);
    classify_cmd->add_option("--enumerate", o.enumerate, "q,v,d,M: enumerate codes of size M first")->delimiter(',');
    classify_cmd->add_option("--dims", o.dims, "admissible dimensions for --enumerate")->delimiter(',');
    classify_cmd->add_flag("--no-canonical", o.no_canonical, "print the first member instead of the canonical form");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n' << app.help();
        return exit_usage;
    }

    auto start = std::chrono::steady_clock::now();
    int status = exit_ok;
    try {
        auto* cmd = app.get_subcommands().front();
        if (cmd == gauss_cmd) status = cmd_gauss(o, out);
        else if (cmd == bounds_cmd) status = cmd_bounds(o, out);
        else if (cmd == table_cmd) status = cmd_table(o, out);
        else if (cmd == construct_cmd) status = cmd_construct(o, out);
        else if (cmd == verify_cmd) status = cmd_verify(o, out, err);
        else if (cmd == dualize_cmd) status = cmd_dualize(o, out);
        else if (cmd == shorten_cmd) status = cmd_derive(o, out, true);
        else if (cmd == puncture_cmd) status = cmd_derive(o, out, false);
        else if (cmd == search_cmd) status = cmd_search(o, out);
        else status = cmd_classify(o, out);
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return exit_io;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_io;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
    if (o.timing)
        out << "# elapsed " << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()
            << "s\n";
    return status;
}

} // namespace subcode

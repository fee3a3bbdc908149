#include "ftdo/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ftdo/generators.hpp"
#include "ftdo/oracle.hpp"
#include "ftdo/query.hpp"
#include "ftdo/serialize.hpp"
#include "ftdo/verify.hpp"

namespace ftdo::cli {

using nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string sources;
    std::size_t sigma = 0;
    std::uint64_t seed = 1;
    std::uint64_t perturb_seed = 1;
    std::uint64_t terminal_seed = 1;
    double c = 3.0;
    std::string out;
    bool trace = false;
    int threads = 0;
};

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("--threads", o.threads, "Worker threads (1 = serial reference path)");
}

void add_build_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--sources", o.sources, "Comma-separated source vertices");
    cmd->add_option("--sigma", o.sigma, "Number of random sources");
    cmd->add_option("--seed", o.seed, "Seed for random sources");
    cmd->add_option("--perturb-seed", o.perturb_seed, "Perturbation seed");
    cmd->add_option("--terminal-seed", o.terminal_seed, "Terminal sampling seed");
    cmd->add_option("--c", o.c, "Spacing constant c")->check(CLI::PositiveNumber);
}

Execution apply_threads(const Options& o) {
    if (o.threads < 0) throw UsageError("--threads must be >= 0");
    set_thread_count(o.threads);
    return o.threads == 1 ? Execution::serial : Execution::parallel;
}

std::vector<std::uint64_t> parse_list(const std::string& text, const char* what) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::size_t used = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (tok.empty() || used != tok.size()) throw UsageError(std::string("bad ") + what + " list entry '" + tok + "'");
        out.push_back(v);
    }
    return out;
}

std::vector<Vertex> resolve_sources(const Options& o, std::size_t n) {
    if (!o.sources.empty() && o.sigma != 0) throw UsageError("give either --sources or --sigma, not both");
    if (!o.sources.empty()) {
        std::vector<Vertex> s;
        for (auto v : parse_list(o.sources, "source")) {
            if (v >= n) throw UsageError("source " + std::to_string(v) + " out of range");
            s.push_back(static_cast<Vertex>(v));
        }
        return s;
    }
    if (o.sigma == 0) throw UsageError("need --sources or --sigma");
    if (o.sigma > n) throw UsageError("--sigma exceeds the vertex count");
    return sample_sources(n, o.sigma, o.seed);
}

Graph read_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_graph(ss.str());
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path + " for writing");
    f << text;
    if (!f) throw IoError("write to " + path + " failed");
}

BuildParams params_of(const Options& o, Execution exec) {
    BuildParams p;
    p.c = o.c;
    p.perturb_seed = o.perturb_seed;
    p.terminal_seed = o.terminal_seed;
    p.exec = exec;
    return p;
}

ordered_json build_json(const BuildReport& b) {
    ordered_json j;
    j["perturb_attempts"] = b.perturb_attempts;
    j["terminal_attempts"] = b.terminal_attempts;
    j["terminal_count"] = b.terminal_count;
    j["tie_events"] = b.tie_events;
    j["max_terminal_gap"] = b.max_gap;
    j["spacing_bound"] = b.spacing_bound;
    j["max_sigma_nodes"] = b.max_sigma_nodes;
    j["max_route_items"] = b.max_route_items;
    j["max_r1_members"] = b.max_r1_members;
    j["contiguity_violations"] = b.contiguity_violations;
    j["merge_diverge_violations"] = b.merge_diverge_violations;
    j["max_r2_per_target"] = b.max_r2_per_target;
    j["r2_good"] = b.r2_good;
    j["r2_bad"] = b.r2_bad;
    j["targets_bad_exceeds_good"] = b.targets_bad_exceeds_good;
    j["unique_prefix_total"] = b.unique_prefix_total;
    return j;
}

ordered_json oracle_json(const Oracle& o) {
    ordered_json j;
    j["n"] = o.graph.vertex_count();
    j["m"] = o.graph.edge_count();
    j["sigma"] = o.sources.size();
    j["sources"] = o.sources.vertices;
    j["c"] = o.c;
    j["seeds"] = {{"perturb", o.perturbation.seed}, {"terminal", o.terminals.seed}};
    j["terminal_count"] = o.terminal_index.size();
    const SizeReport sizes = o.sizes();
    j["tables"] = sizes.tables;
    j["total_entries"] = sizes.total();
    return j;
}

ordered_json nullable(const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

std::string fmt_hops(Hops h) { return h == kInfinity ? "INF" : std::to_string(h); }

int cmd_gen(const std::string& model, std::size_t n, double param, const Options& o, std::ostream& out) {
    Graph g;
    try {
        g = generate(model, n, param, o.seed);
    } catch (const std::invalid_argument& ex) {
        throw UsageError(ex.what());
    }
    write_text(o.out, to_text(g), out);
    return ok;
}

int cmd_build(const std::string& graph_path, const std::string& stats_path, const Options& o, std::ostream& out) {
    const Execution exec = apply_threads(o);
    const Graph g = read_graph(graph_path);
    const auto sources = resolve_sources(o, g.vertex_count());
    BuildReport rep;
    const Oracle oracle = build_oracle(g, sources, params_of(o, exec), &rep);
    if (!o.out.empty()) save_oracle_file(oracle, o.out);
    ordered_json j;
    j["command"] = "build";
    j["oracle"] = oracle_json(oracle);
    j["source_seed"] = o.seed;
    j["build"] = build_json(rep);
    write_text(stats_path, j.dump(2) + "\n", out);
    return ok;
}

int cmd_query(const std::string& oracle_path, const std::string& query_path, const std::vector<std::string>& inline_queries,
              const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
    const Oracle oracle = load_oracle_file(oracle_path);
    std::vector<std::string> lines = inline_queries;
    if (!query_path.empty()) {
        std::ifstream f;
        std::istream* src = &in;
        if (query_path != "-") {
            f.open(query_path);
            if (!f) throw IoError("cannot open " + query_path);
            src = &f;
        }
        for (std::string line; std::getline(*src, line);) lines.push_back(line);
    }
    const std::size_t n = oracle.graph.vertex_count();
    bool any_bad = false;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::string& line = lines[i];
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        long long s, t, u, v;
        std::string extra;
        std::string problem;
        if (!(ls >> s >> t >> u >> v) || (ls >> extra))
            problem = "expected 's t u v'";
        else if (s < 0 || t < 0 || u < 0 || v < 0 || std::size_t(s) >= n || std::size_t(t) >= n ||
                 std::size_t(u) >= n || std::size_t(v) >= n)
            problem = "vertex out of range";
        std::optional<EdgeId> e;
        if (problem.empty()) {
            e = oracle.graph.find_edge(Vertex(u), Vertex(v));
            if (!e) problem = "no such edge";
            else if (!oracle.sources.contains(Vertex(s))) problem = "vertex " + std::to_string(s) + " is not a source";
        }
        if (!problem.empty()) {
            err << "line " << i + 1 << ": " << problem << "\n";
            out << "ERR\n";
            any_bad = true;
            continue;
        }
        QueryStats stats;
        const QueryAnswer a = query(oracle, Vertex(s), Vertex(t), *e, &stats);
        if (a.fallback) err << "fallback: line " << i + 1 << ": " << line << "\n";
        out << fmt_hops(a.distance);
        if (o.trace) out << ' ' << to_string(a.tag) << " probes=" << stats.probes;
        out << "\n";
    }
    return any_bad ? usage : ok;
}

int cmd_verify(const std::string& graph_path, bool inject_fault, const Options& o, std::ostream& out) {
    const Execution exec = apply_threads(o);
    const Graph g = read_graph(graph_path);
    const auto sources = resolve_sources(o, g.vertex_count());
    BuildReport rep;
    Oracle oracle = build_oracle(g, sources, params_of(o, exec), &rep);
    if (inject_fault) {
        // Test hook: corrupt one stored distance.
        const Vertex s = oracle.sources.vertices.front();
        auto* row = oracle.roots.dist.data() + std::size_t{oracle.roots.roots.row(s)} * oracle.roots.n;
        for (Vertex y = 0; y < oracle.roots.n; ++y)
            if (y != s && !row[y].is_infinite()) {
                row[y].hops += 1;
                break;
            }
    }
    const VerifyReport vr = exhaustive_check(oracle, exec);
    const LemmaStats ls = lemma_stats(g, oracle, rep);
    const auto violations = ls.violations();

    out << "instance: n=" << g.vertex_count() << " m=" << g.edge_count() << " sigma=" << oracle.sources.size()
        << " terminals=" << oracle.terminal_index.size() << "\n";
    out << "queries: " << vr.queries << "  mismatches: " << vr.mismatch_count
        << "  invariant violations: " << vr.invariant_violations << "  fallbacks: " << vr.fallback_count
        << "  max probes: " << vr.max_probes << "\n";
    for (const auto& mm : vr.mismatches) {
        const Edge& e = g.edge(mm.e);
        out << "  mismatch s=" << mm.s << " t=" << mm.t << " e=(" << e.u << "," << e.v << ") got " << fmt_hops(mm.got)
            << " expected " << fmt_hops(mm.expected) << "\n";
    }
    for (const auto& f : vr.fallbacks) {
        const Edge& e = g.edge(f.e);
        out << "  fallback s=" << f.s << " t=" << f.t << " e=(" << e.u << "," << e.v << ")\n";
    }
    out << "lemmas: max R1 per segment " << rep.max_r1_members << ", contiguity violations " << rep.contiguity_violations
        << ", R2 good/bad " << rep.r2_good << "/" << rep.r2_bad << ", route parts " << rep.max_route_items << " (bound "
        << ls.route_bound << "), terminal gap " << rep.max_gap << " (bound " << rep.spacing_bound << ")\n";
    for (const auto& v : violations) out << "  violation: " << v << "\n";
    const bool clean = vr.clean() && violations.empty();
    out << (clean ? "CLEAN" : "FAILED") << "\n";

    if (!o.out.empty()) {
        ordered_json j;
        j["command"] = "verify";
        j["oracle"] = oracle_json(oracle);
        j["source_seed"] = o.seed;
        j["build"] = build_json(rep);
        j["queries"] = vr.queries;
        j["mismatch_count"] = vr.mismatch_count;
        ordered_json mm = ordered_json::array();
        for (const auto& m : vr.mismatches) mm.push_back({m.s, m.t, m.e, fmt_hops(m.got), fmt_hops(m.expected)});
        j["mismatches"] = mm;
        j["invariant_violations"] = vr.invariant_violations;
        j["fallback_count"] = vr.fallback_count;
        ordered_json fb = ordered_json::array();
        for (const auto& f : vr.fallbacks) fb.push_back({f.s, f.t, f.e});
        j["fallbacks"] = fb;
        j["max_probes"] = vr.max_probes;
        j["tags"] = {{"edge-off-path", vr.tag_counts[0]}, {"near", vr.tag_counts[1]},
                     {"through-terminal", vr.tag_counts[2]}, {"r1", vr.tag_counts[3]},
                     {"r2", vr.tag_counts[4]}, {"fallback", vr.tag_counts[5]}};
        j["r2_constant"] = ls.r2_constant;
        if (ls.unique_shortest_paths) j["unique_shortest_paths"] = *ls.unique_shortest_paths;
        j["violations"] = violations;
        j["clean"] = clean;
        write_text(o.out, j.dump(2) + "\n", out);
    }
    return clean ? ok : mismatch;
}

int cmd_bench(const std::string& grid, const std::string& sigmas, const std::string& seeds, double degree,
              std::size_t queries, double max_cost, const Options& o, std::ostream& out) {
    const Execution exec = apply_threads(o);
    GridSpec spec;
    spec.ns.clear();
    for (auto v : parse_list(grid, "grid")) spec.ns.push_back(v);
    spec.sigmas.clear();
    for (auto v : parse_list(sigmas, "sigma")) spec.sigmas.push_back(v);
    spec.seeds = parse_list(seeds, "seed");
    if (spec.ns.empty() || spec.sigmas.empty() || spec.seeds.empty()) throw UsageError("empty grid");
    for (auto n : spec.ns)
        if (n < 2) throw UsageError("grid sizes must be >= 2");
    spec.avg_degree = degree;
    spec.sample_queries = queries;
    spec.params = params_of(o, exec);
    const double cost = estimate_grid_cost(spec);
    if (cost > max_cost) {
        std::ostringstream msg;
        msg << "grid too large: estimated cost " << cost << " exceeds --max-cost " << max_cost;
        throw UsageError(msg.str());
    }

    const ScalingReport rep = scaling_experiment(spec, [&](const GridPoint& p) {
        out << "n=" << p.n << " sigma=" << p.sigma << " seed=" << p.seed << " entries=" << p.entries
            << " max_probes=" << p.max_probes << " r2/sqrt(n sigma)=" << p.r2_constant << "\n";
    });
    auto show = [](const std::optional<double>& v) {
        if (!v) return std::string("n/a");
        std::ostringstream s;
        s << *v;
        return s.str();
    };
    out << "size slope: " << show(rep.size_slope) << "  sigma slope: " << show(rep.sigma_slope)
        << "  probe ratio: " << show(rep.probe_ratio) << "  max R2 constant: " << rep.max_r2_constant << "\n";

    ordered_json j;
    j["command"] = "bench";
    j["grid"] = {{"n", spec.ns}, {"sigma", spec.sigmas}, {"seeds", spec.seeds}, {"avg_degree", degree},
                 {"sample_queries", queries}, {"c", o.c}, {"perturb_seed", o.perturb_seed},
                 {"terminal_seed", o.terminal_seed}};
    ordered_json pts = ordered_json::array();
    for (const auto& p : rep.points)
        pts.push_back({{"requested_n", p.requested_n}, {"n", p.n}, {"m", p.m}, {"sigma", p.sigma}, {"seed", p.seed},
                       {"entries", p.entries}, {"max_probes", p.max_probes}, {"median_probes", p.median_probes},
                       {"max_r2", p.max_r2}, {"r2_constant", p.r2_constant}, {"fallbacks", p.fallbacks},
                       {"sample_mismatches", p.sample_mismatches}, {"tables", p.tables}});
    j["points"] = pts;
    j["size_slope"] = nullable(rep.size_slope);
    j["sigma_slope"] = nullable(rep.sigma_slope);
    j["probe_ratio"] = nullable(rep.probe_ratio);
    j["max_r2_constant"] = rep.max_r2_constant;
    if (!o.out.empty()) write_text(o.out, j.dump(2) + "\n", out);
    return ok;
}

int cmd_stats(const std::string& oracle_path, const Options& o, std::ostream& out) {
    const Oracle oracle = load_oracle_file(oracle_path);
    ordered_json j;
    j["command"] = "stats";
    j["oracle"] = oracle_json(oracle);
    j["reach"] = oracle.reach;
    write_text(o.out, j.dump(2) + "\n", out);
    return ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Single-edge-fault exact distance oracle"};
    app.require_subcommand(1);
    Options o;

    std::string model, graph_path, oracle_path, query_path, stats_path;
    std::size_t n = 0;
    double param = 0.0;
    auto* gen = app.add_subcommand("gen", "Generate a graph file");
    gen->add_option("model", model, "erdos-renyi | cycle | path | grid | complete | random-tree")->required();
    gen->add_option("n", n, "Vertex count")->required();
    gen->add_option("param", param, "Edge probability (erdos-renyi) or column count (grid)");
    gen->add_option("--seed", o.seed, "Generator seed");
    gen->add_option("--out", o.out, "Output path (stdout when omitted)");

    auto* build = app.add_subcommand("build", "Build and save an oracle");
    build->add_option("graph", graph_path, "Graph file")->required();
    add_build_flags(build, o);
    add_common(build, o);
    build->add_option("--out", o.out, "Oracle output path");
    build->add_option("--stats", stats_path, "Stats output path (stdout when omitted)");

    std::vector<std::string> inline_queries;
    auto* qry = app.add_subcommand("query", "Answer 's t u v' queries");
    qry->add_option("oracle", oracle_path, "Oracle file")->required();
    qry->add_option("queries", query_path, "Query file, '-' for stdin");
    qry->add_option("-q,--query", inline_queries, "Inline query 's t u v'");
    qry->add_flag("--trace", o.trace, "Append the answering case and probe count");

    bool inject_fault = false;
    auto* ver = app.add_subcommand("verify", "Exhaustive check against brute force");
    ver->add_option("graph", graph_path, "Graph file")->required();
    add_build_flags(ver, o);
    add_common(ver, o);
    ver->add_option("--out", o.out, "Stats output path");
    ver->add_flag("--inject-fault", inject_fault, "Corrupt one table entry before checking")->group("");

    std::string grid = "128,256,512,1024", sigmas = "4", seeds = "1,2,3,4,5";
    double degree = 8.0, max_cost = 5e12;
    std::size_t queries = 4000;
    auto* bench = app.add_subcommand("bench", "Space and probe-count scaling");
    bench->add_option("--grid", grid, "Comma-separated vertex counts");
    bench->add_option("--sigmas", sigmas, "Comma-separated source counts");
    bench->add_option("--seeds", seeds, "Comma-separated seeds");
    bench->add_option("--degree", degree, "Average degree");
    bench->add_option("--queries", queries, "Sampled queries per point");
    bench->add_option("--max-cost", max_cost, "Reject grids estimated above this cost");
    bench->add_option("--c", o.c, "Spacing constant c")->check(CLI::PositiveNumber);
    bench->add_option("--perturb-seed", o.perturb_seed, "Perturbation seed offset");
    bench->add_option("--terminal-seed", o.terminal_seed, "Terminal seed offset");
    bench->add_option("--out", o.out, "Stats output path");
    add_common(bench, o);

    auto* stats = app.add_subcommand("stats", "Print table sizes of a saved oracle");
    stats->add_option("oracle", oracle_path, "Oracle file")->required();
    stats->add_option("--out", o.out, "Output path (stdout when omitted)");

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return usage;
    }

    try {
        if (*gen) return cmd_gen(model, n, param, o, out);
        if (*build) return cmd_build(graph_path, stats_path, o, out);
        if (*qry) return cmd_query(oracle_path, query_path, inline_queries, o, in, out, err);
        if (*ver) return cmd_verify(graph_path, inject_fault, o, out);
        if (*bench) return cmd_bench(grid, sigmas, seeds, degree, queries, max_cost, o, out);
        if (*stats) return cmd_stats(oracle_path, o, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return usage;
    } catch (const GraphParseError& e) {
        err << "error: " << graph_path << ": " << e.what() << "\n";
        return io_failure;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return io_failure;
    } catch (const SerializeError& e) {
        err << "error: " << e.what() << "\n";
        return io_failure;
    } catch (const BuildError& e) {
        err << "build failed: " << e.what() << "\n";
        return io_failure;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return usage;
    }
    return usage;
}

}  // namespace ftdo::cli

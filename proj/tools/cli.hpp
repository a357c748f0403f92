#pragma once

// Command-line front end: gen, run, verify, bench, analyze.
//
// Exit codes: 0 success, 2 usage or parse error, 3 input semantics
// (unreachable vertex, overflow), 4 invariant violation or failed check.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "uosp/uosp.hpp"

namespace uosp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInput = 3;
inline constexpr int kExitInvariant = 4;

inline constexpr const char* kBenchHeader =
    "graph,n,m,heap,algo,rep,wall_ns,pops,pushes,decrease_keys,structural_steps,comparisons,budget,order_digest";

// Failed verification; maps to exit code 4.
class CheckFailed : public Error {
public:
    using Error::Error;
};

enum class LogLevel { error, info, debug };

inline LogLevel log_level_from_env() {
    const char* v = std::getenv("SSSP_LOG");
    if (!v) return LogLevel::error;
    const std::string s(v);
    if (s == "debug" || s == "2") return LogLevel::debug;
    if (s == "info" || s == "1") return LogLevel::info;
    return LogLevel::error;
}

struct Options {
    std::string graph_path;
    std::string family;
    GenParams gen;
    std::uint64_t seed = 1;
    std::uint64_t source = 1;  // 1-based, as in DIMACS
    std::vector<std::string> heaps;
    std::vector<std::string> algos;
    std::string format = "human";
    std::size_t reps = 1;
    std::size_t parallel = 1;
    std::string out_path;
};

struct LoadedGraph {
    Graph graph;
    Vertex source = 0;
    std::string name;
};

class Session {
public:
    Session(std::ostream& out, std::ostream& err) : out_(out), err_(err), level_(log_level_from_env()) {}

    void log(LogLevel l, const std::string& msg) const {
        if (l <= level_) err_ << (l == LogLevel::debug ? "[debug] " : "[info] ") << msg << '\n';
    }

    std::ostream& out() const { return out_; }
    std::ostream& err() const { return err_; }

private:
    std::ostream& out_;
    std::ostream& err_;
    LogLevel level_;
};

inline Family require_family(const std::string& name) {
    const auto f = parse_family(name);
    if (!f) throw UsageError("unknown family '" + name + "' (expected path, star, random, lollipop, grid)");
    return *f;
}

inline std::string family_label(Family f, const GenParams& p, std::uint64_t seed) {
    std::ostringstream s;
    s << to_string(f) << '(';
    switch (f) {
        case Family::path:
        case Family::star: s << "n=" << p.n; break;
        case Family::random: s << "n=" << p.n << " m=" << p.m; break;
        case Family::lollipop: s << "p=" << p.p << " q=" << p.q; break;
        case Family::grid: s << "rows=" << p.rows << " cols=" << p.cols; break;
    }
    s << " seed=" << seed << ')';
    return s.str();
}

inline LoadedGraph load_graph(const Options& o, const Session& session) {
    const bool from_file = !o.graph_path.empty();
    const bool from_family = !o.family.empty();
    if (from_file == from_family) throw UsageError("give exactly one of --graph or --family");
    LoadedGraph lg;
    if (from_file) {
        std::ifstream in(o.graph_path);
        if (!in) throw UsageError("cannot open graph file '" + o.graph_path + "'");
        try {
            lg.graph = from_dimacs(in).graph;
        } catch (const ParseError& e) {
            throw ParseError(e.line(), o.graph_path + ": " + std::string(e.what()));
        }
        lg.name = o.graph_path;
    } else {
        const Family f = require_family(o.family);
        lg.graph = gen_family(f, o.gen, o.seed).graph;
        lg.name = family_label(f, o.gen, o.seed);
    }
    if (o.source < 1 || o.source > lg.graph.vertex_count()) {
        throw UsageError("--source must be between 1 and " + std::to_string(lg.graph.vertex_count()));
    }
    lg.source = static_cast<Vertex>(o.source - 1);
    session.log(LogLevel::info, "graph " + lg.name + ": n=" + std::to_string(lg.graph.vertex_count()) +
                                    " m=" + std::to_string(lg.graph.edge_count()));
    return lg;
}

inline std::vector<HeapKind> heap_kinds(const std::vector<std::string>& names, std::vector<HeapKind> fallback) {
    if (names.empty()) return fallback;
    std::vector<HeapKind> out;
    for (const auto& n : names) {
        if (n == "all") return {std::begin(kAllHeapKinds), std::end(kAllHeapKinds)};
        const auto k = parse_heap_kind(n);
        if (!k) throw UsageError("unknown heap '" + n + "' (expected binary, fibonacci, timestamp)");
        out.push_back(*k);
    }
    return out;
}

inline std::vector<bool> algo_flags(const std::vector<std::string>& names, std::vector<bool> fallback) {
    if (names.empty()) return fallback;
    std::vector<bool> out;  // true = compressed
    for (const auto& n : names) {
        if (n == "all") return {false, true};
        if (n == "plain") {
            out.push_back(false);
        } else if (n == "compressed") {
            out.push_back(true);
        } else {
            throw UsageError("unknown algorithm '" + n + "' (expected plain, compressed)");
        }
    }
    return out;
}

struct TimedTrace {
    DijkstraTrace trace;
    std::uint64_t wall_ns = 0;
};

inline TimedTrace timed_run(const Graph& g, Vertex s, HeapKind kind, bool compressed) {
    // Reachability is checked up front so the timer covers the search only.
    detail::require_reachable(g, s);
    return detail::with_heap(kind, [&](auto& heap) {
        const auto t0 = std::chrono::steady_clock::now();
        DijkstraTrace t = compressed ? run_compressed_with(g, s, heap, kind) : run_with(g, s, heap, kind);
        const auto t1 = std::chrono::steady_clock::now();
        return TimedTrace{std::move(t),
                          static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count())};
    });
}

// ---------------------------------------------------------------------------

inline int cmd_gen(const Options& o, const Session& session) {
    if (o.family.empty()) throw UsageError("gen needs --family");
    const Family f = require_family(o.family);
    const Graph g = gen_family(f, o.gen, o.seed).graph;
    if (o.out_path.empty()) {
        to_dimacs(g, session.out());
        session.err() << "vertices " << g.vertex_count() << " edges " << g.edge_count() << '\n';
        return kExitOk;
    }
    std::ofstream file(o.out_path, std::ios::binary);
    if (!file) throw UsageError("cannot write '" + o.out_path + "'");
    file << "c " << family_label(f, o.gen, o.seed) << '\n';
    to_dimacs(g, file);
    if (!file) throw UsageError("write failed for '" + o.out_path + "'");
    session.out() << "vertices " << g.vertex_count() << " edges " << g.edge_count() << '\n';
    return kExitOk;
}

inline int cmd_run(const Options& o, const Session& session) {
    const LoadedGraph lg = load_graph(o, session);
    const auto heaps = heap_kinds(o.heaps, {HeapKind::timestamp});
    const auto algos = algo_flags(o.algos, {false});
    if (heaps.size() != 1 || algos.size() != 1) throw UsageError("run takes a single --heap and --algo");
    const TimedTrace tt = timed_run(lg.graph, lg.source, heaps[0], algos[0]);
    verify_trace(lg.graph, tt.trace);
    auto j = trace_json(lg.graph, tt.trace, tt.wall_ns);
    j["source"] = o.source;
    if (o.format == "json") {
        session.out() << j.dump() << '\n';
    } else if (o.format == "human") {
        session.out() << "graph: " << lg.name << '\n';
        for (const auto& [k, v] : j.items()) session.out() << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    } else {
        throw UsageError("run supports --format human or json");
    }
    return kExitOk;
}

inline std::string describe(const BoundCheck& c) {
    std::ostringstream s;
    s << (c.pass() ? "PASS " : "FAIL ") << c.name << ": ";
    if (!c.applicable) {
        s << "skipped (exact count unavailable)";
    } else {
        s << std::setprecision(12) << static_cast<double>(c.lhs) << " <= " << static_cast<double>(c.rhs);
    }
    return s.str();
}

inline int cmd_verify(const Options& o, const Session& session) {
    const LoadedGraph lg = load_graph(o, session);
    const Graph& g = lg.graph;
    const auto report = validate(g, lg.source);
    if (!report.all_reachable()) {
        throw InputError("unreachable vertex", report.unreachable.front());
    }
    if (!report.distinct_distances()) {
        session.out() << "NOTE ties: " << report.equidistant.size()
                      << " groups of equidistant vertices; ties break by vertex id\n";
    }
    const auto ref = run_reference(g, lg.source);
    std::size_t failures = 0;
    auto line = [&](bool ok, const std::string& text) {
        session.out() << (ok ? "PASS " : "FAIL ") << text << '\n';
        if (!ok) ++failures;
    };
    std::optional<DijkstraTrace> plain;
    for (HeapKind k : heap_kinds(o.heaps, {std::begin(kAllHeapKinds), std::end(kAllHeapKinds)})) {
        for (bool compressed : algo_flags(o.algos, {false, true})) {
            const std::string name = std::string(to_string(k)) + (compressed ? "/compressed" : "/plain");
            DijkstraTrace t = compressed ? run_compressed(g, lg.source, k) : run(g, lg.source, k);
            verify_trace(g, t);
            line(t.dist == ref.dist, name + " distances match reference");
            line(t.order == ref.order, name + " order matches reference");
            if (!compressed && !plain) plain = std::move(t);
        }
    }
    if (!plain) plain = run(g, lg.source, HeapKind::binary);
    const BoundReport b = check_bounds(g, lg.source, *plain, ExactCount::if_feasible);
    for (const BoundCheck* c : {&b.interval_entropy, &b.level_lower, &b.level_upper}) {
        session.out() << describe(*c) << '\n';
        if (!c->pass()) ++failures;
    }
    session.out() << (failures == 0 ? "OK" : "FAILED") << ' ' << failures << " failure(s)\n";
    if (failures != 0) throw CheckFailed(std::to_string(failures) + " check(s) failed");
    return kExitOk;
}

inline int cmd_bench(const Options& o, const Session& session) {
    const LoadedGraph lg = load_graph(o, session);
    if (o.reps < 1) throw UsageError("--reps must be at least 1");
    if (o.format != "csv" && o.format != "human") throw UsageError("bench writes csv");
    detail::require_reachable(lg.graph, lg.source);
    struct Cell {
        HeapKind heap;
        bool compressed;
        std::size_t rep;
    };
    std::vector<Cell> cells;
    for (HeapKind k : heap_kinds(o.heaps, {std::begin(kAllHeapKinds), std::end(kAllHeapKinds)})) {
        for (bool c : algo_flags(o.algos, {false})) {
            for (std::size_t r = 0; r < o.reps; ++r) cells.push_back({k, c, r});
        }
    }
    std::vector<std::string> rows(cells.size());
    std::vector<std::exception_ptr> errors(cells.size());
    auto work = [&](std::size_t i) {
        try {
            const Cell& c = cells[i];
            const TimedTrace tt = timed_run(lg.graph, lg.source, c.heap, c.compressed);
            const auto& n = tt.trace.counters;
            std::ostringstream row;
            row << '"' << lg.name << "\"," << lg.graph.vertex_count() << ',' << lg.graph.edge_count() << ','
                << to_string(c.heap) << ',' << (c.compressed ? "compressed" : "plain") << ',' << c.rep << ','
                << tt.wall_ns << ',' << n.pops << ',' << n.pushes << ',' << n.decrease_keys << ',' << n.heap_steps
                << ',' << n.comparisons() << ',' << std::fixed << std::setprecision(3) << interval_budget(tt.trace)
                << ',' << order_digest(tt.trace);
            rows[i] = row.str();
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };
    const std::size_t workers = std::max<std::size_t>(1, std::min(o.parallel, cells.size()));
    if (workers == 1) {
        for (std::size_t i = 0; i < cells.size(); ++i) work(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i; (i = next.fetch_add(1)) < cells.size();) work(i);
            });
        }
        for (auto& t : pool) t.join();
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    session.out() << kBenchHeader << '\n';
    for (const auto& r : rows) session.out() << r << '\n';
    return kExitOk;
}

inline int cmd_analyze(const Options& o, const Session& session) {
    const LoadedGraph lg = load_graph(o, session);
    const DijkstraTrace t = run(lg.graph, lg.source, HeapKind::timestamp);
    const BoundReport b = check_bounds(lg.graph, lg.source, t, ExactCount::if_feasible);
    if (o.format == "json") {
        session.out() << bound_json(b).dump() << '\n';
    } else if (o.format == "csv") {
        session.out() << kBoundCsvHeader << '\n' << bound_csv_row(b) << '\n';
    } else {
        auto& out = session.out();
        out << "graph: " << lg.name << '\n'
            << "n: " << b.n << "  m: " << b.m << "  levels: " << b.d << '\n'
            << "linearizations: " << (b.linearizations ? std::to_string(*b.linearizations) : "not computed") << '\n'
            << "sum log2(b-a): " << b.log_sum << '\n'
            << "interval budget: " << b.budget << '\n'
            << "forward edges: " << b.forward.tree_excluding << " (literal " << b.forward.paper_literal << ")\n";
        if (b.entropy_ratio) out << "entropy ratio: " << *b.entropy_ratio << '\n';
        for (const BoundCheck* c : {&b.interval_entropy, &b.level_lower, &b.level_upper}) out << describe(*c) << '\n';
    }
    return b.ok() ? kExitOk : kExitInvariant;
}

// ---------------------------------------------------------------------------

inline void add_graph_options(CLI::App* app, Options& o) {
    app->add_option("--graph", o.graph_path, "DIMACS shortest-path file");
    app->add_option("--family", o.family, "generator family: path, star, random, lollipop, grid");
    app->add_option("--n", o.gen.n, "vertices besides the source (path, star, random)");
    app->add_option("--m", o.gen.m, "arc count (random)");
    app->add_option("--p", o.gen.p, "chain length (lollipop)");
    app->add_option("--q", o.gen.q, "dense part size (lollipop)");
    app->add_option("--density", o.gen.density, "extra-arc probability in the dense part (lollipop)");
    app->add_option("--rows", o.gen.rows, "grid rows");
    app->add_option("--cols", o.gen.cols, "grid columns");
    app->add_option("--min-weight", o.gen.min_weight, "smallest generated weight");
    app->add_option("--max-weight", o.gen.max_weight, "largest generated weight");
    app->add_option("--seed", o.seed, "generator seed");
    app->add_option("--source", o.source, "source vertex, 1-based");
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Session session(out, err);
    Options o;
    CLI::App app{"Dijkstra with timestamp heaps and bottleneck compression", "uosp"};
    app.require_subcommand(1);

    auto* gen = app.add_subcommand("gen", "write a generated graph as DIMACS");
    gen->add_option("--family", o.family, "generator family")->required();
    gen->add_option("--n", o.gen.n);
    gen->add_option("--m", o.gen.m);
    gen->add_option("--p", o.gen.p);
    gen->add_option("--q", o.gen.q);
    gen->add_option("--density", o.gen.density);
    gen->add_option("--rows", o.gen.rows);
    gen->add_option("--cols", o.gen.cols);
    gen->add_option("--min-weight", o.gen.min_weight);
    gen->add_option("--max-weight", o.gen.max_weight);
    gen->add_option("--seed", o.seed);
    gen->add_option("--out", o.out_path, "output file (default: standard output)");

    auto* run_cmd = app.add_subcommand("run", "run one search and report counters");
    add_graph_options(run_cmd, o);
    run_cmd->add_option("--heap", o.heaps, "binary, fibonacci or timestamp (default timestamp)");
    run_cmd->add_option("--algo", o.algos, "plain or compressed (default plain)");
    run_cmd->add_option("--format", o.format, "human or json");

    auto* verify = app.add_subcommand("verify", "cross-check every heap and algorithm, then the bounds");
    add_graph_options(verify, o);
    verify->add_option("--heap", o.heaps, "restrict heaps (default all)");
    verify->add_option("--algo", o.algos, "restrict algorithms (default all)");

    auto* bench = app.add_subcommand("bench", "timed repetitions as CSV");
    add_graph_options(bench, o);
    bench->add_option("--heap", o.heaps, "heaps to run (default all)");
    bench->add_option("--algo", o.algos, "algorithms to run (default plain)");
    bench->add_option("--reps", o.reps, "repetitions per combination");
    bench->add_option("--parallel", o.parallel, "worker threads across cells");
    bench->add_option("--format", o.format, "csv");

    auto* analyze = app.add_subcommand("analyze", "linearization count and interval bounds");
    add_graph_options(analyze, o);
    analyze->add_option("--format", o.format, "human, json or csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*gen) return cmd_gen(o, session);
        if (*run_cmd) return cmd_run(o, session);
        if (*verify) return cmd_verify(o, session);
        if (*bench) return cmd_bench(o, session);
        if (*analyze) return cmd_analyze(o, session);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const CapacityError& e) {
        err << "capacity error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InputError& e) {
        if (e.vertex() == InputError::kNoVertex) {
            err << "input error: " << e.what() << '\n';
        } else {
            err << "input error: vertex " << e.vertex() + 1 << " is unreachable from the source\n";
        }
        return kExitInput;
    } catch (const OverflowError& e) {
        err << "input error: " << e.what() << '\n';
        return kExitInput;
    } catch (const CheckFailed& e) {
        err << "verification failed: " << e.what() << '\n';
        return kExitInvariant;
    } catch (const InvariantError& e) {
        err << "invariant violated: " << e.what() << '\n';
        return kExitInvariant;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvariant;
    }
    return kExitUsage;
}

}  // namespace uosp::cli

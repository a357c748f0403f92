// Acceptance suite: one PASS/FAIL line per criterion.
//
// Exit status is 0 when every criterion passes, except criteria listed in
// kUnattainable, whose FAIL line is printed but does not change the status.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "uosp/uosp.hpp"

using namespace uosp;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    std::string first_failure;

    void fail(const std::string& why) {
        if (pass) first_failure = why;
        pass = false;
    }
};

// Criterion 12's hard check compares a quantity that is at least n with
// 0.05 n log2 n, which is below n for every n < 2^20 (here n = 1001000).
const std::set<int> kUnattainable{12};

std::string seconds(std::chrono::steady_clock::duration d) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(2) << std::chrono::duration<double>(d).count() << "s";
    return s.str();
}

// Small-graph suite shared by criteria 7, 9 and 10: at most 10 non-source vertices.
std::vector<Graph> small_suite() {
    std::mt19937_64 rng(2024);
    std::vector<Graph> out;
    while (out.size() < 200) {
        const std::size_t i = out.size();
        Graph g;
        if (i % 4 == 0) {
            g = make_lollipop(1 + rng() % 5, 1 + rng() % 5, rng()).graph;
        } else if (i % 4 == 1) {
            const std::size_t n = 1 + rng() % 10;
            g = make_random(n, n + rng() % (n * (n + 1) - n + 1), rng()).graph;
        } else {
            g = oracle::random_reachable(2 + rng() % 10, 0.05 + 0.05 * static_cast<double>(i % 8), rng);
        }
        if (g.vertex_count() - 1 <= 10) out.push_back(std::move(g));
    }
    return out;
}

// ---------------------------------------------------------------------------

void heap_oracle_equivalence(Outcome& o) {
    std::size_t pops = 0;
    for (std::uint64_t seed = 0; seed < 100 && o.pass; ++seed) {
        std::mt19937_64 rng(seed);
        TimestampHeap<std::uint64_t> ts;
        FibonacciQueue<std::uint64_t> fib;
        oracle::LinearScanQueue<std::uint64_t> ref;
        std::uint32_t next = 0;
        for (int step = 0; step < 10000; ++step) {
            const auto op = rng() % 10;
            if (op < 4 || ref.empty()) {
                const auto k = rng() % 50000;
                ts.push(next, k);
                fib.push(next, k);
                ref.push(next, k);
                ++next;
            } else if (op < 7) {
                const auto& items = ref.items();
                const auto [k, id] = items[rng() % items.size()];
                const auto nk = k - std::min<std::uint64_t>(k, rng() % 3000);
                ts.decrease_key(id, nk);
                fib.decrease_key(id, nk);
                ref.decrease_key(id, nk);
            } else {
                const auto want = ref.pop();
                const auto a = ts.pop();
                const auto b = fib.pop();
                ++pops;
                if (a.element != want.second || a.key != want.first || b.element != want.second || b.key != want.first) {
                    o.fail("seed " + std::to_string(seed) + " step " + std::to_string(step));
                    break;
                }
            }
        }
    }
    o.detail << "100 sequences x 10^4 ops, " << pops << " pops compared";
}

void invariant_suite(Outcome& o) {
    std::size_t checks = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        std::mt19937_64 rng(1000 + seed);
        TimestampHeap<std::uint64_t> ts;
        MeldableHeap<std::uint64_t> fib;
        std::vector<NodeHandle> handle;
        std::vector<std::uint32_t> live;
        std::uint32_t next = 0;
        try {
            for (int step = 0; step < 1000; ++step) {
                const auto op = rng() % 10;
                if (op < 4 || live.empty()) {
                    const auto k = rng() % 10000;
                    ts.push(next, k);
                    handle.push_back(fib.push(next, k));
                    live.push_back(next++);
                } else if (op < 7) {
                    const auto id = live[rng() % live.size()];
                    const auto k = fib.key(handle[id]);
                    const auto nk = k - std::min<std::uint64_t>(k, rng() % 1000);
                    ts.decrease_key(id, nk);
                    fib.decrease_key(handle[id], nk);
                } else {
                    const auto e = ts.pop().element;
                    if (fib.pop_min().element != e) throw InvariantError("order", "heaps disagree");
                    live.erase(std::find(live.begin(), live.end(), e));
                }
                ts.check_invariants();
                fib.check_invariants();
                ++checks;
            }
        } catch (const InvariantError& e) {
            o.fail("seed " + std::to_string(seed) + ": " + e.what());
        }
    }
    o.detail << checks << " full scans of both heaps";
}

void timestamp_cost_bound(Outcome& o) {
    constexpr double kC = 3.0;
    const std::vector<std::size_t> sizes{1u << 10, 1u << 12, 1u << 14, 1u << 16};
    std::map<std::size_t, double> fitted;  // smallest C that works at each size
    for (const char* family : {"path", "star", "lollipop", "random"}) {
        o.detail << family << "[";
        for (std::size_t n : sizes) {
            const std::string f = family;
            Graph g;
            if (f == "path") {
                g = make_path(n, n).graph;
            } else if (f == "star") {
                g = make_star(n, n).graph;
            } else if (f == "lollipop") {
                GenParams p;
                p.density = 0.25;
                g = make_lollipop(n - 64, 64, n, p).graph;
            } else {
                g = make_random(n, 4 * n, n).graph;
            }
            const auto t = run(g, 0, HeapKind::timestamp);
            const double ratio = static_cast<double>(t.counters.pop_steps) / interval_budget(t);
            fitted[n] = std::max(fitted[n], ratio);
            o.detail << std::setprecision(3) << ratio << (n == sizes.back() ? "" : " ");
            if (ratio > kC) o.fail(f + " n=" + std::to_string(n) + " ratio above C");
        }
        o.detail << "] ";
    }
    double lo = 1e300;
    double hi = 0;
    for (const auto& [n, c] : fitted) {
        lo = std::min(lo, c);
        hi = std::max(hi, c);
    }
    o.detail << "C=" << kC << " fitted " << std::setprecision(3) << lo << ".." << hi << " spread " << hi / lo;
    if (hi / lo >= 2.0) o.fail("fitted C spread reaches 2x");
}

void dijkstra_correctness(Outcome& o) {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 1000 && o.pass; ++i) {
        const std::size_t n = 1 + rng() % 199;
        const std::size_t cap = std::min<std::size_t>(1999, n * (n + 1));
        const std::size_t m = n + rng() % (cap - n + 1);
        GenParams p;
        if (i % 5 == 0) p.max_weight = 8;  // plenty of ties
        const auto g = make_random(n, m, rng(), p).graph;
        const auto ref = run_reference(g, 0);
        for (auto k : kAllHeapKinds) {
            const auto t = run(g, 0, k);
            if (t.dist != ref.dist || t.order != ref.order) o.fail("graph " + std::to_string(i) + " heap " + std::string(to_string(k)));
        }
    }
    for (int i = 0; i < 100 && o.pass; ++i) {
        const auto g = oracle::random_reachable(2 + rng() % 49, 0.05 + 0.01 * (i % 10), rng);
        if (run_reference(g, 0).dist != oracle::bellman_ford(g, 0)) o.fail("Bellman-Ford graph " + std::to_string(i));
    }
    o.detail << "1000 graphs x 3 heaps vs reference; 100 graphs reference vs Bellman-Ford";
}

void compressed_equivalence(Outcome& o) {
    std::mt19937_64 rng(5);
    std::vector<Graph> graphs;
    for (int i = 0; i < 500; ++i) {
        if (i % 3 == 0) {
            graphs.push_back(make_lollipop(1 + rng() % 60, 1 + rng() % 20, rng()).graph);
        } else if (i % 3 == 1) {
            graphs.push_back(oracle::random_reachable(2 + rng() % 80, 0.01 + 0.01 * (i % 5), rng, i % 2 ? 8 : 100000));
        } else {
            const std::size_t n = 1 + rng() % 150;
            graphs.push_back(make_random(n, n + rng() % (2 * n + 1), rng()).graph);
        }
    }
    for (auto f : {Family::path, Family::star, Family::random, Family::lollipop, Family::grid}) {
        GenParams p;
        p.n = 500;
        p.m = 2000;
        p.p = 300;
        p.q = 30;
        p.rows = 20;
        p.cols = 25;
        graphs.push_back(gen_family(f, p, 99).graph);
    }
    for (std::size_t i = 0; i < graphs.size() && o.pass; ++i) {
        const auto want = run(graphs[i], 0, HeapKind::binary).order;
        for (auto k : kAllHeapKinds) {
            if (run_compressed(graphs[i], 0, k).order != want) o.fail("graph " + std::to_string(i) + " heap " + std::string(to_string(k)));
        }
    }
    o.detail << graphs.size() << " graphs (500 random + 5 families) x 3 heaps";
}

void path_comparisons(Outcome& o) {
    std::set<std::uint64_t> seen;
    for (auto k : kAllHeapKinds) {
        for (std::size_t n : {100u, 1000u, 10000u, 100000u}) {
            const auto g = make_path(n, n).graph;
            const auto t = run_compressed(g, 0, k);
            seen.insert(t.counters.comparisons());
            if (t.counters.comparisons() > 10) o.fail("n=" + std::to_string(n) + " above 10");
            if (t.order != run(g, 0, HeapKind::binary).order) o.fail("order differs at n=" + std::to_string(n));
        }
    }
    if (seen.size() != 1) o.fail("counts differ across sizes");
    o.detail << "distinct comparison counts {";
    for (auto c : seen) o.detail << c;
    o.detail << "} for n in 10^2..10^5, all heaps";
}

void comparison_bound(Outcome& o, const std::vector<Graph>& suite) {
    constexpr double kC = 4.0;
    double worst = 0;
    for (std::size_t i = 0; i < suite.size(); ++i) {
        const Graph& g = suite[i];
        const auto plain = run(g, 0, HeapKind::binary);
        const double mf = static_cast<double>(forward_edge_count(g, plain).tree_excluding);
        const double log_l = std::log2(static_cast<double>(count_linearizations(g, 0)));
        for (auto k : kAllHeapKinds) {
            const auto t = run_compressed(g, 0, k);
            const double ratio = static_cast<double>(t.counters.comparisons()) / (mf + log_l + 1);
            worst = std::max(worst, ratio);
            if (ratio > kC) o.fail("graph " + std::to_string(i));
        }
    }
    o.detail << suite.size() << " graphs x 3 heaps, C=" << kC << ", worst ratio " << std::setprecision(4) << worst;
}

void realization(Outcome& o) {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 100 && o.pass; ++i) {
        const Graph h = i % 2 ? oracle::random_reachable(3 + rng() % 40, 0.1, rng)
                              : make_random(30 + rng() % 30, 150, rng()).graph;
        const auto t = run(h, 0, HeapKind::timestamp);
        for (int k = 0; k < 10; ++k) {
            std::vector<double> r(h.vertex_count());
            std::set<double> used;
            for (Vertex v = 0; v < h.vertex_count(); ++v) {
                if (v == 0) continue;
                do {
                    r[v] = std::uniform_real_distribution<double>(static_cast<double>(t.pushed_at[v]),
                                                                  static_cast<double>(t.popped_at[v]))(rng);
                } while (!used.insert(r[v]).second);
            }
            std::vector<Vertex> want;
            for (Vertex v = 1; v < h.vertex_count(); ++v) want.push_back(v);
            std::sort(want.begin(), want.end(), [&](Vertex a, Vertex b) { return r[a] < r[b]; });
            auto got = run_reference(realize_linearization(h, t, r), 0).order;
            got.erase(got.begin());
            if (got != want) o.fail("graph " + std::to_string(i) + " sample " + std::to_string(k));
        }
    }
    o.detail << "100 graphs x 10 interval samples, settle order equals sort by r";
}

void interval_entropy(Outcome& o, const std::vector<Graph>& suite) {
    long double min_slack = 1e30L;
    for (std::size_t i = 0; i < suite.size(); ++i) {
        const Graph& g = suite[i];
        const auto t = run(g, 0, HeapKind::timestamp);
        long double lhs = 0;
        for (Vertex v = 1; v < g.vertex_count(); ++v) {
            lhs += std::log2(static_cast<long double>(t.popped_at[v] - t.pushed_at[v]));
        }
        const auto n = static_cast<long double>(g.vertex_count() - 1);
        const long double rhs = std::log2(static_cast<long double>(count_linearizations(g, 0))) + 1.4427L * n;
        min_slack = std::min(min_slack, rhs - lhs);
        if (lhs > rhs) o.fail("graph " + std::to_string(i));
        if (!check_bounds(g, 0, t).interval_entropy.pass()) o.fail("report disagrees on graph " + std::to_string(i));
    }
    o.detail << suite.size() << " graphs, smallest slack " << std::setprecision(4) << static_cast<double>(min_slack);
}

void level_inequalities(Outcome& o, const std::vector<Graph>& suite) {
    std::size_t tight = 0;
    for (std::size_t i = 0; i < suite.size(); ++i) {
        const Graph& g = suite[i];
        // Independent BFS and integer arithmetic.
        std::vector<int> level(g.vertex_count(), -1);
        std::vector<Vertex> queue{0};
        level[0] = 0;
        for (std::size_t h = 0; h < queue.size(); ++h) {
            for (Vertex v : g.heads(queue[h])) {
                if (level[v] < 0) {
                    level[v] = level[queue[h]] + 1;
                    queue.push_back(v);
                }
            }
        }
        std::map<int, std::uint64_t> sizes;
        for (int l : level) ++sizes[l];
        std::uint64_t prod = 1;
        for (const auto& [l, k] : sizes) {
            for (std::uint64_t x = 2; x <= k; ++x) prod *= x;
        }
        const long long e = static_cast<long long>(g.vertex_count() - 1) - static_cast<long long>(sizes.size());
        const bool lower = e < 0 || (std::uint64_t{1} << e) <= prod;
        const std::uint64_t ell = count_linearizations(g, 0);
        if (!lower || prod > ell) o.fail("graph " + std::to_string(i));
        tight += prod == ell;
        if (!check_bounds(g, 0, run(g, 0, HeapKind::binary)).ok()) o.fail("report disagrees on graph " + std::to_string(i));
    }
    o.detail << suite.size() << " graphs, " << tight << " with product of level factorials equal to l";
}

void linearization_oracle(Outcome& o) {
    std::mt19937_64 rng(11);
    std::map<std::size_t, std::size_t> by_size;
    for (int i = 0; i < 500 && o.pass; ++i) {
        const std::size_t nv = 4 + static_cast<std::size_t>(i % 4);  // 4..7 vertices
        const auto g = oracle::random_reachable(nv, 0.05 * static_cast<double>(1 + rng() % 10), rng);
        if (count_linearizations(g, 0) != oracle::brute_force_linearizations(g, 0)) o.fail("graph " + std::to_string(i));
        ++by_size[nv];
    }
    for (std::size_t k = 1; k <= 8; ++k) {
        if (count_linearizations(make_path(k, 1).graph, 0) != 1) o.fail("path(" + std::to_string(k) + ")");
    }
    std::uint64_t fact = 1;
    for (std::size_t k = 1; k <= 12; ++k) {
        fact *= k;
        if (count_linearizations(make_star(k, 1).graph, 0) != fact) o.fail("star(" + std::to_string(k) + ")");
    }
    if (count_linearizations(oracle::diamond(), 0) != 4) o.fail("diamond");
    o.detail << "500 graphs on 4-7 vertices vs enumeration; path -> 1, star(k) -> k! for k <= 12, diamond -> 4";
}

void performance_sanity(Outcome& o) {
    using clock = std::chrono::steady_clock;
    const auto path = make_path(1000000, 1).graph;
    const auto t0 = clock::now();
    const auto tp = run(path, 0, HeapKind::timestamp);
    const auto t1 = clock::now();
    const double path_budget = interval_budget(tp);
    const auto bp = run(path, 0, HeapKind::binary);
    o.detail << "path(10^6): " << seconds(t1 - t0) << (t1 - t0 < std::chrono::seconds(2) ? " (<2s)" : " (over 2s)")
             << ", budget " << std::setprecision(10) << path_budget << ", binary proxy " << bp.counters.log_heap_sizes;
    if (path_budget != 1000000.0) o.fail("path budget differs from n");

    const auto lolli = make_lollipop(1000000, 1000, 1).graph;
    const auto t2 = clock::now();
    const auto tl = run(lolli, 0, HeapKind::timestamp);
    const auto t3 = clock::now();
    const auto bl = run(lolli, 0, HeapKind::binary);
    const double n = static_cast<double>(lolli.vertex_count() - 1);
    const double cap = 0.05 * n * std::log2(n);
    const double budget = interval_budget(tl);
    const double log_part = interval_log_sum(tl);
    o.detail << "; lollipop(10^6, 10^3): " << seconds(t3 - t2) << ", budget " << budget << " vs 5% n log2 n = " << cap
             << " (budget/(n log2 n) = " << std::setprecision(4) << budget / (n * std::log2(n))
             << "), log part " << std::setprecision(10) << log_part << " (" << std::setprecision(4)
             << log_part / (n * std::log2(n)) << "), binary proxy " << std::setprecision(10)
             << bl.counters.log_heap_sizes;
    if (budget > cap) o.fail("lollipop budget above 5% of n log2 n");
}

}  // namespace

int main() {
    const auto suite = small_suite();
    struct Criterion {
        int id;
        const char* name;
        std::function<void(Outcome&)> run;
    };
    const std::vector<Criterion> criteria{
        {1, "heap oracle equivalence", heap_oracle_equivalence},
        {2, "heap invariants after every operation", invariant_suite},
        {3, "timestamp pop cost within interval budget", timestamp_cost_bound},
        {4, "Dijkstra correctness", dijkstra_correctness},
        {5, "compressed search order equivalence", compressed_equivalence},
        {6, "constant comparisons on paths", path_comparisons},
        {7, "comparison bound vs exact linearization count", [&](Outcome& o) { comparison_bound(o, suite); }},
        {8, "linearization realization from interval samples", realization},
        {9, "interval entropy bound", [&](Outcome& o) { interval_entropy(o, suite); }},
        {10, "level factorial bounds", [&](Outcome& o) { level_inequalities(o, suite); }},
        {11, "linearization count vs enumeration", linearization_oracle},
        {12, "desk-scale performance sanity", performance_sanity},
    };
    int unexpected = 0;
    int passed = 0;
    for (const auto& c : criteria) {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        const auto t1 = std::chrono::steady_clock::now();
        std::cout << (o.pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << " (" << seconds(t1 - t0)
                  << "): " << o.detail.str();
        if (!o.pass) std::cout << "; first failure: " << o.first_failure;
        if (!o.pass && kUnattainable.count(c.id)) std::cout << " [unattainable as stated]";
        std::cout << std::endl;
        if (o.pass) {
            ++passed;
        } else if (!kUnattainable.count(c.id)) {
            ++unexpected;
        }
    }
    std::cout << passed << "/" << criteria.size() << " criteria passed";
    if (unexpected == 0 && passed != static_cast<int>(criteria.size())) std::cout << " (remaining failures are unattainable as stated)";
    std::cout << std::endl;
    return unexpected == 0 ? 0 : 1;
}

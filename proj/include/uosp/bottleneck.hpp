#pragma once

// Bottleneck-path compression.
//
// A vertex that is alone on its BFS level is a bottleneck vertex: every path
// from the source to a deeper level runs through it, so for any weighting the
// bottleneck vertices are settled in level order and each one is pushed by its
// predecessor on the level above. A maximal run of bottleneck vertices on
// consecutive levels forms a bottleneck path u_1..u_k.
//
// run_compressed moves every outgoing arc of u_i (i >= 2) to u_1 with the
// path prefix added to its weight. When it settles a path vertex u_i it does
// not push u_{i+1}; instead it gallops along the path against the current
// heap minimum and emits the whole stretch u_{i+1}..u_j that precedes it.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "uosp/dijkstra.hpp"
#include "uosp/errors.hpp"
#include "uosp/graph.hpp"

namespace uosp {

struct ComparisonCounter {
    std::uint64_t count = 0;
};

struct BfsLevels {
    std::vector<std::uint32_t> level;       // hop distance per vertex
    std::vector<std::vector<Vertex>> sets;  // L_0 .. L_{d-1}

    std::size_t depth() const noexcept { return sets.size(); }
};

// Unweighted BFS; touches no weights.
inline BfsLevels compute_levels(const Graph& g, Vertex s) {
    detail::require_reachable(g, s);
    BfsLevels out;
    out.level.assign(g.vertex_count(), UINT32_MAX);
    out.level[s] = 0;
    out.sets.push_back({s});
    while (true) {
        std::vector<Vertex> next;
        const auto depth = static_cast<std::uint32_t>(out.sets.size());
        for (Vertex u : out.sets.back()) {
            for (Vertex v : g.heads(u)) {
                if (out.level[v] == UINT32_MAX) {
                    out.level[v] = depth;
                    next.push_back(v);
                }
            }
        }
        if (next.empty()) break;
        out.sets.push_back(std::move(next));
    }
    return out;
}

struct BottleneckPath {
    std::vector<Vertex> vertices;   // u_1..u_k on consecutive singleton levels
    std::vector<Distance> prefix;   // prefix[i] = w(u_1,u_2) + ... + w(u_{i-1},u_i); prefix[0] = 0
    std::vector<EdgeId> link_edge;  // link_edge[i] = lightest arc u_i -> u_{i+1}

    std::size_t size() const noexcept { return vertices.size(); }
};

namespace detail {

inline EdgeId lightest_arc(const Graph& g, Vertex u, Vertex v) {
    EdgeId best = static_cast<EdgeId>(-1);
    for (EdgeId e = g.begin(u); e < g.end(u); ++e) {
        if (g.head(e) == v && (best == static_cast<EdgeId>(-1) || g.weight(e) < g.weight(best))) best = e;
    }
    return best;
}

}  // namespace detail

inline std::vector<BottleneckPath> find_bottleneck_paths(const Graph& g, const BfsLevels& levels) {
    std::vector<BottleneckPath> paths;
    bool extending = false;
    for (const auto& set : levels.sets) {
        if (set.size() != 1) {
            extending = false;
            continue;
        }
        const Vertex v = set.front();
        if (!extending) {
            paths.push_back({{v}, {0}, {}});
            extending = true;
            continue;
        }
        auto& p = paths.back();
        const Vertex u = p.vertices.back();
        const EdgeId e = detail::lightest_arc(g, u, v);
        if (e == static_cast<EdgeId>(-1)) {
            throw InvariantError("bottleneck-path", "no arc between consecutive bottleneck vertices");
        }
        p.link_edge.push_back(e);
        p.prefix.push_back(checked_add(p.prefix.back(), g.weight(e)));
        p.vertices.push_back(v);
    }
    return paths;
}

struct CompressedGraph {
    Graph graph;
    std::vector<EdgeId> origin;  // arc of the input graph each arc came from
};

// Arcs (u_i, v) with i >= 2 move to (u_1, v) with weight prefix[i] + w.
// Arcs along the path stay. Arcs from a path vertex back to itself or to an
// earlier vertex of the same path are dropped: their heads are settled first
// under every weighting.
inline CompressedGraph compress(const Graph& g, std::span<const BottleneckPath> paths) {
    constexpr std::uint32_t kNone = UINT32_MAX;
    std::vector<std::uint32_t> path_of(g.vertex_count(), kNone);
    std::vector<std::uint32_t> pos_of(g.vertex_count(), 0);
    for (std::uint32_t p = 0; p < paths.size(); ++p) {
        for (std::uint32_t i = 0; i < paths[p].size(); ++i) {
            path_of[paths[p].vertices[i]] = p;
            pos_of[paths[p].vertices[i]] = i;
        }
    }

    struct Tagged {
        Arc arc;
        EdgeId origin;
    };
    std::vector<Tagged> tagged;
    tagged.reserve(g.edge_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Arc a = g.arc(e);
        const std::uint32_t p = path_of[a.from];
        if (p == kNone || pos_of[a.from] == 0) {
            tagged.push_back({a, e});
            continue;
        }
        const auto& path = paths[p];
        const std::uint32_t i = pos_of[a.from];
        if (i + 1 < path.size() && a.to == path.vertices[i + 1]) {
            tagged.push_back({a, e});
        } else if (path_of[a.to] == p && pos_of[a.to] <= i) {
            continue;
        } else {
            tagged.push_back({{path.vertices[0], a.to, checked_add(path.prefix[i], a.weight)}, e});
        }
    }
    std::sort(tagged.begin(), tagged.end(), [](const Tagged& x, const Tagged& y) { return x.arc < y.arc; });
    std::vector<Arc> arcs;
    CompressedGraph out;
    arcs.reserve(tagged.size());
    out.origin.reserve(tagged.size());
    for (const auto& t : tagged) {
        arcs.push_back(t.arc);
        out.origin.push_back(t.origin);
    }
    out.graph = Graph(g.vertex_count(), std::move(arcs));
    return out;
}

// Largest q in [i, last] with below(q) true, assuming below is monotone
// (true then false) and below(i) holds. Gallops i+1, i+2, i+4, ... then
// bisects the last gap; each call of below counts one comparison.
template <class Below>
std::size_t gallop_last(std::size_t i, std::size_t last, Below below, ComparisonCounter& counter) {
    if (i > last) throw UsageError("search start beyond the end of the path");
    auto test = [&](std::size_t q) {
        ++counter.count;
        return below(q);
    };
    std::size_t lo = i;
    std::size_t hi = last + 1;
    for (std::size_t step = 1; i + step <= last; step *= 2) {
        if (!test(i + step)) {
            hi = i + step;
            break;
        }
        lo = i + step;
    }
    while (hi - lo > 1) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (test(mid)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

// Over a sorted sequence: largest index j >= i with values[j] < threshold.
// No threshold means +infinity: returns the last index without comparing.
template <class T>
std::size_t exponential_search(std::span<const T> values, std::size_t i, const std::optional<T>& threshold,
                               ComparisonCounter& counter) {
    if (i >= values.size()) throw UsageError("search start out of range");
    if (!threshold) return values.size() - 1;
    return gallop_last(i, values.size() - 1, [&](std::size_t q) { return values[q] < *threshold; }, counter);
}

// Along a bottleneck path: distance[u_q] = base_distance + prefix[q] - prefix[i],
// compared with the (distance, id) threshold.
inline std::size_t exponential_search(const BottleneckPath& path, std::size_t i, Distance base_distance,
                                      const std::optional<HeapEntry<Distance>>& threshold,
                                      ComparisonCounter& counter) {
    if (i >= path.size()) throw UsageError("search start out of range");
    if (!threshold) return path.size() - 1;
    return gallop_last(
        i, path.size() - 1,
        [&](std::size_t q) {
            const Distance d = checked_add(base_distance, path.prefix[q] - path.prefix[i]);
            return entry_less(d, path.vertices[q], threshold->key, threshold->element);
        },
        counter);
}

template <DistanceHeap Heap>
DijkstraTrace run_compressed_with(const Graph& g, Vertex s, Heap& heap, HeapKind kind) {
    const BfsLevels levels = compute_levels(g, s);
    const auto paths = find_bottleneck_paths(g, levels);
    const CompressedGraph cg = compress(g, paths);
    const Graph& h = cg.graph;

    constexpr std::uint32_t kNone = UINT32_MAX;
    std::vector<std::uint32_t> path_of(g.vertex_count(), kNone);
    std::vector<std::uint32_t> pos_of(g.vertex_count(), 0);
    for (std::uint32_t p = 0; p < paths.size(); ++p) {
        for (std::uint32_t i = 0; i < paths[p].size(); ++i) {
            path_of[paths[p].vertices[i]] = p;
            pos_of[paths[p].vertices[i]] = i;
        }
    }

    DijkstraTrace trace = detail::empty_trace(g, s, kind);
    trace.compressed = true;
    detail::Frontier<Heap> frontier(heap, trace);
    ComparisonCounter searched;
    auto& dist = trace.dist;

    dist[s] = 0;
    frontier.push(s, 0);
    while (!heap.empty()) {
        const Vertex u = frontier.pop();
        const std::uint32_t p = path_of[u];
        trace.bottleneck_iteration.push_back(p != kNone ? 1 : 0);
        const bool has_next = p != kNone && pos_of[u] + 1 < paths[p].size();
        const Vertex next = has_next ? paths[p].vertices[pos_of[u] + 1] : kNoVertex;

        for (EdgeId e = h.begin(u); e < h.end(u); ++e) {
            if (h.head(e) == next) continue;
            frontier.relax(u, h.head(e), h.weight(e), cg.origin[e], g.tail(cg.origin[e]));
        }
        if (!has_next) continue;

        const auto& path = paths[p];
        const std::size_t i = pos_of[u];
        std::optional<HeapEntry<Distance>> threshold;
        if (!heap.empty()) threshold = heap.peek();
        const std::size_t j = exponential_search(path, i, dist[u], threshold, searched);
        for (std::size_t q = i + 1; q <= j; ++q) {
            const Vertex v = path.vertices[q];
            dist[v] = checked_add(dist[u], path.prefix[q] - path.prefix[i]);
            trace.tree_parent[v] = path.vertices[q - 1];
            trace.tree_edge[v] = path.link_edge[q - 1];
            frontier.pass_through(v);
        }
        if (j + 1 < path.size()) {
            const Vertex v = path.vertices[j + 1];
            if (dist[v] != kInfinity) throw InvariantError("bottleneck-path", "path successor reached early");
            frontier.relax(path.vertices[j], v, g.weight(path.link_edge[j]), path.link_edge[j], path.vertices[j]);
        }
    }
    frontier.finish();
    trace.counters.search_comparisons = searched.count;
    return trace;
}

inline DijkstraTrace run_compressed(const Graph& g, Vertex s, HeapKind kind) {
    return detail::with_heap(kind, [&](auto& heap) { return run_compressed_with(g, s, heap, kind); });
}

struct ForwardEdges {
    std::size_t paper_literal = 0;   // dist(v) > dist(u) and (v, u) not in T
    std::size_t tree_excluding = 0;  // additionally (u, v) not in T
};

// Counts forward edges against the exploration tree of a plain run.
inline ForwardEdges forward_edge_count(const Graph& g, const DijkstraTrace& trace) {
    ForwardEdges out;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Vertex u = g.tail(e);
        const Vertex v = g.head(e);
        if (trace.dist[v] <= trace.dist[u] || trace.in_tree(v, u)) continue;
        ++out.paper_literal;
        if (!trace.in_tree(u, v)) ++out.tree_excluding;
    }
    return out;
}

// Longest run of consecutive main-loop iterations that popped a bottleneck vertex.
inline std::size_t longest_bottleneck_streak(const DijkstraTrace& trace) {
    std::size_t best = 0;
    std::size_t run = 0;
    for (char b : trace.bottleneck_iteration) {
        run = b ? run + 1 : 0;
        best = std::max(best, run);
    }
    return best;
}

}  // namespace uosp

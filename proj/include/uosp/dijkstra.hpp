#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uosp/binary_heap.hpp"
#include "uosp/errors.hpp"
#include "uosp/fib_heap.hpp"
#include "uosp/graph.hpp"
#include "uosp/ts_heap.hpp"

namespace uosp {

enum class HeapKind { binary, fibonacci, timestamp };

inline constexpr HeapKind kAllHeapKinds[] = {HeapKind::binary, HeapKind::fibonacci, HeapKind::timestamp};

inline std::optional<HeapKind> parse_heap_kind(std::string_view name) {
    if (name == "binary") return HeapKind::binary;
    if (name == "fibonacci") return HeapKind::fibonacci;
    if (name == "timestamp") return HeapKind::timestamp;
    return std::nullopt;
}

inline std::string_view to_string(HeapKind k) {
    switch (k) {
        case HeapKind::binary: return "binary";
        case HeapKind::fibonacci: return "fibonacci";
        case HeapKind::timestamp: return "timestamp";
    }
    return "?";
}

// Heap interface the search loops need. Keys are distances; ties between
// equal distances go to the smaller vertex id.
template <class H>
concept DistanceHeap = requires(H h, const H ch, ElementId v, Distance d) {
    h.push(v, d);
    h.decrease_key(v, d);
    { h.pop().element } -> std::convertible_to<ElementId>;
    { ch.peek() } -> std::convertible_to<HeapEntry<Distance>>;
    { ch.empty() } -> std::convertible_to<bool>;
    { ch.size() } -> std::convertible_to<std::size_t>;
    { ch.stats() } -> std::convertible_to<HeapStats>;
};

struct DijkstraCounters {
    std::uint64_t pushes = 0;
    std::uint64_t pops = 0;
    std::uint64_t decrease_keys = 0;
    std::uint64_t heap_comparisons = 0;
    std::uint64_t relax_comparisons = 0;   // tentative-distance tests against queued vertices
    std::uint64_t search_comparisons = 0;  // exponential search along bottleneck paths
    std::uint64_t heap_steps = 0;
    std::uint64_t pop_steps = 0;           // share of heap_steps spent inside pop
    std::uint64_t skipped = 0;             // vertices emitted without touching the heap
    double log_heap_sizes = 0.0;           // sum of log2(heap size) at each pop

    std::uint64_t comparisons() const noexcept { return heap_comparisons + relax_comparisons + search_comparisons; }
};

struct DijkstraTrace {
    Vertex source = 0;
    HeapKind heap = HeapKind::binary;
    bool compressed = false;

    std::vector<Vertex> order;  // settle order, source first
    std::vector<Distance> dist;
    std::vector<std::uint64_t> pushed_at;  // a_i
    std::vector<std::uint64_t> popped_at;  // b_i
    // Exploration tree: the arc whose inspection first pushed each vertex.
    std::vector<Vertex> tree_parent;  // kNoVertex for the source
    std::vector<EdgeId> tree_edge;
    // Compressed runs only: whether each main-loop iteration popped a bottleneck vertex.
    std::vector<char> bottleneck_iteration;
    DijkstraCounters counters;

    bool in_tree(Vertex u, Vertex v) const noexcept { return tree_parent[v] == u; }
};

namespace detail {

inline std::vector<Vertex> unreachable_from(const Graph& g, Vertex s) {
    std::vector<char> seen(g.vertex_count(), 0);
    std::vector<Vertex> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
        const Vertex u = stack.back();
        stack.pop_back();
        for (Vertex v : g.heads(u)) {
            if (!seen[v]) {
                seen[v] = 1;
                stack.push_back(v);
            }
        }
    }
    std::vector<Vertex> out;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (!seen[v]) out.push_back(v);
    }
    return out;
}

inline void require_reachable(const Graph& g, Vertex s) {
    if (s >= g.vertex_count()) throw UsageError("source vertex out of range");
    const auto bad = unreachable_from(g, s);
    if (!bad.empty()) {
        throw InputError("vertex " + std::to_string(bad.front()) + " is unreachable from the source", bad.front());
    }
}

inline DijkstraTrace empty_trace(const Graph& g, Vertex s, HeapKind kind) {
    const std::size_t n = g.vertex_count();
    DijkstraTrace t;
    t.source = s;
    t.heap = kind;
    t.order.reserve(n);
    t.dist.assign(n, kInfinity);
    t.pushed_at.assign(n, 0);
    t.popped_at.assign(n, 0);
    t.tree_parent.assign(n, kNoVertex);
    t.tree_edge.assign(n, static_cast<EdgeId>(-1));
    return t;
}

// Push/pop bookkeeping shared by the plain and the compressed loop. The clock
// advances after every push, so a_i and b_i follow the timestamp definition.
template <DistanceHeap Heap>
class Frontier {
public:
    Frontier(Heap& heap, DijkstraTrace& trace)
        : heap_(heap), trace_(trace), queued_(trace.dist.size(), 0), heap_pushed_at_(trace.dist.size(), 0) {}

    std::uint64_t clock() const noexcept { return clock_; }
    bool queued(Vertex v) const noexcept { return queued_[v] != 0; }
    Heap& heap() noexcept { return heap_; }

    void push(Vertex v, Distance d) {
        heap_.push(v, d);
        queued_[v] = 1;
        heap_pushed_at_[v] = heap_clock_++;
        trace_.pushed_at[v] = clock_++;
        ++trace_.counters.pushes;
    }

    Vertex pop() {
        auto& c = trace_.counters;
        c.log_heap_sizes += std::log2(static_cast<double>(heap_.size()));
        const std::uint64_t before = heap_.stats().steps;
        const auto r = heap_.pop();
        c.pop_steps += heap_.stats().steps - before;
        const Vertex u = r.element;
        if constexpr (requires { r.popped_at; }) {
            if (r.pushed_at != heap_pushed_at_[u] || r.popped_at != heap_clock_) {
                throw InvariantError("timestamps", "heap clock disagrees with the search clock");
            }
        }
        queued_[u] = 0;
        trace_.popped_at[u] = clock_;
        trace_.order.push_back(u);
        ++c.pops;
        return u;
    }

    // Emits v as if it were pushed and popped immediately.
    void pass_through(Vertex v) {
        trace_.pushed_at[v] = clock_++;
        trace_.popped_at[v] = clock_;
        trace_.order.push_back(v);
        ++trace_.counters.skipped;
    }

    // Relaxes arc (u, v) of weight w; `origin` is the arc recorded in the tree.
    void relax(Vertex u, Vertex v, Weight w, EdgeId origin, Vertex origin_tail) {
        auto& dist = trace_.dist;
        const Distance nd = checked_add(dist[u], w);
        if (dist[v] == kInfinity) {
            dist[v] = nd;
            trace_.tree_parent[v] = origin_tail;
            trace_.tree_edge[v] = origin;
            push(v, nd);
        } else if (queued_[v]) {
            ++trace_.counters.relax_comparisons;
            if (nd < dist[v]) {
                dist[v] = nd;
                heap_.decrease_key(v, nd);
                ++trace_.counters.decrease_keys;
            }
        }
    }

    void finish() {
        const HeapStats s = heap_.stats();
        trace_.counters.heap_comparisons = s.comparisons;
        trace_.counters.heap_steps = s.steps;
    }

private:
    Heap& heap_;
    DijkstraTrace& trace_;
    std::vector<char> queued_;
    // Pass-through emissions advance the search clock but not the heap's own.
    std::vector<std::uint64_t> heap_pushed_at_;
    std::uint64_t heap_clock_ = 0;
    std::uint64_t clock_ = 0;
};

}  // namespace detail

// Dijkstra with a caller-supplied (empty) heap.
template <DistanceHeap Heap>
DijkstraTrace run_with(const Graph& g, Vertex s, Heap& heap, HeapKind kind) {
    detail::require_reachable(g, s);
    DijkstraTrace trace = detail::empty_trace(g, s, kind);
    detail::Frontier<Heap> frontier(heap, trace);
    trace.dist[s] = 0;
    frontier.push(s, 0);
    while (!heap.empty()) {
        const Vertex u = frontier.pop();
        for (EdgeId e = g.begin(u); e < g.end(u); ++e) frontier.relax(u, g.head(e), g.weight(e), e, u);
    }
    frontier.finish();
    return trace;
}

namespace detail {

// TimestampHeap addressed by vertex id, matching DistanceHeap.
class TimestampQueue {
public:
    void push(ElementId v, Distance d) { heap_.push(v, d); }
    void decrease_key(ElementId v, Distance d) { heap_.decrease_key(v, d); }
    TimestampHeap<Distance>::PopResult pop() { return heap_.pop(); }
    HeapEntry<Distance> peek() const { return heap_.peek(); }
    bool empty() const noexcept { return heap_.empty(); }
    std::size_t size() const noexcept { return heap_.size(); }
    HeapStats stats() const noexcept { return heap_.stats(); }
    const TimestampHeap<Distance>& inner() const noexcept { return heap_; }

private:
    TimestampHeap<Distance> heap_;
};

template <class F>
decltype(auto) with_heap(HeapKind kind, F&& f) {
    switch (kind) {
        case HeapKind::binary: {
            BinaryHeap<Distance> h;
            return f(h);
        }
        case HeapKind::fibonacci: {
            FibonacciQueue<Distance> h;
            return f(h);
        }
        case HeapKind::timestamp: {
            TimestampQueue h;
            return f(h);
        }
    }
    throw UsageError("unknown heap kind");
}

}  // namespace detail

using TimestampQueue = detail::TimestampQueue;

inline DijkstraTrace run(const Graph& g, Vertex s, HeapKind kind) {
    return detail::with_heap(kind, [&](auto& heap) { return run_with(g, s, heap, kind); });
}

struct ReferenceResult {
    std::vector<Distance> dist;
    std::vector<Vertex> order;
};

// Lazy-deletion binary-heap Dijkstra, independent of the heaps above.
inline ReferenceResult run_reference(const Graph& g, Vertex s) {
    detail::require_reachable(g, s);
    ReferenceResult r;
    r.dist = detail::lazy_dijkstra(g, s, &r.order);
    return r;
}

// Sum over popped vertices other than the source of (1 + log2(b_i - a_i)).
inline double interval_budget(const DijkstraTrace& t) {
    double sum = 0.0;
    for (Vertex v : t.order) {
        if (v == t.source) continue;
        sum += 1.0 + std::log2(static_cast<double>(t.popped_at[v] - t.pushed_at[v]));
    }
    return sum;
}

// Sum over popped vertices other than the source of log2(b_i - a_i).
inline double interval_log_sum(const DijkstraTrace& t) {
    double sum = 0.0;
    for (Vertex v : t.order) {
        if (v != t.source) sum += std::log2(static_cast<double>(t.popped_at[v] - t.pushed_at[v]));
    }
    return sum;
}

// Structural checks on a finished trace; throws InvariantError.
inline void verify_trace(const Graph& g, const DijkstraTrace& t) {
    const std::size_t n = g.vertex_count();
    if (t.order.size() != n) throw InvariantError("order", "not every vertex was settled");
    if (t.order.front() != t.source) throw InvariantError("order", "source is not settled first");
    for (std::size_t i = 1; i < n; ++i) {
        const Vertex a = t.order[i - 1];
        const Vertex b = t.order[i];
        if (!entry_less(t.dist[a], a, t.dist[b], b)) throw InvariantError("order", "settle order not sorted by (distance, id)");
    }
    for (Vertex v = 0; v < n; ++v) {
        if (t.popped_at[v] <= t.pushed_at[v]) throw InvariantError("interval", "b_i <= a_i at vertex " + std::to_string(v));
        if (v == t.source) {
            if (t.tree_parent[v] != kNoVertex) throw InvariantError("tree", "source has a parent");
            continue;
        }
        const Vertex u = t.tree_parent[v];
        if (u == kNoVertex) throw InvariantError("tree", "vertex " + std::to_string(v) + " has no tree parent");
        if (g.tail(t.tree_edge[v]) != u || g.head(t.tree_edge[v]) != v) {
            throw InvariantError("tree", "tree edge does not match parent at vertex " + std::to_string(v));
        }
        // Compressed runs push rerouted neighbours before their tree parent is emitted.
        if (!t.compressed && t.popped_at[u] > t.pushed_at[v]) {
            throw InvariantError("tree", "parent popped after child was pushed at vertex " + std::to_string(v));
        }
    }
}

}  // namespace uosp

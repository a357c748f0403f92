#pragma once

// Exact small-instance quantities: linearizations of (G, s), weightings that
// realize a given order, and the entropy inequalities relating timestamp
// intervals to the number of linearizations.
//
// A linearization is an order of V \ {s} that is the settle order of some
// positive weighting. An order qualifies iff every vertex has an in-neighbour
// among s and the vertices before it.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "uosp/bottleneck.hpp"
#include "uosp/dijkstra.hpp"
#include "uosp/errors.hpp"
#include "uosp/graph.hpp"

namespace uosp {

inline constexpr std::size_t kMaxExactLinearizations = 20;

namespace detail {

inline void require_permutation(const Graph& g, Vertex s, std::span<const Vertex> perm) {
    const std::size_t nv = g.vertex_count();
    if (s >= nv) throw UsageError("source vertex out of range");
    if (perm.size() + 1 != nv) throw UsageError("order must list every vertex except the source exactly once");
    std::vector<char> seen(nv, 0);
    seen[s] = 1;
    for (Vertex v : perm) {
        if (v >= nv || seen[v]) throw UsageError("order is not a permutation of the non-source vertices");
        seen[v] = 1;
    }
}

}  // namespace detail

inline bool is_linearization(const Graph& g, Vertex s, std::span<const Vertex> perm) {
    detail::require_permutation(g, s, perm);
    std::vector<char> placed(g.vertex_count(), 0);
    placed[s] = 1;
    const auto in = g.in_neighbors();
    for (Vertex v : perm) {
        if (std::none_of(in[v].begin(), in[v].end(), [&](Vertex u) { return placed[u] != 0; })) return false;
        placed[v] = 1;
    }
    return true;
}

// l(G, s) by dynamic programming over subsets of V \ {s}. Zero if some vertex
// is unreachable.
inline std::uint64_t count_linearizations(const Graph& g, Vertex s) {
    const std::size_t nv = g.vertex_count();
    if (s >= nv) throw UsageError("source vertex out of range");
    const std::size_t n = nv - 1;
    if (n > kMaxExactLinearizations) {
        throw CapacityError("exact linearization count supports at most " + std::to_string(kMaxExactLinearizations) +
                            " non-source vertices, got " + std::to_string(n) + "; use sampling for larger graphs");
    }
    std::vector<Vertex> index(nv, kNoVertex);
    std::vector<Vertex> vertex_at;
    for (Vertex v = 0; v < nv; ++v) {
        if (v == s) continue;
        index[v] = static_cast<Vertex>(vertex_at.size());
        vertex_at.push_back(v);
    }
    std::vector<std::uint32_t> in_mask(n, 0);
    std::vector<char> from_source(n, 0);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Vertex v = g.head(e);
        if (v == s) continue;
        const Vertex u = g.tail(e);
        if (u == s) {
            from_source[index[v]] = 1;
        } else {
            in_mask[index[v]] |= std::uint32_t{1} << index[u];
        }
    }
    std::vector<std::uint64_t> ways(std::size_t{1} << n, 0);
    ways[0] = 1;
    for (std::uint32_t set = 1; set < ways.size(); ++set) {
        std::uint64_t total = 0;
        for (std::uint32_t rest = set; rest != 0; rest &= rest - 1) {
            const auto i = static_cast<std::uint32_t>(std::countr_zero(rest));
            const std::uint32_t before = set & ~(std::uint32_t{1} << i);
            if (from_source[i] || (in_mask[i] & before)) total += ways[before];
        }
        ways[set] = total;
    }
    return ways.back();
}

namespace detail {

// Tree weights rank(child) - rank(parent), sentinel n + 1 on every other arc.
inline Graph rank_weighting(const Graph& g, std::span<const std::uint64_t> rank,
                            std::span<const EdgeId> tree_edge, Vertex s) {
    const Weight sentinel = g.vertex_count();  // n + 1 with n non-source vertices
    std::vector<Weight> w(g.edge_count(), sentinel);
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (v == s) continue;
        const EdgeId e = tree_edge[v];
        const Vertex u = g.tail(e);
        if (rank[v] <= rank[u]) throw ContractError("tree arc does not increase rank at vertex " + std::to_string(v));
        w[e] = rank[v] - rank[u];
    }
    return g.with_weights(w);
}

}  // namespace detail

// Weighting whose settle order is `perm`. Each vertex hangs off its earliest
// in-neighbour in {s} and the prefix before it.
inline Graph realize_order(const Graph& g, Vertex s, std::span<const Vertex> perm) {
    if (!is_linearization(g, s, perm)) throw UsageError("order is not a linearization");
    const std::size_t nv = g.vertex_count();
    std::vector<std::uint64_t> rank(nv, 0);
    for (std::size_t i = 0; i < perm.size(); ++i) rank[perm[i]] = i + 1;
    std::vector<EdgeId> witness(nv, static_cast<EdgeId>(-1));
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Vertex u = g.tail(e);
        const Vertex v = g.head(e);
        if (v == s || rank[u] >= rank[v]) continue;
        if (witness[v] == static_cast<EdgeId>(-1) || rank[u] < rank[g.tail(witness[v])]) witness[v] = e;
    }
    return detail::rank_weighting(g, rank, witness, s);
}

// Weighting from a plain run's trace and one value r[v] in [a_v, b_v] per
// non-source vertex (r[s] is ignored). Tree arcs of the trace get rank
// differences, all other arcs the sentinel n + 1, so every vertex lands at
// distance rank(r_v) and the settle order is V \ {s} sorted by r.
inline Graph realize_linearization(const Graph& g, const DijkstraTrace& trace, std::span<const double> r) {
    const std::size_t nv = g.vertex_count();
    const Vertex s = trace.source;
    if (trace.order.size() != nv || r.size() != nv) throw UsageError("trace and samples must cover every vertex");
    std::vector<Vertex> others;
    for (Vertex v = 0; v < nv; ++v) {
        if (v == s) continue;
        const double lo = static_cast<double>(trace.pushed_at[v]);
        const double hi = static_cast<double>(trace.popped_at[v]);
        if (!(r[v] >= lo && r[v] <= hi)) {
            throw UsageError("sample for vertex " + std::to_string(v) + " lies outside its interval");
        }
        others.push_back(v);
    }
    std::sort(others.begin(), others.end(), [&](Vertex a, Vertex b) { return r[a] < r[b]; });
    for (std::size_t i = 1; i < others.size(); ++i) {
        if (r[others[i - 1]] == r[others[i]]) throw UsageError("samples must be distinct");
    }
    std::vector<std::uint64_t> rank(nv, 0);
    for (std::size_t i = 0; i < others.size(); ++i) rank[others[i]] = i + 1;
    return detail::rank_weighting(g, rank, trace.tree_edge, s);
}

// ---------------------------------------------------------------------------

struct BoundCheck {
    std::string name;
    long double lhs = 0;
    long double rhs = 0;
    bool applicable = true;

    long double slack() const noexcept { return rhs - lhs; }
    bool pass() const noexcept { return !applicable || lhs <= rhs; }
};

struct BoundReport {
    std::size_t n = 0;  // non-source vertices
    std::size_t m = 0;
    std::size_t d = 0;  // BFS levels, including {s}
    std::optional<std::uint64_t> linearizations;
    std::vector<std::size_t> level_sizes;
    long double level_factorials = 0;  // product of |L_i|!
    double log_sum = 0;                // sum of log2(b_i - a_i) over V \ {s}
    double budget = 0;                 // sum of 1 + log2(b_i - a_i)
    ForwardEdges forward;
    std::uint64_t comparisons = 0;
    std::optional<double> entropy_ratio;  // log_sum / max(1, log2 l)

    BoundCheck interval_entropy;  // log_sum <= log2 l + n log2 e
    BoundCheck level_lower;       // 2^(n-d) <= product |L_i|!
    BoundCheck level_upper;       // product |L_i|! <= l

    bool ok() const noexcept { return interval_entropy.pass() && level_lower.pass() && level_upper.pass(); }
};

enum class ExactCount { required, if_feasible };

inline long double log2_or_zero(std::optional<std::uint64_t> x) {
    return x && *x > 0 ? std::log2(static_cast<long double>(*x)) : 0.0L;
}

// Checks the bounds against a trace of run(g, s, .). With ExactCount::required
// a graph beyond the exact-count capacity raises CapacityError; otherwise the
// checks that need l are marked not applicable.
inline BoundReport check_bounds(const Graph& g, Vertex s, const DijkstraTrace& trace,
                                ExactCount mode = ExactCount::required) {
    if (trace.compressed) throw UsageError("bound checks need a plain run");
    const BfsLevels levels = compute_levels(g, s);
    BoundReport r;
    r.n = g.vertex_count() - 1;
    r.m = g.edge_count();
    r.d = levels.depth();
    r.log_sum = interval_log_sum(trace);
    r.budget = interval_budget(trace);
    r.forward = forward_edge_count(g, trace);
    r.comparisons = trace.counters.comparisons();
    if (mode == ExactCount::required || r.n <= kMaxExactLinearizations) {
        r.linearizations = count_linearizations(g, s);
    }
    const long double log_l = log2_or_zero(r.linearizations);
    if (r.linearizations) r.entropy_ratio = static_cast<double>(r.log_sum / std::max(1.0L, log_l));

    // Products of factorials stay exact in 128 bits while they fit; beyond
    // that compare in the log domain.
    unsigned __int128 prod = 1;
    bool exact = true;
    long double log_prod = 0;
    for (const auto& level : levels.sets) {
        r.level_sizes.push_back(level.size());
        for (std::size_t k = 2; k <= level.size(); ++k) {
            log_prod += std::log2(static_cast<long double>(k));
            if (exact && prod > (~static_cast<unsigned __int128>(0)) / k) exact = false;
            if (exact) prod *= k;
        }
    }
    r.level_factorials = exact ? static_cast<long double>(prod) : std::exp2(log_prod);

    r.interval_entropy = {"interval-entropy", static_cast<long double>(r.log_sum),
                          log_l + static_cast<long double>(r.n) * 1.4426950408889634074L, r.linearizations.has_value()};

    // Powers of two and integers below 2^64 are exact in long double, and
    // rounding is monotone, so these comparisons agree with exact arithmetic.
    const long long e = static_cast<long long>(r.n) - static_cast<long long>(r.d);
    if (exact) {
        r.level_lower = {"level-lower", std::exp2(static_cast<long double>(e)), r.level_factorials, true};
    } else {
        r.level_lower = {"level-lower-log2", static_cast<long double>(e), log_prod, true};
    }
    if (r.linearizations) {
        r.level_upper = {"level-upper", r.level_factorials, static_cast<long double>(*r.linearizations), true};
    } else {
        r.level_upper = {"level-upper", r.level_factorials, 0, false};
    }
    return r;
}

}  // namespace uosp

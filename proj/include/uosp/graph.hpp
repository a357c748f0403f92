#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <queue>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "uosp/errors.hpp"

namespace uosp {

using Vertex = std::uint32_t;
using Weight = std::uint64_t;
using Distance = std::uint64_t;
using EdgeId = std::size_t;

inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();
inline constexpr Distance kInfinity = std::numeric_limits<Distance>::max();

struct Arc {
    Vertex from;
    Vertex to;
    Weight weight;

    friend auto operator<=>(const Arc&, const Arc&) = default;
};

// a + b, throwing OverflowError instead of wrapping.
inline Distance checked_add(Distance a, Weight b) {
    if (b > kInfinity - 1 - a) throw OverflowError("distance exceeds 64-bit range");
    return a + b;
}

// Immutable directed graph in compressed sparse row form. Arcs are sorted by
// (from, to, weight); an arc's position in that order is its EdgeId.
class Graph {
public:
    Graph() = default;

    Graph(std::size_t vertex_count, std::vector<Arc> arcs) {
        if (vertex_count >= kNoVertex) throw UsageError("too many vertices");
        for (const Arc& a : arcs) {
            if (a.from >= vertex_count || a.to >= vertex_count) {
                throw UsageError("arc endpoint out of range: " + std::to_string(a.from) + " -> " + std::to_string(a.to));
            }
            if (a.from == a.to) throw UsageError("self-loop at vertex " + std::to_string(a.from));
            if (a.weight == 0) throw UsageError("arc weight must be positive");
        }
        std::sort(arcs.begin(), arcs.end());
        offsets_.assign(vertex_count + 1, 0);
        heads_.reserve(arcs.size());
        weights_.reserve(arcs.size());
        tails_.reserve(arcs.size());
        for (const Arc& a : arcs) {
            ++offsets_[a.from + 1];
            tails_.push_back(a.from);
            heads_.push_back(a.to);
            weights_.push_back(a.weight);
        }
        for (std::size_t v = 0; v < vertex_count; ++v) offsets_[v + 1] += offsets_[v];
    }

    std::size_t vertex_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::size_t edge_count() const noexcept { return heads_.size(); }

    // Out-arcs of v occupy EdgeIds [begin(v), end(v)).
    EdgeId begin(Vertex v) const { return offsets_[v]; }
    EdgeId end(Vertex v) const { return offsets_[v + 1]; }
    std::size_t out_degree(Vertex v) const { return end(v) - begin(v); }

    Vertex tail(EdgeId e) const { return tails_[e]; }
    Vertex head(EdgeId e) const { return heads_[e]; }
    Weight weight(EdgeId e) const { return weights_[e]; }
    Arc arc(EdgeId e) const { return {tails_[e], heads_[e], weights_[e]}; }

    std::span<const Vertex> heads(Vertex v) const {
        return std::span<const Vertex>(heads_).subspan(begin(v), out_degree(v));
    }

    std::vector<Arc> arcs() const {
        std::vector<Arc> out;
        out.reserve(edge_count());
        for (EdgeId e = 0; e < edge_count(); ++e) out.push_back(arc(e));
        return out;
    }

    // Same topology with weights[e] on arc e. Arc order is preserved only if
    // the new weights keep parallel arcs sorted; EdgeIds of distinct
    // (from, to) pairs never move.
    Graph with_weights(std::span<const Weight> weights) const {
        if (weights.size() != edge_count()) throw UsageError("weight vector size does not match edge count");
        std::vector<Arc> a = arcs();
        for (EdgeId e = 0; e < a.size(); ++e) a[e].weight = weights[e];
        return Graph(vertex_count(), std::move(a));
    }

    // Predecessor lists, built on demand.
    std::vector<std::vector<Vertex>> in_neighbors() const {
        std::vector<std::vector<Vertex>> in(vertex_count());
        for (EdgeId e = 0; e < edge_count(); ++e) in[heads_[e]].push_back(tails_[e]);
        return in;
    }

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::vector<EdgeId> offsets_;
    std::vector<Vertex> tails_;
    std::vector<Vertex> heads_;
    std::vector<Weight> weights_;
};

// ---------------------------------------------------------------------------
// DIMACS shortest-path format: "p sp <n> <m>", "a <u> <v> <w>" (1-indexed),
// "c ..." comments.

struct DimacsGraph {
    Graph graph;
    Vertex source = 0;  // DIMACS vertex 1
};

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

template <class Int>
bool parse_int(std::string_view tok, Int& out) {
    const auto* first = tok.data();
    const auto* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

}  // namespace detail

inline DimacsGraph from_dimacs(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    std::uint64_t n = 0;
    std::uint64_t m = 0;
    std::vector<Arc> arcs;

    while (std::getline(in, line)) {
        ++line_no;
        const auto tok = detail::split_ws(line);
        if (tok.empty()) continue;
        if (tok[0] == "c") continue;
        if (tok[0] == "p") {
            if (have_header) throw ParseError(line_no, "duplicate problem line");
            if (tok.size() != 4 || tok[1] != "sp" || !detail::parse_int(tok[2], n) || !detail::parse_int(tok[3], m)) {
                throw ParseError(line_no, "malformed problem line, expected 'p sp <n> <m>'");
            }
            if (n >= kNoVertex) throw ParseError(line_no, "vertex count too large");
            have_header = true;
            arcs.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(m, 1u << 26)));
            continue;
        }
        if (tok[0] == "a") {
            if (!have_header) throw ParseError(line_no, "arc before problem line");
            std::uint64_t u = 0;
            std::uint64_t v = 0;
            std::int64_t w = 0;
            if (tok.size() != 4 || !detail::parse_int(tok[1], u) || !detail::parse_int(tok[2], v) ||
                !detail::parse_int(tok[3], w)) {
                throw ParseError(line_no, "malformed arc line, expected 'a <u> <v> <w>'");
            }
            if (u < 1 || u > n || v < 1 || v > n) throw ParseError(line_no, "vertex out of range");
            if (w <= 0) throw ParseError(line_no, "non-positive weight");
            if (u == v) throw ParseError(line_no, "self-loop");
            arcs.push_back({static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1), static_cast<Weight>(w)});
            continue;
        }
        throw ParseError(line_no, "unknown line type '" + std::string(tok[0]) + "'");
    }
    if (!have_header) throw ParseError(0, "missing problem line");
    if (arcs.size() != m) {
        throw ParseError(0, "header declares " + std::to_string(m) + " arcs, found " + std::to_string(arcs.size()));
    }
    return {Graph(static_cast<std::size_t>(n), std::move(arcs)), 0};
}

inline DimacsGraph from_dimacs(std::string_view text) {
    std::istringstream in{std::string(text)};
    return from_dimacs(in);
}

// Canonical form: header, then arcs sorted by (source, target, weight).
inline void to_dimacs(const Graph& g, std::ostream& out) {
    out << "p sp " << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        out << "a " << g.tail(e) + 1 << ' ' << g.head(e) + 1 << ' ' << g.weight(e) << '\n';
    }
}

inline std::string to_dimacs(const Graph& g) {
    std::ostringstream out;
    to_dimacs(g, out);
    return out.str();
}

// ---------------------------------------------------------------------------

namespace detail {

// Textbook lazy-deletion Dijkstra; unreachable vertices keep kInfinity.
// Ties pop by vertex id. `order` receives settled vertices in pop order.
inline std::vector<Distance> lazy_dijkstra(const Graph& g, Vertex s, std::vector<Vertex>* order = nullptr) {
    std::vector<Distance> dist(g.vertex_count(), kInfinity);
    std::vector<char> done(g.vertex_count(), 0);
    using Item = std::pair<Distance, Vertex>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[s] = 0;
    pq.push({0, s});
    while (!pq.empty()) {
        const auto [d, u] = pq.top();
        pq.pop();
        if (done[u]) continue;
        done[u] = 1;
        if (order) order->push_back(u);
        for (EdgeId e = g.begin(u); e < g.end(u); ++e) {
            const Vertex v = g.head(e);
            const Distance nd = checked_add(d, g.weight(e));
            if (nd < dist[v]) {
                dist[v] = nd;
                pq.push({nd, v});
            }
        }
    }
    return dist;
}

}  // namespace detail

struct ValidationReport {
    std::vector<Vertex> unreachable;
    // Groups of reachable vertices sharing one shortest-path distance.
    std::vector<std::vector<Vertex>> equidistant;

    bool all_reachable() const noexcept { return unreachable.empty(); }
    bool distinct_distances() const noexcept { return equidistant.empty(); }
    bool ok() const noexcept { return all_reachable() && distinct_distances(); }
};

// Checks the two standing assumptions: s reaches every vertex, and no two
// vertices are equidistant from s. Reports rather than throws.
inline ValidationReport validate(const Graph& g, Vertex s) {
    if (s >= g.vertex_count()) throw UsageError("source vertex out of range");
    ValidationReport report;
    const auto dist = detail::lazy_dijkstra(g, s);
    std::map<Distance, std::vector<Vertex>> by_distance;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (dist[v] == kInfinity) {
            report.unreachable.push_back(v);
        } else {
            by_distance[dist[v]].push_back(v);
        }
    }
    for (auto& [d, vs] : by_distance) {
        if (vs.size() > 1) report.equidistant.push_back(std::move(vs));
    }
    return report;
}

}  // namespace uosp

#pragma once

// Deterministic graph families. Every family puts the source at vertex 0 and
// guarantees that it reaches every vertex. Weights are uniform in
// [min_weight, max_weight]; the default range [1, 2^20] makes equal distances
// unlikely on the sizes used here.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "uosp/errors.hpp"
#include "uosp/graph.hpp"

namespace uosp {

enum class Family { path, star, random, lollipop, grid };

inline std::optional<Family> parse_family(std::string_view name) {
    if (name == "path") return Family::path;
    if (name == "star") return Family::star;
    if (name == "random") return Family::random;
    if (name == "lollipop") return Family::lollipop;
    if (name == "grid") return Family::grid;
    return std::nullopt;
}

inline std::string_view to_string(Family f) {
    switch (f) {
        case Family::path: return "path";
        case Family::star: return "star";
        case Family::random: return "random";
        case Family::lollipop: return "lollipop";
        case Family::grid: return "grid";
    }
    return "?";
}

struct GenParams {
    std::size_t n = 0;     // path/star/random: vertices besides the source
    std::size_t m = 0;     // random: arc count
    std::size_t p = 0;     // lollipop: chain length
    std::size_t q = 0;     // lollipop: size of the dense part
    double density = 0.5;  // lollipop: probability of each extra arc in the dense part
    std::size_t rows = 0;  // grid
    std::size_t cols = 0;  // grid
    Weight min_weight = 1;
    Weight max_weight = Weight{1} << 20;
};

struct GeneratedGraph {
    Graph graph;
    Vertex source = 0;
};

namespace detail {

class ArcSampler {
public:
    ArcSampler(const GenParams& params, std::uint64_t seed)
        : rng_(seed), weight_(params.min_weight, params.max_weight) {}

    std::mt19937_64& rng() noexcept { return rng_; }
    Weight weight() { return weight_(rng_); }
    Arc arc(Vertex from, Vertex to) { return {from, to, weight()}; }

    std::size_t below(std::size_t bound) {
        return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng_);
    }

private:
    std::mt19937_64 rng_;
    std::uniform_int_distribution<Weight> weight_;
};

inline std::uint64_t arc_key(Vertex u, Vertex v) { return (std::uint64_t{u} << 32) | v; }

// Random arborescence over `vertices` rooted at root: each vertex picks a
// parent among the root and the vertices placed before it.
inline void random_arborescence(ArcSampler& rs, Vertex root, std::vector<Vertex> vertices, std::vector<Arc>& arcs,
                                std::unordered_set<std::uint64_t>& seen) {
    std::shuffle(vertices.begin(), vertices.end(), rs.rng());
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const std::size_t pick = rs.below(i + 1);
        const Vertex parent = pick == 0 ? root : vertices[pick - 1];
        arcs.push_back(rs.arc(parent, vertices[i]));
        seen.insert(arc_key(parent, vertices[i]));
    }
}

inline void require(bool ok, const char* what) {
    if (!ok) throw UsageError(what);
}

}  // namespace detail

inline GeneratedGraph make_path(std::size_t n, std::uint64_t seed, const GenParams& params = {}) {
    detail::require(n >= 1, "path needs n >= 1");
    detail::ArcSampler rs(params, seed);
    std::vector<Arc> arcs;
    arcs.reserve(n);
    for (std::size_t v = 0; v < n; ++v) arcs.push_back(rs.arc(static_cast<Vertex>(v), static_cast<Vertex>(v + 1)));
    return {Graph(n + 1, std::move(arcs)), 0};
}

inline GeneratedGraph make_star(std::size_t n, std::uint64_t seed, const GenParams& params = {}) {
    detail::require(n >= 1, "star needs n >= 1");
    detail::ArcSampler rs(params, seed);
    std::vector<Arc> arcs;
    arcs.reserve(n);
    for (std::size_t v = 1; v <= n; ++v) arcs.push_back(rs.arc(0, static_cast<Vertex>(v)));
    return {Graph(n + 1, std::move(arcs)), 0};
}

// n + 1 vertices, m distinct arcs, n <= m <= n(n+1).
inline GeneratedGraph make_random(std::size_t n, std::size_t m, std::uint64_t seed, const GenParams& params = {}) {
    detail::require(n >= 1, "random needs n >= 1");
    const std::size_t nv = n + 1;
    detail::require(m >= n, "random needs m >= n to reach every vertex");
    detail::require(m <= nv * (nv - 1), "random needs m <= n(n+1)");
    detail::ArcSampler rs(params, seed);
    std::vector<Arc> arcs;
    arcs.reserve(m);
    std::unordered_set<std::uint64_t> seen;
    std::vector<Vertex> others(n);
    std::iota(others.begin(), others.end(), Vertex{1});
    detail::random_arborescence(rs, 0, others, arcs, seen);

    const std::size_t extra = m - n;
    if (extra * 2 <= nv * (nv - 1)) {
        while (arcs.size() < m) {
            const auto u = static_cast<Vertex>(rs.below(nv));
            const auto v = static_cast<Vertex>(rs.below(nv));
            if (u == v || !seen.insert(detail::arc_key(u, v)).second) continue;
            arcs.push_back(rs.arc(u, v));
        }
    } else {
        std::vector<std::pair<Vertex, Vertex>> free;
        for (Vertex u = 0; u < nv; ++u) {
            for (Vertex v = 0; v < nv; ++v) {
                if (u != v && !seen.count(detail::arc_key(u, v))) free.emplace_back(u, v);
            }
        }
        std::shuffle(free.begin(), free.end(), rs.rng());
        for (std::size_t i = 0; i < extra; ++i) arcs.push_back(rs.arc(free[i].first, free[i].second));
    }
    return {Graph(nv, std::move(arcs)), 0};
}

// Chain s -> 1 -> ... -> p feeding a random dense graph on q vertices.
inline GeneratedGraph make_lollipop(std::size_t p, std::size_t q, std::uint64_t seed, const GenParams& params = {}) {
    detail::require(p >= 1 && q >= 1, "lollipop needs p >= 1 and q >= 1");
    detail::require(params.density >= 0.0 && params.density <= 1.0, "lollipop density must be in [0, 1]");
    detail::ArcSampler rs(params, seed);
    const std::size_t nv = 1 + p + q;
    std::vector<Arc> arcs;
    for (std::size_t v = 0; v < p; ++v) arcs.push_back(rs.arc(static_cast<Vertex>(v), static_cast<Vertex>(v + 1)));

    const auto head = static_cast<Vertex>(p + 1);
    arcs.push_back(rs.arc(static_cast<Vertex>(p), head));
    std::unordered_set<std::uint64_t> seen;
    std::vector<Vertex> rest(q - 1);
    std::iota(rest.begin(), rest.end(), static_cast<Vertex>(head + 1));
    detail::random_arborescence(rs, head, rest, arcs, seen);

    std::bernoulli_distribution coin(params.density);
    for (auto u = head; u < nv; ++u) {
        for (auto v = head; v < nv; ++v) {
            if (u == v || seen.count(detail::arc_key(u, v))) continue;
            if (coin(rs.rng())) arcs.push_back(rs.arc(u, v));
        }
    }
    return {Graph(nv, std::move(arcs)), 0};
}

// rows x cols grid with arcs in both directions between 4-neighbours.
inline GeneratedGraph make_grid(std::size_t rows, std::size_t cols, std::uint64_t seed, const GenParams& params = {}) {
    detail::require(rows >= 1 && cols >= 1 && rows * cols >= 2, "grid needs at least two cells");
    detail::ArcSampler rs(params, seed);
    std::vector<Arc> arcs;
    auto id = [cols](std::size_t r, std::size_t c) { return static_cast<Vertex>(r * cols + c); };
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            if (c + 1 < cols) {
                arcs.push_back(rs.arc(id(r, c), id(r, c + 1)));
                arcs.push_back(rs.arc(id(r, c + 1), id(r, c)));
            }
            if (r + 1 < rows) {
                arcs.push_back(rs.arc(id(r, c), id(r + 1, c)));
                arcs.push_back(rs.arc(id(r + 1, c), id(r, c)));
            }
        }
    }
    return {Graph(rows * cols, std::move(arcs)), 0};
}

inline GeneratedGraph gen_family(Family family, const GenParams& params, std::uint64_t seed) {
    detail::require(params.min_weight >= 1 && params.min_weight <= params.max_weight, "invalid weight range");
    switch (family) {
        case Family::path: return make_path(params.n, seed, params);
        case Family::star: return make_star(params.n, seed, params);
        case Family::random: return make_random(params.n, params.m, seed, params);
        case Family::lollipop: return make_lollipop(params.p, params.q, seed, params);
        case Family::grid: return make_grid(params.rows, params.cols, seed, params);
    }
    throw UsageError("unknown family");
}

}  // namespace uosp

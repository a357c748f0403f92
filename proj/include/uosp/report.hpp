#pragma once

// Machine-readable summaries of traces and bound reports.

#include <cstdint>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "uosp/analysis.hpp"
#include "uosp/dijkstra.hpp"
#include "uosp/graph.hpp"

namespace uosp {

// 64-bit FNV-1a over the little-endian bytes of each value.
template <class T>
std::uint64_t fnv1a(const std::vector<T>& values) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const T& v : values) {
        auto x = static_cast<std::uint64_t>(v);
        for (std::size_t b = 0; b < sizeof(T); ++b) {
            h ^= (x >> (8 * b)) & 0xff;
            h *= 0x100000001b3ULL;
        }
    }
    return h;
}

inline std::string hex64(std::uint64_t x) {
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << x;
    return out.str();
}

inline std::string order_digest(const DijkstraTrace& t) { return hex64(fnv1a(t.order)); }
inline std::string distance_digest(const DijkstraTrace& t) { return hex64(fnv1a(t.dist)); }

inline nlohmann::ordered_json trace_json(const Graph& g, const DijkstraTrace& t, std::uint64_t wall_ns) {
    const auto& c = t.counters;
    nlohmann::ordered_json j;
    j["n"] = g.vertex_count();
    j["m"] = g.edge_count();
    j["source"] = t.source;
    j["heap"] = std::string(to_string(t.heap));
    j["algo"] = t.compressed ? "compressed" : "plain";
    j["distance_digest"] = distance_digest(t);
    j["order_digest"] = order_digest(t);
    j["pushes"] = c.pushes;
    j["pops"] = c.pops;
    j["decrease_keys"] = c.decrease_keys;
    j["skipped"] = c.skipped;
    j["structural_steps"] = c.heap_steps;
    j["pop_steps"] = c.pop_steps;
    j["heap_comparisons"] = c.heap_comparisons;
    j["relax_comparisons"] = c.relax_comparisons;
    j["search_comparisons"] = c.search_comparisons;
    j["comparisons"] = c.comparisons();
    j["budget"] = interval_budget(t);
    j["log_interval_sum"] = interval_log_sum(t);
    j["log_heap_size_sum"] = c.log_heap_sizes;
    j["wall_ns"] = wall_ns;
    return j;
}

inline nlohmann::ordered_json check_json(const BoundCheck& c) {
    nlohmann::ordered_json j;
    j["name"] = c.name;
    j["lhs"] = static_cast<double>(c.lhs);
    j["rhs"] = static_cast<double>(c.rhs);
    j["slack"] = static_cast<double>(c.slack());
    j["applicable"] = c.applicable;
    j["pass"] = c.pass();
    return j;
}

inline nlohmann::ordered_json bound_json(const BoundReport& r) {
    nlohmann::ordered_json j;
    j["n"] = r.n;
    j["m"] = r.m;
    j["d"] = r.d;
    j["linearizations"] = r.linearizations ? nlohmann::ordered_json(*r.linearizations) : nlohmann::ordered_json();
    j["level_sizes"] = r.level_sizes;
    j["level_factorials"] = static_cast<double>(r.level_factorials);
    j["log_interval_sum"] = r.log_sum;
    j["budget"] = r.budget;
    j["forward_edges"] = r.forward.tree_excluding;
    j["forward_edges_literal"] = r.forward.paper_literal;
    j["comparisons"] = r.comparisons;
    j["entropy_ratio"] = r.entropy_ratio ? nlohmann::ordered_json(*r.entropy_ratio) : nlohmann::ordered_json();
    j["checks"] = {check_json(r.interval_entropy), check_json(r.level_lower), check_json(r.level_upper)};
    j["ok"] = r.ok();
    return j;
}

inline constexpr const char* kBoundCsvHeader =
    "n,m,d,linearizations,log_interval_sum,budget,forward_edges,forward_edges_literal,comparisons,"
    "interval_entropy_slack,level_lower_slack,level_upper_slack,ok";

inline std::string bound_csv_row(const BoundReport& r) {
    auto slack = [](const BoundCheck& c) -> std::string {
        if (!c.applicable) return "";
        std::ostringstream out;
        out << std::setprecision(10) << static_cast<double>(c.slack());
        return out.str();
    };
    std::ostringstream out;
    out << std::setprecision(10) << r.n << ',' << r.m << ',' << r.d << ','
        << (r.linearizations ? std::to_string(*r.linearizations) : std::string()) << ',' << r.log_sum << ','
        << r.budget << ',' << r.forward.tree_excluding << ',' << r.forward.paper_literal << ',' << r.comparisons << ','
        << slack(r.interval_entropy) << ',' << slack(r.level_lower) << ',' << slack(r.level_upper) << ','
        << (r.ok() ? 1 : 0);
    return out.str();
}

}  // namespace uosp

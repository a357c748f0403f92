#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "uosp/dijkstra.hpp"
#include "uosp/generators.hpp"

using namespace uosp;

TEST(Dijkstra, HandTraceSmallGraph) {
    // s -> a (1), s -> b (5), a -> b (1)
    const Graph g(3, {{0, 1, 1}, {0, 2, 5}, {1, 2, 1}});
    for (auto k : kAllHeapKinds) {
        const auto t = run(g, 0, k);
        EXPECT_EQ(t.order, (std::vector<Vertex>{0, 1, 2}));
        EXPECT_EQ(t.dist, (std::vector<Distance>{0, 1, 2}));
        EXPECT_EQ(t.pushed_at, (std::vector<std::uint64_t>{0, 1, 2}));
        EXPECT_EQ(t.popped_at, (std::vector<std::uint64_t>{1, 3, 3}));
        // b was first pushed by s; the later improvement through a does not move it.
        EXPECT_EQ(t.tree_parent[2], 0u);
        EXPECT_EQ(t.counters.decrease_keys, 1u);
        EXPECT_EQ(t.counters.pushes, 3u);
        EXPECT_EQ(t.counters.pops, 3u);
        verify_trace(g, t);
    }
}

TEST(Dijkstra, PathBudgetEqualsN) {
    const auto g = make_path(10, 3).graph;
    const auto t = run(g, 0, HeapKind::timestamp);
    EXPECT_DOUBLE_EQ(interval_budget(t), 10.0);
    EXPECT_DOUBLE_EQ(interval_log_sum(t), 0.0);
}

TEST(Dijkstra, StarIntervalsGrowWithRank) {
    // All leaves are pushed while popping s, then popped in weight order.
    const Graph g(4, {{0, 1, 30}, {0, 2, 10}, {0, 3, 20}});
    const auto t = run(g, 0, HeapKind::timestamp);
    EXPECT_EQ(t.order, (std::vector<Vertex>{0, 2, 3, 1}));
    for (Vertex v = 1; v <= 3; ++v) EXPECT_EQ(t.popped_at[v], 4u);
    EXPECT_EQ(t.pushed_at[1], 1u);
    EXPECT_EQ(t.pushed_at[2], 2u);
    EXPECT_EQ(t.pushed_at[3], 3u);
}

TEST(Dijkstra, Errors) {
    const Graph g(3, {{0, 1, 1}});
    try {
        run(g, 0, HeapKind::binary);
        FAIL();
    } catch (const InputError& e) {
        EXPECT_EQ(e.vertex(), 2u);
    }
    EXPECT_THROW(run(g, 5, HeapKind::binary), UsageError);
    EXPECT_THROW(run(Graph(2, {{0, 1, kInfinity - 1}, {1, 0, 5}}), 1, HeapKind::fibonacci), OverflowError);
}

TEST(Dijkstra, AllHeapsMatchReferenceAndBellmanFord) {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 150; ++i) {
        const std::size_t nv = 2 + rng() % 60;
        const auto g = oracle::random_reachable(nv, 0.08, rng, i % 2 ? 1000000 : 4);
        const auto ref = run_reference(g, 0);
        EXPECT_EQ(ref.dist, oracle::bellman_ford(g, 0));
        EXPECT_EQ(ref.order, oracle::sorted_order(ref.dist));
        for (auto k : kAllHeapKinds) {
            const auto t = run(g, 0, k);
            ASSERT_EQ(t.dist, ref.dist);
            ASSERT_EQ(t.order, ref.order);
            verify_trace(g, t);
        }
    }
}

TEST(Dijkstra, TimestampsAreHeapIndependent) {
    const auto g = make_random(200, 1500, 3).graph;
    const auto a = run(g, 0, HeapKind::binary);
    const auto b = run(g, 0, HeapKind::timestamp);
    EXPECT_EQ(a.pushed_at, b.pushed_at);
    EXPECT_EQ(a.popped_at, b.popped_at);
    EXPECT_EQ(a.tree_parent, b.tree_parent);
    EXPECT_EQ(a.counters.relax_comparisons, b.counters.relax_comparisons);
}

TEST(Dijkstra, CountersAreConsistent) {
    const auto g = make_random(300, 3000, 8).graph;
    for (auto k : kAllHeapKinds) {
        const auto t = run(g, 0, k);
        EXPECT_EQ(t.counters.pushes, g.vertex_count());
        EXPECT_EQ(t.counters.pops, g.vertex_count());
        EXPECT_LE(t.counters.pop_steps, t.counters.heap_steps);
        EXPECT_EQ(t.counters.comparisons(), t.counters.heap_comparisons + t.counters.relax_comparisons);
    }
}

TEST(Dijkstra, VerifyTraceCatchesTampering) {
    const auto g = make_random(30, 100, 1).graph;
    auto t = run(g, 0, HeapKind::binary);
    std::swap(t.order[3], t.order[4]);
    EXPECT_THROW(verify_trace(g, t), InvariantError);
}

TEST(Dijkstra, ParseHeapKind) {
    EXPECT_EQ(parse_heap_kind("timestamp"), HeapKind::timestamp);
    EXPECT_FALSE(parse_heap_kind("pairing").has_value());
}

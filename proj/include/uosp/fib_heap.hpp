#pragma once

// Fibonacci heap with an index-based node arena.
//
// Several heaps may share one NodeArena. Melding two heaps over the same arena
// is a constant-time root-list splice, and node handles (arena indices) stay
// valid across melds because nodes never move. Arena slots are never reused,
// so a handle to a popped element stays dead for the arena's lifetime.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "uosp/errors.hpp"
#include "uosp/heap_common.hpp"

namespace uosp {

struct NodeHandle {
    std::uint32_t index = kNil;

    bool valid() const noexcept { return index != kNil; }
    friend bool operator==(NodeHandle, NodeHandle) = default;
};

template <class Key>
class MeldableHeap;

template <class Key>
class NodeArena {
public:
    struct Node {
        Key key{};
        ElementId element = 0;
        std::uint32_t parent = kNil;
        std::uint32_t child = kNil;
        std::uint32_t left = kNil;
        std::uint32_t right = kNil;
        std::uint32_t degree = 0;
        bool marked = false;
        bool alive = true;
    };

    std::size_t node_count() const noexcept { return nodes_.size(); }

    bool is_alive(NodeHandle h) const noexcept {
        return h.index < nodes_.size() && nodes_[h.index].alive;
    }

    // Handle of the live node carrying `element`, or an invalid handle.
    NodeHandle find(ElementId element) const noexcept {
        if (element >= live_.size()) return {};
        return {live_[element]};
    }

    const Node& node(NodeHandle h) const { return nodes_.at(h.index); }

    HeapStats stats;

private:
    friend class MeldableHeap<Key>;

    std::uint32_t create(ElementId element, const Key& key) {
        if (element < live_.size() && live_[element] != kNil) {
            throw UsageError("element " + std::to_string(element) + " is already in the heap");
        }
        if (nodes_.size() >= kNil) throw CapacityError("node arena exhausted");
        if (element >= live_.size()) live_.resize(std::size_t{element} + 1, kNil);
        const auto idx = static_cast<std::uint32_t>(nodes_.size());
        Node& n = nodes_.emplace_back();
        n.key = key;
        n.element = element;
        n.left = n.right = idx;
        live_[element] = idx;
        return idx;
    }

    void retire(std::uint32_t idx) {
        Node& n = nodes_[idx];
        n.alive = false;
        live_[n.element] = kNil;
    }

    std::vector<Node> nodes_;
    std::vector<std::uint32_t> live_;  // element -> node index
    std::vector<std::uint32_t> roots_scratch_;
    std::vector<std::uint32_t> degree_table_;
};

template <class Key>
class MeldableHeap {
public:
    using Arena = NodeArena<Key>;
    using Entry = HeapEntry<Key>;

    MeldableHeap() : arena_(std::make_shared<Arena>()) {}
    explicit MeldableHeap(std::shared_ptr<Arena> arena) : arena_(std::move(arena)) {
        if (!arena_) throw UsageError("null node arena");
    }

    MeldableHeap(const MeldableHeap&) = delete;
    MeldableHeap& operator=(const MeldableHeap&) = delete;

    // A moved-from heap is empty and keeps sharing the arena.
    MeldableHeap(MeldableHeap&& o) noexcept
        : arena_(o.arena_), min_(std::exchange(o.min_, kNil)), size_(std::exchange(o.size_, 0)) {}
    MeldableHeap& operator=(MeldableHeap&& o) noexcept {
        if (this != &o) {
            arena_ = o.arena_;
            min_ = std::exchange(o.min_, kNil);
            size_ = std::exchange(o.size_, 0);
        }
        return *this;
    }

    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }
    const std::shared_ptr<Arena>& arena() const noexcept { return arena_; }
    const HeapStats& stats() const noexcept { return arena_->stats; }

    bool is_alive(NodeHandle h) const noexcept { return arena_->is_alive(h); }
    const Key& key(NodeHandle h) const { return node_checked(h).key; }
    ElementId element(NodeHandle h) const { return node_checked(h).element; }

    NodeHandle push(ElementId element, const Key& key) {
        const std::uint32_t x = arena_->create(element, key);
        if (min_ == kNil) {
            min_ = x;
        } else {
            insert_right(min_, x);
            if (less(x, min_)) min_ = x;
        }
        ++arena_->stats.steps;
        ++size_;
        return {x};
    }

    Entry peek_min() const {
        if (min_ == kNil) throw EmptyHeapError();
        const auto& n = nodes()[min_];
        return {n.element, n.key};
    }

    Entry pop_min() {
        if (min_ == kNil) throw EmptyHeapError();
        auto& ns = nodes();
        const std::uint32_t z = min_;
        const Entry out{ns[z].element, ns[z].key};

        // Children become roots.
        if (const std::uint32_t c = ns[z].child; c != kNil) {
            std::uint32_t x = c;
            do {
                ns[x].parent = kNil;
                ns[x].marked = false;
                ++arena_->stats.steps;
                x = ns[x].right;
            } while (x != c);
            concat(z, c);
            ns[z].child = kNil;
            ns[z].degree = 0;
        }

        std::uint32_t next = ns[z].right;
        unlink(z);
        arena_->retire(z);
        --size_;
        if (size_ == 0) {
            min_ = kNil;
        } else {
            consolidate(next);
        }
        return out;
    }

    void decrease_key(NodeHandle h, const Key& key) {
        if (!arena_->is_alive(h)) throw UsageError("decrease_key on a dead handle");
        auto& ns = nodes();
        const std::uint32_t x = h.index;
        if (ns[x].key < key) throw ContractError("decrease_key would increase the key");
        ns[x].key = key;
        const std::uint32_t p = ns[x].parent;
        if (p != kNil && less(x, p)) {
            cut(x, p);
            cascading_cut(p);
        }
        if (ns[x].parent == kNil && less(x, min_)) min_ = x;
    }

    // Absorbs `other` in constant time. Both heaps must share the arena unless
    // one of them is empty. `other` is left empty.
    void meld(MeldableHeap&& other) {
        if (other.empty()) return;
        if (empty()) {
            arena_ = other.arena_;
            min_ = std::exchange(other.min_, kNil);
            size_ = std::exchange(other.size_, 0);
            return;
        }
        if (arena_ != other.arena_) throw UsageError("meld requires heaps over the same node arena");
        concat(min_, other.min_);
        ++arena_->stats.steps;
        if (less(other.min_, min_)) min_ = other.min_;
        size_ += other.size_;
        other.min_ = kNil;
        other.size_ = 0;
    }

    friend MeldableHeap meld(MeldableHeap a, MeldableHeap b) {
        a.meld(std::move(b));
        return a;
    }

    // Visits every live (element, key) in unspecified order.
    template <class F>
    void for_each(F&& f) const {
        if (min_ == kNil) return;
        const auto& ns = nodes();
        std::vector<std::uint32_t> rings{min_};
        while (!rings.empty()) {
            const std::uint32_t start = rings.back();
            rings.pop_back();
            std::uint32_t x = start;
            do {
                f(Entry{ns[x].element, ns[x].key});
                if (ns[x].child != kNil) rings.push_back(ns[x].child);
                x = ns[x].right;
            } while (x != start);
        }
    }

    // Full structural check; throws InvariantError naming the broken rule.
    void check_invariants() const {
        const auto& ns = nodes();
        if (min_ == kNil) {
            if (size_ != 0) throw InvariantError("size", "no minimum but size is " + std::to_string(size_));
            return;
        }
        if (ns[min_].parent != kNil) throw InvariantError("min-handle", "minimum is not a root");
        std::size_t count = 0;
        struct Frame { std::uint32_t ring; std::uint32_t parent; };
        std::vector<Frame> work{{min_, kNil}};
        while (!work.empty()) {
            const Frame fr = work.back();
            work.pop_back();
            std::uint32_t x = fr.ring;
            std::uint32_t children = 0;
            do {
                const auto& n = ns[x];
                if (!n.alive) throw InvariantError("liveness", "dead node reachable");
                if (n.parent != fr.parent) throw InvariantError("parent-link", "inconsistent parent pointer");
                if (ns[n.right].left != x) throw InvariantError("sibling-link", "broken sibling ring");
                if (fr.parent != kNil) {
                    const auto& p = ns[fr.parent];
                    if (entry_less(n.key, n.element, p.key, p.element)) {
                        throw InvariantError("heap-order", "child key below parent key");
                    }
                } else if (entry_less(n.key, n.element, ns[min_].key, ns[min_].element)) {
                    throw InvariantError("min-handle", "a root is smaller than the minimum");
                }
                if (n.child != kNil) work.push_back({n.child, x});
                ++count;
                ++children;
                if (count > size_) throw InvariantError("size", "more reachable nodes than size");
                x = n.right;
            } while (x != fr.ring);
            if (fr.parent != kNil && ns[fr.parent].degree != children) {
                throw InvariantError("degree", "degree does not match child count");
            }
        }
        if (count != size_) throw InvariantError("size", "reachable node count differs from size");
    }

private:
    using Node = typename Arena::Node;

    std::vector<Node>& nodes() noexcept { return arena_->nodes_; }
    const std::vector<Node>& nodes() const noexcept { return arena_->nodes_; }

    const Node& node_checked(NodeHandle h) const {
        if (h.index >= nodes().size()) throw UsageError("unknown node handle");
        return nodes()[h.index];
    }

    bool less(std::uint32_t a, std::uint32_t b) const noexcept {
        ++arena_->stats.comparisons;
        const auto& ns = nodes();
        return entry_less(ns[a].key, ns[a].element, ns[b].key, ns[b].element);
    }

    void insert_right(std::uint32_t at, std::uint32_t x) noexcept {
        auto& ns = nodes();
        const std::uint32_t r = ns[at].right;
        ns[x].left = at;
        ns[x].right = r;
        ns[at].right = x;
        ns[r].left = x;
    }

    // Joins two disjoint circular lists.
    void concat(std::uint32_t a, std::uint32_t b) noexcept {
        auto& ns = nodes();
        const std::uint32_t ar = ns[a].right;
        const std::uint32_t bl = ns[b].left;
        ns[a].right = b;
        ns[b].left = a;
        ns[bl].right = ar;
        ns[ar].left = bl;
    }

    void unlink(std::uint32_t x) noexcept {
        auto& ns = nodes();
        ns[ns[x].left].right = ns[x].right;
        ns[ns[x].right].left = ns[x].left;
        ns[x].left = ns[x].right = x;
    }

    // Makes y a child of x.
    void link(std::uint32_t y, std::uint32_t x) noexcept {
        auto& ns = nodes();
        ns[y].parent = x;
        ns[y].marked = false;
        if (ns[x].child == kNil) {
            ns[y].left = ns[y].right = y;
            ns[x].child = y;
        } else {
            insert_right(ns[x].child, y);
        }
        ++ns[x].degree;
        ++arena_->stats.steps;
    }

    void cut(std::uint32_t x, std::uint32_t p) noexcept {
        auto& ns = nodes();
        if (ns[x].right == x) {
            ns[p].child = kNil;
        } else {
            if (ns[p].child == x) ns[p].child = ns[x].right;
            unlink(x);
        }
        --ns[p].degree;
        ns[x].parent = kNil;
        ns[x].marked = false;
        insert_right(min_, x);
        ++arena_->stats.steps;
    }

    void cascading_cut(std::uint32_t y) noexcept {
        auto& ns = nodes();
        for (std::uint32_t z = ns[y].parent; z != kNil; z = ns[y].parent) {
            if (!ns[y].marked) {
                ns[y].marked = true;
                return;
            }
            cut(y, z);
            y = z;
        }
    }

    static std::size_t degree_bound(std::size_t n) {
        // floor(log_phi n) + 2 slots cover every reachable degree.
        static const double inv_log_phi = 1.0 / std::log((1.0 + std::sqrt(5.0)) / 2.0);
        return static_cast<std::size_t>(std::log(static_cast<double>(n) + 1.0) * inv_log_phi) + 2;
    }

    void consolidate(std::uint32_t start) {
        auto& ns = nodes();
        auto& roots = arena_->roots_scratch_;
        auto& table = arena_->degree_table_;
        roots.clear();
        std::uint32_t x = start;
        do {
            roots.push_back(x);
            x = ns[x].right;
        } while (x != start);

        table.assign(degree_bound(size_), kNil);
        for (std::uint32_t w : roots) {
            std::uint32_t r = w;
            std::size_t d = ns[r].degree;
            for (;;) {
                if (d >= table.size()) table.resize(d + 1, kNil);
                if (table[d] == kNil) break;
                std::uint32_t y = table[d];
                if (less(y, r)) std::swap(r, y);
                link(y, r);
                table[d] = kNil;
                ++d;
            }
            table[d] = r;
        }

        min_ = kNil;
        std::uint32_t first = kNil;
        std::uint32_t prev = kNil;
        for (std::uint32_t r : table) {
            if (r == kNil) continue;
            if (first == kNil) {
                first = r;
            } else {
                ns[prev].right = r;
                ns[r].left = prev;
            }
            prev = r;
            if (min_ == kNil || less(r, min_)) min_ = r;
        }
        ns[prev].right = first;
        ns[first].left = prev;
    }

    std::shared_ptr<Arena> arena_;
    std::uint32_t min_ = kNil;
    std::size_t size_ = 0;
};

// Adapter addressing elements by id instead of by handle. Used where the
// caller (Dijkstra) only knows vertex ids.
template <class Key>
class FibonacciQueue {
public:
    using Entry = HeapEntry<Key>;

    void push(ElementId element, const Key& key) { heap_.push(element, key); }

    void decrease_key(ElementId element, const Key& key) {
        const NodeHandle h = heap_.arena()->find(element);
        if (!h.valid()) throw UsageError("decrease_key on an element not in the heap");
        heap_.decrease_key(h, key);
    }

    Entry pop() { return heap_.pop_min(); }
    Entry peek() const { return heap_.peek_min(); }
    bool empty() const noexcept { return heap_.empty(); }
    std::size_t size() const noexcept { return heap_.size(); }
    HeapStats stats() const noexcept { return heap_.stats(); }

private:
    MeldableHeap<Key> heap_;
};

}  // namespace uosp

#pragma once

// Timestamp-optimal heap.
//
// A clock t advances on every push; element x_i gets push time a_i = t and,
// when popped, pop time b_i = t. Elements live in Fibonacci heaps tagged with
// half-open intervals of push times. Bucket j holds one or two such heaps,
// each covering exactly 2^j push times; lower buckets hold younger intervals,
// and all intervals together partition [0, t). Pushing works like incrementing
// a redundant binary counter: a bucket that reaches three heaps melds its two
// oldest into the next bucket.
//
// minima_[j] is the smallest entry of bucket j. Bit j of suffix_ is set iff
// minima_[j] <= minima_[k] for every k > j, so the lowest set bit names the
// bucket holding the global minimum. Popping from bucket j costs O(1 + j)
// amortized, and an element found in bucket j satisfies j <= log2(b_i - a_i).

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "uosp/errors.hpp"
#include "uosp/fib_heap.hpp"
#include "uosp/heap_common.hpp"

namespace uosp {

struct TimestampHeapTestAccess;

template <class Key>
class TimestampHeap {
public:
    using Entry = HeapEntry<Key>;

    struct Handle {
        ElementId element = 0;
        std::uint64_t pushed_at = 0;
        NodeHandle node;
    };

    struct PopResult {
        ElementId element;
        Key key;
        std::uint64_t pushed_at;
        std::uint64_t popped_at;
    };

    // Half-open [lo, hi) of push times.
    struct Interval {
        std::uint64_t lo;
        std::uint64_t hi;

        std::uint64_t length() const noexcept { return hi - lo; }
        bool contains(std::uint64_t x) const noexcept { return lo <= x && x < hi; }
        friend bool operator==(const Interval&, const Interval&) = default;
    };

    struct Location {
        std::size_t bucket;
        std::size_t slot;  // 0 = oldest heap of the bucket
    };

    // Per-phase share of stats().steps.
    struct PhaseSteps {
        std::uint64_t push = 0;
        std::uint64_t pop = 0;
        std::uint64_t decrease_key = 0;
    };

    static constexpr std::size_t kMaxBuckets = 63;

    TimestampHeap() : arena_(std::make_shared<NodeArena<Key>>()) {}

    TimestampHeap(const TimestampHeap&) = delete;
    TimestampHeap& operator=(const TimestampHeap&) = delete;
    TimestampHeap(TimestampHeap&&) noexcept = default;
    TimestampHeap& operator=(TimestampHeap&&) noexcept = default;

    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }
    std::uint64_t clock() const noexcept { return clock_; }
    std::size_t bucket_count() const noexcept { return buckets_.size(); }
    std::uint64_t suffix_mask() const noexcept { return suffix_; }
    const std::optional<Entry>& minimum(std::size_t bucket) const { return minima_.at(bucket); }
    HeapStats stats() const noexcept { return arena_->stats + own_; }
    const PhaseSteps& phase_steps() const noexcept { return phase_; }

    // Lookups that landed outside the {l-1, l, l+1} window around
    // l = floor(log2(t - a_i)). Expected to stay zero.
    std::uint64_t wide_window_hits() const noexcept { return wide_window_hits_; }

    std::vector<Interval> intervals(std::size_t bucket) const {
        std::vector<Interval> out;
        for (const auto& ih : buckets_.at(bucket)) out.push_back(ih.interval);
        return out;
    }

    bool contains(ElementId element) const noexcept { return arena_->find(element).valid(); }

    Handle handle_of(ElementId element) const {
        const NodeHandle node = arena_->find(element);
        if (!node.valid()) throw UsageError("element " + std::to_string(element) + " is not in the heap");
        return {element, pushed_at_[element], node};
    }

    Handle push(ElementId element, const Key& key) {
        const std::uint64_t before = stats().steps;
        if (arena_->find(element).valid()) {
            throw UsageError("element " + std::to_string(element) + " is already in the heap");
        }
        if (clock_ >= (std::uint64_t{1} << kMaxBuckets)) throw CapacityError("timestamp clock exhausted");

        const std::uint64_t a = clock_++;
        if (element >= pushed_at_.size()) pushed_at_.resize(std::size_t{element} + 1, 0);
        pushed_at_[element] = a;

        if (buckets_.empty()) add_bucket();
        IntervalHeap fresh{MeldableHeap<Key>(arena_), {a, a + 1}};
        const NodeHandle node = fresh.heap.push(element, key);
        buckets_[0].push_back(std::move(fresh));
        ++size_;
        recompute_minimum(0);
        refresh_bit(0);

        for (std::size_t j = 0; buckets_[j].size() == 3; ++j) {
            if (j + 1 == buckets_.size()) add_bucket();
            auto& bucket = buckets_[j];
            IntervalHeap merged{std::move(bucket[0].heap), {bucket[0].interval.lo, bucket[1].interval.hi}};
            merged.heap.meld(std::move(bucket[1].heap));
            bucket.erase(bucket.begin(), bucket.begin() + 2);
            buckets_[j + 1].push_back(std::move(merged));
            recompute_minimum(j);
            recompute_minimum(j + 1);
            refresh_bit(j + 1);
            refresh_bit(j);
        }
        phase_.push += stats().steps - before;
        return {element, a, node};
    }

    // Bucket and heap holding the element, found from a_i and t alone.
    Location locate(const Handle& h) const {
        check_handle(h);
        const std::uint64_t age = clock_ - h.pushed_at;
        const std::size_t l = static_cast<std::size_t>(std::bit_width(age)) - 1;
        const std::size_t first = l >= 2 ? l - 2 : 0;
        const std::size_t last = std::min(l + 1, buckets_.size() - 1);
        for (std::size_t j = first; j <= last; ++j) {
            const auto& bucket = buckets_[j];
            for (std::size_t s = 0; s < bucket.size(); ++s) {
                ++own_.steps;
                if (bucket[s].interval.contains(h.pushed_at)) {
                    if (j + 1 < l) ++wide_window_hits_;
                    return {j, s};
                }
            }
        }
        throw InvariantError("locate", "no interval near bucket " + std::to_string(l) +
                                           " contains push time " + std::to_string(h.pushed_at));
    }

    void decrease_key(const Handle& h, const Key& key) {
        const std::uint64_t before = stats().steps;
        const Location loc = locate(h);
        const std::size_t j = loc.bucket;
        buckets_[j][loc.slot].heap.decrease_key(h.node, key);
        recompute_minimum(j);
        refresh_bit(j);
        if (bit(j)) {
            // Clear set bits below j whose minimum now exceeds minima_[j].
            std::size_t below = j;
            while (std::uint64_t lower = suffix_ & low_mask(below)) {
                const std::size_t jp = static_cast<std::size_t>(63 - std::countl_zero(lower));
                ++own_.steps;
                if (!slot_less(minima_[j], minima_[jp])) break;
                suffix_ &= ~(std::uint64_t{1} << jp);
                below = jp;
            }
        }
        phase_.decrease_key += stats().steps - before;
    }

    void decrease_key(ElementId element, const Key& key) { decrease_key(handle_of(element), key); }

    Entry peek() const {
        if (size_ == 0) throw EmptyHeapError();
        return *minima_[static_cast<std::size_t>(std::countr_zero(suffix_))];
    }

    PopResult pop() {
        if (size_ == 0) throw EmptyHeapError();
        const std::uint64_t before = stats().steps;
        const auto j = static_cast<std::size_t>(std::countr_zero(suffix_));
        if (j >= buckets_.size() || !minima_[j]) {
            throw InvariantError("suffix-min", "lowest set bit names an empty bucket");
        }
        auto& bucket = buckets_[j];
        std::size_t pick = bucket.size();
        for (std::size_t s = 0; s < bucket.size(); ++s) {
            if (bucket[s].heap.empty()) continue;
            if (pick == bucket.size() || heap_less(bucket[s].heap.peek_min(), bucket[pick].heap.peek_min())) {
                pick = s;
            }
        }
        const Entry e = bucket[pick].heap.pop_min();
        --size_;
        recompute_minimum(j);
        for (std::size_t l = j + 1; l-- > 0;) refresh_bit(l);
        phase_.pop += stats().steps - before;
        return {e.element, e.key, pushed_at_[e.element], clock_};
    }

    // Full scan of every structural rule; throws InvariantError naming it.
    void check_invariants() const {
        std::vector<Interval> all;
        std::size_t elements = 0;
        for (std::size_t j = 0; j < buckets_.size(); ++j) {
            const auto& bucket = buckets_[j];
            const std::string where = "bucket " + std::to_string(j);
            if (bucket.empty() || bucket.size() > 2) {
                throw InvariantError("bucket-occupancy", where + " holds " + std::to_string(bucket.size()) + " heaps");
            }
            std::optional<Entry> best;
            for (std::size_t s = 0; s < bucket.size(); ++s) {
                const auto& ih = bucket[s];
                if (ih.interval.length() != (std::uint64_t{1} << j)) {
                    throw InvariantError("interval-size", where + " has an interval of length " +
                                                             std::to_string(ih.interval.length()));
                }
                if (s > 0 && bucket[s - 1].interval.hi != ih.interval.lo) {
                    throw InvariantError("bucket-order", where + " heaps are not oldest-first and adjacent");
                }
                if (j > 0) {
                    for (const auto& lower : buckets_[j - 1]) {
                        if (lower.interval.lo < ih.interval.hi) {
                            throw InvariantError("bucket-order", where + " is not left of bucket " + std::to_string(j - 1));
                        }
                    }
                }
                ih.heap.check_invariants();
                ih.heap.for_each([&](const Entry& e) {
                    if (!ih.interval.contains(pushed_at_[e.element])) {
                        throw InvariantError("membership", "element " + std::to_string(e.element) +
                                                               " stored outside its push-time interval");
                    }
                    const std::uint64_t age = clock_ - pushed_at_[e.element];
                    const std::size_t l = static_cast<std::size_t>(std::bit_width(age)) - 1;
                    if (j + 1 < l || j > l + 1) {
                        throw InvariantError("locate-window", "element " + std::to_string(e.element) + " in " + where +
                                                                  " with floor(log2(t - a)) = " + std::to_string(l));
                    }
                    if (!best || entry_less(e.key, e.element, best->key, best->element)) best = e;
                    ++elements;
                });
                all.push_back(ih.interval);
            }
            if (best != minima_[j]) throw InvariantError("minima", where + " minimum is stale");
        }
        if (elements != size_) throw InvariantError("size", "element count differs from size");

        std::sort(all.begin(), all.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
        std::uint64_t cursor = 0;
        for (const auto& iv : all) {
            if (iv.lo != cursor) throw InvariantError("partition", "intervals do not tile [0, t)");
            cursor = iv.hi;
        }
        if (cursor != clock_) throw InvariantError("partition", "intervals do not reach t");

        if (minima_.size() != buckets_.size()) throw InvariantError("minima", "minima array size mismatch");
        if (buckets_.size() < 64 && (suffix_ >> buckets_.size()) != 0) {
            throw InvariantError("suffix-min", "bit set beyond the last bucket");
        }
        for (std::size_t j = 0; j < buckets_.size(); ++j) {
            bool expected = true;
            for (std::size_t k = j + 1; k < buckets_.size(); ++k) {
                if (slot_less_raw(minima_[k], minima_[j])) expected = false;
            }
            if (bit(j) != expected) {
                throw InvariantError("suffix-min", "bit " + std::to_string(j) + " should be " + (expected ? "1" : "0"));
            }
        }
    }

private:
    friend struct TimestampHeapTestAccess;

    struct IntervalHeap {
        MeldableHeap<Key> heap;
        Interval interval;
    };

    static std::uint64_t low_mask(std::size_t k) noexcept {
        return k >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
    }

    bool bit(std::size_t j) const noexcept { return (suffix_ >> j) & 1u; }

    void check_handle(const Handle& h) const {
        if (!arena_->is_alive(h.node) || arena_->node(h.node).element != h.element ||
            pushed_at_[h.element] != h.pushed_at) {
            throw UsageError("stale timestamp-heap handle");
        }
    }

    void add_bucket() {
        if (buckets_.size() == kMaxBuckets) throw CapacityError("bucket array exhausted");
        buckets_.emplace_back().reserve(3);
        minima_.emplace_back();
        suffix_ |= std::uint64_t{1} << (buckets_.size() - 1);
    }

    bool heap_less(const Entry& a, const Entry& b) const noexcept {
        ++own_.comparisons;
        return entry_less(a.key, a.element, b.key, b.element);
    }

    // Strict order with an empty slot acting as +infinity. Counted.
    bool slot_less(const std::optional<Entry>& a, const std::optional<Entry>& b) const noexcept {
        if (!a) return false;
        if (!b) return true;
        return heap_less(*a, *b);
    }

    static bool slot_less_raw(const std::optional<Entry>& a, const std::optional<Entry>& b) noexcept {
        if (!a) return false;
        if (!b) return true;
        return entry_less(a->key, a->element, b->key, b->element);
    }

    void recompute_minimum(std::size_t j) {
        std::optional<Entry> best;
        for (const auto& ih : buckets_[j]) {
            if (ih.heap.empty()) continue;
            const Entry e = ih.heap.peek_min();
            if (!best || heap_less(e, *best)) best = e;
        }
        minima_[j] = best;
    }

    // Bit j compares minima_[j] with the nearest set bit above j, which marks
    // the minimum of the suffix (j, end).
    void refresh_bit(std::size_t j) {
        ++own_.steps;
        const std::uint64_t above = suffix_ & ~low_mask(j + 1);
        bool set = true;
        if (above != 0) {
            const auto k = static_cast<std::size_t>(std::countr_zero(above));
            set = !slot_less(minima_[k], minima_[j]);
        }
        if (set) {
            suffix_ |= std::uint64_t{1} << j;
        } else {
            suffix_ &= ~(std::uint64_t{1} << j);
        }
    }

    std::shared_ptr<NodeArena<Key>> arena_;
    std::vector<std::vector<IntervalHeap>> buckets_;
    std::vector<std::optional<Entry>> minima_;
    std::uint64_t suffix_ = 0;
    std::uint64_t clock_ = 0;
    std::size_t size_ = 0;
    std::vector<std::uint64_t> pushed_at_;  // by element
    mutable HeapStats own_;
    mutable std::uint64_t wide_window_hits_ = 0;
    PhaseSteps phase_;
};

}  // namespace uosp

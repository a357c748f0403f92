#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "uosp/errors.hpp"
#include "uosp/heap_common.hpp"

namespace uosp {

// Array-backed binary min-heap with a position index for decrease_key.
template <class Key>
class BinaryHeap {
public:
    using Entry = HeapEntry<Key>;

    void push(ElementId element, const Key& key) {
        if (element < pos_.size() && pos_[element] != kNil) {
            throw UsageError("element " + std::to_string(element) + " is already in the heap");
        }
        if (element >= pos_.size()) pos_.resize(std::size_t{element} + 1, kNil);
        data_.push_back({element, key});
        pos_[element] = static_cast<std::uint32_t>(data_.size() - 1);
        sift_up(data_.size() - 1);
    }

    void decrease_key(ElementId element, const Key& key) {
        if (element >= pos_.size() || pos_[element] == kNil) {
            throw UsageError("decrease_key on an element not in the heap");
        }
        const std::size_t i = pos_[element];
        if (data_[i].key < key) throw ContractError("decrease_key would increase the key");
        data_[i].key = key;
        sift_up(i);
    }

    Entry peek() const {
        if (data_.empty()) throw EmptyHeapError();
        return data_.front();
    }

    Entry pop() {
        if (data_.empty()) throw EmptyHeapError();
        const Entry top = data_.front();
        pos_[top.element] = kNil;
        if (data_.size() > 1) {
            data_.front() = data_.back();
            pos_[data_.front().element] = 0;
            data_.pop_back();
            sift_down(0);
        } else {
            data_.pop_back();
        }
        return top;
    }

    bool empty() const noexcept { return data_.empty(); }
    std::size_t size() const noexcept { return data_.size(); }
    HeapStats stats() const noexcept { return stats_; }

private:
    bool less(std::size_t a, std::size_t b) noexcept {
        ++stats_.comparisons;
        return entry_less(data_[a].key, data_[a].element, data_[b].key, data_[b].element);
    }

    void swap_at(std::size_t a, std::size_t b) noexcept {
        std::swap(data_[a], data_[b]);
        pos_[data_[a].element] = static_cast<std::uint32_t>(a);
        pos_[data_[b].element] = static_cast<std::uint32_t>(b);
        ++stats_.steps;
    }

    void sift_up(std::size_t i) noexcept {
        while (i > 0) {
            const std::size_t parent = (i - 1) / 2;
            if (!less(i, parent)) break;
            swap_at(i, parent);
            i = parent;
        }
    }

    void sift_down(std::size_t i) noexcept {
        for (;;) {
            const std::size_t l = 2 * i + 1;
            if (l >= data_.size()) break;
            std::size_t best = l;
            if (l + 1 < data_.size() && less(l + 1, l)) best = l + 1;
            if (!less(best, i)) break;
            swap_at(i, best);
            i = best;
        }
    }

    std::vector<Entry> data_;
    std::vector<std::uint32_t> pos_;
    HeapStats stats_;
};

}  // namespace uosp

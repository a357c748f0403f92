#pragma once

#include <cstdint>
#include <limits>

namespace uosp {

using ElementId = std::uint32_t;

inline constexpr std::uint32_t kNil = std::numeric_limits<std::uint32_t>::max();

// Instrumentation shared by every heap. `comparisons` counts key comparisons
// (a lexicographic (key, element) test counts once); `steps` counts
// structural work: links, cuts, root-list splices, swaps, bitmask updates.
struct HeapStats {
    std::uint64_t comparisons = 0;
    std::uint64_t steps = 0;

    HeapStats& operator+=(const HeapStats& o) noexcept {
        comparisons += o.comparisons;
        steps += o.steps;
        return *this;
    }
    friend HeapStats operator+(HeapStats a, const HeapStats& b) noexcept { return a += b; }
    friend HeapStats operator-(HeapStats a, const HeapStats& b) noexcept {
        a.comparisons -= b.comparisons;
        a.steps -= b.steps;
        return a;
    }
};

template <class Key>
struct HeapEntry {
    ElementId element;
    Key key;

    friend bool operator==(const HeapEntry&, const HeapEntry&) = default;
};

// Strict lexicographic order on (key, element). Elements are unique among
// live entries, so this is a total order on a heap's contents.
template <class Key>
constexpr bool entry_less(const Key& ka, ElementId ea, const Key& kb, ElementId eb) noexcept {
    if (ka < kb) return true;
    if (kb < ka) return false;
    return ea < eb;
}

}  // namespace uosp

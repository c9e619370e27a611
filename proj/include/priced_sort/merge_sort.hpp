#ifndef PRICED_SORT_MERGE_SORT_HPP
#define PRICED_SORT_MERGE_SORT_HPP

#include "priced_sort/oracle.hpp"

#include <algorithm>
#include <cstddef>
#include <vector>

namespace priced_sort {

/// Bottom-up merge sort; at most k*ceil(log2 k) calls to `less`.
template <class T, class Less>
std::vector<T> merge_sort(std::vector<T> items, Less&& less) {
    const std::size_t n = items.size();
    std::vector<T> buffer(n);
    for (std::size_t width = 1; width < n; width *= 2) {
        for (std::size_t lo = 0; lo < n; lo += 2 * width) {
            std::size_t mid = std::min(lo + width, n);
            std::size_t hi = std::min(lo + 2 * width, n);
            std::size_t i = lo, j = mid, out = lo;
            while (i < mid && j < hi) {
                if (less(items[j], items[i])) buffer[out++] = items[j++];
                else buffer[out++] = items[i++];
            }
            while (i < mid) buffer[out++] = items[i++];
            while (j < hi) buffer[out++] = items[j++];
        }
        items.swap(buffer);
    }
    return items;
}

/// Sorts keys of one color with charged monochromatic comparisons.
inline std::vector<KeyId> sort_stripe(std::vector<KeyId> keys, ComparisonOracle& oracle) {
    return merge_sort(std::move(keys), [&](KeyId a, KeyId b) { return oracle.less(a, b); });
}

}  // namespace priced_sort

#endif

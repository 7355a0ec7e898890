#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <vector>

namespace pnmetric {

// Canonical key for a size-n multiset of point indices: indices sorted
// ascending. Keying by multiset makes the symmetry axiom structural.
using MultisetKey = std::vector<int>;

inline MultisetKey canonical_key(MultisetKey k) {
    std::sort(k.begin(), k.end());
    return k;
}

// Multiset of (n-1) copies of `x` followed by `y`, canonicalized.
inline MultisetKey mixed_key(int x, int y, int n) {
    MultisetKey k(static_cast<std::size_t>(n), x);
    k.back() = y;
    return canonical_key(std::move(k));
}

inline MultisetKey constant_key(int x, int n) {
    return MultisetKey(static_cast<std::size_t>(n), x);
}

// Visits every size-n multiset over {0, ..., num_points-1} in lexicographic
// order of the canonical (sorted ascending) key.
template <typename F>
void for_each_multiset(int num_points, int n, F&& visit) {
    MultisetKey key(static_cast<std::size_t>(n), 0);
    if (num_points <= 0) return;
    while (true) {
        visit(static_cast<const MultisetKey&>(key));
        int i = n - 1;
        while (i >= 0 && key[static_cast<std::size_t>(i)] == num_points - 1) --i;
        if (i < 0) break;
        int v = key[static_cast<std::size_t>(i)] + 1;
        for (int j = i; j < n; ++j) key[static_cast<std::size_t>(j)] = v;
    }
}

inline std::uint64_t multiset_count(int num_points, int n) {
    // C(p + n - 1, n)
    std::uint64_t result = 1;
    for (int k = 1; k <= n; ++k) {
        result = result * static_cast<std::uint64_t>(num_points - 1 + k) /
                 static_cast<std::uint64_t>(k);
    }
    return result;
}

}  // namespace pnmetric

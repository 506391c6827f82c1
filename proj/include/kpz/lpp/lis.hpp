#pragma once

#include <algorithm>
#include <vector>

#include "kpz/core/error.hpp"

namespace kpz {

// Longest increasing subsequence of a permutation of 1..n by patience
// sorting: tails[k] is the smallest possible last element of an increasing
// subsequence of length k+1.
inline std::size_t lis_patience(const std::vector<long>& perm) {
    const std::size_t n = perm.size();
    std::vector<char> seen(n + 1, 0);
    for (long v : perm) {
        if (v < 1 || static_cast<std::size_t>(v) > n || seen[static_cast<std::size_t>(v)])
            throw InvalidInput("input is not a permutation of 1..n");
        seen[static_cast<std::size_t>(v)] = 1;
    }
    std::vector<long> tails;
    for (long v : perm) {
        auto it = std::lower_bound(tails.begin(), tails.end(), v);
        if (it == tails.end()) tails.push_back(v);
        else *it = v;
    }
    return tails.size();
}

// Permutation induced by planar points: order by a, then rank by b.
template <class P, class A, class B>
std::vector<long> induced_permutation(const std::vector<P>& pts, A key_a, B key_b) {
    const std::size_t n = pts.size();
    std::vector<std::size_t> by_a(n), by_b(n);
    for (std::size_t k = 0; k < n; ++k) by_a[k] = by_b[k] = k;
    std::sort(by_a.begin(), by_a.end(), [&](auto i, auto j) { return key_a(pts[i]) < key_a(pts[j]); });
    std::sort(by_b.begin(), by_b.end(), [&](auto i, auto j) { return key_b(pts[i]) < key_b(pts[j]); });
    std::vector<long> rank(n);
    for (std::size_t r = 0; r < n; ++r) rank[by_b[r]] = static_cast<long>(r) + 1;
    std::vector<long> perm(n);
    for (std::size_t r = 0; r < n; ++r) perm[r] = rank[by_a[r]];
    return perm;
}

} // namespace kpz

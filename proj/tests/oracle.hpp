#pragma once

// Independent brute-force reference used by the tests: enumerates P8 value
// combinations directly with plain loops and sorted-vector membership, no
// bitset sieves and no perfect-square shortcut.

#include <algorithm>
#include <vector>

#include "octsum/util.hpp"

namespace testoracle {

using octsum::i64;

// all P8 values in [0, bound] gathered by scanning the argument range
inline std::vector<i64> oct_vals(i64 bound) {
    std::vector<i64> vals;
    for (i64 x = 0;; ++x) {
        const i64 v = 3 * x * x - 2 * x;
        if (v > bound && x > 0) break;
        if (v <= bound) vals.push_back(v);
    }
    for (i64 x = -1;; --x) {
        const i64 v = 3 * x * x - 2 * x;
        if (v > bound) break;
        vals.push_back(v);
    }
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    return vals;
}

namespace detail {

inline bool rec(const std::vector<i64>& coeffs, std::size_t i, i64 rem,
                const std::vector<i64>& vals) {
    if (i == coeffs.size()) return rem == 0;
    if (i + 1 == coeffs.size()) {
        if (rem % coeffs[i] != 0) return false;
        return std::binary_search(vals.begin(), vals.end(), rem / coeffs[i]);
    }
    for (i64 v : vals) {
        const i64 used = coeffs[i] * v;
        if (used > rem) break;
        if (rec(coeffs, i + 1, rem - used, vals)) return true;
    }
    return false;
}

}  // namespace detail

// decides sum a_i P8(x_i) = n by direct combination enumeration
inline bool represents_naive(std::vector<i64> coeffs, i64 n) {
    if (n < 0) return false;
    if (coeffs.empty()) return n == 0;
    std::sort(coeffs.begin(), coeffs.end(), std::greater<i64>());
    return detail::rec(coeffs, 0, n, oct_vals(n));
}

// reachable sums in [0, bound] by forward set filling with plain loops
inline std::vector<bool> reachable_naive(const std::vector<i64>& coeffs, i64 bound) {
    const auto vals = oct_vals(bound);
    std::vector<bool> cur(static_cast<std::size_t>(bound) + 1, false);
    cur[0] = true;
    for (i64 a : coeffs) {
        std::vector<bool> nxt(cur.size(), false);
        for (i64 s = 0; s <= bound; ++s) {
            if (!cur[static_cast<std::size_t>(s)]) continue;
            for (i64 v : vals) {
                const i64 t = s + a * v;
                if (t > bound) break;
                nxt[static_cast<std::size_t>(t)] = true;
            }
        }
        cur = std::move(nxt);
    }
    return cur;
}

}  // namespace testoracle

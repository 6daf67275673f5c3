// Test-side oracles, deliberately independent of the library implementations
// they check.
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "rparts/bigint.hpp"

namespace oracles {

// Enumerates every partition of n (weakly decreasing vectors), largest part
// first.
inline void all_partitions(std::uint64_t n,
                           const std::function<void(const std::vector<std::uint64_t>&)>& visit)
{
    std::vector<std::uint64_t> current;
    std::function<void(std::uint64_t, std::uint64_t)> rec = [&](std::uint64_t left,
                                                                std::uint64_t max_part) {
        if (left == 0) {
            visit(current);
            return;
        }
        for (std::uint64_t p = std::min(left, max_part); p >= 1; --p) {
            current.push_back(p);
            rec(left - p, p);
            current.pop_back();
        }
    };
    rec(n, n == 0 ? 1 : n);
}

// Direct recursive evaluation of the difference recurrence:
//   D(r, i) = lambda_i          if i == k or r == 0
//           = D(r-1, i) - D(r-1, i+1)   otherwise
// (1-based i; no vector passes, evaluated per entry).
inline std::int64_t brute_diff(const std::vector<std::uint64_t>& lambda, int r, std::size_t i)
{
    const std::size_t k = lambda.size();
    if (i == k || r == 0)
        return static_cast<std::int64_t>(lambda[i - 1]);
    return brute_diff(lambda, r - 1, i) - brute_diff(lambda, r - 1, i + 1);
}

inline std::vector<std::int64_t> brute_diffs(const std::vector<std::uint64_t>& lambda, int r)
{
    std::vector<std::int64_t> out;
    for (std::size_t i = 1; i <= lambda.size(); ++i)
        out.push_back(brute_diff(lambda, r, i));
    return out;
}

inline bool brute_in_pr(const std::vector<std::uint64_t>& lambda, int r)
{
    for (std::size_t i = 1; i <= lambda.size(); ++i)
        if (brute_diff(lambda, r, i) < 0)
            return false;
    return true;
}

// Euler's pentagonal-number recurrence for the unrestricted partition
// numbers; independent of the part-set DP.
inline std::vector<rparts::BigCount> pentagonal_partition_numbers(std::uint64_t n_max)
{
    std::vector<rparts::BigCount> p(n_max + 1, rparts::BigCount(0));
    p[0] = 1;
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        for (std::int64_t k = 1;; ++k) {
            const std::int64_t g1 = k * (3 * k - 1) / 2;
            const std::int64_t g2 = k * (3 * k + 1) / 2;
            if (g1 > static_cast<std::int64_t>(n))
                break;
            const bool plus = k % 2 == 1;
            if (plus)
                p[n] += p[n - g1];
            else
                p[n] -= p[n - g1];
            if (g2 <= static_cast<std::int64_t>(n)) {
                if (plus)
                    p[n] += p[n - g2];
                else
                    p[n] -= p[n - g2];
            }
        }
    }
    return p;
}

} // namespace oracles

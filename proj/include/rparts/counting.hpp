#pragma once

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "rparts/bigint.hpp"
#include "rparts/partition.hpp"

namespace rparts {

inline constexpr std::uint64_t kDefaultTableCap = 1u << 20;
inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

// Enumeration cap for the brute-force oracles; RPARTS_ENUM_CAP overrides.
inline std::uint64_t enumeration_cap()
{
    if (const char* env = std::getenv("RPARTS_ENUM_CAP"))
        return std::strtoull(env, nullptr, 10);
    return kDefaultEnumerationCap;
}

/// Exact table of p_r(n) for n = 0..n_max, built by the part-set DP
/// (one in-place pass per part value; O(n_max * |S|) big-integer additions).
class CountTable {
public:
    CountTable(unsigned r, std::uint64_t n_max, std::uint64_t cap = kDefaultTableCap)
        : r_(r), parts_(r, n_max == 0 ? 1 : n_max)
    {
        if (n_max > cap)
            throw CapExceeded("count table size " + std::to_string(n_max) +
                              " exceeds cap " + std::to_string(cap) +
                              "; raise the cap explicitly if this is intended");
        counts_.assign(n_max + 1, BigCount(0));
        counts_[0] = 1;
        for (std::uint64_t s : parts_.parts())
            for (std::uint64_t n = s; n <= n_max; ++n)
                counts_[n] += counts_[n - s];
    }

    unsigned order() const { return r_; }
    std::uint64_t n_max() const { return counts_.size() - 1; }
    const BinomialPartSet& part_set() const { return parts_; }
    const std::vector<BigCount>& counts() const { return counts_; }

    const BigCount& at(std::uint64_t n) const
    {
        if (n >= counts_.size())
            throw std::out_of_range("count table does not cover n=" + std::to_string(n));
        return counts_[n];
    }

private:
    unsigned r_;
    BinomialPartSet parts_;
    std::vector<BigCount> counts_;
};

inline CountTable count_table(unsigned r, std::uint64_t n_max,
                              std::uint64_t cap = kDefaultTableCap)
{
    return CountTable(r, n_max, cap);
}

/// p_r(n) = number of partitions of n into binomial parts C(i+r, r).
inline BigCount count_pr(std::uint64_t n, unsigned r)
{
    return CountTable(r, n, std::max<std::uint64_t>(n, kDefaultTableCap)).at(n);
}

/// Memoized evaluation of the at-most-k-parts recurrence:
///   p(n, k) = 0                      if n < 0, or k = 0 and n > 0
///           = 1                      if n = 0 and k = 0
///           = p(n - C(r+k-1, r), k) + p(n, k-1)   otherwise
class AtMostKCounter {
public:
    explicit AtMostKCounter(unsigned r) : r_(r)
    {
        if (r < 1)
            throw std::invalid_argument("order r must be >= 1");
    }

    BigCount count(std::int64_t n, std::uint64_t k)
    {
        if (n < 0 || (k == 0 && n > 0))
            return 0;
        if (n == 0 && k == 0)
            return 1;
        const std::uint64_t key = (static_cast<std::uint64_t>(n) << 21) | k;
        if (auto it = memo_.find(key); it != memo_.end())
            return it->second;
        BigCount value = count(n - static_cast<std::int64_t>(binomial_part_value(k - 1, r_)), k) +
                         count(n, k - 1);
        memo_.emplace(key, value);
        return value;
    }

private:
    unsigned r_;
    std::unordered_map<std::uint64_t, BigCount> memo_;
};

inline BigCount count_pr_le(std::int64_t n, std::uint64_t k, unsigned r)
{
    if (n > (std::int64_t(1) << 40) || k >= (1u << 21))
        throw std::invalid_argument("count_pr_le arguments out of supported range");
    return AtMostKCounter(r).count(n, k);
}

/// The three-index refinement p_r(n, k, m): partitions in P_r(n) with k parts
/// and total r-th difference m. Extracted from the generating function
///   1 + sum_{k>=1} y^k x q^{C(k-1+r,r)} / prod_{i<k} (1 - x q^{C(i+r,r)})
/// by folding one part value at a time into the two-index inner table.
class RefinedCountTable {
public:
    RefinedCountTable(unsigned r, std::uint64_t n_max, std::uint64_t m_max)
        : r_(r), n_max_(n_max), m_max_(m_max), parts_(r, n_max == 0 ? 1 : n_max)
    {
        const std::size_t k_count = parts_.size();
        auto inner = std::vector<std::vector<BigCount>>(
            n_max + 1, std::vector<BigCount>(m_max + 1, BigCount(0)));
        inner[0][0] = 1;
        table_.assign(k_count + 1, {});
        for (std::size_t kk = 1; kk <= k_count; ++kk) {
            const std::uint64_t s = parts_.parts()[kk - 1];
            for (std::uint64_t n = s; n <= n_max; ++n)
                for (std::uint64_t m = 1; m <= m_max; ++m)
                    inner[n][m] += inner[n - s][m - 1];
            // p_r(n, kk, m) = inner partitions of n - s into parts <= s with
            // m - 1 copies total (one copy of the largest part is forced).
            auto& slice = table_[kk];
            slice.assign(n_max + 1, std::vector<BigCount>(m_max + 1, BigCount(0)));
            for (std::uint64_t n = s; n <= n_max; ++n)
                for (std::uint64_t m = 1; m <= m_max; ++m)
                    slice[n][m] = inner[n - s][m - 1];
        }
    }

    unsigned order() const { return r_; }
    std::uint64_t n_max() const { return n_max_; }
    std::uint64_t m_max() const { return m_max_; }
    std::size_t k_count() const { return parts_.size(); }

    // k = 0 contributes only the empty partition (n = m = 0).
    BigCount count(std::uint64_t n, std::uint64_t k, std::uint64_t m) const
    {
        if (n > n_max_ || m > m_max_)
            throw std::out_of_range("refined count table does not cover the query");
        if (k == 0)
            return (n == 0 && m == 0) ? 1 : 0;
        if (k > parts_.size())
            return 0;
        return table_[k][n][m];
    }

private:
    unsigned r_;
    std::uint64_t n_max_;
    std::uint64_t m_max_;
    BinomialPartSet parts_;
    std::vector<std::vector<std::vector<BigCount>>> table_;
};

inline BigCount count_pr_k_m(std::uint64_t n, std::uint64_t k, std::uint64_t m, unsigned r)
{
    if (k == 0 || n == 0 || m == 0)
        return (n == 0 && k == 0 && m == 0) ? 1 : 0;
    return RefinedCountTable(r, n, m).count(n, k, m);
}

/// Exact rational statistic kept as a BigCount pair; the float rendering is
/// produced once, at construction, from the exact values.
struct ExactStatistic {
    BigCount numerator;
    BigCount denominator;
    double as_float;

    ExactStatistic(BigCount num, BigCount den)
        : numerator(std::move(num)), denominator(std::move(den))
    {
        if (denominator <= 0)
            throw std::invalid_argument("statistic denominator must be positive");
        BigRational q(numerator, denominator);
        q.canonicalize();
        as_float = rational_to_double(q);
    }
};

/// delta_{r,m}(n) = (1/p_r(n)) * sum_{i>=0, m*C(r+i,r) <= n} p_r(n - m*C(r+i,r)).
/// m = 1 gives delta_r(n), the average number of positive r-th differences.
inline ExactStatistic delta_exact(const CountTable& table, std::uint64_t n, std::uint64_t m)
{
    if (n < 1)
        throw std::invalid_argument("delta is undefined at n = 0");
    if (m < 1)
        throw std::invalid_argument("m must be >= 1");
    if (n > table.n_max())
        throw std::out_of_range("count table does not cover n");
    BigCount num(0);
    for (std::uint64_t s : table.part_set().parts()) {
        if (s > n / m)
            break;
        num += table.at(n - m * s);
    }
    return ExactStatistic(std::move(num), table.at(n));
}

inline ExactStatistic delta_exact(std::uint64_t n, unsigned r, std::uint64_t m)
{
    return delta_exact(CountTable(r, n), n, m);
}

/// Streams every partition in P_r(n) exactly once, as the inverse image of
/// the partitions of n into binomial parts. Refuses when p_r(n) exceeds the
/// enumeration cap.
template <typename Visitor>
void enumerate_pr(std::uint64_t n, unsigned r, Visitor&& visit,
                  std::uint64_t cap = enumeration_cap())
{
    CountTable table(r, n, std::max<std::uint64_t>(n, kDefaultTableCap));
    if (table.at(n) > BigCount(static_cast<unsigned long>(cap)))
        throw CapExceeded("p_" + std::to_string(r) + "(" + std::to_string(n) + ") = " +
                          to_decimal(table.at(n)) + " exceeds enumeration cap " +
                          std::to_string(cap));
    const auto& parts = table.part_set().parts();
    std::map<std::uint64_t, std::uint64_t> mult;
    // Descending part order; multiplicity of each part chosen greedily.
    std::function<void(std::uint64_t, std::size_t)> rec =
        [&](std::uint64_t remaining, std::size_t idx) {
            if (remaining == 0) {
                MultiplicityPartition mu(r, mult);
                visit(bijection_inverse(mu), mu);
                return;
            }
            if (idx == 0) {
                // part value 1 absorbs the remainder
                mult[0] = remaining;
                MultiplicityPartition mu(r, mult);
                visit(bijection_inverse(mu), mu);
                mult.erase(0);
                return;
            }
            const std::uint64_t s = parts[idx];
            for (std::uint64_t c = remaining / s + 1; c-- > 0;) {
                if (c)
                    mult[idx] = c;
                else
                    mult.erase(idx);
                rec(remaining - c * s, idx - 1);
            }
            mult.erase(idx);
        };
    if (n == 0) {
        MultiplicityPartition mu(r);
        visit(Partition(), mu);
        return;
    }
    rec(n, parts.size() - 1);
}

inline std::vector<Partition> enumerate_pr_collect(std::uint64_t n, unsigned r,
                                                   std::uint64_t cap = enumeration_cap())
{
    std::vector<Partition> out;
    enumerate_pr(n, r, [&](const Partition& lambda, const MultiplicityPartition&) {
        out.push_back(lambda);
    }, cap);
    return out;
}

/// Ground-truth mean of count_at_least / positive_difference_count over all
/// of P_r(n), uniformly; exact rational. Enumeration-capped.
inline BigRational exact_mean_ratio(std::uint64_t n, unsigned r, std::uint64_t m,
                                    std::uint64_t cap = enumeration_cap())
{
    if (n < 1)
        throw std::invalid_argument("mean ratio is undefined at n = 0");
    if (m < 1)
        throw std::invalid_argument("m must be >= 1");
    BigRational sum(0);
    std::uint64_t count = 0;
    enumerate_pr(n, r, [&](const Partition& lambda, const MultiplicityPartition&) {
        std::uint64_t d = positive_difference_count(lambda, static_cast<int>(r));
        std::uint64_t dm = count_at_least(lambda, static_cast<int>(r), m);
        BigRational ratio(static_cast<unsigned long>(dm), static_cast<unsigned long>(d));
        ratio.canonicalize();
        sum += ratio;
        ++count;
    }, cap);
    sum /= BigRational(static_cast<unsigned long>(count));
    sum.canonicalize();
    return sum;
}

} // namespace rparts

#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rparts/bigint.hpp"

namespace rparts {

// Weights are capped well below 2^63 so that all intermediate difference and
// reconstruction arithmetic stays inside int64/uint64.
inline constexpr std::uint64_t kMaxWeight = std::uint64_t(1) << 62;

/// A partition: weakly decreasing positive parts. The empty sequence is the
/// unique partition of 0.
class Partition {
public:
    Partition() = default;

    explicit Partition(std::vector<std::uint64_t> parts)
        : parts_(std::move(parts))
    {
        std::uint64_t w = 0;
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] == 0)
                throw std::invalid_argument("partition parts must be positive");
            if (i + 1 < parts_.size() && parts_[i] < parts_[i + 1])
                throw std::invalid_argument("partition parts must be weakly decreasing");
            w += parts_[i];
            if (w > kMaxWeight)
                throw std::invalid_argument("partition weight exceeds supported range");
        }
        weight_ = w;
    }

    // Text form: comma-separated decreasing integers, e.g. "6,3,1".
    // The empty string denotes the empty partition.
    static Partition parse(std::string_view text)
    {
        std::vector<std::uint64_t> parts;
        std::string cur;
        auto flush = [&] {
            if (cur.empty())
                throw std::invalid_argument("malformed partition text");
            parts.push_back(std::stoull(cur));
            cur.clear();
        };
        for (char ch : text) {
            if (std::isspace(static_cast<unsigned char>(ch)))
                continue;
            if (ch == ',')
                flush();
            else if (std::isdigit(static_cast<unsigned char>(ch)))
                cur.push_back(ch);
            else
                throw std::invalid_argument(std::string("unexpected character in partition text: ") + ch);
        }
        if (!cur.empty())
            parts.push_back(std::stoull(cur));
        else if (!parts.empty())
            throw std::invalid_argument("trailing comma in partition text");
        return Partition(std::move(parts));
    }

    const std::vector<std::uint64_t>& parts() const { return parts_; }
    std::uint64_t weight() const { return weight_; }
    std::size_t size() const { return parts_.size(); }
    bool empty() const { return parts_.empty(); }

    std::string str() const
    {
        std::string out;
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (i) out.push_back(',');
            out += std::to_string(parts_[i]);
        }
        return out;
    }

    friend bool operator==(const Partition& a, const Partition& b) = default;

private:
    std::vector<std::uint64_t> parts_;
    std::uint64_t weight_ = 0;
};

/// The vector of r-th differences of a partition, same length k as the
/// source, with the convention that the last entry equals the last part.
class DifferenceVector {
public:
    DifferenceVector(std::vector<std::int64_t> diffs, unsigned order)
        : diffs_(std::move(diffs)), order_(order)
    {
    }

    const std::vector<std::int64_t>& diffs() const { return diffs_; }
    unsigned order() const { return order_; }
    std::size_t size() const { return diffs_.size(); }

    bool all_nonnegative() const
    {
        return std::all_of(diffs_.begin(), diffs_.end(), [](std::int64_t d) { return d >= 0; });
    }

    std::string str() const
    {
        std::string out;
        for (std::size_t i = 0; i < diffs_.size(); ++i) {
            if (i) out.push_back(',');
            out += std::to_string(diffs_[i]);
        }
        return out;
    }

private:
    std::vector<std::int64_t> diffs_;
    unsigned order_;
};

inline std::uint64_t binomial_part_value(std::uint64_t index, unsigned r)
{
    return to_u64(binomial(index + r, r));
}

/// Frequential form of a partition into binomial parts: the multiplicity map
/// keyed by the part index l (part value C(l+r, r)). Image side of the
/// bijection; few distinct parts, possibly huge multiplicities.
class MultiplicityPartition {
public:
    explicit MultiplicityPartition(unsigned r) : r_(r)
    {
        if (r < 1)
            throw std::invalid_argument("order r must be >= 1");
    }

    MultiplicityPartition(unsigned r, std::map<std::uint64_t, std::uint64_t> mult)
        : r_(r)
    {
        if (r < 1)
            throw std::invalid_argument("order r must be >= 1");
        for (const auto& [index, count] : mult)
            add(index, count);
    }

    void add(std::uint64_t index, std::uint64_t count)
    {
        if (count == 0)
            return;
        unsigned __int128 add_w =
            static_cast<unsigned __int128>(binomial_part_value(index, r_)) * count;
        if (add_w > kMaxWeight - weight_)
            throw std::invalid_argument("multiplicity partition weight exceeds supported range");
        multiplicities_[index] += count;
        weight_ += static_cast<std::uint64_t>(add_w);
    }

    unsigned order() const { return r_; }
    std::uint64_t weight() const { return weight_; }
    const std::map<std::uint64_t, std::uint64_t>& multiplicities() const { return multiplicities_; }
    bool empty() const { return multiplicities_.empty(); }

    std::uint64_t multiplicity(std::uint64_t index) const
    {
        auto it = multiplicities_.find(index);
        return it == multiplicities_.end() ? 0 : it->second;
    }

    std::uint64_t distinct_sizes() const { return multiplicities_.size(); }

    std::uint64_t sizes_with_multiplicity_at_least(std::uint64_t m) const
    {
        if (m < 1)
            throw std::invalid_argument("m must be >= 1");
        std::uint64_t c = 0;
        for (const auto& [index, count] : multiplicities_)
            c += count >= m ? 1 : 0;
        return c;
    }

    // Text form: "part^mult" terms joined by '+', parts in decreasing value
    // order, e.g. "6^1+3^1+1^1". Empty string for the empty partition.
    std::string str() const
    {
        std::string out;
        for (auto it = multiplicities_.rbegin(); it != multiplicities_.rend(); ++it) {
            if (!out.empty()) out.push_back('+');
            out += std::to_string(binomial_part_value(it->first, r_));
            out.push_back('^');
            out += std::to_string(it->second);
        }
        return out;
    }

    // Parses "6^1+3^1+1^1"; every part value must be a binomial part C(l+r, r).
    static MultiplicityPartition parse(std::string_view text, unsigned r)
    {
        MultiplicityPartition mu(r);
        auto take = [&](std::string_view term) {
            auto caret = term.find('^');
            if (caret == std::string_view::npos || caret == 0 || caret + 1 == term.size())
                throw std::invalid_argument("malformed multiplicity term: " + std::string(term));
            std::uint64_t part = std::stoull(std::string(term.substr(0, caret)));
            std::uint64_t count = std::stoull(std::string(term.substr(caret + 1)));
            mu.add(index_of_part(part, r), count);
        };
        std::size_t start = 0;
        std::string cleaned;
        for (char ch : text)
            if (!std::isspace(static_cast<unsigned char>(ch)))
                cleaned.push_back(ch);
        while (start < cleaned.size()) {
            auto plus = cleaned.find('+', start);
            if (plus == std::string::npos) plus = cleaned.size();
            take(std::string_view(cleaned).substr(start, plus - start));
            start = plus + 1;
        }
        return mu;
    }

    static std::uint64_t index_of_part(std::uint64_t part_value, unsigned r)
    {
        std::uint64_t index = 0;
        for (;; ++index) {
            std::uint64_t v = binomial_part_value(index, r);
            if (v == part_value)
                return index;
            if (v > part_value)
                throw std::invalid_argument(std::to_string(part_value) +
                                            " is not a binomial part for r=" + std::to_string(r));
        }
    }

    friend bool operator==(const MultiplicityPartition& a, const MultiplicityPartition& b)
    {
        return a.r_ == b.r_ && a.multiplicities_ == b.multiplicities_;
    }

private:
    unsigned r_;
    std::map<std::uint64_t, std::uint64_t> multiplicities_;
    std::uint64_t weight_ = 0;
};

/// The part set S_r = { C(l+r, r) : l >= 0 } restricted to values <= cap,
/// in ascending order. parts()[0] == 1 whenever cap >= 1.
class BinomialPartSet {
public:
    BinomialPartSet(unsigned r, std::uint64_t cap) : r_(r), cap_(cap)
    {
        if (r < 1)
            throw std::invalid_argument("order r must be >= 1");
        for (std::uint64_t index = 0;; ++index) {
            BigCount v = binomial(index + r, r);
            if (v > BigCount(static_cast<unsigned long>(cap)))
                break;
            parts_.push_back(to_u64(v));
        }
    }

    unsigned order() const { return r_; }
    std::uint64_t cap() const { return cap_; }
    const std::vector<std::uint64_t>& parts() const { return parts_; }
    std::size_t size() const { return parts_.size(); }

private:
    unsigned r_;
    std::uint64_t cap_;
    std::vector<std::uint64_t> parts_;
};

namespace detail {

inline void check_order(int r)
{
    if (r < 0)
        throw std::invalid_argument("order r must be nonnegative");
}

} // namespace detail

/// r-th differences by the defining recurrence: the last entry stays equal to
/// the last part at every level, each other entry becomes the difference of
/// adjacent entries of the previous level. r = 0 returns the parts themselves.
inline DifferenceVector rth_differences(const Partition& lambda, int r)
{
    detail::check_order(r);
    const auto& parts = lambda.parts();
    std::vector<std::int64_t> d(parts.begin(), parts.end());
    const std::size_t k = d.size();
    if (k > 0 && r > 0 && r <= 64 && parts[0] > (std::uint64_t(1) << (62 - std::min(r, 62))))
        throw std::invalid_argument("partition too large for this difference order");
    if (r > 64)
        throw std::invalid_argument("difference order out of supported range");
    for (int level = 0; level < r && k > 0; ++level)
        for (std::size_t i = 0; i + 1 < k; ++i)
            d[i] -= d[i + 1];
    return DifferenceVector(std::move(d), static_cast<unsigned>(r));
}

/// Membership in P_r: every r-th difference is nonnegative (all indices
/// 1..k; the last one is automatic). The empty partition belongs to P_r(0).
inline bool is_in_pr(const Partition& lambda, int r)
{
    if (r < 1)
        throw std::invalid_argument("order r must be >= 1");
    return rth_differences(lambda, r).all_nonnegative();
}

/// The bijection f: part C(j-1+r, r) receives multiplicity equal to the j-th
/// r-th difference. Weight-preserving; conjugation when r = 1.
inline MultiplicityPartition bijection_forward(const Partition& lambda, int r)
{
    if (r < 1)
        throw std::invalid_argument("order r must be >= 1");
    DifferenceVector d = rth_differences(lambda, r);
    MultiplicityPartition mu(static_cast<unsigned>(r));
    const auto& diffs = d.diffs();
    for (std::size_t j = 0; j < diffs.size(); ++j) {
        if (diffs[j] < 0)
            throw std::invalid_argument("partition is not in P_r: negative difference at index " +
                                        std::to_string(j + 1));
        mu.add(j, static_cast<std::uint64_t>(diffs[j]));
    }
    if (mu.weight() != lambda.weight())
        throw std::logic_error("bijection failed to preserve weight");
    return mu;
}

/// The inverse map: with k = 1 + largest occupied index, recover the
/// difference vector from the multiplicities and undo the differencing by k
/// suffix-sum passes (entry i of each lower level is the current entry plus
/// the already-recovered entry to its right; the last entry never changes).
inline Partition bijection_inverse(const MultiplicityPartition& mu)
{
    if (mu.empty())
        return Partition();
    const unsigned r = mu.order();
    const std::uint64_t k = mu.multiplicities().rbegin()->first + 1;
    std::vector<std::uint64_t> v(k, 0);
    for (const auto& [index, count] : mu.multiplicities())
        v[index] = count;
    for (unsigned level = 0; level < r; ++level)
        for (std::uint64_t i = k - 1; i-- > 0;)
            v[i] += v[i + 1];
    Partition lambda{std::vector<std::uint64_t>(v.begin(), v.end())};
    if (lambda.weight() != mu.weight())
        throw std::logic_error("inverse bijection failed to preserve weight");
    return lambda;
}

/// Number of indices with r-th difference >= m. In image space this is the
/// number of part sizes with multiplicity >= m.
inline std::uint64_t count_at_least(const Partition& lambda, int r, std::uint64_t m)
{
    if (r < 1)
        throw std::invalid_argument("order r must be >= 1");
    if (m < 1)
        throw std::invalid_argument("m must be >= 1");
    DifferenceVector d = rth_differences(lambda, r);
    std::uint64_t c = 0;
    for (std::int64_t x : d.diffs()) {
        if (x < 0)
            throw std::invalid_argument("partition is not in P_r");
        c += static_cast<std::uint64_t>(x) >= m ? 1 : 0;
    }
    return c;
}

/// Number of positive r-th differences; equals the number of distinct part
/// sizes of the image partition.
inline std::uint64_t positive_difference_count(const Partition& lambda, int r)
{
    return count_at_least(lambda, r, 1);
}

} // namespace rparts

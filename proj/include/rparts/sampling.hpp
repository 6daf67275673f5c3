#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rparts/asymptotics.hpp"
#include "rparts/counting.hpp"
#include "rparts/partition.hpp"
#include "rparts/rng.hpp"

namespace rparts {

inline constexpr std::uint64_t kDefaultAttemptCap = 1'000'000'000;

/// The independent-geometric ensemble over the binomial part set: one
/// variable per part value s <= n (larger parts are excluded exactly, any
/// positive multiplicity would overshoot), success parameter 1 - q^s.
struct GeometricEnsembleSpec {
    unsigned r;
    std::uint64_t n;
    double q;
    BinomialPartSet parts;

    GeometricEnsembleSpec(unsigned order, std::uint64_t target, double tilt)
        : r(order), n(target), q(tilt), parts(order, target)
    {
        if (!(q > 0.0 && q < 1.0))
            throw std::invalid_argument("tilt q must lie in (0,1)");
        if (n < 1)
            throw std::invalid_argument("target weight must be >= 1");
    }

    static GeometricEnsembleSpec tilted(std::uint64_t n, unsigned r)
    {
        return GeometricEnsembleSpec(r, n, tilt_parameter(n, r));
    }
};

struct EnsembleMoments {
    double mean;
    double variance;
    // Local-CLT prediction for P(X = n) at the tilt: 1 / (sigma sqrt(2 pi)).
    double predicted_point_mass_scale;
};

/// Mean and variance of the total weight X = sum_l s_l Gamma_l:
///   E X   = sum_l s_l q^{s_l} / (1 - q^{s_l})
///   var X = sum_l s_l^2 q^{s_l} / (1 - q^{s_l})^2
inline EnsembleMoments ensemble_moments(const GeometricEnsembleSpec& spec)
{
    double mean = 0.0, var = 0.0;
    const double logq = std::log(spec.q);
    for (std::uint64_t s : spec.parts.parts()) {
        const double sd = static_cast<double>(s);
        const double qs = std::exp(sd * logq);
        mean += sd * qs / (1.0 - qs);
        var += sd * sd * qs / ((1.0 - qs) * (1.0 - qs));
    }
    return EnsembleMoments{mean, var, 1.0 / (std::sqrt(var) * std::sqrt(kTwoPi))};
}

struct SampleRecord {
    MultiplicityPartition multiplicities;
    std::uint64_t attempts;
    std::uint64_t seed;
};

struct DifferenceStatistics {
    std::uint64_t positive;      // D: indices with multiplicity > 0
    std::uint64_t at_least_m;    // D_m: indices with multiplicity >= m
};

inline DifferenceStatistics difference_statistics(const MultiplicityPartition& mu,
                                                  std::uint64_t m)
{
    return DifferenceStatistics{mu.distinct_sizes(), mu.sizes_with_multiplicity_at_least(m)};
}

inline DifferenceStatistics difference_statistics(const SampleRecord& sample, std::uint64_t m)
{
    return difference_statistics(sample.multiplicities, m);
}

/// Rejection sampler: draw the whole vector of independent geometrics, accept
/// iff the total weight is exactly n. The conditioned law is uniform over the
/// partitions of n into binomial parts (hence, through the inverse bijection,
/// uniform over P_r(n)).
class GeometricPartitionSampler {
public:
    explicit GeometricPartitionSampler(GeometricEnsembleSpec spec)
        : spec_(std::move(spec))
    {
        const double logq = std::log(spec_.q);
        const auto& parts = spec_.parts.parts();
        threshold_.reserve(parts.size());
        inv_s_logq_.reserve(parts.size());
        for (std::uint64_t s : parts) {
            const double slogq = static_cast<double>(s) * logq;
            threshold_.push_back(std::exp(slogq));
            inv_s_logq_.push_back(1.0 / slogq);
        }
    }

    const GeometricEnsembleSpec& spec() const { return spec_; }

    // One full-vector trial. Geometric draws by inverse CDF on a (0,1)
    // uniform, one 64-bit draw per part: Gamma = floor(log u / (s log q)).
    // The threshold branch short-circuits the (almost sure) Gamma = 0 case;
    // a trial aborts as soon as its weight overshoots (the remaining
    // variables are nonnegative, so the outcome is already decided).
    bool try_draw(Xoshiro256StarStar& rng, std::vector<std::uint64_t>& out) const
    {
        const auto& parts = spec_.parts.parts();
        out.assign(parts.size(), 0);
        std::uint64_t weight = 0;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            const double u = rng.uniform_open();
            if (u >= threshold_[i])
                continue;
            const auto g = static_cast<std::uint64_t>(std::log(u) * inv_s_logq_[i]);
            out[i] = g;
            weight += parts[i] * g;
            if (weight > spec_.n)
                return false;
        }
        return weight == spec_.n;
    }

    SampleRecord sample_conditioned(std::uint64_t seed,
                                    std::uint64_t max_attempts = kDefaultAttemptCap) const
    {
        Xoshiro256StarStar rng(seed);
        std::vector<std::uint64_t> draw;
        for (std::uint64_t attempt = 1; attempt <= max_attempts; ++attempt) {
            if (try_draw(rng, draw))
                return SampleRecord{to_multiplicities(draw), attempt, seed};
        }
        throw std::runtime_error("rejection sampler exhausted " + std::to_string(max_attempts) +
                                 " attempts at n=" + std::to_string(spec_.n) +
                                 ", r=" + std::to_string(spec_.r) +
                                 "; n is too large for rejection at this tilt");
    }

    // Draws `count` accepted samples from one seed-determined stream,
    // reporting each through `on_sample(multiplicity vector, attempts)`.
    template <typename Callback>
    void sample_many(std::uint64_t seed, std::uint64_t count, Callback&& on_sample,
                     std::uint64_t max_attempts = kDefaultAttemptCap) const
    {
        Xoshiro256StarStar rng(seed);
        std::vector<std::uint64_t> draw;
        std::uint64_t attempts = 0;
        for (std::uint64_t got = 0; got < count;) {
            if (++attempts > max_attempts)
                throw std::runtime_error("rejection sampler exhausted attempt budget");
            if (try_draw(rng, draw)) {
                on_sample(draw, attempts);
                attempts = 0;
                ++got;
            }
        }
    }

    MultiplicityPartition to_multiplicities(const std::vector<std::uint64_t>& draw) const
    {
        MultiplicityPartition mu(spec_.r);
        for (std::size_t i = 0; i < draw.size(); ++i)
            if (draw[i])
                mu.add(i, draw[i]);
        if (mu.weight() != spec_.n)
            throw std::logic_error("accepted sample has wrong weight");
        return mu;
    }

private:
    GeometricEnsembleSpec spec_;
    std::vector<double> threshold_;
    std::vector<double> inv_s_logq_;
};

inline SampleRecord sample_conditioned(const GeometricEnsembleSpec& spec, std::uint64_t seed,
                                       std::uint64_t max_attempts = kDefaultAttemptCap)
{
    return GeometricPartitionSampler(spec).sample_conditioned(seed, max_attempts);
}

struct PointMassEstimate {
    std::uint64_t trials;
    std::uint64_t accepted;
    double acceptance_rate;         // hat P(X_n = n)
    double scaled_estimate;         // n^{(2r+1)/(2(r+1))} * acceptance_rate
    double scaled_stderr;           // binomial standard error, same scaling
    double sigma_scaled_estimate;   // sigma_n * acceptance_rate (diagnostic)
};

/// Monte Carlo estimate of n^{(2r+1)/(2(r+1))} * P(X_n = n) from fixed-count
/// ensemble trials at the tilt.
inline PointMassEstimate point_mass_scaling(std::uint64_t n, unsigned r,
                                            std::uint64_t num_trials, std::uint64_t seed)
{
    if (num_trials < 10'000)
        throw std::invalid_argument("point_mass_scaling needs at least 10^4 trials");
    GeometricPartitionSampler sampler(GeometricEnsembleSpec::tilted(n, r));
    Xoshiro256StarStar rng(seed);
    std::vector<std::uint64_t> draw;
    std::uint64_t accepted = 0;
    for (std::uint64_t t = 0; t < num_trials; ++t)
        accepted += sampler.try_draw(rng, draw) ? 1 : 0;
    if (accepted == 0)
        throw std::runtime_error("no acceptances in " + std::to_string(num_trials) +
                                 " trials at n=" + std::to_string(n) + ", r=" + std::to_string(r) +
                                 " (tilt q=" + std::to_string(sampler.spec().q) + ")");
    const double rd = static_cast<double>(r);
    const double scale = std::pow(static_cast<double>(n), (2.0 * rd + 1.0) / (2.0 * (rd + 1.0)));
    const double rate = static_cast<double>(accepted) / static_cast<double>(num_trials);
    const double se = std::sqrt(rate * (1.0 - rate) / static_cast<double>(num_trials));
    const double sigma = std::sqrt(ensemble_moments(sampler.spec()).variance);
    return PointMassEstimate{num_trials, accepted, rate, scale * rate, scale * se, sigma * rate};
}

/// Exact uniform sampler by unranking: recursively choose the multiplicity t
/// of the largest remaining part s with probability
///   #partitions of (w - t s) into parts < s  /  #partitions of w into parts <= s,
/// from a precomputed prefix table.
class ExactSampler {
public:
    static std::uint64_t default_cap(unsigned r) { return r == 1 ? 2000 : 10'000; }

    ExactSampler(unsigned r, std::uint64_t n, std::uint64_t cap)
        : r_(r), n_(n), parts_(r, n == 0 ? 1 : n)
    {
        if (n > cap)
            throw CapExceeded("exact sampler cap " + std::to_string(cap) +
                              " exceeded at n=" + std::to_string(n));
        const auto& s = parts_.parts();
        rows_.assign(s.size(), std::vector<BigCount>(n + 1, BigCount(0)));
        // rows_[j][w] = partitions of w into parts from s[0..j]
        for (std::size_t j = 0; j < s.size(); ++j) {
            if (j == 0) {
                for (std::uint64_t w = 0; w <= n; ++w)
                    rows_[0][w] = (w % s[0] == 0) ? 1 : 0;   // s[0] == 1
                continue;
            }
            rows_[j] = rows_[j - 1];
            for (std::uint64_t w = s[j]; w <= n; ++w)
                rows_[j][w] += rows_[j][w - s[j]];
        }
    }

    ExactSampler(unsigned r, std::uint64_t n) : ExactSampler(r, n, default_cap(r)) {}

    const BigCount& total() const { return rows_.back()[n_]; }

    MultiplicityPartition sample(Xoshiro256StarStar& rng) const
    {
        MultiplicityPartition mu(r_);
        std::uint64_t w = n_;
        const auto& s = parts_.parts();
        for (std::size_t j = s.size(); j-- > 0 && w > 0;) {
            if (j == 0) {
                mu.add(0, w);   // part value 1 absorbs the remainder
                w = 0;
                break;
            }
            BigCount pick = uniform_below(rng, rows_[j][w]);
            std::uint64_t t = 0;
            for (;; ++t) {
                const BigCount& below = rows_[j - 1][w - t * s[j]];
                if (pick < below)
                    break;
                pick -= below;
            }
            if (t)
                mu.add(j, t);
            w -= t * s[j];
        }
        if (mu.weight() != n_)
            throw std::logic_error("exact sampler produced wrong weight");
        return mu;
    }

    MultiplicityPartition sample(std::uint64_t seed) const
    {
        Xoshiro256StarStar rng(seed);
        return sample(rng);
    }

private:
    unsigned r_;
    std::uint64_t n_;
    BinomialPartSet parts_;
    std::vector<std::vector<BigCount>> rows_;
};

/// Single exact-uniform draw validated against a prebuilt count table.
inline MultiplicityPartition sample_exact(std::uint64_t n, unsigned r, const CountTable& table,
                                          std::uint64_t seed,
                                          std::uint64_t cap = 0)
{
    if (table.order() != r || table.n_max() < n)
        throw std::invalid_argument("count table does not cover (n, r)");
    if (n == 0)
        return MultiplicityPartition(r);
    ExactSampler sampler(r, n, cap ? cap : ExactSampler::default_cap(r));
    if (sampler.total() != table.at(n))
        throw std::logic_error("exact sampler table disagrees with count table");
    return sampler.sample(seed);
}

} // namespace rparts

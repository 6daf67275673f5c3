#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace rparts {

/// Welford accumulator for streaming mean/variance.
class RunningMoments {
public:
    void add(double x)
    {
        ++count_;
        const double delta = x - mean_;
        mean_ += delta / static_cast<double>(count_);
        m2_ += delta * (x - mean_);
    }

    std::uint64_t count() const { return count_; }
    double mean() const { return mean_; }
    double variance() const { return count_ > 1 ? m2_ / static_cast<double>(count_ - 1) : 0.0; }
    double stderr_of_mean() const
    {
        return count_ > 1 ? std::sqrt(variance() / static_cast<double>(count_)) : 0.0;
    }

private:
    std::uint64_t count_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

namespace detail {

// Regularized lower incomplete gamma P(a, x) by series; x < a + 1.
inline double gamma_p_series(double a, double x)
{
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 1000; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-16)
            break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Regularized upper incomplete gamma Q(a, x) by continued fraction; x >= a + 1.
inline double gamma_q_cf(double a, double x)
{
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 1000; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16)
            break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

} // namespace detail

/// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a).
inline double gamma_q(double a, double x)
{
    if (!(a > 0.0) || x < 0.0)
        throw std::domain_error("gamma_q requires a > 0 and x >= 0");
    if (x == 0.0)
        return 1.0;
    return x < a + 1.0 ? 1.0 - detail::gamma_p_series(a, x) : detail::gamma_q_cf(a, x);
}

/// Survival function of the chi-square distribution: P(X > stat) with df
/// degrees of freedom.
inline double chi_square_sf(double stat, double df)
{
    if (!(df > 0.0))
        throw std::domain_error("df must be positive");
    if (stat <= 0.0)
        return 1.0;
    return gamma_q(df / 2.0, stat / 2.0);
}

struct ChiSquareResult {
    double statistic;
    double df;
    double p_value;
};

/// Goodness-of-fit chi-square of observed counts against expected counts.
inline ChiSquareResult chi_square_gof(const std::vector<std::uint64_t>& observed,
                                      const std::vector<double>& expected)
{
    if (observed.size() != expected.size() || observed.empty())
        throw std::invalid_argument("observed/expected size mismatch");
    double stat = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        if (!(expected[i] > 0.0))
            throw std::invalid_argument("expected counts must be positive");
        const double diff = static_cast<double>(observed[i]) - expected[i];
        stat += diff * diff / expected[i];
    }
    const double df = static_cast<double>(observed.size() - 1);
    return ChiSquareResult{stat, df, chi_square_sf(stat, df)};
}

/// Two-sample chi-square homogeneity test over a common cell list.
inline ChiSquareResult chi_square_two_sample(const std::vector<std::uint64_t>& a,
                                             const std::vector<std::uint64_t>& b)
{
    if (a.size() != b.size() || a.empty())
        throw std::invalid_argument("sample size mismatch");
    double na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        na += static_cast<double>(a[i]);
        nb += static_cast<double>(b[i]);
    }
    const double ka = std::sqrt(nb / na), kb = std::sqrt(na / nb);
    double stat = 0.0;
    std::size_t cells = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double ai = static_cast<double>(a[i]), bi = static_cast<double>(b[i]);
        if (ai + bi == 0.0)
            continue;
        const double diff = ka * ai - kb * bi;
        stat += diff * diff / (ai + bi);
        ++cells;
    }
    const double df = static_cast<double>(cells - 1);
    return ChiSquareResult{stat, df, chi_square_sf(stat, df)};
}

} // namespace rparts

#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rparts/bigint.hpp"

namespace rparts {

inline double zeta(double s)
{
    if (!(s > 1.0))
        throw std::domain_error("zeta requires s > 1");
    return std::riemann_zeta(s);
}

inline double gamma(double x)
{
    if (!(x > 0.0))
        throw std::domain_error("gamma requires x > 0");
    return std::tgamma(x);
}

inline double log_gamma(double x)
{
    if (!(x > 0.0))
        throw std::domain_error("log_gamma requires x > 0");
    return std::lgamma(x);
}

inline constexpr double kTwoPi = 6.2831853071795864769;

/// A part-generating polynomial P(x) = A x^d + B x^{d-1} + ... , positive and
/// increasing for x >= 1, given by its leading coefficients and negated roots
/// (P(x) = A * prod_j (x + roots[j])). The binomial specialization is
/// P(x) = C(x+r-1, r): d = r, A = 1/r!, B = r(r-1)/(2 r!), roots j-1.
struct PolynomialPartSet {
    unsigned d;
    double A;
    double B;
    std::vector<double> roots;

    PolynomialPartSet(unsigned degree, double lead, double next, std::vector<double> negated_roots)
        : d(degree), A(lead), B(next), roots(std::move(negated_roots))
    {
        if (d < 1)
            throw std::invalid_argument("degree must be >= 1");
        if (!(A > 0.0))
            throw std::invalid_argument("leading coefficient must be positive");
        if (roots.size() != d)
            throw std::invalid_argument("need exactly d negated roots");
        double root_sum = 0.0;
        for (double rho : roots)
            root_sum += rho;
        if (std::fabs(B - A * root_sum) > 1e-9 * std::max(1.0, std::fabs(B)))
            throw std::invalid_argument("B must equal A * sum(roots)");
        double prev = 0.0;
        for (int i = 1; i <= 64; ++i) {
            double v = eval(static_cast<double>(i));
            if (!(v > 0.0) || (i > 1 && !(v > prev)))
                throw std::invalid_argument("polynomial must be positive and increasing for x >= 1");
            prev = v;
        }
    }

    double eval(double x) const
    {
        double v = A;
        for (double rho : roots)
            v *= x + rho;
        return v;
    }

    static PolynomialPartSet binomial(unsigned r)
    {
        if (r < 1)
            throw std::invalid_argument("order r must be >= 1");
        double rfact = gamma(static_cast<double>(r) + 1.0);
        std::vector<double> roots(r);
        for (unsigned j = 0; j < r; ++j)
            roots[j] = static_cast<double>(j);
        double a = 1.0 / rfact;
        double b = a * (static_cast<double>(r) * (r - 1.0) / 2.0);
        return PolynomialPartSet(r, a, b, std::move(roots));
    }
};

/// The closed-form constants of the partition asymptotics
///   p_S(n) ~ c * n^{-kappa - 1/2} * exp((1+d) C n^{1/(d+1)}).
/// kappa = (Ad+B)/(A(d+1)); in the binomial case kappa = r/2, so the power
/// exponent kappa + 1/2 equals (r+1)/2. A_mean is the coefficient of the
/// mean positive-difference count, delta_r(n) ~ A_mean * n^{1/(1+r)}.
struct AsymptoticConstants {
    double C;
    double c;
    double kappa;
    double A_mean;

    double power_exponent() const { return kappa + 0.5; }
};

inline AsymptoticConstants constants_polynomial(const PolynomialPartSet& ps)
{
    const double d = static_cast<double>(ps.d);
    for (double rho : ps.roots)
        if (!(rho > -1.0))
            throw std::invalid_argument("every negated root must exceed -1");
    const double C = std::pow(std::pow(ps.A, -1.0 / d) / d * zeta(1.0 + 1.0 / d) *
                                  gamma(1.0 + 1.0 / d),
                              d / (d + 1.0));
    const double b_over_ad = ps.B / (ps.A * d);
    double log_c = 0.0;
    for (double rho : ps.roots)
        log_c += log_gamma(1.0 + rho);
    log_c += (1.0 + b_over_ad) * std::log(C);
    log_c += (0.5 + b_over_ad) * std::log(ps.A);
    log_c += -0.5 * std::log1p(1.0 / d);
    log_c += -(d + 1.0) / 2.0 * std::log(kTwoPi);
    const double kappa = (ps.A * d + ps.B) / (ps.A * (d + 1.0));
    const double a_mean = gamma(1.0 + 1.0 / d) * std::pow(ps.A, -1.0 / d) * std::pow(C, -1.0 / d);
    return AsymptoticConstants{C, std::exp(log_c), kappa, a_mean};
}

inline AsymptoticConstants constants_binomial(unsigned r)
{
    if (r < 1)
        throw std::invalid_argument("order r must be >= 1");
    const double rd = static_cast<double>(r);
    const double rfact = gamma(rd + 1.0);
    const double C = std::pow(std::pow(rfact, 1.0 / rd) / rd * zeta(1.0 + 1.0 / rd) *
                                  gamma(1.0 + 1.0 / rd),
                              rd / (rd + 1.0));
    double log_c = (rd + 1.0) / 2.0 * std::log(C / kTwoPi) - rd / 2.0 * std::log(rfact) -
                   0.5 * std::log1p(1.0 / rd);
    for (unsigned j = 0; j + 1 < r; ++j)
        log_c += log_gamma(static_cast<double>(j) + 2.0);
    const double a_mean = gamma(1.0 + 1.0 / rd) * std::pow(rfact, 1.0 / rd) * std::pow(C, -1.0 / rd);
    return AsymptoticConstants{C, std::exp(log_c), rd / 2.0, a_mean};
}

struct AsymEstimate {
    double log_value;
    double value;
};

/// Leading-order estimate of p_r(n): c * n^{-(r+1)/2} * exp(C(1+r) n^{1/(1+r)}),
/// evaluated in log space.
inline AsymEstimate asym_pr(std::uint64_t n, unsigned r)
{
    if (n < 1)
        throw std::invalid_argument("n must be >= 1");
    const AsymptoticConstants k = constants_binomial(r);
    const double nd = static_cast<double>(n);
    const double rd = static_cast<double>(r);
    const double log_value = std::log(k.c) - k.power_exponent() * std::log(nd) +
                             k.C * (1.0 + rd) * std::pow(nd, 1.0 / (1.0 + rd));
    return AsymEstimate{log_value, std::exp(log_value)};
}

/// Estimate of the average number of r-th differences >= m:
/// m^{-1/r} * A_mean * n^{1/(1+r)}.
inline double asym_delta(std::uint64_t n, unsigned r, std::uint64_t m)
{
    if (n < 1 || m < 1)
        throw std::invalid_argument("n and m must be >= 1");
    const AsymptoticConstants k = constants_binomial(r);
    const double rd = static_cast<double>(r);
    return std::pow(static_cast<double>(m), -1.0 / rd) * k.A_mean *
           std::pow(static_cast<double>(n), 1.0 / (1.0 + rd));
}

/// Geometric-ensemble tilt making the expected total weight track n:
/// q_n = exp(-C / n^{r/(r+1)}).
inline double tilt_parameter(std::uint64_t n, unsigned r)
{
    if (n < 1)
        throw std::invalid_argument("n must be >= 1");
    const double rd = static_cast<double>(r);
    return std::exp(-constants_binomial(r).C *
                    std::pow(static_cast<double>(n), -rd / (rd + 1.0)));
}

} // namespace rparts

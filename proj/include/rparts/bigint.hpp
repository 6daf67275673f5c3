#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace rparts {

// Exact nonnegative counts. All counting code keeps these exact; conversion
// to double happens only at reporting boundaries.
using BigCount = mpz_class;
using BigRational = mpq_class;

// Thrown when an operation would exceed a configured resource cap.
class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline BigCount binomial(unsigned long n, unsigned long k)
{
    BigCount out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

inline std::string to_decimal(const BigCount& v)
{
    return v.get_str();
}

inline bool fits_u64(const BigCount& v)
{
    return v >= 0 && mpz_sizeinbase(v.get_mpz_t(), 2) <= 64;
}

inline std::uint64_t to_u64(const BigCount& v)
{
    if (!fits_u64(v))
        throw std::overflow_error("BigCount does not fit in 64 bits: " + v.get_str());
    std::uint64_t lo = mpz_getlimbn(v.get_mpz_t(), 0);
    return lo;
}

// Natural log of a positive big integer, exact to double rounding.
inline double log_bigcount(const BigCount& v)
{
    if (v <= 0)
        throw std::domain_error("log_bigcount requires a positive value");
    signed long exp2;
    double mant = mpz_get_d_2exp(&exp2, v.get_mpz_t());
    return std::log(mant) + static_cast<double>(exp2) * 0.6931471805599453094;
}

inline double rational_to_double(const BigRational& q)
{
    return mpq_get_d(q.get_mpq_t());
}

} // namespace rparts

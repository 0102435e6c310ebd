#include "hypersim/core/numeric.hpp"

#include <stdexcept>

namespace hypersim
{
    BigInt binomial(std::uint64_t n, std::uint64_t k)
    {
        if (k > n)
            return 0;
        if (k > n - k)
            k = n - k;
        BigInt result = 1;
        for (std::uint64_t i = 1; i <= k; ++i)
        {
            result *= n - k + i;
            result /= i;
        }
        return result;
    }

    std::uint64_t binomial_u64(std::uint64_t n, std::uint64_t k)
    {
        BigInt b = binomial(n, k);
        if (b > std::numeric_limits<std::uint64_t>::max())
            throw std::overflow_error("binomial coefficient exceeds 64 bits");
        return static_cast<std::uint64_t>(b);
    }

    unsigned ceil_log2(std::uint64_t x)
    {
        unsigned t = 0;
        while (t < 64 && (std::uint64_t{1} << t) < x)
            ++t;
        return t;
    }

    unsigned ceil_log2(const BigInt& x)
    {
        if (x <= 1)
            return 0;
        unsigned t = 0;
        BigInt p = 1;
        while (p < x)
        {
            p <<= 1;
            ++t;
        }
        return t;
    }

    unsigned id_bits(std::uint64_t n)
    {
        unsigned b = ceil_log2(n);
        return b == 0 ? 1 : b;
    }

    std::string to_string(const Rational& q)
    {
        auto num = boost::multiprecision::numerator(q);
        auto den = boost::multiprecision::denominator(q);
        if (den == 1)
            return num.str();
        return num.str() + "/" + den.str();
    }

    double to_double(const Rational& q)
    {
        return q.convert_to<double>();
    }

} // namespace hypersim

#ifndef HYPERSIM_CORE_NUMERIC_HPP
#define HYPERSIM_CORE_NUMERIC_HPP

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace hypersim
{
    using BigInt = boost::multiprecision::cpp_int;
    using Rational = boost::multiprecision::cpp_rational;

    /// Exact binomial coefficient; zero when k > n.
    BigInt binomial(std::uint64_t n, std::uint64_t k);

    /// Binomial coefficient in 64 bits. Throws std::overflow_error if it does not fit.
    std::uint64_t binomial_u64(std::uint64_t n, std::uint64_t k);

    /// Smallest t with 2^t >= x (0 for x <= 1).
    unsigned ceil_log2(std::uint64_t x);
    unsigned ceil_log2(const BigInt& x);

    /// Bits needed to write any value in [0, n): ceil(log2 n), at least 1.
    unsigned id_bits(std::uint64_t n);

    /// "p/q" or "p" for integral values.
    std::string to_string(const Rational& q);
    double to_double(const Rational& q);

} // namespace hypersim

#endif // HYPERSIM_CORE_NUMERIC_HPP

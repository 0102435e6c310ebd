#ifndef HYPERSIM_CORE_GENERATORS_HPP
#define HYPERSIM_CORE_GENERATORS_HPP

#include <cstdint>
#include <random>

#include "hypersim/core/hypergraph.hpp"

namespace hypersim
{
    /// Seedable mt19937_64 stream. Child streams are derived with SplitMix64 so that
    /// independent experiments never share state. Draws avoid std:: distributions, whose
    /// output differs between standard libraries.
    class Rng
    {
    public:
        explicit Rng(std::uint64_t seed) : seed_(seed), engine_(mix(seed)) {}

        std::uint64_t seed() const { return seed_; }
        std::uint64_t next() { return engine_(); }
        /// Uniform in [0, 1) with 53 bits of precision.
        double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
        bool bernoulli(double p);
        /// Uniform in [0, bound).
        std::uint64_t below(std::uint64_t bound);
        Rng split(std::uint64_t stream) const { return Rng(mix(seed_ ^ mix(stream + 0x632be59bd9b4e019ULL))); }

        static std::uint64_t mix(std::uint64_t x);

    private:
        std::uint64_t seed_;
        std::mt19937_64 engine_;
    };

    /// H(n, r, p): every r-subset of [0, n) is an edge independently with probability p.
    /// Subsets are visited in lexicographic order. Throws unless 2 <= r <= n and 0 <= p <= 1.
    Hypergraph sample_uniform_random(std::size_t n, std::size_t r, double p, std::uint64_t seed);

    /// Sparse instance with a small dense core: r = ceil(2 / eps), core size
    /// n' = ceil(n^(1/r)); random r-edges on the core with p = 1/2, star edges {v, n'}
    /// for v < n', and one tail edge {n', ..., n-1}.
    Hypergraph sample_sparse_planted(std::size_t n, double eps, std::uint64_t seed);

    struct SparsePlantedShape
    {
        std::size_t rank = 0;
        std::size_t core = 0;
    };
    /// Parameters used by sample_sparse_planted; throws when they are out of range.
    SparsePlantedShape sparse_planted_shape(std::size_t n, double eps);

} // namespace hypersim

#endif // HYPERSIM_CORE_GENERATORS_HPP

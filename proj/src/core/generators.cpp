#include "hypersim/core/generators.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hypersim
{
    std::uint64_t Rng::mix(std::uint64_t x)
    {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    bool Rng::bernoulli(double p)
    {
        if (p <= 0.0)
            return false;
        if (p >= 1.0)
            return true;
        return uniform() < p;
    }

    std::uint64_t Rng::below(std::uint64_t bound)
    {
        if (bound == 0)
            throw std::invalid_argument("Rng::below requires a positive bound");
        // Rejection sampling keeps the draw unbiased.
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max()
                                    - std::numeric_limits<std::uint64_t>::max() % bound;
        std::uint64_t x;
        do
            x = engine_();
        while (x >= limit);
        return x % bound;
    }

    namespace
    {
        std::string format_double(double x)
        {
            std::ostringstream os;
            os.precision(17);
            os << x;
            return os.str();
        }

        /// Visits every r-subset of [offset, offset + n) in lexicographic order.
        template <class F>
        void for_each_subset(std::size_t n, std::size_t r, VertexId offset, F&& f)
        {
            if (r > n)
                return;
            VertexSet s(r);
            for (std::size_t i = 0; i < r; ++i)
                s[i] = offset + static_cast<VertexId>(i);
            while (true)
            {
                f(s);
                std::size_t i = r;
                while (i > 0 && s[i - 1] == offset + n - r + (i - 1))
                    --i;
                if (i == 0)
                    return;
                ++s[i - 1];
                for (std::size_t j = i; j < r; ++j)
                    s[j] = s[j - 1] + 1;
            }
        }
    } // namespace

    Hypergraph sample_uniform_random(std::size_t n, std::size_t r, double p, std::uint64_t seed)
    {
        if (r < 2 || r > n)
            throw std::invalid_argument("sample_uniform_random requires 2 <= r <= n");
        if (!(p >= 0.0 && p <= 1.0))
            throw std::invalid_argument("sample_uniform_random requires 0 <= p <= 1");
        Rng rng(seed);
        std::vector<VertexSet> edges;
        for_each_subset(n, r, 0, [&](const VertexSet& s) {
            if (rng.bernoulli(p))
                edges.push_back(s);
        });
        auto h = Hypergraph::build(n, std::move(edges));
        h.metadata() = {{"generator", "uniform"},
                        {"n", std::to_string(n)},
                        {"r", std::to_string(r)},
                        {"p", format_double(p)},
                        {"seed", std::to_string(seed)}};
        return h;
    }

    SparsePlantedShape sparse_planted_shape(std::size_t n, double eps)
    {
        if (!(eps > 0.0 && eps < 1.0))
            throw std::invalid_argument("sample_sparse_planted requires 0 < eps < 1");
        SparsePlantedShape shape;
        shape.rank = static_cast<std::size_t>(std::ceil(2.0 / eps - 1e-12));
        // Smallest k with k^r >= n, computed exactly.
        std::size_t k = 1;
        while (true)
        {
            BigInt power = 1;
            for (std::size_t i = 0; i < shape.rank; ++i)
                power *= k;
            if (power >= n)
                break;
            ++k;
        }
        shape.core = k;
        if (shape.core < shape.rank)
            throw std::invalid_argument("sample_sparse_planted: core size " + std::to_string(shape.core)
                                        + " is smaller than rank " + std::to_string(shape.rank));
        if (n < shape.core + 2)
            throw std::invalid_argument("sample_sparse_planted: n too small for the tail edge");
        return shape;
    }

    Hypergraph sample_sparse_planted(std::size_t n, double eps, std::uint64_t seed)
    {
        const auto shape = sparse_planted_shape(n, eps);
        const auto core = static_cast<VertexId>(shape.core);
        Rng rng(seed);
        std::vector<VertexSet> edges;
        for_each_subset(shape.core, shape.rank, 0, [&](const VertexSet& s) {
            if (rng.bernoulli(0.5))
                edges.push_back(s);
        });
        for (VertexId v = 0; v < core; ++v)
            edges.push_back({v, core});
        VertexSet tail;
        for (VertexId v = core; v < n; ++v)
            tail.push_back(v);
        edges.push_back(std::move(tail));

        auto h = Hypergraph::build(n, std::move(edges));
        h.metadata() = {{"generator", "sparse"},
                        {"n", std::to_string(n)},
                        {"eps", format_double(eps)},
                        {"r", std::to_string(shape.rank)},
                        {"core", std::to_string(shape.core)},
                        {"seed", std::to_string(seed)}};
        return h;
    }

} // namespace hypersim

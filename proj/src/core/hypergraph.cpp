#include "hypersim/core/hypergraph.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace hypersim
{
    std::uint64_t MultiplicityMatrix::max_entry() const
    {
        std::uint64_t best = 0;
        for (auto x : entries_)
            best = std::max(best, x);
        return best;
    }

    BigInt MultiplicityMatrix::total_multiplicity() const
    {
        BigInt total = 0;
        for (std::size_t u = 0; u < n_; ++u)
            for (std::size_t v = u + 1; v < n_; ++v)
                total += entries_[u * n_ + v];
        return total;
    }

    Hypergraph Hypergraph::build(std::size_t n, std::vector<VertexSet> edges)
    {
        Hypergraph h;
        h.n_ = n;
        h.incidence_.resize(n);
        for (std::size_t i = 0; i < edges.size(); ++i)
        {
            auto& e = edges[i];
            if (e.size() < 2)
                throw std::invalid_argument("edge " + std::to_string(i) + " has fewer than 2 vertices");
            std::sort(e.begin(), e.end());
            for (std::size_t j = 0; j < e.size(); ++j)
            {
                if (e[j] >= n)
                    throw std::invalid_argument("edge " + std::to_string(i) + " has vertex "
                                                + std::to_string(e[j]) + " out of range");
                if (j > 0 && e[j] == e[j - 1])
                    throw std::invalid_argument("edge " + std::to_string(i) + " repeats vertex "
                                                + std::to_string(e[j]));
            }
            h.rank_ = std::max(h.rank_, e.size());
            for (VertexId v : e)
                h.incidence_[v].push_back(static_cast<EdgeIndex>(i));
        }
        h.edges_ = std::move(edges);
        return h;
    }

    bool Hypergraph::is_uniform() const
    {
        return std::all_of(edges_.begin(), edges_.end(), [&](const VertexSet& e) { return e.size() == rank_; });
    }

    bool Hypergraph::contains(EdgeIndex e, VertexId v) const
    {
        const auto& members = edges_[e];
        return std::binary_search(members.begin(), members.end(), v);
    }

    Port Hypergraph::port_of(VertexId v, EdgeIndex e) const
    {
        const auto& inc = incidence_[v];
        auto it = std::lower_bound(inc.begin(), inc.end(), e);
        if (it == inc.end() || *it != e)
            throw std::invalid_argument("vertex is not incident to edge");
        return static_cast<Port>(it - inc.begin());
    }

    std::size_t Hypergraph::rank_degree(VertexId v) const
    {
        std::size_t total = 0;
        for (EdgeIndex e : incidence_[v])
            total += edges_[e].size() - 1;
        return total;
    }

    VertexSet Hypergraph::neighbors(VertexId v) const
    {
        VertexSet out;
        for (EdgeIndex e : incidence_[v])
            for (VertexId w : edges_[e])
                if (w != v)
                    out.push_back(w);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    std::size_t Hypergraph::pair_degree(VertexId u, VertexId v) const
    {
        if (u == v)
            throw std::invalid_argument("pair_degree requires distinct vertices");
        if (u >= n_ || v >= n_)
            throw std::invalid_argument("pair_degree vertex out of range");
        const auto& smaller = degree(u) <= degree(v) ? incidence_[u] : incidence_[v];
        VertexId other = degree(u) <= degree(v) ? v : u;
        std::size_t count = 0;
        for (EdgeIndex e : smaller)
            if (contains(e, other))
                ++count;
        return count;
    }

    std::size_t Hypergraph::max_degree() const
    {
        std::size_t best = 0;
        for (const auto& inc : incidence_)
            best = std::max(best, inc.size());
        return best;
    }

    std::size_t Hypergraph::max_pair_degree() const
    {
        return static_cast<std::size_t>(induced_multigraph(*this).max_entry());
    }

    std::size_t Hypergraph::total_size() const
    {
        std::size_t total = 0;
        for (const auto& e : edges_)
            total += e.size();
        return total;
    }

    std::optional<EdgeIndex> Hypergraph::find_edge(VertexSet members) const
    {
        std::sort(members.begin(), members.end());
        if (members.empty() || members.front() >= n_)
            return std::nullopt;
        for (EdgeIndex e : incidence_[members.front()])
            if (edges_[e] == members)
                return e;
        return std::nullopt;
    }

    bool Hypergraph::has_duplicate_edges() const
    {
        std::vector<VertexSet> sorted = edges_;
        std::sort(sorted.begin(), sorted.end());
        return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
    }

    MultiplicityMatrix induced_multigraph(const Hypergraph& h)
    {
        MultiplicityMatrix a(h.num_vertices());
        for (const auto& e : h.edges())
            for (std::size_t i = 0; i < e.size(); ++i)
                for (std::size_t j = i + 1; j < e.size(); ++j)
                {
                    ++a.at(e[i], e[j]);
                    ++a.at(e[j], e[i]);
                }
        return a;
    }

    namespace
    {
        std::vector<bool> membership(const Hypergraph& h, const VertexSet& u)
        {
            if (u.empty())
                throw std::invalid_argument("vertex subset must be nonempty");
            std::vector<bool> in(h.num_vertices(), false);
            for (VertexId v : u)
            {
                if (v >= h.num_vertices())
                    throw std::invalid_argument("vertex subset has vertex out of range");
                in[v] = true;
            }
            return in;
        }
    } // namespace

    Hypergraph restrict_to(const Hypergraph& h, const VertexSet& u)
    {
        auto in = membership(h, u);
        std::vector<VertexSet> projected;
        for (const auto& e : h.edges())
        {
            VertexSet part;
            for (VertexId v : e)
                if (in[v])
                    part.push_back(v);
            if (part.size() >= 2)
                projected.push_back(std::move(part));
        }
        return Hypergraph::build(h.num_vertices(), std::move(projected));
    }

    Rational density(const Hypergraph& h, const VertexSet& u)
    {
        auto in = membership(h, u);
        std::size_t size = std::count(in.begin(), in.end(), true);
        std::uint64_t total = 0;
        for (const auto& e : h.edges())
        {
            std::size_t k = std::count_if(e.begin(), e.end(), [&](VertexId v) { return in[v]; });
            if (k >= 2)
                total += k;
        }
        return Rational(total) / Rational(size);
    }

    Rational max_density_exact(const Hypergraph& h, std::size_t cap)
    {
        const std::size_t n = h.num_vertices();
        if (n > cap)
            throw std::invalid_argument("max_density_exact: n = " + std::to_string(n)
                                        + " exceeds cap " + std::to_string(cap));
        if (n == 0)
            return 0;
        if (n > 63)
            throw std::invalid_argument("max_density_exact: n too large for subset masks");

        std::vector<std::uint64_t> masks;
        masks.reserve(h.num_edges());
        for (const auto& e : h.edges())
        {
            std::uint64_t m = 0;
            for (VertexId v : e)
                m |= std::uint64_t{1} << v;
            masks.push_back(m);
        }

        // Compare total/size fractions by cross-multiplication.
        std::uint64_t best_total = 0;
        std::uint64_t best_size = 1;
        const std::uint64_t limit = std::uint64_t{1} << n;
        for (std::uint64_t subset = 1; subset < limit; ++subset)
        {
            std::uint64_t total = 0;
            for (auto m : masks)
            {
                auto k = static_cast<std::uint64_t>(std::popcount(m & subset));
                if (k >= 2)
                    total += k;
            }
            auto size = static_cast<std::uint64_t>(std::popcount(subset));
            if (total * best_size > best_total * size)
            {
                best_total = total;
                best_size = size;
            }
        }
        return Rational(best_total) / Rational(best_size);
    }

    std::vector<EdgeId> assign_edge_ids(const Hypergraph& h)
    {
        std::vector<EdgeId> ids(h.num_edges());
        for (EdgeIndex e = 0; e < h.num_edges(); ++e)
        {
            VertexId owner = h.edge(e).front();
            ids[e] = EdgeId{owner, h.port_of(owner, e)};
        }
        return ids;
    }

    std::size_t peel_round_budget(std::size_t n)
    {
        return std::max<std::size_t>(1, ceil_log2(static_cast<std::uint64_t>(n)));
    }

    LayerDecomposition layered_decomposition_reference(const Hypergraph& h, const Rational& alpha)
    {
        const std::size_t n = h.num_vertices();
        // count <= 2 alpha  <=>  count <= floor(2 alpha) for integral counts
        Rational twice = alpha * 2;
        BigInt cap_big = boost::multiprecision::numerator(twice) / boost::multiprecision::denominator(twice);
        const std::int64_t cap = cap_big < 0 ? -1 : static_cast<std::int64_t>(cap_big);

        LayerDecomposition out;
        out.layer.assign(n, 0);
        std::vector<bool> remaining(n, true);
        std::size_t left = n;
        const std::size_t budget = peel_round_budget(n);
        for (std::size_t round = 1; round <= budget && left > 0; ++round)
        {
            std::vector<VertexId> peeled;
            for (VertexId v = 0; v < n; ++v)
            {
                if (!remaining[v])
                    continue;
                std::int64_t live = 0;
                for (EdgeIndex e : h.incident(v))
                {
                    auto members = h.edge(e);
                    if (std::any_of(members.begin(), members.end(),
                                    [&](VertexId w) { return w != v && remaining[w]; }))
                        ++live;
                }
                if (live <= cap)
                    peeled.push_back(v);
            }
            for (VertexId v : peeled)
            {
                remaining[v] = false;
                out.layer[v] = round;
            }
            left -= peeled.size();
            if (!peeled.empty())
                out.depth = round;
        }
        out.complete = left == 0;
        return out;
    }

} // namespace hypersim

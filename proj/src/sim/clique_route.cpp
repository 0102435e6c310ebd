#include "hypersim/sim/clique_route.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>

namespace hypersim::sim
{
    namespace
    {
        std::size_t frames_of(std::size_t bits, const Bandwidth& bw)
        {
            return std::max<std::size_t>(1, charge_rounds(bits, bw));
        }

        std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

        void close_phase(RoutePhase& phase, std::span<const RouteDemand> demands)
        {
            for (const Hop& hop : phase.hops)
                phase.max_bits = std::max(phase.max_bits, demands[hop.demand].bits);
        }

        std::size_t total_rounds(const std::vector<RoutePhase>& phases, const Bandwidth& bw)
        {
            std::size_t r = 0;
            for (const auto& p : phases)
                r += frames_of(p.max_bits, bw);
            return r;
        }

        RouteSchedule direct(std::span<const RouteDemand> demands, const Bandwidth& bw)
        {
            std::map<std::pair<VertexId, VertexId>, std::size_t> seen;
            RouteSchedule s;
            s.strategy = RouteStrategy::Direct;
            for (std::size_t i = 0; i < demands.size(); ++i)
            {
                const auto& d = demands[i];
                if (d.src == d.dst)
                    continue;
                std::size_t j = seen[{d.src, d.dst}]++;
                if (j >= s.phases.size())
                    s.phases.resize(j + 1);
                s.phases[j].hops.push_back({d.src, d.dst, i});
            }
            for (auto& p : s.phases)
                close_phase(p, demands);
            s.rounds = total_rounds(s.phases, bw);
            return s;
        }

        /// Proper colouring of a bipartite multigraph (sources 0..n-1, destinations
        /// n..2n-1) with max-degree colours via alternating-path recolouring.
        class BipartiteColoring
        {
        public:
            BipartiteColoring(std::size_t nodes, std::size_t colors)
                : colors_(colors), words_((colors + 63) / 64), at_(nodes * colors, kNone), used_(nodes * words_, 0)
            {
            }

            std::size_t add(std::size_t u, std::size_t v, std::size_t edge)
            {
                if (edge >= ends_.size())
                {
                    ends_.resize(edge + 1);
                    color_.resize(edge + 1, kNone);
                }
                ends_[edge] = {u, v};
                const std::size_t a = first_free(u);
                const std::size_t b = first_free(v);
                if (slot(v, a) != kNone)
                    flip(v, a, b);
                assign(edge, a);
                return a;
            }

            std::size_t color(std::size_t edge) const { return color_[edge]; }

        private:
            static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

            std::size_t& slot(std::size_t node, std::size_t c) { return at_[node * colors_ + c]; }

            std::size_t first_free(std::size_t node) const
            {
                for (std::size_t w = 0; w < words_; ++w)
                {
                    std::uint64_t word = used_[node * words_ + w];
                    if (~word != 0)
                    {
                        std::size_t c = w * 64 + static_cast<std::size_t>(std::countr_one(word));
                        if (c < colors_)
                            return c;
                    }
                }
                throw std::logic_error("no free colour at node");
            }

            void mark(std::size_t node, std::size_t c, bool on)
            {
                auto& word = used_[node * words_ + c / 64];
                const std::uint64_t bit = std::uint64_t{1} << (c % 64);
                word = on ? (word | bit) : (word & ~bit);
            }

            void assign(std::size_t edge, std::size_t c)
            {
                auto [u, v] = ends_[edge];
                color_[edge] = c;
                slot(u, c) = edge;
                slot(v, c) = edge;
                mark(u, c, true);
                mark(v, c, true);
            }

            void unassign(std::size_t edge)
            {
                auto [u, v] = ends_[edge];
                std::size_t c = color_[edge];
                slot(u, c) = kNone;
                slot(v, c) = kNone;
                mark(u, c, false);
                mark(v, c, false);
                color_[edge] = kNone;
            }

            // Swap colours a and b along the a/b path starting at `start` with colour a.
            void flip(std::size_t start, std::size_t a, std::size_t b)
            {
                std::vector<std::size_t> path;
                std::size_t node = start;
                std::size_t c = a;
                while (slot(node, c) != kNone)
                {
                    std::size_t e = slot(node, c);
                    path.push_back(e);
                    node = ends_[e].first == node ? ends_[e].second : ends_[e].first;
                    c = c == a ? b : a;
                }
                std::vector<std::size_t> old(path.size());
                for (std::size_t i = 0; i < path.size(); ++i)
                {
                    old[i] = color_[path[i]];
                    unassign(path[i]);
                }
                for (std::size_t i = 0; i < path.size(); ++i)
                    assign(path[i], old[i] == a ? b : a);
            }

            std::size_t colors_;
            std::size_t words_;
            std::vector<std::size_t> at_;
            std::vector<std::uint64_t> used_;
            std::vector<std::pair<std::size_t, std::size_t>> ends_;
            std::vector<std::size_t> color_;
        };

        RouteSchedule two_phase(std::span<const RouteDemand> demands, std::size_t n, const Bandwidth& bw)
        {
            RouteSchedule s;
            s.strategy = RouteStrategy::TwoPhase;
            std::vector<std::size_t> out(n, 0), in(n, 0);
            for (const auto& d : demands)
                if (d.src != d.dst)
                {
                    ++out[d.src];
                    ++in[d.dst];
                }
            std::size_t delta = 0;
            for (std::size_t v = 0; v < n; ++v)
                delta = std::max({delta, out[v], in[v]});
            if (delta == 0)
                return s;

            BipartiteColoring coloring(2 * n, delta);
            for (std::size_t i = 0; i < demands.size(); ++i)
                if (demands[i].src != demands[i].dst)
                    coloring.add(demands[i].src, n + demands[i].dst, i);

            const std::size_t groups = ceil_div(delta, n);
            std::vector<RoutePhase> first(groups), second(groups);
            for (std::size_t i = 0; i < demands.size(); ++i)
            {
                const auto& d = demands[i];
                if (d.src == d.dst)
                    continue;
                const std::size_t c = coloring.color(i);
                const auto k = static_cast<VertexId>(c % n);
                if (d.src != k)
                    first[c / n].hops.push_back({d.src, k, i});
                if (k != d.dst)
                    second[c / n].hops.push_back({k, d.dst, i});
            }
            for (std::size_t g = 0; g < groups; ++g)
                for (auto* p : {&first[g], &second[g]})
                    if (!p->hops.empty())
                    {
                        close_phase(*p, demands);
                        s.phases.push_back(std::move(*p));
                    }
            s.rounds = total_rounds(s.phases, bw);
            return s;
        }
    } // namespace

    RouteLoad route_load(std::span<const RouteDemand> demands, std::size_t n)
    {
        RouteLoad load;
        std::vector<std::size_t> count(n, 0);
        for (const auto& d : demands)
        {
            if (d.src >= n || d.dst >= n)
                throw std::invalid_argument("demand endpoint out of range");
            if (d.src == d.dst)
                continue;
            load.max_bits = std::max(load.max_bits, d.bits);
            ++count[d.src];
            ++count[d.dst];
        }
        for (auto c : count)
            load.max_load = std::max(load.max_load, c);
        return load;
    }

    std::size_t route_guarantee(std::span<const RouteDemand> demands, std::size_t n, const Bandwidth& bw)
    {
        const RouteLoad load = route_load(demands, n);
        if (load.max_load == 0)
            return 0;
        return 2 * frames_of(load.max_bits, bw) * ceil_div(load.max_load, n);
    }

    RouteSchedule clique_route(std::span<const RouteDemand> demands, std::size_t n, const Bandwidth& bw)
    {
        route_load(demands, n);
        RouteSchedule a = direct(demands, bw);
        RouteSchedule b = two_phase(demands, n, bw);
        return b.rounds < a.rounds ? b : a;
    }

} // namespace hypersim::sim

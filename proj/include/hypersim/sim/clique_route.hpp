#ifndef HYPERSIM_SIM_CLIQUE_ROUTE_HPP
#define HYPERSIM_SIM_CLIQUE_ROUTE_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "hypersim/core/hypergraph.hpp"
#include "hypersim/sim/model.hpp"

namespace hypersim::sim
{
    struct RouteDemand
    {
        VertexId src = 0;
        VertexId dst = 0;
        std::size_t bits = 0;
    };

    /// One transfer of demand `demand` from src to dst.
    struct Hop
    {
        VertexId src = 0;
        VertexId dst = 0;
        std::size_t demand = 0;
    };

    /// One CLIQUE step: every ordered pair appears at most once.
    struct RoutePhase
    {
        std::vector<Hop> hops;
        std::size_t max_bits = 0;
    };

    enum class RouteStrategy
    {
        Direct,   ///< every demand sent straight to its destination
        TwoPhase, ///< each demand relayed once through an intermediate vertex
    };

    struct RouteSchedule
    {
        RouteStrategy strategy = RouteStrategy::Direct;
        std::vector<RoutePhase> phases;
        /// Sum over phases of max(1, ceil(max_bits / B)).
        std::size_t rounds = 0;
    };

    /// L_max and D_max of a demand list: the longest payload and the largest number of
    /// demands any vertex sources plus receives. Demands with src == dst are local and ignored.
    struct RouteLoad
    {
        std::size_t max_bits = 0;
        std::size_t max_load = 0;
    };
    RouteLoad route_load(std::span<const RouteDemand> demands, std::size_t n);

    /// 2 * ceil(L_max / B) * ceil(D_max / n), with a payload taking at least one frame.
    std::size_t route_guarantee(std::span<const RouteDemand> demands, std::size_t n, const Bandwidth& bw);

    /// Deterministic schedule delivering every non-local demand exactly once. Takes the cheaper
    /// of direct sending and a two-phase relay built from a proper edge colouring of the
    /// source/destination multigraph, whose cost stays within route_guarantee().
    RouteSchedule clique_route(std::span<const RouteDemand> demands, std::size_t n, const Bandwidth& bw);

} // namespace hypersim::sim

#endif // HYPERSIM_SIM_CLIQUE_ROUTE_HPP

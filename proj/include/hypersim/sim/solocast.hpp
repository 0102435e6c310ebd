#ifndef HYPERSIM_SIM_SOLOCAST_HPP
#define HYPERSIM_SIM_SOLOCAST_HPP

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "hypersim/core/hypergraph.hpp"

namespace hypersim::sim
{
    /// One EU round of a solocast: (sender, receiver) transfers over the edge.
    using SolocastRound = std::vector<std::pair<VertexId, VertexId>>;

    /// Doubling broadcast of src's message over one edge using unicasts only. Members are
    /// ranked by sorted id rotated so that src has rank 0; in round t (1-based) every rank
    /// i < 2^(t-1) sends to rank i + 2^(t-1). Takes ceil(log2 |e|) rounds.
    /// Throws std::invalid_argument if src is not a member.
    std::vector<SolocastRound> solocast_over_unicast(std::span<const VertexId> members, VertexId src);

    /// Receiver of `sender` in round t (1-based) of the schedule for src, if any.
    std::optional<VertexId> solocast_target(std::span<const VertexId> members, VertexId src, VertexId sender,
                                            std::size_t t);

} // namespace hypersim::sim

#endif // HYPERSIM_SIM_SOLOCAST_HPP

#include "hypersim/sim/solocast.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "hypersim/core/numeric.hpp"

namespace hypersim::sim
{
    namespace
    {
        std::size_t position(std::span<const VertexId> members, VertexId v)
        {
            auto it = std::find(members.begin(), members.end(), v);
            if (it == members.end())
                throw std::invalid_argument("vertex " + std::to_string(v) + " is not a member of the edge");
            return static_cast<std::size_t>(it - members.begin());
        }
    } // namespace

    std::vector<SolocastRound> solocast_over_unicast(std::span<const VertexId> members, VertexId src)
    {
        const std::size_t k = members.size();
        const std::size_t origin = position(members, src);
        std::vector<SolocastRound> rounds(ceil_log2(k));
        for (std::size_t t = 1; t <= rounds.size(); ++t)
        {
            const std::size_t half = std::size_t{1} << (t - 1);
            for (std::size_t i = 0; i < half && i + half < k; ++i)
                rounds[t - 1].emplace_back(members[(origin + i) % k], members[(origin + i + half) % k]);
        }
        return rounds;
    }

    std::optional<VertexId> solocast_target(std::span<const VertexId> members, VertexId src, VertexId sender,
                                            std::size_t t)
    {
        const std::size_t k = members.size();
        const std::size_t rank = (position(members, sender) + k - position(members, src)) % k;
        const std::size_t half = std::size_t{1} << (t - 1);
        if (rank < half && rank + half < k)
            return members[(position(members, src) + rank + half) % k];
        return std::nullopt;
    }

} // namespace hypersim::sim

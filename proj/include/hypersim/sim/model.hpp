#ifndef HYPERSIM_SIM_MODEL_HPP
#define HYPERSIM_SIM_MODEL_HPP

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hypersim/core/hypergraph.hpp"
#include "hypersim/sim/payload.hpp"

namespace hypersim::sim
{
    enum class ModelKind
    {
        Clique,        ///< any vertex to any vertex
        PrimalCongest, ///< one message per primal-graph neighbour
        EdgeClique,    ///< one message per (incident edge, co-member)
        EdgeBroadcast, ///< one broadcast per incident edge
        EdgeUnicast,   ///< one unicast per incident edge
        EdgeSolocast,  ///< one broadcaster per edge
        EdgePaircast,  ///< one communicating pair per edge
    };

    inline constexpr ModelKind kAllModels[] = {ModelKind::Clique,        ModelKind::PrimalCongest,
                                               ModelKind::EdgeClique,    ModelKind::EdgeBroadcast,
                                               ModelKind::EdgeUnicast,   ModelKind::EdgeSolocast,
                                               ModelKind::EdgePaircast};

    /// "CLIQUE", "PC", "EC", "EB", "EU", "ES", "EP".
    std::string_view to_string(ModelKind m);
    std::optional<ModelKind> parse_model(std::string_view s);

    /// Models whose messages travel over a named incident edge.
    bool is_edge_model(ModelKind m);

    /// Bits per message slot per round.
    struct Bandwidth
    {
        std::size_t bits = 0;

        /// 4 * ceil(log2(n + 1)).
        static Bandwidth default_for(std::size_t n);
        /// Throws std::invalid_argument when B cannot hold one vertex id.
        void check(std::size_t n) const;
    };

    /// Rounds needed to push `payload_bits` through one B-bit slot: ceil(bits / B).
    std::size_t charge_rounds(std::size_t payload_bits, const Bandwidth& bw);

    struct Address
    {
        enum class Kind
        {
            Vertex,        ///< CLIQUE / PC: addressed by vertex id
            EdgeVertex,    ///< EC / EU / EP: to a co-member over an incident edge
            EdgeBroadcast, ///< EB / ES: to every co-member of an incident edge
        };
        Kind kind = Kind::Vertex;
        VertexId target = 0;
        Port port = 0;
    };

    /// (min, max) of two vertex ids; the arbitration key of an EP transfer.
    inline std::pair<VertexId, VertexId> unordered_pair(VertexId a, VertexId b)
    {
        return a < b ? std::pair{a, b} : std::pair{b, a};
    }

    struct OutMessage
    {
        Address to;
        Payload payload;
    };

    class Outbox
    {
    public:
        void send(VertexId target, Payload p) { push({Address::Kind::Vertex, target, 0}, std::move(p)); }
        void send_on(Port port, VertexId target, Payload p)
        {
            push({Address::Kind::EdgeVertex, target, port}, std::move(p));
        }
        void broadcast(Port port, Payload p) { push({Address::Kind::EdgeBroadcast, 0, port}, std::move(p)); }
        void push(Address to, Payload p) { messages_.push_back({to, std::move(p)}); }

        const std::vector<OutMessage>& messages() const { return messages_; }
        std::vector<OutMessage>& messages() { return messages_; }
        bool empty() const { return messages_.empty(); }
        void clear() { messages_.clear(); }

    private:
        std::vector<OutMessage> messages_;
    };

    struct Violation
    {
        std::size_t message_index = 0;
        std::string reason;
    };

    /// What a vertex is allowed to address: its id, n and the member lists of its
    /// incident edges by port.
    struct Neighborhood
    {
        VertexId self = 0;
        std::size_t n = 0;
        std::span<const VertexSet> port_members;
    };

    /// Per-vertex legality of one step's outbox under `model`. Cross-vertex contention on
    /// ES / EP edges is arbitrated by the kernel and is not a violation.
    std::optional<Violation> validate_outbox(ModelKind model, const Neighborhood& where, const Outbox& outbox);
    std::optional<Violation> validate_outbox(ModelKind model, const Hypergraph& h, VertexId v, const Outbox& outbox);

    /// Upper bound on bits the model can carry in one round on h.
    BigInt round_capacity_bits(ModelKind model, const Hypergraph& h, const Bandwidth& bw);

    class ModelViolation : public std::runtime_error
    {
    public:
        ModelViolation(VertexId vertex, std::size_t round, const std::string& reason)
            : std::runtime_error("model violation at vertex " + std::to_string(vertex) + ", round "
                                 + std::to_string(round) + ": " + reason),
              vertex_(vertex), round_(round)
        {
        }
        VertexId vertex() const { return vertex_; }
        std::size_t round() const { return round_; }

    private:
        VertexId vertex_;
        std::size_t round_;
    };

} // namespace hypersim::sim

#endif // HYPERSIM_SIM_MODEL_HPP

#ifndef HYPERSIM_SIM_KERNEL_HPP
#define HYPERSIM_SIM_KERNEL_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "hypersim/core/hypergraph.hpp"
#include "hypersim/sim/model.hpp"

namespace hypersim::sim
{
    enum class KnowledgeLevel
    {
        KT0, ///< ports only
        KT1, ///< member lists of incident edges
    };

    /// What a vertex knows when it starts.
    struct LocalView
    {
        VertexId id = 0;
        std::size_t n = 0;
        std::size_t rank = 0;
        ModelKind model = ModelKind::EdgeBroadcast;
        Bandwidth bandwidth;
        KnowledgeLevel kt = KnowledgeLevel::KT1;
        std::size_t degree = 0;
        /// Sorted members per port; empty lists under KT0.
        std::vector<VertexSet> port_members;

        bool knows_members() const { return kt == KnowledgeLevel::KT1; }
        Neighborhood neighborhood() const { return Neighborhood{id, n, port_members}; }
    };

    struct Envelope
    {
        VertexId src = 0;
        /// Receiver-side port of the carrying edge; empty in CLIQUE and PC.
        std::optional<Port> port;
        bool broadcast = false;
        Payload payload;

        bool operator==(const Envelope&) const = default;
    };

    struct Inbox
    {
        std::vector<Envelope> messages;
        /// Ports on which this vertex's ES / EP send lost arbitration last step.
        std::vector<Port> lost_arbitration;

        bool empty() const { return messages.empty() && lost_arbitration.empty(); }
        /// Sort into the canonical delivery order: by source, then port.
        void normalize();
        bool operator==(const Inbox&) const = default;
    };

    /// Per-vertex automaton. step() is called once per kernel step until halted() turns true.
    class VertexProcess
    {
    public:
        virtual ~VertexProcess() = default;
        virtual void step(const Inbox& in, Outbox& out) = 0;
        virtual bool halted() const = 0;
        /// The process carrying the algorithm's outputs; wrappers forward to the inner one.
        virtual const VertexProcess& unwrap() const { return *this; }
    };

    class NodeProgram
    {
    public:
        virtual ~NodeProgram() = default;
        virtual std::unique_ptr<VertexProcess> spawn(const LocalView& view) const = 0;
    };

    struct Metrics
    {
        std::uint64_t rounds = 0;
        std::uint64_t steps = 0;
        /// A broadcast counts once.
        std::uint64_t messages_sent = 0;
        std::uint64_t total_bits = 0;
        std::uint64_t max_received_bits_per_vertex = 0;
        std::vector<std::uint64_t> sent_per_vertex;
        std::vector<std::uint64_t> received_per_vertex;
        std::vector<std::uint64_t> received_bits_per_vertex;

        bool operator==(const Metrics&) const = default;
    };

    class RoundLogWriter;

    struct RunOptions
    {
        std::uint64_t max_rounds = 1'000'000;
        KnowledgeLevel kt = KnowledgeLevel::KT1;
        /// When set, every delivered frame is recorded.
        RoundLogWriter* round_log = nullptr;
    };

    class RoundBudgetExhausted : public std::runtime_error
    {
    public:
        RoundBudgetExhausted(std::uint64_t rounds, std::uint64_t budget)
            : std::runtime_error("round budget exhausted: " + std::to_string(rounds) + " rounds used, budget "
                                 + std::to_string(budget)),
              rounds_(rounds)
        {
        }
        std::uint64_t rounds() const { return rounds_; }

    private:
        std::uint64_t rounds_;
    };

    struct Execution
    {
        std::vector<std::unique_ptr<VertexProcess>> processes;
        Metrics metrics;

        template <class T>
        const T& output(VertexId v) const
        {
            return dynamic_cast<const T&>(processes[v]->unwrap());
        }
    };

    LocalView make_local_view(const Hypergraph& h, VertexId v, ModelKind model, const Bandwidth& bw,
                              KnowledgeLevel kt);

    /// Runs `program` on every vertex of h in lockstep. A step costs max(1, max frames of any
    /// message) rounds. Throws ModelViolation on an illegal outbox and RoundBudgetExhausted when
    /// the vertices have not all halted within options.max_rounds rounds.
    Execution run(const NodeProgram& program, const Hypergraph& h, ModelKind model, const Bandwidth& bw,
                  const RunOptions& options = {});

} // namespace hypersim::sim

#endif // HYPERSIM_SIM_KERNEL_HPP

#ifndef HYPERSIM_ALGO_COMMON_HPP
#define HYPERSIM_ALGO_COMMON_HPP

#include <array>
#include <map>
#include <utility>
#include <variant>
#include <vector>

#include "hypersim/core/hypergraph.hpp"
#include "hypersim/core/triangle.hpp"
#include "hypersim/sim/kernel.hpp"

namespace hypersim::algo
{
    using sim::Inbox;
    using sim::LocalView;
    using sim::Outbox;
    using sim::Payload;

    /// Slot in the reporting process's table of edges learned as bare vertex sets.
    struct KnownEdge
    {
        std::uint32_t index = 0;
    };

    /// How a vertex names an edge in its output: by (owner, port) id, or through its own
    /// table when it learned the edge only as a vertex set.
    using EdgeRef = std::variant<EdgeId, KnownEdge>;

    struct ReportedTriangle
    {
        std::array<VertexId, 3> vertices{};
        std::array<EdgeRef, 3> edges;
    };

    /// Implemented by every enumeration process.
    class TriangleReporter
    {
    public:
        virtual ~TriangleReporter() = default;
        virtual const std::vector<ReportedTriangle>& reported() const = 0;
        /// Members of a KnownEdge slot.
        virtual const VertexSet& known_edge(std::uint32_t index) const;
    };

    /// Throws std::invalid_argument unless the view carries member lists.
    void require_kt1(const LocalView& view, const char* algorithm);
    /// Throws std::invalid_argument unless the model is EB or PC.
    void require_broadcast_model(const LocalView& view, const char* algorithm);

    /// Sorted primal neighbours known from the member lists.
    VertexSet primal_neighbors(const LocalView& view);

    /// Same payload to every neighbour: one broadcast per port under EB, one message per
    /// primal neighbour under PC.
    void neighbor_broadcast(const LocalView& view, Outbox& out, const Payload& p);

    /// First payload per source; under EB a neighbour sharing several edges is heard several times.
    std::map<VertexId, const Payload*> by_source(const Inbox& in);

    /// Bits of a vertex id for n vertices.
    void put_id(Payload& p, VertexId v, std::size_t n);
    VertexId get_id(Payload::Reader& r, std::size_t n);

    void put_edge_id(Payload& p, EdgeId id, std::size_t n);
    EdgeId get_edge_id(Payload::Reader& r, std::size_t n);

    /// Edge id followed by the member list.
    void put_edge(Payload& p, EdgeId id, const VertexSet& members, std::size_t n);
    std::pair<EdgeId, VertexSet> get_edge(Payload::Reader& r, std::size_t n);

    /// Edge ids of the incident edges: an edge is named (v, p) by its least member v and v's
    /// port p. In the first step every owner tells the other members its port; announce() sends,
    /// learn() decodes the replies in the next step.
    class EdgeIdExchange
    {
    public:
        explicit EdgeIdExchange(const LocalView& view) : view_(&view) {}
        void announce(Outbox& out) const;
        void learn(const Inbox& in);
        const std::vector<EdgeId>& ids() const { return ids_; }

    private:
        /// Ports shared with w whose edge has w as least member, in (members, port) order.
        std::vector<Port> shared_owned_by(VertexId owner, VertexId other) const;

        const LocalView* view_;
        std::vector<EdgeId> ids_;
    };

    /// Class of a triangle given only its vertices and the member lists of its edges.
    TriangleClass classify_members(const std::array<VertexId, 3>& v, const std::array<const VertexSet*, 3>& edges,
                                   const std::array<bool, 3>& edges_distinct);

    bool contains_sorted(const VertexSet& members, VertexId v);

    /// Maps reported edges back to global indices.
    class EdgeResolver
    {
    public:
        explicit EdgeResolver(const Hypergraph& h);
        /// Throws std::runtime_error for unknown edges.
        EdgeIndex resolve(EdgeId id) const;
        EdgeIndex resolve(const VertexSet& members) const;
        /// All reported triangles of one process, canonicalized.
        std::vector<Triangle> resolve(const TriangleReporter& reporter) const;

    private:
        std::vector<std::vector<EdgeIndex>> by_id_;
        std::map<VertexSet, EdgeIndex> by_members_;
    };

    /// (canonical triangle, owner) for everything reported by the processes of an execution.
    std::vector<std::pair<Triangle, VertexId>> collect_listing(const sim::Execution& ex, const Hypergraph& h);

} // namespace hypersim::algo

#endif // HYPERSIM_ALGO_COMMON_HPP

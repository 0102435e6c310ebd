#ifndef HYPERSIM_CORE_HYPERGRAPH_HPP
#define HYPERSIM_CORE_HYPERGRAPH_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hypersim/core/numeric.hpp"

namespace hypersim
{
    using VertexId = std::uint32_t;
    using EdgeIndex = std::uint32_t;
    using Port = std::uint32_t;

    using VertexSet = std::vector<VertexId>;

    /// Edge name built from the minimal member and that member's port for the edge.
    struct EdgeId
    {
        VertexId owner = 0;
        Port port = 0;

        auto operator<=>(const EdgeId&) const = default;
    };

    /// Symmetric n x n pair-multiplicity matrix of the induced multigraph.
    class MultiplicityMatrix
    {
    public:
        explicit MultiplicityMatrix(std::size_t n) : n_(n), entries_(n * n, 0) {}

        std::size_t size() const { return n_; }
        std::uint64_t at(VertexId u, VertexId v) const { return entries_[u * n_ + v]; }
        std::uint64_t& at(VertexId u, VertexId v) { return entries_[u * n_ + v]; }

        std::uint64_t max_entry() const;
        /// Sum over u < v.
        BigInt total_multiplicity() const;

    private:
        std::size_t n_;
        std::vector<std::uint64_t> entries_;
    };

    /// Static hypergraph on vertices 0..n-1. Edges are stored as sorted vertex lists in
    /// construction order; a vertex's incident edges (its ports) follow that order.
    class Hypergraph
    {
    public:
        Hypergraph() = default;

        /// Throws std::invalid_argument on out-of-range vertices, repeated vertices inside
        /// an edge, or edges with fewer than two vertices. Edge vertex order is irrelevant.
        static Hypergraph build(std::size_t n, std::vector<VertexSet> edges);

        std::size_t num_vertices() const { return n_; }
        std::size_t num_edges() const { return edges_.size(); }
        std::size_t rank() const { return rank_; }
        bool is_uniform() const;

        std::span<const VertexId> edge(EdgeIndex e) const { return edges_[e]; }
        const std::vector<VertexSet>& edges() const { return edges_; }
        bool contains(EdgeIndex e, VertexId v) const;

        /// Incident edge indices of v, indexed by port.
        std::span<const EdgeIndex> incident(VertexId v) const { return incidence_[v]; }
        std::size_t degree(VertexId v) const { return incidence_[v].size(); }
        /// Port of edge e at v; throws if v is not in e.
        Port port_of(VertexId v, EdgeIndex e) const;

        /// Sum over incident edges of (|e| - 1).
        std::size_t rank_degree(VertexId v) const;
        /// Sorted primal-graph neighbours of v (v excluded).
        VertexSet neighbors(VertexId v) const;

        std::size_t pair_degree(VertexId u, VertexId v) const;
        std::size_t max_degree() const;
        std::size_t max_pair_degree() const;
        /// Sum of edge cardinalities (equals the sum of degrees).
        std::size_t total_size() const;

        /// First edge whose vertex set equals `members` (sorted or not).
        std::optional<EdgeIndex> find_edge(VertexSet members) const;
        bool has_duplicate_edges() const;

        /// Free-form provenance written as comments by the text format.
        std::map<std::string, std::string>& metadata() { return metadata_; }
        const std::map<std::string, std::string>& metadata() const { return metadata_; }

    private:
        std::size_t n_ = 0;
        std::size_t rank_ = 0;
        std::vector<VertexSet> edges_;
        std::vector<std::vector<EdgeIndex>> incidence_;
        std::map<std::string, std::string> metadata_;
    };

    MultiplicityMatrix induced_multigraph(const Hypergraph& h);

    /// Projection of every edge onto U, keeping those with at least two vertices.
    /// Duplicates are kept (multiset); vertex labels are unchanged, so vertices outside U
    /// are isolated in the result. Throws on empty U.
    Hypergraph restrict_to(const Hypergraph& h, const VertexSet& u);

    /// (1/|U|) * sum of |e ∩ U| over the restriction. Throws on empty U.
    Rational density(const Hypergraph& h, const VertexSet& u);

    inline constexpr std::size_t kDefaultMaxDensityCap = 20;

    /// Exhaustive maximum of density over nonempty subsets. Throws std::invalid_argument
    /// when n exceeds `cap`.
    Rational max_density_exact(const Hypergraph& h, std::size_t cap = kDefaultMaxDensityCap);

    std::vector<EdgeId> assign_edge_ids(const Hypergraph& h);

    struct LayerDecomposition
    {
        std::vector<std::size_t> layer; ///< 1-based; 0 for vertices left unassigned
        std::size_t depth = 0;
        bool complete = false;          ///< every vertex got a layer within the round budget
    };

    /// Number of peeling rounds used by the layered decomposition and the peel programs:
    /// ceil(log2 n), at least 1.
    std::size_t peel_round_budget(std::size_t n);

    /// Centralized greedy peeling: layer i holds the still-unassigned vertices whose degree
    /// in the restriction to the unassigned set is at most 2 * alpha.
    LayerDecomposition layered_decomposition_reference(const Hypergraph& h, const Rational& alpha);

} // namespace hypersim

#endif // HYPERSIM_CORE_HYPERGRAPH_HPP

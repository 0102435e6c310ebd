#ifndef HYPERSIM_ALGO_CLIQUE_HPP
#define HYPERSIM_ALGO_CLIQUE_HPP

#include <array>
#include <memory>
#include <mutex>
#include <set>
#include <vector>

#include "hypersim/algo/common.hpp"
#include "hypersim/sim/clique_route.hpp"

namespace hypersim::algo
{
    /// s = ceil(n^(1/3)) near-equal blocks of [0, n) and the triple classes T_c =
    /// S_{c0} x S_{c1} x S_{c2} for c < s^3, with (c0, c1, c2) the base-s digits of c, most
    /// significant first. Class c belongs to vertex c mod n.
    class TriplePartition
    {
    public:
        explicit TriplePartition(std::size_t n);

        std::size_t n() const { return n_; }
        std::size_t s() const { return s_; }
        std::size_t num_classes() const { return s_ * s_ * s_; }

        std::size_t block_of(VertexId v) const;
        /// Vertices of block i, ascending.
        std::pair<VertexId, VertexId> block_range(std::size_t i) const { return {starts_[i], starts_[i + 1]}; }
        std::size_t block_size(std::size_t i) const { return starts_[i + 1] - starts_[i]; }

        std::array<std::size_t, 3> digits(std::size_t c) const;
        VertexId owner(std::size_t c) const { return static_cast<VertexId>(c % n_); }
        std::vector<std::size_t> classes_of(VertexId v) const;

    private:
        std::size_t n_;
        std::size_t s_;
        std::vector<VertexId> starts_;
    };

    TriplePartition clique_partition(std::size_t n);

    /// Vertices owning a class whose digits hold a and b in two distinct positions
    /// (patterns abx, axb, bax, bxa, xab, xba for x < s). Class indices are mapped to their
    /// owners, so the result is a sorted set of vertices of size at most 6s.
    VertexSet destination_set(const TriplePartition& part, std::size_t a, std::size_t b);

    /// Class indices of the six patterns before mapping to owners.
    std::vector<std::size_t> destination_classes(std::size_t s, std::size_t a, std::size_t b);

    /// Colexicographic index of a subset given its ascending positions in the ground list.
    std::uint64_t colex_rank(const std::vector<std::size_t>& positions);
    std::vector<std::size_t> colex_unrank(std::uint64_t rank, std::size_t k);

    /// Demands and route of one rank pass, shared by all vertices.
    struct CliquePass
    {
        std::size_t rank = 0;
        std::size_t vector_bits = 0;
        std::vector<sim::RouteDemand> demands;
        /// The u of demand i: the demand carries b_{src,u}.
        std::vector<VertexId> about;
        sim::RouteSchedule schedule;
    };

    struct CliqueStep
    {
        std::size_t pass = 0;
        std::size_t phase = 0;
        /// Hop indices of the phase per sending / receiving vertex.
        std::vector<std::vector<std::uint32_t>> by_src;
        std::vector<std::vector<std::uint32_t>> by_dst;
    };

    struct CliquePlan
    {
        std::size_t n = 0;
        std::size_t rank = 0;
        std::size_t bandwidth = 0;
        std::vector<CliquePass> passes;
        std::vector<CliqueStep> steps;
        /// Non-local demands sourced per vertex, over all passes.
        std::vector<std::size_t> sourced;
    };

    /// Computed from n, the rank and B alone.
    std::shared_ptr<const CliquePlan> make_clique_plan(std::size_t n, std::size_t rank, const sim::Bandwidth& bw);

    /// CLIQUE-model enumeration: every vertex v sends, for every u != v and every rank r', the
    /// bit vector b_{v,u} of present edges {v, u} + S (S ranging over (r'-2)-subsets of the other
    /// vertices, colex order) to the owners in destination_set(block v, block u). Each vertex then
    /// lists the triangles on sorted triples x < y < z of its classes. Rejects inputs with
    /// repeated edges (std::invalid_argument on spawn).
    class CliqueEnumerate : public sim::NodeProgram
    {
    public:
        explicit CliqueEnumerate(TriangleClass filter = TriangleClass::Simple) : filter_(filter) {}
        std::unique_ptr<sim::VertexProcess> spawn(const LocalView& view) const override;

        /// Plan of the most recent spawn.
        std::shared_ptr<const CliquePlan> plan() const;

    private:
        TriangleClass filter_;
        mutable std::mutex mutex_;
        mutable std::shared_ptr<const CliquePlan> plan_;
    };

    class CliqueProcess : public sim::VertexProcess, public TriangleReporter
    {
    public:
        CliqueProcess(const LocalView& view, std::shared_ptr<const CliquePlan> plan, TriangleClass filter);

        void step(const Inbox& in, Outbox& out) override;
        bool halted() const override { return halted_; }
        const std::vector<ReportedTriangle>& reported() const override { return reported_; }
        const VertexSet& known_edge(std::uint32_t index) const override { return edges_[index]; }

        std::size_t sourced_demands() const { return plan_->sourced[view_.id]; }
        std::size_t edges_learned() const { return edges_.size(); }

    private:
        Payload vector_for(const CliquePass& pass, VertexId u) const;
        void deliver(const CliquePass& pass, std::size_t demand, const Payload& p);
        void receive(const CliqueStep& st, const Inbox& in);
        void send(const CliqueStep& st, Outbox& out);
        void enumerate();

        LocalView view_;
        std::shared_ptr<const CliquePlan> plan_;
        TriangleClass filter_;
        std::size_t step_ = 0;
        bool halted_ = false;
        /// Payloads held for forwarding, keyed by (pass, demand).
        std::map<std::pair<std::size_t, std::size_t>, Payload> held_;
        std::set<VertexSet> known_;
        std::vector<VertexSet> edges_;
        std::vector<ReportedTriangle> reported_;
    };

} // namespace hypersim::algo

#endif // HYPERSIM_ALGO_CLIQUE_HPP

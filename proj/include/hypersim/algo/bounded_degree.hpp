#ifndef HYPERSIM_ALGO_BOUNDED_DEGREE_HPP
#define HYPERSIM_ALGO_BOUNDED_DEGREE_HPP

#include <optional>

#include "hypersim/algo/common.hpp"

namespace hypersim::algo
{
    /// EB / PC enumeration in O(Delta) rounds. Step 0 exchanges edge ids, step 1 sends every
    /// neighbour the id list of all incident edges, step 2 lets the least vertex v1 of each
    /// triangle match its own edges e0 = {v0, v1, ..}, e1 = {v1, v2, ..} against the e2 found in the
    /// lists of both v0 and v2. v1 outputs.
    class BoundedDegreeEnumerate : public sim::NodeProgram
    {
    public:
        explicit BoundedDegreeEnumerate(TriangleClass filter = TriangleClass::Induced) : filter_(filter) {}
        std::unique_ptr<sim::VertexProcess> spawn(const LocalView& view) const override;

    private:
        TriangleClass filter_;
    };

    /// Triangles with at least one vertex of degree <= delta (nullopt: no limit). Light vertices
    /// send their incident edges with member lists; the least heavy vertex of a triangle outputs
    /// it, or the least vertex when all three are light.
    class LightTriangleEnumerate : public sim::NodeProgram
    {
    public:
        explicit LightTriangleEnumerate(std::optional<std::size_t> delta, TriangleClass filter = TriangleClass::Simple)
            : delta_(delta), filter_(filter)
        {
        }
        std::unique_ptr<sim::VertexProcess> spawn(const LocalView& view) const override;

    private:
        std::optional<std::size_t> delta_;
        TriangleClass filter_;
    };

    /// Shared by the light and density programs: lists triangles (w, a, b) with a < b through
    /// two of w's own edges and one known edge on {a, b}, for the pairs accepted by `owns`.
    class KnownEdgeLister
    {
    public:
        explicit KnownEdgeLister(const LocalView& view, const std::vector<EdgeId>& own_ids);
        void add(EdgeId id, VertexSet members);

        template <class Owns>
        void list(TriangleClass filter, Owns owns, std::vector<ReportedTriangle>& out) const;

    private:
        void list_pair(VertexId a, VertexId b, TriangleClass filter, std::vector<ReportedTriangle>& out) const;

        const LocalView* view_;
        const std::vector<EdgeId>* own_;
        std::map<EdgeId, VertexSet> known_;
        std::map<std::pair<VertexId, VertexId>, std::vector<const std::pair<const EdgeId, VertexSet>*>> pairs_;
        std::map<VertexId, std::vector<Port>> ports_with_;
    };

    template <class Owns>
    void KnownEdgeLister::list(TriangleClass filter, Owns owns, std::vector<ReportedTriangle>& out) const
    {
        for (auto a = ports_with_.begin(); a != ports_with_.end(); ++a)
            for (auto b = std::next(a); b != ports_with_.end(); ++b)
                if (owns(a->first, b->first))
                    list_pair(a->first, b->first, filter, out);
    }

} // namespace hypersim::algo

#endif // HYPERSIM_ALGO_BOUNDED_DEGREE_HPP

#include "hypersim/algo/bounded_degree.hpp"

#include <algorithm>

namespace hypersim::algo
{
    namespace
    {
        class BoundedDegreeProcess : public sim::VertexProcess, public TriangleReporter
        {
        public:
            BoundedDegreeProcess(const LocalView& view, TriangleClass filter)
                : view_(view), filter_(filter), ids_(view_)
            {
            }

            void step(const Inbox& in, Outbox& out) override
            {
                switch (step_++)
                {
                case 0:
                    if (view_.degree == 0)
                    {
                        halted_ = true;
                        return;
                    }
                    ids_.announce(out);
                    return;
                case 1: {
                    ids_.learn(in);
                    Payload p;
                    p.push_gamma(view_.degree);
                    for (EdgeId id : ids_.ids())
                        put_edge_id(p, id, view_.n);
                    neighbor_broadcast(view_, out, p);
                    return;
                }
                default:
                    enumerate(in);
                    halted_ = true;
                }
            }

            bool halted() const override { return halted_; }
            const std::vector<ReportedTriangle>& reported() const override { return reported_; }

        private:
            void enumerate(const Inbox& in)
            {
                const VertexId v1 = view_.id;
                std::map<VertexId, std::vector<EdgeId>> lists;
                for (const auto& [src, payload] : by_source(in))
                {
                    auto r = payload->reader();
                    std::vector<EdgeId> ids(r.read_gamma());
                    for (auto& id : ids)
                        id = get_edge_id(r, view_.n);
                    std::sort(ids.begin(), ids.end());
                    lists[src] = std::move(ids);
                }
                std::vector<EdgeId> own = ids_.ids();
                std::sort(own.begin(), own.end());

                std::map<VertexId, std::vector<Port>> ports_with;
                for (Port p = 0; p < view_.degree; ++p)
                    for (VertexId w : view_.port_members[p])
                        if (w > v1)
                            ports_with[w].push_back(p);

                const auto& ids = ids_.ids();
                for (auto a = ports_with.begin(); a != ports_with.end(); ++a)
                    for (auto b = std::next(a); b != ports_with.end(); ++b)
                    {
                        const VertexId v0 = a->first;
                        const VertexId v2 = b->first;
                        const auto& l0 = lists[v0];
                        const auto& l2 = lists[v2];
                        std::vector<EdgeId> common;
                        std::set_intersection(l0.begin(), l0.end(), l2.begin(), l2.end(), std::back_inserter(common));
                        for (EdgeId e2 : common)
                        {
                            const bool e2_own = std::binary_search(own.begin(), own.end(), e2);
                            for (Port e0 : a->second)
                                for (Port e1 : b->second)
                                {
                                    std::array<VertexId, 3> vs{v0, v1, v2};
                                    auto cls = classify_by_membership(
                                        vs, {e0 != e1, ids[e1] != e2, e2 != ids[e0]}, [&](int i, VertexId x) {
                                            if (i == 1)
                                                return contains_sorted(view_.port_members[e1], x);
                                            if (i == 2)
                                                return e2_own;
                                            return contains_sorted(view_.port_members[e0], x);
                                        });
                                    if (!satisfies(cls, filter_))
                                        continue;
                                    ReportedTriangle t;
                                    t.vertices = vs;
                                    t.edges = {ids[e0], ids[e1], e2};
                                    reported_.push_back(t);
                                }
                        }
                    }
            }

            LocalView view_;
            TriangleClass filter_;
            EdgeIdExchange ids_;
            std::size_t step_ = 0;
            bool halted_ = false;
            std::vector<ReportedTriangle> reported_;
        };

        class LightProcess : public sim::VertexProcess, public TriangleReporter
        {
        public:
            LightProcess(const LocalView& view, std::optional<std::size_t> delta, TriangleClass filter)
                : view_(view), delta_(delta), filter_(filter), ids_(view_)
            {
            }

            void step(const Inbox& in, Outbox& out) override
            {
                switch (step_++)
                {
                case 0:
                    if (view_.degree == 0)
                    {
                        halted_ = true;
                        return;
                    }
                    ids_.announce(out);
                    return;
                case 1:
                    ids_.learn(in);
                    if (light(view_.degree))
                    {
                        Payload p;
                        p.push_gamma(view_.degree);
                        for (Port q = 0; q < view_.degree; ++q)
                            put_edge(p, ids_.ids()[q], view_.port_members[q], view_.n);
                        neighbor_broadcast(view_, out, p);
                    }
                    return;
                default:
                    enumerate(in);
                    halted_ = true;
                }
            }

            bool halted() const override { return halted_; }
            const std::vector<ReportedTriangle>& reported() const override { return reported_; }

        private:
            bool light(std::size_t degree) const { return !delta_ || degree <= *delta_; }

            void enumerate(const Inbox& in)
            {
                KnownEdgeLister lister(view_, ids_.ids());
                std::set<VertexId> light_set;
                if (light(view_.degree))
                    light_set.insert(view_.id);
                for (const auto& [src, payload] : by_source(in))
                {
                    light_set.insert(src);
                    auto r = payload->reader();
                    const auto count = r.read_gamma();
                    for (std::uint64_t i = 0; i < count; ++i)
                    {
                        auto [id, members] = get_edge(r, view_.n);
                        lister.add(id, std::move(members));
                    }
                }
                const VertexId w = view_.id;
                auto is_light = [&](VertexId x) { return light_set.count(x) > 0; };
                lister.list(filter_,
                            [&](VertexId a, VertexId b) {
                                std::array<VertexId, 3> vs{w, a, b};
                                std::optional<VertexId> least_heavy;
                                bool any_light = false;
                                for (VertexId x : vs)
                                {
                                    if (is_light(x))
                                        any_light = true;
                                    else if (!least_heavy || x < *least_heavy)
                                        least_heavy = x;
                                }
                                if (!any_light)
                                    return false;
                                if (least_heavy)
                                    return *least_heavy == w;
                                return w < a && w < b;
                            },
                            reported_);
            }

            LocalView view_;
            std::optional<std::size_t> delta_;
            TriangleClass filter_;
            EdgeIdExchange ids_;
            std::size_t step_ = 0;
            bool halted_ = false;
            std::vector<ReportedTriangle> reported_;
        };
    } // namespace

    std::unique_ptr<sim::VertexProcess> BoundedDegreeEnumerate::spawn(const LocalView& view) const
    {
        require_kt1(view, "bounded-degree enumeration");
        require_broadcast_model(view, "bounded-degree enumeration");
        return std::make_unique<BoundedDegreeProcess>(view, filter_);
    }

    std::unique_ptr<sim::VertexProcess> LightTriangleEnumerate::spawn(const LocalView& view) const
    {
        require_kt1(view, "light-triangle enumeration");
        require_broadcast_model(view, "light-triangle enumeration");
        return std::make_unique<LightProcess>(view, delta_, filter_);
    }

    KnownEdgeLister::KnownEdgeLister(const LocalView& view, const std::vector<EdgeId>& own_ids)
        : view_(&view), own_(&own_ids)
    {
        for (Port p = 0; p < view.degree; ++p)
        {
            add(own_ids[p], view.port_members[p]);
            for (VertexId x : view.port_members[p])
                if (x != view.id)
                    ports_with_[x].push_back(p);
        }
    }

    void KnownEdgeLister::add(EdgeId id, VertexSet members)
    {
        auto [it, inserted] = known_.emplace(id, std::move(members));
        if (!inserted)
            return;
        const auto& m = it->second;
        for (std::size_t i = 0; i < m.size(); ++i)
            for (std::size_t j = i + 1; j < m.size(); ++j)
                pairs_[{m[i], m[j]}].push_back(&*it);
    }

    void KnownEdgeLister::list_pair(VertexId a, VertexId b, TriangleClass filter,
                                    std::vector<ReportedTriangle>& out) const
    {
        auto it = pairs_.find({a, b});
        if (it == pairs_.end())
            return;
        const VertexId w = view_->id;
        const auto& ids = *own_;
        for (Port e0 : ports_with_.at(a))
            for (const auto* e1 : it->second)
                for (Port e2 : ports_with_.at(b))
                {
                    std::array<VertexId, 3> vs{w, a, b};
                    const VertexSet& m0 = view_->port_members[e0];
                    const VertexSet& m2 = view_->port_members[e2];
                    auto cls = classify_members(vs, {&m0, &e1->second, &m2},
                                                {ids[e0] != e1->first, e1->first != ids[e2], e2 != e0});
                    if (!satisfies(cls, filter))
                        continue;
                    ReportedTriangle t;
                    t.vertices = vs;
                    t.edges = {ids[e0], e1->first, ids[e2]};
                    out.push_back(t);
                }
    }

} // namespace hypersim::algo

#include "hypersim/algo/common.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

#include "hypersim/core/numeric.hpp"

namespace hypersim::algo
{
    namespace
    {
        constexpr EdgeIndex kNoEdge = static_cast<EdgeIndex>(-1);
    } // namespace

    void require_kt1(const LocalView& view, const char* algorithm)
    {
        if (!view.knows_members())
            throw std::invalid_argument(std::string(algorithm) + " needs KT1 knowledge");
    }

    void require_broadcast_model(const LocalView& view, const char* algorithm)
    {
        if (view.model != sim::ModelKind::EdgeBroadcast && view.model != sim::ModelKind::PrimalCongest)
            throw std::invalid_argument(std::string(algorithm) + " runs under EB or PC, not "
                                        + std::string(sim::to_string(view.model)));
    }

    VertexSet primal_neighbors(const LocalView& view)
    {
        std::set<VertexId> out;
        for (const auto& members : view.port_members)
            for (VertexId w : members)
                if (w != view.id)
                    out.insert(w);
        return {out.begin(), out.end()};
    }

    void neighbor_broadcast(const LocalView& view, Outbox& out, const Payload& p)
    {
        if (view.model == sim::ModelKind::PrimalCongest)
        {
            for (VertexId w : primal_neighbors(view))
                out.send(w, p);
            return;
        }
        for (Port port = 0; port < view.degree; ++port)
            out.broadcast(port, p);
    }

    std::map<VertexId, const Payload*> by_source(const Inbox& in)
    {
        std::map<VertexId, const Payload*> out;
        for (const auto& env : in.messages)
            out.emplace(env.src, &env.payload);
        return out;
    }

    void put_id(Payload& p, VertexId v, std::size_t n) { p.push(v, id_bits(n)); }

    VertexId get_id(Payload::Reader& r, std::size_t n) { return static_cast<VertexId>(r.read(id_bits(n))); }

    void put_edge_id(Payload& p, EdgeId id, std::size_t n)
    {
        put_id(p, id.owner, n);
        p.push_gamma(id.port);
    }

    EdgeId get_edge_id(Payload::Reader& r, std::size_t n)
    {
        EdgeId id;
        id.owner = get_id(r, n);
        id.port = static_cast<Port>(r.read_gamma());
        return id;
    }

    void put_edge(Payload& p, EdgeId id, const VertexSet& members, std::size_t n)
    {
        put_edge_id(p, id, n);
        p.push_gamma(members.size() - 2);
        for (VertexId v : members)
            put_id(p, v, n);
    }

    std::pair<EdgeId, VertexSet> get_edge(Payload::Reader& r, std::size_t n)
    {
        EdgeId id = get_edge_id(r, n);
        VertexSet members(r.read_gamma() + 2);
        for (auto& v : members)
            v = get_id(r, n);
        return {id, members};
    }

    std::vector<Port> EdgeIdExchange::shared_owned_by(VertexId owner, VertexId other) const
    {
        std::vector<Port> ports;
        for (Port p = 0; p < view_->degree; ++p)
        {
            const auto& m = view_->port_members[p];
            if (m.front() == owner && contains_sorted(m, other))
                ports.push_back(p);
        }
        std::stable_sort(ports.begin(), ports.end(),
                         [&](Port a, Port b) { return view_->port_members[a] < view_->port_members[b]; });
        return ports;
    }

    void EdgeIdExchange::announce(Outbox& out) const
    {
        const LocalView& v = *view_;
        if (v.model == sim::ModelKind::PrimalCongest)
        {
            for (VertexId w : primal_neighbors(v))
            {
                auto ports = shared_owned_by(v.id, w);
                if (ports.empty())
                    continue;
                Payload p;
                for (Port q : ports)
                    p.push_gamma(q);
                out.send(w, std::move(p));
            }
            return;
        }
        for (Port q = 0; q < v.degree; ++q)
            if (v.port_members[q].front() == v.id)
            {
                Payload p;
                p.push_gamma(q);
                out.broadcast(q, std::move(p));
            }
    }

    void EdgeIdExchange::learn(const Inbox& in)
    {
        const LocalView& v = *view_;
        ids_.assign(v.degree, EdgeId{});
        for (Port q = 0; q < v.degree; ++q)
            if (v.port_members[q].front() == v.id)
                ids_[q] = EdgeId{v.id, q};
        for (const auto& env : in.messages)
        {
            auto r = env.payload.reader();
            if (env.port)
            {
                ids_[*env.port] = EdgeId{env.src, static_cast<Port>(r.read_gamma())};
                continue;
            }
            for (Port q : shared_owned_by(env.src, v.id))
                ids_[q] = EdgeId{env.src, static_cast<Port>(r.read_gamma())};
        }
    }

    bool contains_sorted(const VertexSet& members, VertexId v)
    {
        return std::binary_search(members.begin(), members.end(), v);
    }

    TriangleClass classify_members(const std::array<VertexId, 3>& v, const std::array<const VertexSet*, 3>& edges,
                                   const std::array<bool, 3>& edges_distinct)
    {
        return classify_by_membership(v, edges_distinct,
                                      [&](int i, VertexId x) { return contains_sorted(*edges[i], x); });
    }

    const VertexSet& TriangleReporter::known_edge(std::uint32_t) const
    {
        throw std::logic_error("process reports no bare edges");
    }

    EdgeResolver::EdgeResolver(const Hypergraph& h) : by_id_(h.num_vertices())
    {
        auto ids = assign_edge_ids(h);
        for (EdgeIndex e = 0; e < h.num_edges(); ++e)
        {
            auto& row = by_id_[ids[e].owner];
            if (row.size() <= ids[e].port)
                row.resize(ids[e].port + 1, kNoEdge);
            row[ids[e].port] = e;
            by_members_.emplace(h.edges()[e], e);
        }
    }

    EdgeIndex EdgeResolver::resolve(EdgeId id) const
    {
        if (id.owner < by_id_.size() && id.port < by_id_[id.owner].size() && by_id_[id.owner][id.port] != kNoEdge)
            return by_id_[id.owner][id.port];
        throw std::runtime_error("unknown edge id (" + std::to_string(id.owner) + ", " + std::to_string(id.port)
                                 + ")");
    }

    EdgeIndex EdgeResolver::resolve(const VertexSet& members) const
    {
        auto it = by_members_.find(members);
        if (it == by_members_.end())
            throw std::runtime_error("reported edge is not in the hypergraph");
        return it->second;
    }

    std::vector<Triangle> EdgeResolver::resolve(const TriangleReporter& reporter) const
    {
        std::map<std::uint32_t, EdgeIndex> known;
        auto edge = [&](const EdgeRef& ref) {
            if (const auto* id = std::get_if<EdgeId>(&ref))
                return resolve(*id);
            auto slot = std::get<KnownEdge>(ref).index;
            auto it = known.find(slot);
            if (it == known.end())
                it = known.emplace(slot, resolve(reporter.known_edge(slot))).first;
            return it->second;
        };
        std::vector<Triangle> out;
        out.reserve(reporter.reported().size());
        for (const auto& t : reporter.reported())
        {
            Triangle x;
            x.vertices = t.vertices;
            for (int i = 0; i < 3; ++i)
                x.edges[i] = edge(t.edges[i]);
            out.push_back(canonicalize(x));
        }
        return out;
    }

    std::vector<std::pair<Triangle, VertexId>> collect_listing(const sim::Execution& ex, const Hypergraph& h)
    {
        EdgeResolver resolver(h);
        std::vector<std::pair<Triangle, VertexId>> out;
        for (VertexId v = 0; v < ex.processes.size(); ++v)
        {
            const auto* reporter = dynamic_cast<const TriangleReporter*>(&ex.processes[v]->unwrap());
            if (!reporter)
                throw std::logic_error("process does not report triangles");
            for (const auto& t : resolver.resolve(*reporter))
                out.emplace_back(t, v);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

} // namespace hypersim::algo

#include "hypersim/sim/model.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace hypersim::sim
{
    std::string_view to_string(ModelKind m)
    {
        switch (m)
        {
        case ModelKind::Clique:
            return "CLIQUE";
        case ModelKind::PrimalCongest:
            return "PC";
        case ModelKind::EdgeClique:
            return "EC";
        case ModelKind::EdgeBroadcast:
            return "EB";
        case ModelKind::EdgeUnicast:
            return "EU";
        case ModelKind::EdgeSolocast:
            return "ES";
        case ModelKind::EdgePaircast:
            return "EP";
        }
        return "?";
    }

    std::optional<ModelKind> parse_model(std::string_view s)
    {
        for (ModelKind m : kAllModels)
            if (to_string(m) == s)
                return m;
        return std::nullopt;
    }

    bool is_edge_model(ModelKind m)
    {
        return m != ModelKind::Clique && m != ModelKind::PrimalCongest;
    }

    Bandwidth Bandwidth::default_for(std::size_t n)
    {
        return Bandwidth{4 * static_cast<std::size_t>(ceil_log2(static_cast<std::uint64_t>(n) + 1))};
    }

    void Bandwidth::check(std::size_t n) const
    {
        if (bits < ceil_log2(static_cast<std::uint64_t>(n)) || bits == 0)
            throw std::invalid_argument("bandwidth " + std::to_string(bits)
                                        + " bits cannot hold a vertex id for n = " + std::to_string(n));
    }

    std::size_t charge_rounds(std::size_t payload_bits, const Bandwidth& bw)
    {
        return (payload_bits + bw.bits - 1) / bw.bits;
    }

    namespace
    {
        std::optional<Violation> fail(std::size_t i, std::string reason)
        {
            return Violation{i, std::move(reason)};
        }

        const char* kind_name(Address::Kind k)
        {
            switch (k)
            {
            case Address::Kind::Vertex:
                return "vertex-addressed";
            case Address::Kind::EdgeVertex:
                return "edge-unicast";
            case Address::Kind::EdgeBroadcast:
                return "edge-broadcast";
            }
            return "?";
        }

        Address::Kind expected_kind(ModelKind m)
        {
            switch (m)
            {
            case ModelKind::Clique:
            case ModelKind::PrimalCongest:
                return Address::Kind::Vertex;
            case ModelKind::EdgeBroadcast:
            case ModelKind::EdgeSolocast:
                return Address::Kind::EdgeBroadcast;
            default:
                return Address::Kind::EdgeVertex;
            }
        }
    } // namespace

    std::optional<Violation> validate_outbox(ModelKind model, const Neighborhood& where, const Outbox& outbox)
    {
        const auto& msgs = outbox.messages();
        const auto kind = expected_kind(model);
        const std::size_t degree = where.port_members.size();

        std::set<VertexId> primal;
        if (model == ModelKind::PrimalCongest)
            for (const auto& members : where.port_members)
                for (VertexId w : members)
                    if (w != where.self)
                        primal.insert(w);

        std::set<VertexId> used_targets;
        std::set<Port> used_ports;
        std::set<std::pair<Port, VertexId>> used_pairs;

        for (std::size_t i = 0; i < msgs.size(); ++i)
        {
            const Address& a = msgs[i].to;
            if (a.kind != kind)
                return fail(i, std::string(kind_name(a.kind)) + " message not allowed in " + std::string(to_string(model)));

            if (kind == Address::Kind::Vertex)
            {
                if (a.target >= where.n || a.target == where.self)
                    return fail(i, "invalid target " + std::to_string(a.target));
                if (model == ModelKind::PrimalCongest && !primal.count(a.target))
                    return fail(i, "target " + std::to_string(a.target) + " is not a primal neighbour");
                if (!used_targets.insert(a.target).second)
                    return fail(i, "second message to " + std::to_string(a.target) + " in one round");
                continue;
            }

            if (a.port >= degree)
                return fail(i, "port " + std::to_string(a.port) + " out of range");
            if (kind == Address::Kind::EdgeVertex)
            {
                const auto& members = where.port_members[a.port];
                if (a.target == where.self || !std::binary_search(members.begin(), members.end(), a.target))
                    return fail(i, "target " + std::to_string(a.target) + " not in edge at port "
                                       + std::to_string(a.port));
                if (model == ModelKind::EdgeClique)
                {
                    if (!used_pairs.insert({a.port, a.target}).second)
                        return fail(i, "second message to " + std::to_string(a.target) + " over port "
                                           + std::to_string(a.port));
                    continue;
                }
            }
            if (!used_ports.insert(a.port).second)
                return fail(i, "second message over port " + std::to_string(a.port) + " in one round");
        }
        return std::nullopt;
    }

    std::optional<Violation> validate_outbox(ModelKind model, const Hypergraph& h, VertexId v, const Outbox& outbox)
    {
        std::vector<VertexSet> members;
        for (EdgeIndex e : h.incident(v))
            members.emplace_back(h.edge(e).begin(), h.edge(e).end());
        return validate_outbox(model, Neighborhood{v, h.num_vertices(), members}, outbox);
    }

    BigInt round_capacity_bits(ModelKind model, const Hypergraph& h, const Bandwidth& bw)
    {
        BigInt slots = 0;
        const BigInt n = h.num_vertices();
        switch (model)
        {
        case ModelKind::Clique:
            slots = n * (n - 1);
            break;
        case ModelKind::PrimalCongest:
            for (VertexId v = 0; v < h.num_vertices(); ++v)
                slots += h.neighbors(v).size();
            break;
        case ModelKind::EdgeClique:
            for (const auto& e : h.edges())
                slots += BigInt(e.size()) * (e.size() - 1);
            break;
        case ModelKind::EdgeBroadcast:
        case ModelKind::EdgeUnicast:
            slots = h.total_size();
            break;
        case ModelKind::EdgeSolocast:
            slots = h.num_edges();
            break;
        case ModelKind::EdgePaircast:
            slots = 2 * BigInt(h.num_edges());
            break;
        }
        return slots * bw.bits;
    }

} // namespace hypersim::sim

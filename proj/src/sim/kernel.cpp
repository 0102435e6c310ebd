#include "hypersim/sim/kernel.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "hypersim/sim/round_log.hpp"

namespace hypersim::sim
{
    void Inbox::normalize()
    {
        std::stable_sort(messages.begin(), messages.end(), [](const Envelope& a, const Envelope& b) {
            return std::tie(a.src, a.port) < std::tie(b.src, b.port);
        });
        std::sort(lost_arbitration.begin(), lost_arbitration.end());
    }

    LocalView make_local_view(const Hypergraph& h, VertexId v, ModelKind model, const Bandwidth& bw,
                              KnowledgeLevel kt)
    {
        LocalView view;
        view.id = v;
        view.n = h.num_vertices();
        view.rank = h.rank();
        view.model = model;
        view.bandwidth = bw;
        view.kt = kt;
        view.degree = h.degree(v);
        view.port_members.resize(view.degree);
        if (kt == KnowledgeLevel::KT1)
            for (Port p = 0; p < view.degree; ++p)
            {
                auto e = h.edge(h.incident(v)[p]);
                view.port_members[p].assign(e.begin(), e.end());
            }
        return view;
    }

    namespace
    {
        std::size_t frames_of(std::size_t bits, const Bandwidth& bw)
        {
            return std::max<std::size_t>(1, charge_rounds(bits, bw));
        }

        struct Pending
        {
            VertexId src;
            const OutMessage* msg;
            EdgeIndex edge;
        };
    } // namespace

    Execution run(const NodeProgram& program, const Hypergraph& h, ModelKind model, const Bandwidth& bw,
                  const RunOptions& options)
    {
        const std::size_t n = h.num_vertices();
        bw.check(n);
        if (options.max_rounds == 0)
            throw std::invalid_argument("max_rounds must be at least 1");

        Execution ex;
        std::vector<std::vector<VertexSet>> members(n);
        ex.processes.reserve(n);
        for (VertexId v = 0; v < n; ++v)
        {
            ex.processes.push_back(program.spawn(make_local_view(h, v, model, bw, options.kt)));
            for (EdgeIndex e : h.incident(v))
                members[v].emplace_back(h.edge(e).begin(), h.edge(e).end());
        }

        Metrics& m = ex.metrics;
        m.sent_per_vertex.assign(n, 0);
        m.received_per_vertex.assign(n, 0);
        m.received_bits_per_vertex.assign(n, 0);

        std::vector<Inbox> inbox(n);
        std::vector<Outbox> outbox(n);

        while (true)
        {
            bool any_active = false;
            for (VertexId v = 0; v < n; ++v)
            {
                outbox[v].clear();
                if (ex.processes[v]->halted())
                    continue;
                any_active = true;
                ex.processes[v]->step(inbox[v], outbox[v]);
                if (auto bad = validate_outbox(model, Neighborhood{v, n, members[v]}, outbox[v]))
                    throw ModelViolation(v, m.rounds + 1, bad->reason);
            }
            if (!any_active)
                break;

            std::vector<Pending> sends;
            for (VertexId v = 0; v < n; ++v)
                for (const auto& msg : outbox[v].messages())
                {
                    EdgeIndex e = 0;
                    if (msg.to.kind != Address::Kind::Vertex)
                        e = h.incident(v)[msg.to.port];
                    sends.push_back({v, &msg, e});
                }

            std::vector<Inbox> next(n);
            // Per-edge arbitration; ES: least broadcaster, EP: least unordered pair.
            std::map<EdgeIndex, std::pair<VertexId, VertexId>> winner;
            if (model == ModelKind::EdgeSolocast || model == ModelKind::EdgePaircast)
            {
                for (const auto& s : sends)
                {
                    std::pair<VertexId, VertexId> key{s.src, s.src};
                    if (model == ModelKind::EdgePaircast)
                        key = unordered_pair(s.src, s.msg->to.target);
                    auto it = winner.find(s.edge);
                    if (it == winner.end() || key < it->second)
                        winner[s.edge] = key;
                }
            }
            auto wins = [&](const Pending& s) {
                if (winner.empty())
                    return true;
                std::pair<VertexId, VertexId> key{s.src, s.src};
                if (model == ModelKind::EdgePaircast)
                    key = unordered_pair(s.src, s.msg->to.target);
                return winner.at(s.edge) == key;
            };

            std::size_t cost = 1;
            const std::uint64_t base = m.rounds;
            for (const auto& s : sends)
            {
                const OutMessage& msg = *s.msg;
                if (!wins(s))
                {
                    next[s.src].lost_arbitration.push_back(msg.to.port);
                    continue;
                }
                const std::size_t bits = msg.payload.size_bits();
                const std::size_t frames = frames_of(bits, bw);
                cost = std::max(cost, frames);
                ++m.messages_sent;
                ++m.sent_per_vertex[s.src];
                m.total_bits += bits;

                auto deliver = [&](VertexId to, std::optional<Port> port, bool broadcast) {
                    next[to].messages.push_back(Envelope{s.src, port, broadcast, msg.payload});
                    ++m.received_per_vertex[to];
                    m.received_bits_per_vertex[to] += bits;
                };
                switch (msg.to.kind)
                {
                case Address::Kind::Vertex:
                    deliver(msg.to.target, std::nullopt, false);
                    break;
                case Address::Kind::EdgeVertex:
                    deliver(msg.to.target, h.port_of(msg.to.target, s.edge), false);
                    break;
                case Address::Kind::EdgeBroadcast:
                    for (VertexId w : h.edge(s.edge))
                        if (w != s.src)
                            deliver(w, h.port_of(w, s.edge), true);
                    break;
                }

                if (options.round_log)
                    for (std::size_t f = 0; f < frames; ++f)
                    {
                        FrameRecord rec;
                        rec.round = base + f + 1;
                        rec.model = model;
                        rec.src = s.src;
                        rec.kind = msg.to.kind;
                        rec.port = msg.to.port;
                        rec.edge = s.edge;
                        rec.target = msg.to.target;
                        rec.bits = std::min(bw.bits, bits - std::min(bits, f * bw.bits));
                        options.round_log->write(rec);
                    }
            }

            for (auto& in : next)
                in.normalize();
            inbox = std::move(next);

            m.rounds += cost;
            ++m.steps;

            bool all_halted = std::all_of(ex.processes.begin(), ex.processes.end(),
                                          [](const auto& p) { return p->halted(); });
            if (all_halted ? m.rounds > options.max_rounds : m.rounds >= options.max_rounds)
                throw RoundBudgetExhausted(m.rounds, options.max_rounds);
            if (all_halted)
                break;
        }

        for (auto b : m.received_bits_per_vertex)
            m.max_received_bits_per_vertex = std::max(m.max_received_bits_per_vertex, b);
        return ex;
    }

} // namespace hypersim::sim

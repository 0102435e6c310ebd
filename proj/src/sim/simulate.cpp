#include "hypersim/sim/simulate.hpp"

#include <algorithm>
#include <map>

#include "hypersim/core/numeric.hpp"
#include "hypersim/sim/solocast.hpp"

namespace hypersim::sim
{
    bool simulation_supported(ModelKind from, ModelKind to)
    {
        using M = ModelKind;
        switch (from)
        {
        case M::EdgeClique:
            return to == M::EdgeBroadcast || to == M::EdgeUnicast || to == M::PrimalCongest;
        case M::EdgeBroadcast:
        case M::EdgeSolocast:
            return to == M::EdgeUnicast;
        case M::EdgePaircast:
            return to == M::EdgeBroadcast || to == M::EdgeClique || to == M::EdgeUnicast;
        default:
            return false;
        }
    }

    std::size_t simulation_factor(ModelKind from, ModelKind to, std::size_t rank, const SimulationParams& params)
    {
        if (!simulation_supported(from, to))
            throw UnsupportedSimulation("no simulation of " + std::string(to_string(from)) + " in "
                                        + std::string(to_string(to)));
        if (from == ModelKind::EdgePaircast)
            return 1;
        if (from == ModelKind::EdgeSolocast)
            return std::max<std::size_t>(1, ceil_log2(rank));
        if (to == ModelKind::PrimalCongest)
        {
            if (!params.max_pair_degree)
                throw std::invalid_argument("EC -> PC needs the maximum pair degree");
            return std::max<std::size_t>(1, *params.max_pair_degree);
        }
        return std::max<std::size_t>(1, rank - 1);
    }

    namespace
    {
        unsigned position_bits(std::size_t edge_size) { return id_bits(edge_size); }

        std::size_t position_in(const VertexSet& members, VertexId v)
        {
            return static_cast<std::size_t>(std::lower_bound(members.begin(), members.end(), v) - members.begin());
        }

        Payload read_rest(Payload::Reader& r)
        {
            Payload p;
            while (!r.done())
                p.push_bit(r.bit());
            return p;
        }

        /// Members of an edge other than `self`, in id order.
        VertexSet co_members(const VertexSet& members, VertexId self)
        {
            VertexSet out;
            for (VertexId w : members)
                if (w != self)
                    out.push_back(w);
            return out;
        }

        class Wrapped : public VertexProcess
        {
        public:
            Wrapped(std::unique_ptr<VertexProcess> inner, LocalView view, ModelKind from, std::size_t substeps)
                : inner_(std::move(inner)), view_(std::move(view)), from_(from), substeps_(substeps),
                  halted_(inner_->halted())
            {
            }

            void step(const Inbox& in, Outbox& out) override
            {
                if (started_)
                    absorb(in, (sub_ + substeps_ - 1) % substeps_);
                if (sub_ == 0)
                {
                    Inbox inner_in;
                    if (started_)
                    {
                        inner_in = take_inbox();
                        inner_in.normalize();
                    }
                    started_ = true;
                    Outbox inner_out;
                    if (!inner_->halted())
                    {
                        inner_->step(inner_in, inner_out);
                        Neighborhood where = view_.neighborhood();
                        if (auto bad = validate_outbox(from_, where, inner_out))
                            throw ModelViolation(view_.id, simulated_steps_ + 1,
                                                 "simulated " + std::string(to_string(from_)) + " step: "
                                                     + bad->reason);
                    }
                    ++simulated_steps_;
                    begin(inner_out);
                }
                emit(sub_, out);
                sub_ = (sub_ + 1) % substeps_;
                if (sub_ == 0 && inner_->halted())
                    halted_ = true;
            }

            bool halted() const override { return halted_; }
            const VertexProcess& unwrap() const override { return inner_->unwrap(); }

        protected:
            /// Messages that arrived after the sends of sub-step `sent_at`.
            virtual void absorb(const Inbox& in, std::size_t sent_at) = 0;
            /// Inbox the inner program would have seen directly; resets the per-step state.
            virtual Inbox take_inbox() = 0;
            virtual void begin(const Outbox& inner_out) = 0;
            virtual void emit(std::size_t sub, Outbox& out) = 0;

            const LocalView& view() const { return view_; }
            const VertexSet& members(Port p) const { return view_.port_members[p]; }

        private:
            std::unique_ptr<VertexProcess> inner_;
            LocalView view_;
            ModelKind from_;
            std::size_t substeps_;
            std::size_t sub_ = 0;
            std::size_t simulated_steps_ = 0;
            bool started_ = false;
            bool halted_;
        };

        // EC->EB, EC->EU, EB->EU: sub-step k serves the k-th co-member of every incident edge.
        class Serial : public Wrapped
        {
        public:
            Serial(std::unique_ptr<VertexProcess> inner, LocalView view, ModelKind from, ModelKind to,
                   std::size_t substeps)
                : Wrapped(std::move(inner), std::move(view), from, substeps), from_(from), to_(to)
            {
                for (Port p = 0; p < this->view().degree; ++p)
                    co_.push_back(co_members(members(p), this->view().id));
            }

        protected:
            void begin(const Outbox& inner_out) override
            {
                slots_.clear();
                for (const auto& m : inner_out.messages())
                {
                    const auto& co = co_[m.to.port];
                    if (m.to.kind == Address::Kind::EdgeBroadcast)
                    {
                        for (std::size_t k = 0; k < co.size(); ++k)
                            slots_[{k, m.to.port}] = m.payload;
                    }
                    else
                    {
                        std::size_t k = position_in(co, m.to.target);
                        slots_[{k, m.to.port}] = m.payload;
                    }
                }
            }

            void emit(std::size_t sub, Outbox& out) override
            {
                for (auto it = slots_.lower_bound({sub, 0}); it != slots_.end() && it->first.first == sub; ++it)
                {
                    const Port p = it->first.second;
                    if (to_ == ModelKind::EdgeBroadcast)
                        out.broadcast(p, it->second);
                    else
                        out.send_on(p, co_[p][sub], it->second);
                }
            }

            void absorb(const Inbox& in, std::size_t sent_at) override
            {
                for (const auto& env : in.messages)
                {
                    if (to_ == ModelKind::EdgeBroadcast)
                    {
                        VertexSet sender_co = co_members(members(*env.port), env.src);
                        if (sent_at >= sender_co.size() || sender_co[sent_at] != view().id)
                            continue;
                    }
                    collected_.messages.push_back(
                        Envelope{env.src, env.port, from_ == ModelKind::EdgeBroadcast, env.payload});
                }
            }

            Inbox take_inbox() override { return std::exchange(collected_, Inbox{}); }

        private:
            ModelKind from_;
            ModelKind to_;
            std::vector<VertexSet> co_;
            std::map<std::pair<std::size_t, Port>, Payload> slots_;
            Inbox collected_;
        };

        // ES->EU: doubling relay per edge; the least source seen so far is the one relayed.
        class SolocastRelay : public Wrapped
        {
        public:
            using Wrapped::Wrapped;

        protected:
            struct Best
            {
                VertexId src;
                Payload payload;
            };

            void begin(const Outbox& inner_out) override
            {
                for (const auto& m : inner_out.messages())
                {
                    best_[m.to.port] = Best{view().id, m.payload};
                    sent_.push_back(m.to.port);
                }
            }

            void emit(std::size_t sub, Outbox& out) override
            {
                for (const auto& [p, b] : best_)
                {
                    const VertexSet& e = members(p);
                    auto target = solocast_target(e, b.src, view().id, sub + 1);
                    if (!target)
                        continue;
                    Payload frame;
                    frame.push(position_in(e, b.src), position_bits(e.size()));
                    frame.append(b.payload);
                    out.send_on(p, *target, std::move(frame));
                }
            }

            void absorb(const Inbox& in, std::size_t) override
            {
                for (const auto& env : in.messages)
                {
                    const Port p = *env.port;
                    const VertexSet& e = members(p);
                    auto r = env.payload.reader();
                    VertexId src = e.at(r.read(position_bits(e.size())));
                    auto it = best_.find(p);
                    if (it == best_.end() || src < it->second.src)
                        best_[p] = Best{src, read_rest(r)};
                }
            }

            Inbox take_inbox() override
            {
                Inbox in;
                for (const auto& [p, b] : best_)
                    if (b.src != view().id)
                        in.messages.push_back(Envelope{b.src, p, true, b.payload});
                for (Port p : sent_)
                    if (best_.at(p).src != view().id)
                        in.lost_arbitration.push_back(p);
                best_.clear();
                sent_.clear();
                return in;
            }

        private:
            std::map<Port, Best> best_;
            std::vector<Port> sent_;
        };

        // EP->EB, EP->EC, EP->EU: one sub-step; every member that needs to arbitrate learns all
        // pairs on the edge (EB, EC) or contention is assumed absent (EU).
        class PairRelay : public Wrapped
        {
        public:
            PairRelay(std::unique_ptr<VertexProcess> inner, LocalView view, ModelKind from, ModelKind to)
                : Wrapped(std::move(inner), std::move(view), from, 1), to_(to)
            {
            }

        protected:
            struct Transfer
            {
                VertexId src;
                VertexId target;
                Payload payload;
            };

            void begin(const Outbox& inner_out) override
            {
                own_.clear();
                for (const auto& m : inner_out.messages())
                    own_[m.to.port] = m;
            }

            void emit(std::size_t, Outbox& out) override
            {
                for (const auto& [p, m] : own_)
                {
                    const VertexSet& e = members(p);
                    const unsigned w = position_bits(e.size());
                    switch (to_)
                    {
                    case ModelKind::EdgeBroadcast: {
                        Payload frame;
                        frame.push(position_in(e, m.to.target), w);
                        frame.append(m.payload);
                        out.broadcast(p, std::move(frame));
                        break;
                    }
                    case ModelKind::EdgeClique:
                        for (VertexId x : e)
                        {
                            if (x == view().id)
                                continue;
                            Payload frame;
                            frame.push_bit(x == m.to.target);
                            if (x == m.to.target)
                                frame.append(m.payload);
                            else
                                frame.push(position_in(e, m.to.target), w);
                            out.send_on(p, x, std::move(frame));
                        }
                        break;
                    default:
                        out.send_on(p, m.to.target, m.payload);
                        break;
                    }
                }
            }

            void absorb(const Inbox& in, std::size_t) override
            {
                for (const auto& env : in.messages)
                {
                    const Port p = *env.port;
                    const VertexSet& e = members(p);
                    auto r = env.payload.reader();
                    switch (to_)
                    {
                    case ModelKind::EdgeBroadcast: {
                        VertexId target = e.at(r.read(position_bits(e.size())));
                        seen_[p].push_back(Transfer{env.src, target, read_rest(r)});
                        break;
                    }
                    case ModelKind::EdgeClique:
                        if (r.bit())
                            seen_[p].push_back(Transfer{env.src, view().id, read_rest(r)});
                        else
                            seen_[p].push_back(Transfer{env.src, e.at(r.read(position_bits(e.size()))), {}});
                        break;
                    default:
                        seen_[p].push_back(Transfer{env.src, view().id, env.payload});
                        break;
                    }
                }
            }

            Inbox take_inbox() override
            {
                Inbox in;
                std::map<Port, std::pair<VertexId, VertexId>> winner;
                auto offer = [&](Port p, VertexId a, VertexId b) {
                    auto key = unordered_pair(a, b);
                    auto it = winner.find(p);
                    if (it == winner.end() || key < it->second)
                        winner[p] = key;
                };
                if (to_ != ModelKind::EdgeUnicast)
                {
                    for (const auto& [p, list] : seen_)
                        for (const auto& t : list)
                            offer(p, t.src, t.target);
                    for (const auto& [p, m] : own_)
                        offer(p, view().id, m.to.target);
                }
                auto wins = [&](Port p, VertexId a, VertexId b) {
                    return to_ == ModelKind::EdgeUnicast || winner.at(p) == unordered_pair(a, b);
                };
                for (const auto& [p, list] : seen_)
                    for (const auto& t : list)
                        if (t.target == view().id && wins(p, t.src, t.target))
                            in.messages.push_back(Envelope{t.src, p, false, t.payload});
                for (const auto& [p, m] : own_)
                    if (!wins(p, view().id, m.to.target))
                        in.lost_arbitration.push_back(p);
                seen_.clear();
                own_.clear();
                return in;
            }

        private:
            ModelKind to_;
            std::map<Port, OutMessage> own_;
            std::map<Port, std::vector<Transfer>> seen_;
        };

        // EC->PC: the k-th shared edge with a neighbour, in (members, port) order, is served in
        // sub-step k; both endpoints agree on that order.
        class PairDegreeSerial : public Wrapped
        {
        public:
            PairDegreeSerial(std::unique_ptr<VertexProcess> inner, LocalView view, std::size_t substeps)
                : Wrapped(std::move(inner), std::move(view), ModelKind::EdgeClique, substeps), substeps_(substeps)
            {
                std::map<VertexId, std::vector<std::pair<VertexSet, Port>>> shared;
                for (Port p = 0; p < this->view().degree; ++p)
                    for (VertexId w : members(p))
                        if (w != this->view().id)
                            shared[w].emplace_back(members(p), p);
                for (auto& [w, list] : shared)
                {
                    std::sort(list.begin(), list.end());
                    if (list.size() > substeps_)
                        throw std::invalid_argument("pair degree exceeds the EC -> PC simulation factor");
                    for (auto& [mem, p] : list)
                        order_[w].push_back(p);
                }
            }

        protected:
            void begin(const Outbox& inner_out) override
            {
                slots_.clear();
                for (const auto& m : inner_out.messages())
                {
                    const auto& ports = order_.at(m.to.target);
                    std::size_t k = static_cast<std::size_t>(std::find(ports.begin(), ports.end(), m.to.port)
                                                             - ports.begin());
                    slots_[{k, m.to.target}] = m.payload;
                }
            }

            void emit(std::size_t sub, Outbox& out) override
            {
                for (auto it = slots_.lower_bound({sub, 0}); it != slots_.end() && it->first.first == sub; ++it)
                    out.send(it->first.second, it->second);
            }

            void absorb(const Inbox& in, std::size_t sent_at) override
            {
                for (const auto& env : in.messages)
                    collected_.messages.push_back(Envelope{env.src, order_.at(env.src).at(sent_at), false, env.payload});
            }

            Inbox take_inbox() override { return std::exchange(collected_, Inbox{}); }

        private:
            std::size_t substeps_;
            std::map<VertexId, std::vector<Port>> order_;
            std::map<std::pair<std::size_t, VertexId>, Payload> slots_;
            Inbox collected_;
        };

        class SimulatedProgram : public NodeProgram
        {
        public:
            SimulatedProgram(std::shared_ptr<const NodeProgram> inner, ModelKind from, ModelKind to,
                             SimulationParams params)
                : inner_(std::move(inner)), from_(from), to_(to), params_(params)
            {
            }

            std::unique_ptr<VertexProcess> spawn(const LocalView& view) const override
            {
                if (!view.knows_members())
                    throw std::invalid_argument("cross-model simulation requires KT1");
                LocalView inner_view = view;
                inner_view.model = from_;
                auto inner = inner_->spawn(inner_view);
                const std::size_t k = simulation_factor(from_, to_, view.rank, params_);
                if (from_ == ModelKind::EdgePaircast)
                    return std::make_unique<PairRelay>(std::move(inner), view, from_, to_);
                if (from_ == ModelKind::EdgeSolocast)
                    return std::make_unique<SolocastRelay>(std::move(inner), view, from_, k);
                if (to_ == ModelKind::PrimalCongest)
                    return std::make_unique<PairDegreeSerial>(std::move(inner), view, k);
                return std::make_unique<Serial>(std::move(inner), view, from_, to_, k);
            }

        private:
            std::shared_ptr<const NodeProgram> inner_;
            ModelKind from_;
            ModelKind to_;
            SimulationParams params_;
        };
    } // namespace

    std::unique_ptr<NodeProgram> cross_model_simulate(std::shared_ptr<const NodeProgram> inner, ModelKind from,
                                                      ModelKind to, SimulationParams params)
    {
        simulation_factor(from, to, 2, params);
        return std::make_unique<SimulatedProgram>(std::move(inner), from, to, params);
    }

} // namespace hypersim::sim

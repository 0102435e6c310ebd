#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "../support/exchange.hpp"
#include "hypersim/core/generators.hpp"
#include "hypersim/core/numeric.hpp"
#include "hypersim/sim/clique_route.hpp"
#include "hypersim/sim/kernel.hpp"
#include "hypersim/sim/round_log.hpp"
#include "hypersim/sim/simulate.hpp"
#include "hypersim/sim/solocast.hpp"

using namespace hypersim;
using namespace hypersim::sim;

namespace
{
    /// Runs `body(view, step, inbox, outbox)` for `steps` steps on every vertex.
    template <class Body>
    class ScriptProgram : public NodeProgram
    {
    public:
        ScriptProgram(std::size_t steps, Body body) : steps_(steps), body_(body) {}

        class Process : public VertexProcess
        {
        public:
            Process(LocalView v, std::size_t steps, Body body) : view(std::move(v)), steps_(steps), body_(body) {}
            void step(const Inbox& in, Outbox& out) override
            {
                inboxes.push_back(in);
                if (step_ == steps_)
                {
                    halted_ = true;
                    return;
                }
                body_(view, step_++, in, out);
            }
            bool halted() const override { return halted_; }

            LocalView view;
            std::vector<Inbox> inboxes;

        private:
            std::size_t steps_;
            std::size_t step_ = 0;
            bool halted_ = false;
            Body body_;
        };

        std::unique_ptr<VertexProcess> spawn(const LocalView& view) const override
        {
            return std::make_unique<Process>(view, steps_, body_);
        }

    private:
        std::size_t steps_;
        Body body_;
    };

    template <class Body>
    ScriptProgram<Body> script(std::size_t steps, Body body)
    {
        return ScriptProgram<Body>(steps, body);
    }

    Payload bits(std::size_t count)
    {
        Payload p;
        for (std::size_t i = 0; i < count; ++i)
            p.push_bit(i % 3 == 0);
        return p;
    }

    const Bandwidth kB{16};
} // namespace

TEST(Payload, RoundTrip)
{
    Payload p;
    p.push(5, 3);
    p.push_gamma(0);
    p.push_gamma(1000);
    p.push_bit(true);
    EXPECT_EQ(p.size_bits(), 3u + 1u + 19u + 1u);
    auto r = p.reader();
    EXPECT_EQ(r.read(3), 5u);
    EXPECT_EQ(r.read_gamma(), 0u);
    EXPECT_EQ(r.read_gamma(), 1000u);
    EXPECT_TRUE(r.bit());
    EXPECT_TRUE(r.done());
    EXPECT_THROW(r.bit(), PayloadError);
    EXPECT_THROW(p.push(8, 3), std::exception);
}

TEST(Bandwidth, ChargeRounds)
{
    EXPECT_EQ(charge_rounds(17, Bandwidth{8}), 3u);
    EXPECT_EQ(charge_rounds(16, Bandwidth{8}), 2u);
    EXPECT_EQ(charge_rounds(1, Bandwidth{8}), 1u);
    EXPECT_EQ(Bandwidth::default_for(7).bits, 12u);
    EXPECT_THROW(Bandwidth{2}.check(16), std::invalid_argument);
}

TEST(Validate, PerModelRules)
{
    auto h = Hypergraph::build(5, {{0, 1, 2}, {0, 3}});
    Outbox ok_clique;
    ok_clique.send(4, {});
    ok_clique.send(3, {});
    EXPECT_FALSE(validate_outbox(ModelKind::Clique, h, 0, ok_clique));

    Outbox self;
    self.send(0, {});
    EXPECT_TRUE(validate_outbox(ModelKind::Clique, h, 0, self));

    Outbox twice;
    twice.send(1, {});
    twice.send(1, {});
    EXPECT_TRUE(validate_outbox(ModelKind::Clique, h, 0, twice));

    // 4 is isolated: not a primal neighbour
    EXPECT_TRUE(validate_outbox(ModelKind::PrimalCongest, h, 0, ok_clique));

    Outbox ec;
    ec.send_on(0, 1, {});
    ec.send_on(0, 2, {});
    ec.send_on(1, 3, {});
    EXPECT_FALSE(validate_outbox(ModelKind::EdgeClique, h, 0, ec));
    EXPECT_TRUE(validate_outbox(ModelKind::EdgeUnicast, h, 0, ec));
    EXPECT_TRUE(validate_outbox(ModelKind::EdgePaircast, h, 0, ec));
    EXPECT_TRUE(validate_outbox(ModelKind::EdgeBroadcast, h, 0, ec));

    Outbox wrong_edge;
    wrong_edge.send_on(1, 2, {});
    EXPECT_TRUE(validate_outbox(ModelKind::EdgeUnicast, h, 0, wrong_edge));

    Outbox eb;
    eb.broadcast(0, {});
    eb.broadcast(1, {});
    EXPECT_FALSE(validate_outbox(ModelKind::EdgeBroadcast, h, 0, eb));
    EXPECT_FALSE(validate_outbox(ModelKind::EdgeSolocast, h, 0, eb));
    eb.broadcast(0, {});
    EXPECT_TRUE(validate_outbox(ModelKind::EdgeBroadcast, h, 0, eb));

    Outbox bad_port;
    bad_port.broadcast(2, {});
    EXPECT_TRUE(validate_outbox(ModelKind::EdgeBroadcast, h, 0, bad_port));
}

TEST(Kernel, NoOp)
{
    auto h = Hypergraph::build(4, {{0, 1}, {2, 3}});
    auto prog = script(0, [](const LocalView&, std::size_t, const Inbox&, Outbox&) {});
    auto ex = run(prog, h, ModelKind::EdgeBroadcast, kB);
    EXPECT_EQ(ex.metrics.rounds, 1u);
    EXPECT_EQ(ex.metrics.messages_sent, 0u);
    EXPECT_EQ(ex.metrics.total_bits, 0u);
}

TEST(Kernel, BroadcastOnce)
{
    auto h = Hypergraph::build(5, {{0, 1, 2}, {0, 3}, {2, 3, 4}});
    auto prog = script(1, [](const LocalView& v, std::size_t, const Inbox&, Outbox& out) {
        for (Port p = 0; p < v.degree; ++p)
            out.broadcast(p, bits(20));
    });
    auto ex = run(prog, h, ModelKind::EdgeBroadcast, kB);
    // one step of 2 frames, then the halting step
    EXPECT_EQ(ex.metrics.rounds, 3u);
    EXPECT_EQ(ex.metrics.steps, 2u);
    EXPECT_EQ(ex.metrics.messages_sent, h.total_size());
    for (VertexId v = 0; v < 5; ++v)
    {
        std::size_t expect = 0;
        for (EdgeIndex e : h.incident(v))
            expect += h.edge(e).size() - 1;
        EXPECT_EQ(ex.metrics.received_per_vertex[v], expect);
        EXPECT_EQ(ex.metrics.received_bits_per_vertex[v], 20 * expect);
    }
    const auto& p2 = dynamic_cast<const decltype(prog)::Process&>(*ex.processes[2]);
    ASSERT_EQ(p2.inboxes.size(), 2u);
    const auto& in = p2.inboxes[1].messages;
    ASSERT_EQ(in.size(), 4u);
    EXPECT_EQ(in[0].src, 0u);
    EXPECT_EQ(in[0].port, Port{0});
    EXPECT_TRUE(in[0].broadcast);
    EXPECT_EQ(in[3].src, 4u);
}

TEST(Kernel, SolocastArbitration)
{
    auto h = Hypergraph::build(4, {{0, 1, 2}, {1, 3}});
    auto prog = script(1, [](const LocalView& v, std::size_t, const Inbox&, Outbox& out) {
        for (Port p = 0; p < v.degree; ++p)
            out.broadcast(p, bits(4));
    });
    auto ex = run(prog, h, ModelKind::EdgeSolocast, kB);
    using P = decltype(prog)::Process;
    const auto& v1 = dynamic_cast<const P&>(*ex.processes[1]);
    const auto& v2 = dynamic_cast<const P&>(*ex.processes[2]);
    const auto& v3 = dynamic_cast<const P&>(*ex.processes[3]);
    // edge {0,1,2}: 0 wins; edge {1,3}: 1 wins
    EXPECT_EQ(v1.inboxes[1].lost_arbitration, (std::vector<Port>{0}));
    EXPECT_EQ(v2.inboxes[1].lost_arbitration, (std::vector<Port>{0}));
    ASSERT_EQ(v2.inboxes[1].messages.size(), 1u);
    EXPECT_EQ(v2.inboxes[1].messages[0].src, 0u);
    ASSERT_EQ(v3.inboxes[1].messages.size(), 1u);
    EXPECT_EQ(v3.inboxes[1].messages[0].src, 1u);
    EXPECT_TRUE(v3.inboxes[1].lost_arbitration == (std::vector<Port>{0}));
    EXPECT_EQ(ex.metrics.messages_sent, 2u);
}

TEST(Kernel, PaircastArbitration)
{
    auto h = Hypergraph::build(4, {{0, 1, 2, 3}});
    auto prog = script(1, [](const LocalView& v, std::size_t, const Inbox&, Outbox& out) {
        if (v.id == 2)
            out.send_on(0, 3, bits(4));
        if (v.id == 1)
            out.send_on(0, 0, bits(4));
        if (v.id == 0)
            out.send_on(0, 1, bits(4));
    });
    auto ex = run(prog, h, ModelKind::EdgePaircast, kB);
    using P = decltype(prog)::Process;
    // pair {0,1} beats {2,3}; both directions of the winning pair go through
    EXPECT_EQ(ex.metrics.messages_sent, 2u);
    EXPECT_EQ(dynamic_cast<const P&>(*ex.processes[2]).inboxes[1].lost_arbitration, (std::vector<Port>{0}));
    EXPECT_TRUE(dynamic_cast<const P&>(*ex.processes[3]).inboxes[1].messages.empty());
    EXPECT_EQ(dynamic_cast<const P&>(*ex.processes[0]).inboxes[1].messages.size(), 1u);
}

TEST(Kernel, ViolationAndBudget)
{
    auto h = Hypergraph::build(3, {{0, 1, 2}});
    auto bad = script(1, [](const LocalView&, std::size_t, const Inbox&, Outbox& out) { out.send(1, {}); });
    EXPECT_THROW(run(bad, h, ModelKind::EdgeBroadcast, kB), ModelViolation);

    auto slow = script(10, [](const LocalView&, std::size_t, const Inbox&, Outbox&) {});
    RunOptions opts;
    opts.max_rounds = 5;
    EXPECT_THROW(run(slow, h, ModelKind::EdgeBroadcast, kB, opts), RoundBudgetExhausted);
    opts.max_rounds = 11;
    EXPECT_EQ(run(slow, h, ModelKind::EdgeBroadcast, kB, opts).metrics.rounds, 11u);
}

TEST(Kernel, KnowledgeLevels)
{
    auto h = Hypergraph::build(3, {{0, 1, 2}});
    auto kt0 = make_local_view(h, 1, ModelKind::EdgeBroadcast, kB, KnowledgeLevel::KT0);
    EXPECT_EQ(kt0.degree, 1u);
    EXPECT_FALSE(kt0.knows_members());
    auto kt1 = make_local_view(h, 1, ModelKind::EdgeBroadcast, kB, KnowledgeLevel::KT1);
    EXPECT_EQ(kt1.port_members[0], (VertexSet{0, 1, 2}));
}

TEST(Kernel, Deterministic)
{
    auto h = sample_uniform_random(9, 3, 0.4, 2);
    fixtures::ExchangeProgram prog(fixtures::exchange_steps(3));
    for (auto m : {ModelKind::EdgeSolocast, ModelKind::EdgePaircast, ModelKind::EdgeUnicast})
    {
        auto a = run(prog, h, m, kB);
        auto b = run(prog, h, m, kB);
        EXPECT_EQ(a.metrics, b.metrics);
        for (VertexId v = 0; v < 9; ++v)
            EXPECT_EQ(a.output<fixtures::ExchangeProcess>(v).log(), b.output<fixtures::ExchangeProcess>(v).log());
    }
}

TEST(Exchange, EveryModelDeliversEverything)
{
    auto h = sample_uniform_random(8, 4, 0.3, 6);
    const std::size_t pairs = [&] {
        std::size_t c = 0;
        for (const auto& e : h.edges())
            c += e.size() * (e.size() - 1);
        return c;
    }();
    for (auto m : {ModelKind::EdgeClique, ModelKind::EdgeUnicast, ModelKind::EdgePaircast})
    {
        fixtures::ExchangeProgram prog(fixtures::exchange_steps(4));
        auto ex = run(prog, h, m, Bandwidth{32});
        std::size_t got = 0;
        for (VertexId v = 0; v < 8; ++v)
            for (const auto& in : ex.output<fixtures::ExchangeProcess>(v).log())
                got += in.messages.size();
        EXPECT_EQ(got, pairs) << to_string(m);
    }
}

TEST(Solocast, EightMembers)
{
    VertexSet e{3, 5, 8, 10, 11, 14, 20, 21};
    auto rounds = solocast_over_unicast(e, 10);
    ASSERT_EQ(rounds.size(), 3u);
    // rank order from 10: 10 11 14 20 21 3 5 8
    EXPECT_EQ(rounds[0], (SolocastRound{{10, 11}}));
    EXPECT_EQ(rounds[1], (SolocastRound{{10, 14}, {11, 20}}));
    EXPECT_EQ(rounds[2], (SolocastRound{{10, 21}, {11, 3}, {14, 5}, {20, 8}}));

    std::set<VertexId> informed{10};
    for (const auto& round : rounds)
    {
        std::set<VertexId> before = informed;
        for (auto [s, t] : round)
        {
            EXPECT_TRUE(before.count(s));
            EXPECT_TRUE(informed.insert(t).second);
            EXPECT_EQ(solocast_target(e, 10, s, &round - rounds.data() + 1), t);
        }
    }
    EXPECT_EQ(informed.size(), e.size());
    EXPECT_THROW(solocast_over_unicast(e, 4), std::invalid_argument);
}

TEST(Solocast, RoundCounts)
{
    for (std::size_t k = 1; k <= 17; ++k)
    {
        VertexSet e(k);
        std::iota(e.begin(), e.end(), 0);
        EXPECT_EQ(solocast_over_unicast(e, 0).size(), ceil_log2(k));
    }
}

TEST(CliqueRoute, DeliversWithinGuarantee)
{
    Rng rng(5);
    for (int trial = 0; trial < 30; ++trial)
    {
        const std::size_t n = 5 + trial % 11;
        std::vector<RouteDemand> demands;
        const std::size_t count = 1 + rng.below(4 * n);
        for (std::size_t i = 0; i < count; ++i)
            demands.push_back({static_cast<VertexId>(rng.below(n)), static_cast<VertexId>(rng.below(n)),
                               1 + rng.below(40)});
        Bandwidth bw{8};
        auto sched = clique_route(demands, n, bw);
        EXPECT_LE(sched.rounds, route_guarantee(demands, n, bw));

        std::map<std::size_t, VertexId> at;
        for (std::size_t i = 0; i < demands.size(); ++i)
            at[i] = demands[i].src;
        std::size_t rounds = 0;
        for (const auto& phase : sched.phases)
        {
            std::set<std::pair<VertexId, VertexId>> used;
            std::size_t longest = 0;
            for (const auto& hop : phase.hops)
            {
                EXPECT_TRUE(used.insert({hop.src, hop.dst}).second);
                EXPECT_NE(hop.src, hop.dst);
                EXPECT_EQ(at[hop.demand], hop.src);
                at[hop.demand] = hop.dst;
                longest = std::max(longest, demands[hop.demand].bits);
            }
            EXPECT_LE(longest, phase.max_bits);
            rounds += std::max<std::size_t>(1, charge_rounds(phase.max_bits, bw));
        }
        EXPECT_EQ(rounds, sched.rounds);
        for (std::size_t i = 0; i < demands.size(); ++i)
            EXPECT_EQ(at[i], demands[i].dst);
    }
}

TEST(CliqueRoute, LoadAndGuarantee)
{
    std::vector<RouteDemand> demands{{0, 1, 10}, {0, 2, 3}, {2, 2, 100}};
    auto load = route_load(demands, 4);
    EXPECT_EQ(load.max_bits, 10u);
    EXPECT_EQ(load.max_load, 2u);
    EXPECT_EQ(route_guarantee(demands, 4, Bandwidth{4}), 2u * 3u * 1u);
}

TEST(RoundLog, JsonRoundTrip)
{
    FrameRecord f{7, ModelKind::EdgePaircast, 3, Address::Kind::EdgeVertex, 2, 11, 5, 9};
    auto back = parse_json_line(to_json_line(f));
    EXPECT_EQ(back.round, 7u);
    EXPECT_EQ(back.model, ModelKind::EdgePaircast);
    EXPECT_EQ(back.src, 3u);
    EXPECT_EQ(back.kind, Address::Kind::EdgeVertex);
    EXPECT_EQ(back.port, Port{2});
    EXPECT_EQ(back.edge, EdgeIndex{11});
    EXPECT_EQ(back.target, 5u);
    EXPECT_EQ(back.bits, 9u);
    EXPECT_THROW(parse_json_line("{not json"), std::runtime_error);
}

TEST(RoundLog, ReplayAcceptsKernelRunsAndRejectsTampering)
{
    auto h = sample_uniform_random(8, 3, 0.4, 1);
    for (auto m : {ModelKind::EdgeSolocast, ModelKind::EdgePaircast, ModelKind::EdgeClique})
    {
        std::stringstream log;
        RoundLogWriter writer(log);
        RunOptions opts;
        opts.round_log = &writer;
        run(fixtures::ExchangeProgram(fixtures::exchange_steps(3)), h, m, kB, opts);
        const std::string text = log.str();
        std::stringstream in(text);
        auto report = replay_round_log(in, h, kB);
        EXPECT_TRUE(report.ok) << report.first_error;
        EXPECT_EQ(report.frames, writer.frames());

        // duplicate the first frame: a second message on the same slot
        std::string first = text.substr(0, text.find('\n') + 1);
        std::stringstream doubled(first + text);
        EXPECT_FALSE(replay_round_log(doubled, h, kB).ok) << to_string(m);
    }
}

TEST(Simulate, SupportAndFactors)
{
    EXPECT_TRUE(simulation_supported(ModelKind::EdgeClique, ModelKind::EdgeBroadcast));
    EXPECT_FALSE(simulation_supported(ModelKind::EdgePaircast, ModelKind::EdgeSolocast));
    EXPECT_FALSE(simulation_supported(ModelKind::EdgeBroadcast, ModelKind::EdgeClique));
    EXPECT_EQ(simulation_factor(ModelKind::EdgeClique, ModelKind::EdgeUnicast, 5, {}), 4u);
    EXPECT_EQ(simulation_factor(ModelKind::EdgeSolocast, ModelKind::EdgeUnicast, 5, {}), 3u);
    EXPECT_EQ(simulation_factor(ModelKind::EdgePaircast, ModelKind::EdgeClique, 5, {}), 1u);
    EXPECT_EQ(simulation_factor(ModelKind::EdgeClique, ModelKind::PrimalCongest, 5, {{3}}), 3u);
    EXPECT_THROW(simulation_factor(ModelKind::EdgeClique, ModelKind::PrimalCongest, 5, {}), std::invalid_argument);
    auto inner = std::make_shared<fixtures::ExchangeProgram>(2);
    EXPECT_THROW(cross_model_simulate(inner, ModelKind::EdgeBroadcast, ModelKind::EdgeClique), UnsupportedSimulation);
}

TEST(Simulate, WrappedRunSeesNativeInboxes)
{
    auto h = sample_uniform_random(9, 3, 0.35, 4);
    const Bandwidth bw{64};
    SimulationParams params{h.max_pair_degree()};
    const std::pair<ModelKind, ModelKind> pairs[] = {
        {ModelKind::EdgeClique, ModelKind::EdgeBroadcast},     {ModelKind::EdgeClique, ModelKind::EdgeUnicast},
        {ModelKind::EdgeBroadcast, ModelKind::EdgeUnicast},    {ModelKind::EdgeSolocast, ModelKind::EdgeUnicast},
        {ModelKind::EdgePaircast, ModelKind::EdgeBroadcast},   {ModelKind::EdgePaircast, ModelKind::EdgeClique},
        {ModelKind::EdgePaircast, ModelKind::EdgeUnicast},     {ModelKind::EdgeClique, ModelKind::PrimalCongest},
    };
    for (auto [from, to] : pairs)
    {
        const bool pairs_only = from == ModelKind::EdgePaircast && to == ModelKind::EdgeUnicast;
        auto inner = std::make_shared<fixtures::ExchangeProgram>(fixtures::exchange_steps(3), pairs_only);
        auto native = run(*inner, h, from, bw);
        auto wrapped = cross_model_simulate(inner, from, to, params);
        auto sim = run(*wrapped, h, to, bw);
        for (VertexId v = 0; v < 9; ++v)
            EXPECT_EQ(sim.output<fixtures::ExchangeProcess>(v).log(), native.output<fixtures::ExchangeProcess>(v).log())
                << to_string(from) << "->" << to_string(to) << " vertex " << v;
        EXPECT_LE(sim.metrics.rounds, simulation_factor(from, to, h.rank(), params) * native.metrics.rounds);
    }
}

#include "hypersim/algo/clique.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "hypersim/core/numeric.hpp"

namespace hypersim::algo
{
    namespace
    {
        std::size_t ceil_cbrt(std::size_t n)
        {
            std::size_t s = 1;
            while (s * s * s < n)
                ++s;
            return s;
        }
    } // namespace

    TriplePartition::TriplePartition(std::size_t n) : n_(n), s_(ceil_cbrt(std::max<std::size_t>(n, 1)))
    {
        const std::size_t base = n_ / s_;
        const std::size_t extra = n_ % s_;
        starts_.push_back(0);
        for (std::size_t i = 0; i < s_; ++i)
            starts_.push_back(static_cast<VertexId>(starts_.back() + base + (i < extra ? 1 : 0)));
    }

    std::size_t TriplePartition::block_of(VertexId v) const
    {
        if (v >= n_)
            throw std::out_of_range("vertex " + std::to_string(v) + " outside the partition");
        auto it = std::upper_bound(starts_.begin(), starts_.end(), v);
        return static_cast<std::size_t>(it - starts_.begin()) - 1;
    }

    std::array<std::size_t, 3> TriplePartition::digits(std::size_t c) const
    {
        return {c / (s_ * s_), (c / s_) % s_, c % s_};
    }

    std::vector<std::size_t> TriplePartition::classes_of(VertexId v) const
    {
        std::vector<std::size_t> out;
        for (std::size_t c = v; c < num_classes(); c += n_)
            out.push_back(c);
        return out;
    }

    TriplePartition clique_partition(std::size_t n)
    {
        if (n == 0)
            throw std::invalid_argument("partition needs at least one vertex");
        return TriplePartition(n);
    }

    std::vector<std::size_t> destination_classes(std::size_t s, std::size_t a, std::size_t b)
    {
        if (a >= s || b >= s)
            throw std::out_of_range("block index out of range");
        std::vector<std::size_t> out;
        auto idx = [s](std::size_t d0, std::size_t d1, std::size_t d2) { return (d0 * s + d1) * s + d2; };
        for (std::size_t x = 0; x < s; ++x)
        {
            out.push_back(idx(a, b, x));
            out.push_back(idx(a, x, b));
            out.push_back(idx(b, a, x));
            out.push_back(idx(b, x, a));
            out.push_back(idx(x, a, b));
            out.push_back(idx(x, b, a));
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    VertexSet destination_set(const TriplePartition& part, std::size_t a, std::size_t b)
    {
        VertexSet out;
        for (std::size_t c : destination_classes(part.s(), a, b))
            out.push_back(part.owner(c));
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    std::uint64_t colex_rank(const std::vector<std::size_t>& positions)
    {
        std::uint64_t r = 0;
        for (std::size_t i = 0; i < positions.size(); ++i)
            r += binomial_u64(positions[i], i + 1);
        return r;
    }

    std::vector<std::size_t> colex_unrank(std::uint64_t rank, std::size_t k)
    {
        std::vector<std::size_t> out(k);
        for (std::size_t i = k; i-- > 0;)
        {
            // largest p with C(p, i+1) <= rank
            std::size_t p = i;
            while (binomial_u64(p + 1, i + 1) <= rank)
                ++p;
            out[i] = p;
            rank -= binomial_u64(p, i + 1);
        }
        return out;
    }

    std::shared_ptr<const CliquePlan> make_clique_plan(std::size_t n, std::size_t rank, const sim::Bandwidth& bw)
    {
        auto plan = std::make_shared<CliquePlan>();
        plan->n = n;
        plan->rank = rank;
        plan->bandwidth = bw.bits;
        plan->sourced.assign(n, 0);
        if (n < 2)
            return plan;
        const TriplePartition part(n);
        // destinations per block pair
        std::vector<VertexSet> dest(part.s() * part.s());
        for (std::size_t a = 0; a < part.s(); ++a)
            for (std::size_t b = 0; b < part.s(); ++b)
                dest[a * part.s() + b] = destination_set(part, a, b);

        for (std::size_t r = 2; r <= std::min(rank, n); ++r)
        {
            CliquePass pass;
            pass.rank = r;
            pass.vector_bits = binomial_u64(n - 2, r - 2);
            const std::size_t bits = id_bits(n) + pass.vector_bits;
            for (VertexId v = 0; v < n; ++v)
                for (VertexId u = 0; u < n; ++u)
                {
                    if (u == v)
                        continue;
                    for (VertexId w : dest[part.block_of(v) * part.s() + part.block_of(u)])
                    {
                        pass.demands.push_back({v, w, bits});
                        pass.about.push_back(u);
                        if (w != v)
                            ++plan->sourced[v];
                    }
                }
            pass.schedule = sim::clique_route(pass.demands, n, bw);
            plan->passes.push_back(std::move(pass));
        }

        for (std::size_t q = 0; q < plan->passes.size(); ++q)
        {
            const auto& phases = plan->passes[q].schedule.phases;
            for (std::size_t k = 0; k < phases.size(); ++k)
            {
                CliqueStep st;
                st.pass = q;
                st.phase = k;
                st.by_src.resize(n);
                st.by_dst.resize(n);
                for (std::uint32_t i = 0; i < phases[k].hops.size(); ++i)
                {
                    st.by_src[phases[k].hops[i].src].push_back(i);
                    st.by_dst[phases[k].hops[i].dst].push_back(i);
                }
                plan->steps.push_back(std::move(st));
            }
        }
        return plan;
    }

    std::unique_ptr<sim::VertexProcess> CliqueEnumerate::spawn(const LocalView& view) const
    {
        if (view.model != sim::ModelKind::Clique)
            throw std::invalid_argument("clique enumeration runs under CLIQUE, not "
                                        + std::string(sim::to_string(view.model)));
        require_kt1(view, "clique enumeration");
        auto sorted = view.port_members;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw std::invalid_argument("clique enumeration needs distinct edges; vertex " + std::to_string(view.id)
                                        + " has a repeated edge");
        std::shared_ptr<const CliquePlan> plan;
        {
            std::lock_guard lock(mutex_);
            if (!plan_ || plan_->n != view.n || plan_->rank != view.rank || plan_->bandwidth != view.bandwidth.bits)
                plan_ = make_clique_plan(view.n, view.rank, view.bandwidth);
            plan = plan_;
        }
        return std::make_unique<CliqueProcess>(view, std::move(plan), filter_);
    }

    std::shared_ptr<const CliquePlan> CliqueEnumerate::plan() const
    {
        std::lock_guard lock(mutex_);
        return plan_;
    }

    CliqueProcess::CliqueProcess(const LocalView& view, std::shared_ptr<const CliquePlan> plan, TriangleClass filter)
        : view_(view), plan_(std::move(plan)), filter_(filter)
    {
    }

    Payload CliqueProcess::vector_for(const CliquePass& pass, VertexId u) const
    {
        const VertexId v = view_.id;
        std::vector<bool> bits(pass.vector_bits, false);
        for (const auto& members : view_.port_members)
        {
            if (members.size() != pass.rank || !contains_sorted(members, u))
                continue;
            // positions in [0, n) \ {v, u}
            std::vector<std::size_t> pos;
            for (VertexId x : members)
                if (x != v && x != u)
                    pos.push_back(x - (x > v ? 1 : 0) - (x > u ? 1 : 0));
            bits[colex_rank(pos)] = true;
        }
        Payload p;
        put_id(p, u, view_.n);
        for (bool b : bits)
            p.push_bit(b);
        return p;
    }

    void CliqueProcess::deliver(const CliquePass& pass, std::size_t demand, const Payload& p)
    {
        const VertexId v = pass.demands[demand].src;
        auto r = p.reader();
        const VertexId u = get_id(r, view_.n);
        if (u != pass.about[demand])
            throw std::logic_error("clique payload names the wrong pair");
        std::vector<VertexId> ground;
        ground.reserve(view_.n);
        for (VertexId x = 0; x < view_.n; ++x)
            if (x != v && x != u)
                ground.push_back(x);
        for (std::uint64_t i = 0; i < pass.vector_bits; ++i)
        {
            if (!r.bit())
                continue;
            VertexSet edge{v, u};
            for (std::size_t q : colex_unrank(i, pass.rank - 2))
                edge.push_back(ground[q]);
            std::sort(edge.begin(), edge.end());
            known_.insert(std::move(edge));
        }
    }

    void CliqueProcess::receive(const CliqueStep& st, const Inbox& in)
    {
        const CliquePass& pass = plan_->passes[st.pass];
        const auto& hops = pass.schedule.phases[st.phase].hops;
        std::map<VertexId, const Payload*> from = by_source(in);
        for (std::uint32_t i : st.by_dst[view_.id])
        {
            const sim::Hop& hop = hops[i];
            auto it = from.find(hop.src);
            if (it == from.end())
                throw std::logic_error("scheduled clique hop did not arrive");
            if (pass.demands[hop.demand].dst == view_.id)
                deliver(pass, hop.demand, *it->second);
            else
                held_[{st.pass, hop.demand}] = *it->second;
        }
    }

    void CliqueProcess::send(const CliqueStep& st, Outbox& out)
    {
        const CliquePass& pass = plan_->passes[st.pass];
        const auto& hops = pass.schedule.phases[st.phase].hops;
        for (std::uint32_t i : st.by_src[view_.id])
        {
            const sim::Hop& hop = hops[i];
            if (pass.demands[hop.demand].src == view_.id)
            {
                out.send(hop.dst, vector_for(pass, pass.about[hop.demand]));
                continue;
            }
            auto it = held_.find({st.pass, hop.demand});
            if (it == held_.end())
                throw std::logic_error("clique relay has nothing to forward");
            out.send(hop.dst, std::move(it->second));
            held_.erase(it);
        }
    }

    void CliqueProcess::step(const Inbox& in, Outbox& out)
    {
        if (step_ == 0)
        {
            for (const auto& pass : plan_->passes)
                for (std::size_t d = 0; d < pass.demands.size(); ++d)
                    if (pass.demands[d].src == view_.id && pass.demands[d].dst == view_.id)
                        deliver(pass, d, vector_for(pass, pass.about[d]));
        }
        else
        {
            receive(plan_->steps[step_ - 1], in);
        }
        if (step_ < plan_->steps.size())
        {
            send(plan_->steps[step_], out);
            ++step_;
            return;
        }
        enumerate();
        halted_ = true;
    }

    void CliqueProcess::enumerate()
    {
        edges_.assign(known_.begin(), known_.end());
        known_.clear();
        std::map<std::pair<VertexId, VertexId>, std::vector<std::uint32_t>> pairs;
        for (std::uint32_t i = 0; i < edges_.size(); ++i)
        {
            const auto& e = edges_[i];
            for (std::size_t a = 0; a < e.size(); ++a)
                for (std::size_t b = a + 1; b < e.size(); ++b)
                    pairs[{e[a], e[b]}].push_back(i);
        }
        static const std::vector<std::uint32_t> none;
        auto at = [&](VertexId a, VertexId b) -> const std::vector<std::uint32_t>& {
            auto it = pairs.find({a, b});
            return it == pairs.end() ? none : it->second;
        };

        const TriplePartition part(view_.n);
        for (std::size_t c : part.classes_of(view_.id))
        {
            auto d = part.digits(c);
            auto [x0, x1] = part.block_range(d[0]);
            auto [y0, y1] = part.block_range(d[1]);
            auto [z0, z1] = part.block_range(d[2]);
            for (VertexId x = x0; x < x1; ++x)
                for (VertexId y = std::max<VertexId>(y0, x + 1); y < y1; ++y)
                {
                    const auto& xy = at(x, y);
                    if (xy.empty())
                        continue;
                    for (VertexId z = std::max<VertexId>(z0, y + 1); z < z1; ++z)
                    {
                        const auto& yz = at(y, z);
                        const auto& xz = at(x, z);
                        for (std::uint32_t e0 : xy)
                            for (std::uint32_t e1 : yz)
                                for (std::uint32_t e2 : xz)
                                {
                                    std::array<VertexId, 3> vs{x, y, z};
                                    auto cls = classify_members(vs, {&edges_[e0], &edges_[e1], &edges_[e2]},
                                                                {e0 != e1, e1 != e2, e2 != e0});
                                    if (!satisfies(cls, filter_))
                                        continue;
                                    ReportedTriangle t;
                                    t.vertices = vs;
                                    t.edges = {KnownEdge{e0}, KnownEdge{e1}, KnownEdge{e2}};
                                    reported_.push_back(t);
                                }
                    }
                }
        }
    }

} // namespace hypersim::algo

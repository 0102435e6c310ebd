#include "hypersim/algo/density.hpp"

#include <limits>
#include <tuple>

namespace hypersim::algo
{
    namespace
    {
        std::uint64_t twice(std::uint64_t x)
        {
            return x > std::numeric_limits<std::uint64_t>::max() / 2 ? std::numeric_limits<std::uint64_t>::max() : 2 * x;
        }
    } // namespace

    std::unique_ptr<sim::VertexProcess> DensityEnumerate::spawn(const LocalView& view) const
    {
        require_kt1(view, "density enumeration");
        require_broadcast_model(view, "density enumeration");
        return std::make_unique<DensityProcess>(view, filter_);
    }

    DensityProcess::DensityProcess(const LocalView& view, TriangleClass filter)
        : view_(view), filter_(filter), rounds_(peel_round_budget(view.n)), ids_(view_),
          parallel_(view_, doubling_thresholds(parallel_peel_instances(
                               std::max(binomial(view_.n, std::max<std::size_t>(view_.rank, 2)), BigInt(1)))))
    {
    }

    void DensityProcess::step(const Inbox& in, Outbox& out)
    {
        const std::size_t s = step_++;
        const std::size_t r = rounds_;
        if (s == 0)
        {
            ids_.announce(out);
            return;
        }
        if (s == 1)
        {
            ids_.learn(in);
            neighbor_broadcast(view_, out, parallel_.state());
            return;
        }
        if (s <= r + 1)
        {
            const std::size_t i = s - 1;
            parallel_.update(in, i);
            if (i < r)
            {
                neighbor_broadcast(view_, out, parallel_.state());
                return;
            }
            for (std::size_t k = 0; k < parallel_.instances() && !alpha_; ++k)
                if (!parallel_.active(k))
                    alpha_ = instance_alpha(k);
            // no instance finished: twice the largest tried estimate
            beta_ = alpha_ ? *alpha_ : instance_alpha(parallel_.instances());
            Payload p;
            p.push_gamma(beta_);
            neighbor_broadcast(view_, out, p);
            return;
        }
        if (s <= 2 * r + 1)
        {
            const std::size_t j = s - r - 1;
            beta_ = flood_max(beta_, in);
            if (j < r)
            {
                Payload p;
                p.push_gamma(beta_);
                neighbor_broadcast(view_, out, p);
                return;
            }
            peel_.emplace(view_, std::vector<std::uint64_t>{twice(beta_)});
            neighbor_broadcast(view_, out, peel_->state());
            return;
        }
        if (s <= 3 * r + 1)
        {
            const std::size_t k = s - 2 * r - 1;
            peel_->update(in, k);
            if (k < r)
            {
                neighbor_broadcast(view_, out, peel_->state());
                return;
            }
            t_ = peel_->active(0) ? r + 1 : peel_->inactive_round(0);
            e_ = peel_->live_ports(0);
            Payload p;
            p.push_gamma(t_);
            p.push_gamma(e_.size());
            for (Port q : e_)
                put_edge(p, ids_.ids()[q], view_.port_members[q], view_.n);
            neighbor_broadcast(view_, out, p);
            return;
        }
        enumerate(in);
        halted_ = true;
    }

    void DensityProcess::enumerate(const Inbox& in)
    {
        KnownEdgeLister lister(view_, ids_.ids());
        std::map<VertexId, std::size_t> t;
        for (const auto& [src, payload] : by_source(in))
        {
            auto r = payload->reader();
            t[src] = r.read_gamma();
            const auto count = r.read_gamma();
            for (std::uint64_t i = 0; i < count; ++i)
            {
                auto [id, members] = get_edge(r, view_.n);
                lister.add(id, std::move(members));
            }
        }
        const auto mine = std::tuple(t_, view_.id);
        lister.list(filter_,
                    [&](VertexId a, VertexId b) {
                        return std::tuple(t.at(a), a) < mine && std::tuple(t.at(b), b) < mine;
                    },
                    reported_);
    }

} // namespace hypersim::algo

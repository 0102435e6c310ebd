#include "hypersim/algo/peel.hpp"

#include <limits>
#include <stdexcept>

namespace hypersim::algo
{
    std::uint64_t peel_threshold(const Rational& alpha)
    {
        if (alpha < 0)
            throw std::invalid_argument("alpha must be non-negative");
        BigInt twice = 2 * numerator(alpha) / denominator(alpha);
        if (twice > std::numeric_limits<std::uint64_t>::max())
            return std::numeric_limits<std::uint64_t>::max();
        return static_cast<std::uint64_t>(twice);
    }

    PeelCore::PeelCore(const LocalView& view, std::vector<std::uint64_t> thresholds)
        : view_(&view), thresholds_(std::move(thresholds)), inactive_round_(thresholds_.size(), 0),
          live_ports_(thresholds_.size())
    {
        require_kt1(view, "peeling");
    }

    Payload PeelCore::state() const
    {
        Payload p;
        for (std::size_t k = 0; k < instances(); ++k)
            p.push_bit(active(k));
        return p;
    }

    void PeelCore::update(const Inbox& in, std::size_t round)
    {
        const auto from = by_source(in);
        std::map<VertexId, Payload::Reader> states;
        for (const auto& [src, payload] : from)
            states.emplace(src, payload->reader());
        std::map<VertexId, std::vector<bool>> bits;
        for (auto& [src, r] : states)
        {
            auto& b = bits[src];
            for (std::size_t k = 0; k < instances(); ++k)
                b.push_back(r.bit());
        }
        for (std::size_t k = 0; k < instances(); ++k)
        {
            if (!active(k))
                continue;
            std::vector<Port> live;
            for (Port p = 0; p < view_->degree; ++p)
                for (VertexId w : view_->port_members[p])
                {
                    if (w == view_->id)
                        continue;
                    auto it = bits.find(w);
                    if (it == bits.end())
                        throw std::logic_error("peel state missing for a neighbour");
                    if (it->second[k])
                    {
                        live.push_back(p);
                        break;
                    }
                }
            if (live.size() <= thresholds_[k])
                inactive_round_[k] = round;
            live_ports_[k] = std::move(live);
        }
    }

    std::unique_ptr<sim::VertexProcess> PeelProgram::spawn(const LocalView& view) const
    {
        require_broadcast_model(view, "peel");
        if (per_vertex_.empty())
            return std::make_unique<PeelProcess>(view, peel_threshold(uniform_));
        if (per_vertex_.size() != view.n)
            throw std::invalid_argument("peel needs one alpha per vertex");
        return std::make_unique<PeelProcess>(view, peel_threshold(per_vertex_[view.id]));
    }

    PeelProcess::PeelProcess(const LocalView& view, std::uint64_t threshold)
        : view_(view), core_(view_, {threshold})
    {
    }

    void PeelProcess::step(const Inbox& in, Outbox& out)
    {
        const std::size_t rounds = peel_round_budget(view_.n);
        if (step_ > 0)
            core_.update(in, step_);
        if (step_ < rounds)
            neighbor_broadcast(view_, out, core_.state());
        else
            halted_ = true;
        ++step_;
    }

    PeelResult PeelProcess::result() const
    {
        return PeelResult{core_.active(0), core_.inactive_round(0), core_.live_ports(0)};
    }

    std::size_t parallel_peel_instances(const BigInt& m)
    {
        if (m < 1)
            throw std::invalid_argument("density bound M must be at least 1");
        return std::max<std::size_t>(1, ceil_log2(m));
    }

    std::uint64_t instance_alpha(std::size_t index)
    {
        return index + 1 < 64 ? std::uint64_t{1} << (index + 1) : std::numeric_limits<std::uint64_t>::max();
    }

    std::vector<std::uint64_t> doubling_thresholds(std::size_t k)
    {
        std::vector<std::uint64_t> out;
        for (std::size_t i = 1; i <= k; ++i)
            out.push_back(i + 1 < 64 ? std::uint64_t{1} << (i + 1) : std::numeric_limits<std::uint64_t>::max());
        return out;
    }

    std::unique_ptr<sim::VertexProcess> ParallelPeelProgram::spawn(const LocalView& view) const
    {
        require_broadcast_model(view, "parallel peel");
        const BigInt m = m_ ? *m_ : binomial(view.n, std::max<std::size_t>(view.rank, 2));
        return std::make_unique<ParallelPeelProcess>(view, parallel_peel_instances(std::max(m, BigInt(1))));
    }

    ParallelPeelProcess::ParallelPeelProcess(const LocalView& view, std::size_t instances)
        : view_(view), core_(view_, doubling_thresholds(instances))
    {
    }

    void ParallelPeelProcess::step(const Inbox& in, Outbox& out)
    {
        const std::size_t rounds = peel_round_budget(view_.n);
        if (step_ > 0)
            core_.update(in, step_);
        if (step_ < rounds)
            neighbor_broadcast(view_, out, core_.state());
        else
            halted_ = true;
        ++step_;
    }

    std::optional<std::uint64_t> ParallelPeelProcess::alpha() const
    {
        for (std::size_t k = 0; k < core_.instances(); ++k)
            if (!core_.active(k))
                return instance_alpha(k);
        return std::nullopt;
    }

    std::unique_ptr<sim::VertexProcess> FloodProgram::spawn(const LocalView& view) const
    {
        require_broadcast_model(view, "flood");
        if (values_.size() != view.n)
            throw std::invalid_argument("flood needs one value per vertex");
        return std::make_unique<FloodProcess>(view, values_[view.id]);
    }

    std::uint64_t flood_max(std::uint64_t value, const Inbox& in)
    {
        for (const auto& env : in.messages)
            value = std::max(value, env.payload.reader().read_gamma());
        return value;
    }

    void FloodProcess::step(const Inbox& in, Outbox& out)
    {
        const std::size_t rounds = peel_round_budget(view_.n);
        if (step_ > 0)
            value_ = flood_max(value_, in);
        if (step_ < rounds)
        {
            Payload p;
            p.push_gamma(value_);
            neighbor_broadcast(view_, out, p);
        }
        else
        {
            halted_ = true;
        }
        ++step_;
    }

} // namespace hypersim::algo

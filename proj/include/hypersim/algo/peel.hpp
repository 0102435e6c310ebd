#ifndef HYPERSIM_ALGO_PEEL_HPP
#define HYPERSIM_ALGO_PEEL_HPP

#include <optional>

#include "hypersim/algo/common.hpp"
#include "hypersim/core/numeric.hpp"

namespace hypersim::algo
{
    /// floor(2 alpha), saturating.
    std::uint64_t peel_threshold(const Rational& alpha);

    /// K peeling instances run side by side on one vertex. In update round i every active
    /// instance counts the incident edges holding another vertex that was active after round
    /// i - 1 and deactivates when the count is at most its threshold.
    class PeelCore
    {
    public:
        PeelCore(const LocalView& view, std::vector<std::uint64_t> thresholds);

        std::size_t instances() const { return thresholds_.size(); }
        /// One activity bit per instance.
        Payload state() const;
        void update(const Inbox& in, std::size_t round);

        bool active(std::size_t k) const { return inactive_round_[k] == 0; }
        /// Round in which instance k deactivated; 0 while active.
        std::size_t inactive_round(std::size_t k) const { return inactive_round_[k]; }
        /// Ports counted in the deactivating round, or in the latest round while active.
        const std::vector<Port>& live_ports(std::size_t k) const { return live_ports_[k]; }

    private:
        const LocalView* view_;
        std::vector<std::uint64_t> thresholds_;
        std::vector<std::size_t> inactive_round_;
        std::vector<std::vector<Port>> live_ports_;
    };

    struct PeelResult
    {
        bool active = true;
        std::size_t inactive_round = 0;
        std::vector<Port> live_ports;
    };

    /// Peel(alpha) for peel_round_budget(n) rounds with a 1-bit state broadcast per round.
    class PeelProgram : public sim::NodeProgram
    {
    public:
        explicit PeelProgram(Rational alpha) : uniform_(std::move(alpha)) {}
        /// Nonuniform thresholds floor(2 alpha_v).
        explicit PeelProgram(std::vector<Rational> per_vertex) : per_vertex_(std::move(per_vertex)) {}
        std::unique_ptr<sim::VertexProcess> spawn(const LocalView& view) const override;

    private:
        Rational uniform_;
        std::vector<Rational> per_vertex_;
    };

    class PeelProcess : public sim::VertexProcess
    {
    public:
        PeelProcess(const LocalView& view, std::uint64_t threshold);
        void step(const Inbox& in, Outbox& out) override;
        bool halted() const override { return halted_; }
        PeelResult result() const;

    private:
        LocalView view_;
        PeelCore core_;
        std::size_t step_ = 0;
        bool halted_ = false;
    };

    /// Number of instances ParallelPeel runs for a density bound M: max(1, ceil(log2 M)).
    std::size_t parallel_peel_instances(const BigInt& m);

    /// Thresholds 2 * 2^i of Peel(2^i), i = 1..k.
    std::vector<std::uint64_t> doubling_thresholds(std::size_t k);
    /// 2^i for instance index i - 1, saturating.
    std::uint64_t instance_alpha(std::size_t index);

    /// Peel(2^i) for i = 1..K at once; alpha_v = 2^i for the least i whose instance left v
    /// inactive. M defaults to C(n, r).
    class ParallelPeelProgram : public sim::NodeProgram
    {
    public:
        explicit ParallelPeelProgram(std::optional<BigInt> m = std::nullopt) : m_(std::move(m)) {}
        std::unique_ptr<sim::VertexProcess> spawn(const LocalView& view) const override;

    private:
        std::optional<BigInt> m_;
    };

    class ParallelPeelProcess : public sim::VertexProcess
    {
    public:
        ParallelPeelProcess(const LocalView& view, std::size_t instances);
        void step(const Inbox& in, Outbox& out) override;
        bool halted() const override { return halted_; }
        /// nullopt when every instance left the vertex active.
        std::optional<std::uint64_t> alpha() const;

    private:
        LocalView view_;
        PeelCore core_;
        std::size_t step_ = 0;
        bool halted_ = false;
    };

    /// Max-propagation: after peel_round_budget(n) rounds every vertex holds the largest input
    /// within that many hops.
    class FloodProgram : public sim::NodeProgram
    {
    public:
        explicit FloodProgram(std::vector<std::uint64_t> values) : values_(std::move(values)) {}
        std::unique_ptr<sim::VertexProcess> spawn(const LocalView& view) const override;

    private:
        std::vector<std::uint64_t> values_;
    };

    class FloodProcess : public sim::VertexProcess
    {
    public:
        FloodProcess(const LocalView& view, std::uint64_t value) : view_(view), value_(value) {}
        void step(const Inbox& in, Outbox& out) override;
        bool halted() const override { return halted_; }
        std::uint64_t value() const { return value_; }

    private:
        LocalView view_;
        std::uint64_t value_;
        std::size_t step_ = 0;
        bool halted_ = false;
    };

    /// One flood round on an inbox of gamma-coded values.
    std::uint64_t flood_max(std::uint64_t value, const Inbox& in);

} // namespace hypersim::algo

#endif // HYPERSIM_ALGO_PEEL_HPP

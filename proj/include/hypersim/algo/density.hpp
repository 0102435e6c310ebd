#ifndef HYPERSIM_ALGO_DENSITY_HPP
#define HYPERSIM_ALGO_DENSITY_HPP

#include <optional>

#include "hypersim/algo/bounded_degree.hpp"
#include "hypersim/algo/peel.hpp"

namespace hypersim::algo
{
    /// EB / PC enumeration in O(mu r + log n) rounds: edge ids, ParallelPeel with M = C(n, r),
    /// Flood of the estimates, a nonuniform Peel(beta_v) recording t_v and the edges E_v still
    /// holding another active vertex at t_v, then one exchange of (t_v, E_v). A triangle is
    /// output by its vertex with the largest (t_v, id). Vertices still active after the last
    /// peel round take t_v = R + 1. 3R + 3 steps for R = peel_round_budget(n).
    class DensityEnumerate : public sim::NodeProgram
    {
    public:
        explicit DensityEnumerate(TriangleClass filter = TriangleClass::Simple) : filter_(filter) {}
        std::unique_ptr<sim::VertexProcess> spawn(const LocalView& view) const override;

    private:
        TriangleClass filter_;
    };

    class DensityProcess : public sim::VertexProcess, public TriangleReporter
    {
    public:
        DensityProcess(const LocalView& view, TriangleClass filter);

        void step(const Inbox& in, Outbox& out) override;
        bool halted() const override { return halted_; }
        const std::vector<ReportedTriangle>& reported() const override { return reported_; }

        std::optional<std::uint64_t> alpha() const { return alpha_; }
        std::uint64_t beta() const { return beta_; }
        std::size_t peel_round() const { return t_; }
        const std::vector<Port>& peel_edges() const { return e_; }

    private:
        void enumerate(const Inbox& in);

        LocalView view_;
        TriangleClass filter_;
        std::size_t rounds_;
        EdgeIdExchange ids_;
        PeelCore parallel_;
        std::optional<PeelCore> peel_;
        std::optional<std::uint64_t> alpha_;
        std::uint64_t beta_ = 0;
        std::size_t t_ = 0;
        std::vector<Port> e_;
        std::size_t step_ = 0;
        bool halted_ = false;
        std::vector<ReportedTriangle> reported_;
    };

} // namespace hypersim::algo

#endif // HYPERSIM_ALGO_DENSITY_HPP

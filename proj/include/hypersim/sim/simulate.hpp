#ifndef HYPERSIM_SIM_SIMULATE_HPP
#define HYPERSIM_SIM_SIMULATE_HPP

#include <memory>
#include <optional>
#include <stdexcept>

#include "hypersim/sim/kernel.hpp"

namespace hypersim::sim
{
    class UnsupportedSimulation : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    struct SimulationParams
    {
        /// Maximum pair degree of the host hypergraph; required for EC -> PC.
        std::optional<std::size_t> max_pair_degree;
    };

    /// Supported (from, to): EC->EB, EC->EU, EB->EU, ES->EU, EP->EB, EP->EC, EP->EU, EC->PC.
    bool simulation_supported(ModelKind from, ModelKind to);

    /// Sub-steps per emulated step: r-1 for EC->EB, EC->EU and EB->EU; ceil(log2 r) for ES->EU
    /// (at least 1); 1 for EP->*; max pair degree for EC->PC (at least 1).
    std::size_t simulation_factor(ModelKind from, ModelKind to, std::size_t rank, const SimulationParams& params);

    /// Wraps `inner` (written for `from`) so that it runs under `to`. Every step of the inner
    /// program becomes simulation_factor() kernel steps and the inner program observes the
    /// inbox it would get under `from`, lost-arbitration signals included. Requires KT1.
    /// EP->EU assumes that no two pairs contend for an edge. A wrapped vertex stops relaying
    /// once its inner program halts.
    /// Throws UnsupportedSimulation for other pairs.
    std::unique_ptr<NodeProgram> cross_model_simulate(std::shared_ptr<const NodeProgram> inner, ModelKind from,
                                                      ModelKind to, SimulationParams params = {});

} // namespace hypersim::sim

#endif // HYPERSIM_SIM_SIMULATE_HPP

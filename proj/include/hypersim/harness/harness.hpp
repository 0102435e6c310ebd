#ifndef HYPERSIM_HARNESS_HARNESS_HPP
#define HYPERSIM_HARNESS_HARNESS_HPP

#include <functional>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hypersim/core/hypergraph.hpp"
#include "hypersim/core/triangle.hpp"
#include "hypersim/oracle/oracle.hpp"
#include "hypersim/sim/kernel.hpp"

namespace hypersim::harness
{
    enum ExitCode : int
    {
        kExitOk = 0,
        kExitConfig = 1,
        kExitModelViolation = 2,
        kExitBudget = 3,
        kExitVerification = 4,
    };

    /// Bad flags, illegal algorithm/model pairs, unreadable inputs.
    class ConfigError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    enum class Algorithm
    {
        Clique,
        BoundedDegree,
        Light,
        Peel,
        Density,
    };

    std::string_view to_string(Algorithm a);
    /// "clique", "bounded-degree", "light", "peel", "density".
    Algorithm parse_algorithm(std::string_view s);
    bool lists_triangles(Algorithm a);
    /// Induced for bounded-degree, Simple otherwise.
    TriangleClass default_class(Algorithm a);
    /// Throws ConfigError unless the model suits the algorithm: CLIQUE for clique, EB or PC
    /// for the others.
    void check_legal(Algorithm a, sim::ModelKind m);

    struct GeneratorSpec
    {
        std::string kind = "uniform"; ///< "uniform" or "sparse"
        std::size_t n = 0;
        std::size_t r = 3;
        double p = 0.5;
        double eps = 0.5;
        std::uint64_t seed = 0;
    };

    Hypergraph generate(const GeneratorSpec& spec);

    struct RunConfig
    {
        Algorithm algorithm = Algorithm::Density;
        std::optional<sim::ModelKind> model;
        std::optional<std::size_t> bandwidth;
        std::optional<TriangleClass> triangle_class;
        std::optional<GeneratorSpec> generator;
        std::optional<std::string> input;
        std::uint64_t max_rounds = 1'000'000;
        /// Light-vertex degree limit; unset means no limit.
        std::optional<std::size_t> delta;
        /// Peel density parameter; unset means the exact maximum density.
        std::optional<Rational> alpha;
        std::optional<std::string> round_log;

        sim::ModelKind effective_model() const;
        TriangleClass effective_class() const;
        /// key=value pairs describing the whole config, seed included.
        std::string describe() const;
    };

    /// Reads or generates the instance; ConfigError on bad specs.
    Hypergraph load_instance(const RunConfig& config);

    Rational parse_rational(const std::string& s);

    struct PeelRow
    {
        VertexId vertex = 0;
        std::size_t layer = 0;
        bool active = false;
    };

    struct RunOutcome
    {
        Hypergraph instance;
        sim::Metrics metrics;
        sim::Bandwidth bandwidth;
        /// Sorted (canonical triangle, owner); empty for peel.
        std::vector<std::pair<Triangle, VertexId>> listing;
        std::vector<PeelRow> peel;
    };

    /// Runs the configured algorithm. Throws ConfigError, sim::ModelViolation and
    /// sim::RoundBudgetExhausted.
    RunOutcome execute(const RunConfig& config);
    RunOutcome execute(const RunConfig& config, const Hypergraph& instance);

    /// "v0 v1 v2 | e0 e1 e2 | owner" per triangle, or "vertex layer state" per vertex for
    /// peel, after one comment line carrying the config.
    void write_listing(std::ostream& os, const RunConfig& config, const RunOutcome& outcome);
    /// Parses the triangle lines of a listing file, skipping comments.
    std::vector<std::pair<Triangle, VertexId>> read_listing(std::istream& is);

    std::string metrics_csv_header();
    std::string metrics_csv_row(const RunConfig& config, const RunOutcome& outcome);

    struct VerifyResult
    {
        bool ok = true;
        std::string detail;
    };

    /// Largest n the brute-force oracle is used for.
    inline constexpr std::size_t kOracleCap = 64;

    /// Listing against the brute-force oracle of the configured class, or peel layers
    /// against the centralized decomposition. ConfigError past kOracleCap.
    VerifyResult verify_outcome(const RunConfig& config, const RunOutcome& outcome);
    VerifyResult verify_listing(const Hypergraph& h, TriangleClass cls,
                                const std::vector<std::pair<Triangle, VertexId>>& listing);

    /// Sweep grid: the cross product of every list.
    struct SweepGrid
    {
        std::vector<Algorithm> algorithms;
        std::vector<sim::ModelKind> models;
        std::vector<std::size_t> ns;
        std::vector<std::size_t> rs;
        double p = 0.5;
        std::vector<std::uint64_t> seeds;
        std::optional<TriangleClass> triangle_class;
        std::optional<std::size_t> bandwidth;
        std::uint64_t max_rounds = 1'000'000;
        bool verify = true;
    };

    std::vector<RunConfig> expand(const SweepGrid& grid);

    std::string sweep_csv_header();

    struct SweepSummary
    {
        std::size_t runs = 0;
        /// Worst exit code seen, by the order config < violation < budget < verification.
        int exit_code = kExitOk;
    };

    /// Worker count from HYPERSIM_WORKERS, else the hardware concurrency (at least 1).
    std::size_t sweep_workers();

    /// Runs every config on up to `workers` threads; rows reach `out` in config order
    /// through a single writer.
    SweepSummary run_sweep(const std::vector<RunConfig>& configs, bool verify, std::size_t workers, std::ostream& out);

    /// One bounds CSV row per instance.
    int run_bounds(const std::vector<Hypergraph>& instances, std::ostream& out);

} // namespace hypersim::harness

#endif // HYPERSIM_HARNESS_HARNESS_HPP

#include "hypersim/harness/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

#include "hypersim/algo/bounded_degree.hpp"
#include "hypersim/algo/clique.hpp"
#include "hypersim/algo/density.hpp"
#include "hypersim/algo/peel.hpp"
#include "hypersim/core/generators.hpp"
#include "hypersim/core/hypergraph_io.hpp"
#include "hypersim/sim/round_log.hpp"

namespace hypersim::harness
{
    std::string_view to_string(Algorithm a)
    {
        switch (a)
        {
        case Algorithm::Clique:
            return "clique";
        case Algorithm::BoundedDegree:
            return "bounded-degree";
        case Algorithm::Light:
            return "light";
        case Algorithm::Peel:
            return "peel";
        case Algorithm::Density:
            return "density";
        }
        return "?";
    }

    Algorithm parse_algorithm(std::string_view s)
    {
        for (Algorithm a : {Algorithm::Clique, Algorithm::BoundedDegree, Algorithm::Light, Algorithm::Peel,
                            Algorithm::Density})
            if (to_string(a) == s)
                return a;
        throw ConfigError("unknown algorithm '" + std::string(s) + "'");
    }

    bool lists_triangles(Algorithm a) { return a != Algorithm::Peel; }

    TriangleClass default_class(Algorithm a)
    {
        return a == Algorithm::BoundedDegree ? TriangleClass::Induced : TriangleClass::Simple;
    }

    void check_legal(Algorithm a, sim::ModelKind m)
    {
        const bool ok = a == Algorithm::Clique
                            ? m == sim::ModelKind::Clique
                            : m == sim::ModelKind::EdgeBroadcast || m == sim::ModelKind::PrimalCongest;
        if (!ok)
            throw ConfigError(std::string(to_string(a)) + " cannot run under " + std::string(sim::to_string(m))
                              + (a == Algorithm::Clique ? " (needs CLIQUE)" : " (needs EB or PC)"));
    }

    Hypergraph generate(const GeneratorSpec& spec)
    {
        try
        {
            if (spec.kind == "uniform")
                return sample_uniform_random(spec.n, spec.r, spec.p, spec.seed);
            if (spec.kind == "sparse")
                return sample_sparse_planted(spec.n, spec.eps, spec.seed);
        }
        catch (const std::invalid_argument& e)
        {
            throw ConfigError(e.what());
        }
        throw ConfigError("unknown generator '" + spec.kind + "'");
    }

    sim::ModelKind RunConfig::effective_model() const
    {
        if (model)
            return *model;
        return algorithm == Algorithm::Clique ? sim::ModelKind::Clique : sim::ModelKind::EdgeBroadcast;
    }

    TriangleClass RunConfig::effective_class() const { return triangle_class.value_or(default_class(algorithm)); }

    namespace
    {
        std::string fmt(double x)
        {
            std::ostringstream os;
            os << std::setprecision(6) << x;
            return os.str();
        }
    } // namespace

    std::string RunConfig::describe() const
    {
        std::ostringstream os;
        os << "algorithm=" << to_string(algorithm) << " model=" << sim::to_string(effective_model())
           << " class=" << hypersim::to_string(effective_class());
        if (generator)
        {
            os << " gen=" << generator->kind << " n=" << generator->n;
            if (generator->kind == "uniform")
                os << " r=" << generator->r << " p=" << fmt(generator->p);
            else
                os << " eps=" << fmt(generator->eps);
            os << " seed=" << generator->seed;
        }
        if (input)
            os << " input=" << *input;
        os << " bandwidth=" << (bandwidth ? std::to_string(*bandwidth) : "default") << " max_rounds=" << max_rounds;
        if (delta)
            os << " delta=" << *delta;
        if (alpha)
            os << " alpha=" << hypersim::to_string(*alpha);
        return os.str();
    }

    Hypergraph load_instance(const RunConfig& config)
    {
        if (config.generator && config.input)
            throw ConfigError("give either an input file or a generator, not both");
        if (config.generator)
            return generate(*config.generator);
        if (!config.input)
            throw ConfigError("no input: pass --in or a generator");
        try
        {
            return read_hypergraph_file(*config.input);
        }
        catch (const std::exception& e)
        {
            throw ConfigError(std::string("cannot read ") + *config.input + ": " + e.what());
        }
    }

    Rational parse_rational(const std::string& s)
    {
        auto to_int = [&](const std::string& part) {
            if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
                throw ConfigError("not a non-negative rational: '" + s + "'");
            return BigInt(part);
        };
        auto slash = s.find('/');
        if (slash == std::string::npos)
            return Rational(to_int(s));
        BigInt den = to_int(s.substr(slash + 1));
        if (den == 0)
            throw ConfigError("zero denominator in '" + s + "'");
        return Rational(to_int(s.substr(0, slash)), den);
    }

    namespace
    {
        std::unique_ptr<sim::NodeProgram> make_program(const RunConfig& config, const Hypergraph& h)
        {
            const TriangleClass cls = config.effective_class();
            switch (config.algorithm)
            {
            case Algorithm::Clique:
                return std::make_unique<algo::CliqueEnumerate>(cls);
            case Algorithm::BoundedDegree:
                return std::make_unique<algo::BoundedDegreeEnumerate>(cls);
            case Algorithm::Light:
                return std::make_unique<algo::LightTriangleEnumerate>(config.delta, cls);
            case Algorithm::Density:
                return std::make_unique<algo::DensityEnumerate>(cls);
            case Algorithm::Peel: {
                if (config.alpha)
                    return std::make_unique<algo::PeelProgram>(*config.alpha);
                if (h.num_vertices() > kDefaultMaxDensityCap)
                    throw ConfigError("peel on more than " + std::to_string(kDefaultMaxDensityCap)
                                      + " vertices needs --alpha");
                return std::make_unique<algo::PeelProgram>(max_density_exact(h));
            }
            }
            throw ConfigError("unknown algorithm");
        }

        Rational peel_alpha(const RunConfig& config, const Hypergraph& h)
        {
            return config.alpha ? *config.alpha : max_density_exact(h);
        }
    } // namespace

    RunOutcome execute(const RunConfig& config) { return execute(config, load_instance(config)); }

    RunOutcome execute(const RunConfig& config, const Hypergraph& instance)
    {
        const sim::ModelKind model = config.effective_model();
        check_legal(config.algorithm, model);
        if (config.max_rounds == 0)
            throw ConfigError("max-rounds must be at least 1");

        RunOutcome outcome;
        outcome.instance = instance;
        const Hypergraph& h = outcome.instance;
        outcome.bandwidth =
            config.bandwidth ? sim::Bandwidth{*config.bandwidth} : sim::Bandwidth::default_for(h.num_vertices());
        try
        {
            outcome.bandwidth.check(h.num_vertices());
        }
        catch (const std::invalid_argument& e)
        {
            throw ConfigError(e.what());
        }

        std::unique_ptr<sim::NodeProgram> program;
        try
        {
            program = make_program(config, h);
        }
        catch (const std::invalid_argument& e)
        {
            throw ConfigError(e.what());
        }

        std::ofstream log;
        std::optional<sim::RoundLogWriter> writer;
        sim::RunOptions options;
        options.max_rounds = config.max_rounds;
        if (config.round_log)
        {
            log.open(*config.round_log);
            if (!log)
                throw ConfigError("cannot write " + *config.round_log);
            writer.emplace(log);
            options.round_log = &*writer;
        }

        sim::Execution ex;
        try
        {
            ex = sim::run(*program, h, model, outcome.bandwidth, options);
        }
        catch (const std::invalid_argument& e)
        {
            // spawn-time rejections (e.g. repeated edges for clique)
            throw ConfigError(e.what());
        }
        outcome.metrics = ex.metrics;
        if (lists_triangles(config.algorithm))
        {
            outcome.listing = algo::collect_listing(ex, h);
        }
        else
        {
            for (VertexId v = 0; v < h.num_vertices(); ++v)
            {
                auto r = ex.output<algo::PeelProcess>(v).result();
                outcome.peel.push_back({v, r.inactive_round, r.active});
            }
        }
        return outcome;
    }

    void write_listing(std::ostream& os, const RunConfig& config, const RunOutcome& outcome)
    {
        os << "# " << config.describe() << '\n';
        if (!lists_triangles(config.algorithm))
        {
            for (const auto& row : outcome.peel)
                os << row.vertex << ' ' << row.layer << ' ' << (row.active ? "active" : "inactive") << '\n';
            return;
        }
        for (const auto& [t, owner] : outcome.listing)
            os << format_triangle(t) << " | " << owner << '\n';
    }

    std::vector<std::pair<Triangle, VertexId>> read_listing(std::istream& is)
    {
        std::vector<std::pair<Triangle, VertexId>> out;
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(is, line))
        {
            ++lineno;
            if (line.empty() || line[0] == '#')
                continue;
            std::replace(line.begin(), line.end(), '|', ' ');
            std::istringstream ls(line);
            Triangle t;
            VertexId owner = 0;
            if (!(ls >> t.vertices[0] >> t.vertices[1] >> t.vertices[2] >> t.edges[0] >> t.edges[1] >> t.edges[2]
                  >> owner))
                throw ConfigError("malformed listing line " + std::to_string(lineno));
            std::string rest;
            if (ls >> rest)
                throw ConfigError("trailing data on listing line " + std::to_string(lineno));
            out.emplace_back(t, owner);
        }
        return out;
    }

    namespace
    {
        const char* kMetricsColumns = "algorithm,model,class,source,n,r,p,eps,seed,bandwidth,max_rounds,"
                                      "m,max_degree,rounds,steps,messages,total_bits,max_received_bits,"
                                      "max_sent_per_vertex,outputs";

        std::string source_columns(const RunConfig& c)
        {
            std::ostringstream os;
            if (c.generator)
            {
                const auto& g = *c.generator;
                os << g.kind << ',' << g.n << ',';
                if (g.kind == "uniform")
                    os << g.r << ',' << fmt(g.p) << ",,";
                else
                    os << ",," << fmt(g.eps) << ',';
                os << g.seed;
            }
            else
            {
                os << (c.input ? *c.input : "") << ",,,,,";
            }
            return os.str();
        }
    } // namespace

    std::string metrics_csv_header() { return std::string("# hypersim metrics v1\n") + kMetricsColumns; }

    std::string metrics_csv_row(const RunConfig& config, const RunOutcome& outcome)
    {
        const auto& m = outcome.metrics;
        const auto& h = outcome.instance;
        std::ostringstream os;
        std::uint64_t max_sent = 0;
        for (auto s : m.sent_per_vertex)
            max_sent = std::max(max_sent, s);
        const std::size_t outputs = lists_triangles(config.algorithm) ? outcome.listing.size() : outcome.peel.size();
        os << to_string(config.algorithm) << ',' << sim::to_string(config.effective_model()) << ','
           << hypersim::to_string(config.effective_class()) << ',' << source_columns(config) << ','
           << outcome.bandwidth.bits << ',' << config.max_rounds << ',' << h.num_edges() << ',' << h.max_degree()
           << ',' << m.rounds << ',' << m.steps << ',' << m.messages_sent << ',' << m.total_bits << ','
           << m.max_received_bits_per_vertex << ',' << max_sent << ',' << outputs;
        return os.str();
    }

    VerifyResult verify_listing(const Hypergraph& h, TriangleClass cls,
                                const std::vector<std::pair<Triangle, VertexId>>& listing)
    {
        if (h.num_vertices() > kOracleCap)
            throw ConfigError("oracle limited to " + std::to_string(kOracleCap) + " vertices");
        for (const auto& [t, owner] : listing)
        {
            if (owner >= h.num_vertices())
                return {false, "owner out of range: " + format_triangle(t)};
            for (int i = 0; i < 3; ++i)
                if (t.vertices[i] >= h.num_vertices() || t.edges[i] >= h.num_edges())
                    return {false, "triangle out of range: " + format_triangle(t)};
        }
        auto reference = oracle::enumerate_bruteforce(h, cls);
        if (auto mismatch = oracle::compare_listing(listing, reference))
            return {false, oracle::describe(*mismatch)};
        return {true, std::to_string(reference.size()) + " triangles"};
    }

    VerifyResult verify_outcome(const RunConfig& config, const RunOutcome& outcome)
    {
        const Hypergraph& h = outcome.instance;
        if (lists_triangles(config.algorithm))
            return verify_listing(h, config.effective_class(), outcome.listing);
        if (!config.alpha && h.num_vertices() > kDefaultMaxDensityCap)
            throw ConfigError("peel verification needs --alpha above " + std::to_string(kDefaultMaxDensityCap)
                              + " vertices");
        auto ref = layered_decomposition_reference(h, peel_alpha(config, h));
        for (const auto& row : outcome.peel)
        {
            if (row.layer != ref.layer[row.vertex] || row.active != (ref.layer[row.vertex] == 0))
                return {false, "vertex " + std::to_string(row.vertex) + ": layer " + std::to_string(row.layer)
                                   + ", reference " + std::to_string(ref.layer[row.vertex])};
        }
        return {true, ref.complete ? "all vertices peeled" : "peel incomplete, matches reference"};
    }

    std::vector<RunConfig> expand(const SweepGrid& grid)
    {
        std::vector<RunConfig> out;
        for (Algorithm a : grid.algorithms)
            for (sim::ModelKind m : grid.models)
                for (std::size_t n : grid.ns)
                    for (std::size_t r : grid.rs)
                        for (std::uint64_t seed : grid.seeds)
                        {
                            RunConfig c;
                            c.algorithm = a;
                            c.model = m;
                            c.triangle_class = grid.triangle_class;
                            c.bandwidth = grid.bandwidth;
                            c.max_rounds = grid.max_rounds;
                            GeneratorSpec g;
                            g.n = n;
                            g.r = r;
                            g.p = grid.p;
                            g.seed = seed;
                            c.generator = g;
                            out.push_back(c);
                        }
        return out;
    }

    std::string sweep_csv_header()
    {
        return std::string("# hypersim sweep v1\n") + kMetricsColumns
               + ",mu_exact,rounds_per_mu_r_log_n,rounds_per_delta,verified,exit_code,error";
    }

    std::size_t sweep_workers()
    {
        if (const char* env = std::getenv("HYPERSIM_WORKERS"))
        {
            char* end = nullptr;
            const long v = std::strtol(env, &end, 10);
            if (end == env || *end != '\0' || v < 1)
                throw ConfigError(std::string("HYPERSIM_WORKERS must be a positive integer, got '") + env + "'");
            return static_cast<std::size_t>(v);
        }
        return std::max(1U, std::thread::hardware_concurrency());
    }

    namespace
    {
        std::string csv_escape(std::string s)
        {
            std::replace(s.begin(), s.end(), ',', ';');
            std::replace(s.begin(), s.end(), '\n', ' ');
            return s;
        }

        std::pair<std::string, int> sweep_row(const RunConfig& config, bool verify)
        {
            std::string error;
            int code = kExitOk;
            try
            {
                RunOutcome outcome = execute(config);
                const Hypergraph& h = outcome.instance;
                std::ostringstream os;
                os << metrics_csv_row(config, outcome) << ',';
                std::optional<Rational> mu;
                if (h.num_vertices() <= kDefaultMaxDensityCap)
                    mu = max_density_exact(h);
                if (mu)
                    os << hypersim::to_string(*mu);
                os << ',';
                const double log_n = std::log2(static_cast<double>(std::max<std::size_t>(h.num_vertices(), 2)));
                if (mu)
                    os << fmt(static_cast<double>(outcome.metrics.rounds) / (to_double(*mu) * h.rank() + log_n));
                os << ',';
                if (h.max_degree() > 0)
                    os << fmt(static_cast<double>(outcome.metrics.rounds) / static_cast<double>(h.max_degree()));
                os << ',';
                if (verify)
                {
                    auto result = verify_outcome(config, outcome);
                    os << (result.ok ? "pass" : "fail");
                    if (!result.ok)
                    {
                        code = kExitVerification;
                        error = result.detail;
                    }
                }
                os << ',' << code << ',' << csv_escape(error);
                return {os.str(), code};
            }
            catch (const ConfigError& e)
            {
                code = kExitConfig;
                error = e.what();
            }
            catch (const sim::ModelViolation& e)
            {
                code = kExitModelViolation;
                error = e.what();
            }
            catch (const sim::RoundBudgetExhausted& e)
            {
                code = kExitBudget;
                error = e.what();
            }
            catch (const std::exception& e)
            {
                code = kExitConfig;
                error = e.what();
            }
            std::ostringstream os;
            os << to_string(config.algorithm) << ',' << sim::to_string(config.effective_model()) << ','
               << hypersim::to_string(config.effective_class()) << ',' << source_columns(config) << ",,"
               << config.max_rounds << ",,,,,,,,,,,,,," << code << ',' << csv_escape(error);
            return {os.str(), code};
        }
    } // namespace

    SweepSummary run_sweep(const std::vector<RunConfig>& configs, bool verify, std::size_t workers, std::ostream& out)
    {
        SweepSummary summary;
        summary.runs = configs.size();
        out << sweep_csv_header() << '\n';

        std::vector<std::optional<std::pair<std::string, int>>> rows(configs.size());
        std::mutex mutex;
        std::size_t next_write = 0;
        std::atomic<std::size_t> next{0};

        auto work = [&] {
            for (std::size_t i = next++; i < configs.size(); i = next++)
            {
                auto row = sweep_row(configs[i], verify);
                std::lock_guard lock(mutex);
                rows[i] = std::move(row);
                while (next_write < rows.size() && rows[next_write])
                {
                    out << rows[next_write]->first << '\n';
                    summary.exit_code = std::max(summary.exit_code, rows[next_write]->second);
                    rows[next_write].reset();
                    ++next_write;
                }
            }
        };

        const std::size_t threads = std::max<std::size_t>(1, std::min(workers, configs.size()));
        std::vector<std::thread> pool;
        for (std::size_t t = 1; t < threads; ++t)
            pool.emplace_back(work);
        work();
        for (auto& t : pool)
            t.join();
        out.flush();
        return summary;
    }

    int run_bounds(const std::vector<Hypergraph>& instances, std::ostream& out)
    {
        out << "# hypersim bounds v1\n" << oracle::bound_csv_header() << '\n';
        int code = kExitOk;
        for (const auto& h : instances)
        {
            auto report = oracle::check_edge_bounds(h);
            out << oracle::to_csv_row(report) << '\n';
            if (!report.all_pass())
                code = kExitVerification;
        }
        return code;
    }

} // namespace hypersim::harness

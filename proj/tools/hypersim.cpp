#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "hypersim/core/hypergraph_io.hpp"
#include "hypersim/harness/harness.hpp"
#include "hypersim/sim/model.hpp"

using namespace hypersim;
using namespace hypersim::harness;

namespace
{
    struct GenFlags
    {
        std::string kind = "uniform";
        std::optional<std::size_t> n;
        std::size_t r = 3;
        double p = 0.5;
        double eps = 0.5;
        std::uint64_t seed = 0;
        std::optional<std::string> input;

        void attach(CLI::App* app, bool with_input)
        {
            app->add_option("--gen", kind, "generator: uniform or sparse")->check(CLI::IsMember({"uniform", "sparse"}));
            app->add_option("--n", n, "vertex count");
            app->add_option("--r", r, "edge size (uniform)");
            app->add_option("--p", p, "edge probability (uniform)");
            app->add_option("--eps", eps, "sparsity parameter (sparse)");
            app->add_option("--seed", seed, "generator seed");
            if (with_input)
                app->add_option("--in", input, "hypergraph file");
        }

        std::optional<GeneratorSpec> spec() const
        {
            if (!n)
                return std::nullopt;
            GeneratorSpec g;
            g.kind = kind;
            g.n = *n;
            g.r = r;
            g.p = p;
            g.eps = eps;
            g.seed = seed;
            return g;
        }
    };

    struct RunFlags
    {
        GenFlags gen;
        std::string algorithm;
        std::optional<std::string> model;
        std::optional<std::string> cls;
        std::optional<std::size_t> bandwidth;
        std::uint64_t max_rounds = 1'000'000;
        std::optional<std::size_t> delta;
        std::optional<std::string> alpha;
        std::optional<std::string> out;
        std::optional<std::string> metrics;
        std::optional<std::string> round_log;

        void attach(CLI::App* app)
        {
            gen.attach(app, true);
            app->add_option("--algorithm", algorithm, "clique, bounded-degree, light, peel or density")->required();
            app->add_option("--model", model, "CLIQUE, PC, EC, EB, EU, ES or EP");
            app->add_option("--class", cls, "general, simple or induced");
            app->add_option("--bandwidth", bandwidth, "bits per message slot");
            app->add_option("--max-rounds", max_rounds, "round budget");
            app->add_option("--delta", delta, "light-vertex degree limit");
            app->add_option("--alpha", alpha, "peel density parameter, e.g. 3/2");
            app->add_option("--out", out, "listing file (default stdout)");
            app->add_option("--metrics", metrics, "metrics CSV file");
            app->add_option("--round-log", round_log, "JSONL frame log");
        }

        RunConfig config() const
        {
            RunConfig c;
            c.algorithm = parse_algorithm(algorithm);
            if (model)
            {
                auto m = sim::parse_model(*model);
                if (!m)
                    throw ConfigError("unknown model '" + *model + "'");
                c.model = m;
            }
            if (cls)
            {
                auto t = parse_triangle_class(*cls);
                if (!t)
                    throw ConfigError("unknown triangle class '" + *cls + "'");
                c.triangle_class = t;
            }
            c.bandwidth = bandwidth;
            c.max_rounds = max_rounds;
            c.delta = delta;
            if (alpha)
                c.alpha = parse_rational(*alpha);
            c.generator = gen.spec();
            c.input = gen.input;
            c.round_log = round_log;
            return c;
        }
    };

    std::ostream& open_out(const std::optional<std::string>& path, std::ofstream& file)
    {
        if (!path)
            return std::cout;
        file.open(*path);
        if (!file)
            throw ConfigError("cannot write " + *path);
        return file;
    }

    std::vector<std::string> split(const std::string& s)
    {
        std::vector<std::string> out;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty())
                out.push_back(item);
        return out;
    }

    int cmd_gen(const GenFlags& flags, const std::optional<std::string>& out)
    {
        auto spec = flags.spec();
        if (!spec)
            throw ConfigError("gen needs --n");
        Hypergraph h = generate(*spec);
        std::ofstream file;
        write_hypergraph(open_out(out, file), h);
        return kExitOk;
    }

    int cmd_run(const RunFlags& flags)
    {
        RunConfig config = flags.config();
        RunOutcome outcome = execute(config);
        std::ofstream file;
        write_listing(open_out(flags.out, file), config, outcome);
        std::ofstream metrics_file;
        std::ostream& metrics = flags.metrics ? open_out(flags.metrics, metrics_file)
                                              : (flags.out ? std::cout : std::cerr);
        metrics << metrics_csv_header() << '\n' << metrics_csv_row(config, outcome) << '\n';
        return kExitOk;
    }

    int cmd_verify(const RunFlags& flags, const std::optional<std::string>& listing_path)
    {
        RunConfig config = flags.config();
        VerifyResult result;
        if (listing_path)
        {
            if (!lists_triangles(config.algorithm))
                throw ConfigError("--listing checks triangle listings only");
            std::ifstream in(*listing_path);
            if (!in)
                throw ConfigError("cannot read " + *listing_path);
            result = verify_listing(load_instance(config), config.effective_class(), read_listing(in));
        }
        else
        {
            result = verify_outcome(config, execute(config));
        }
        std::cout << (result.ok ? "pass: " : "FAIL: ") << result.detail << '\n';
        return result.ok ? kExitOk : kExitVerification;
    }

    int cmd_bounds(const GenFlags& flags, std::size_t seeds, const std::optional<std::string>& out)
    {
        std::vector<Hypergraph> instances;
        if (flags.input)
        {
            RunConfig c;
            c.input = flags.input;
            instances.push_back(load_instance(c));
        }
        else
        {
            auto spec = flags.spec();
            if (!spec)
                throw ConfigError("bounds needs --in or --n");
            for (std::size_t i = 0; i < seeds; ++i)
            {
                spec->seed = flags.seed + i;
                instances.push_back(generate(*spec));
            }
        }
        std::ofstream file;
        return run_bounds(instances, open_out(out, file));
    }

    struct SweepFlags
    {
        std::string algorithms = "density";
        std::string models = "EB";
        std::string ns = "8";
        std::string rs = "3";
        double p = 0.5;
        std::size_t seeds = 1;
        std::uint64_t seed = 0;
        std::optional<std::string> cls;
        std::optional<std::size_t> bandwidth;
        std::uint64_t max_rounds = 1'000'000;
        bool no_verify = false;
        std::optional<std::string> out;

        void attach(CLI::App* app)
        {
            app->add_option("--algorithms", algorithms, "comma-separated algorithm names");
            app->add_option("--models", models, "comma-separated models");
            app->add_option("--n", ns, "comma-separated vertex counts");
            app->add_option("--r", rs, "comma-separated edge sizes");
            app->add_option("--p", p, "edge probability");
            app->add_option("--seeds", seeds, "seeds per cell");
            app->add_option("--seed", seed, "first seed");
            app->add_option("--class", cls, "triangle class for every run");
            app->add_option("--bandwidth", bandwidth, "bits per message slot");
            app->add_option("--max-rounds", max_rounds, "round budget per run");
            app->add_flag("--no-verify", no_verify, "skip the oracle check");
            app->add_option("--out", out, "CSV file (default stdout)");
        }

        SweepGrid grid() const
        {
            auto to_size = [](const std::string& s) {
                try
                {
                    std::size_t pos = 0;
                    auto v = std::stoull(s, &pos);
                    if (pos != s.size())
                        throw std::invalid_argument(s);
                    return static_cast<std::size_t>(v);
                }
                catch (const std::exception&)
                {
                    throw ConfigError("not a count: '" + s + "'");
                }
            };
            SweepGrid g;
            for (const auto& a : split(algorithms))
                g.algorithms.push_back(parse_algorithm(a));
            for (const auto& m : split(models))
            {
                auto k = sim::parse_model(m);
                if (!k)
                    throw ConfigError("unknown model '" + m + "'");
                g.models.push_back(*k);
            }
            for (const auto& n : split(ns))
                g.ns.push_back(to_size(n));
            for (const auto& r : split(rs))
                g.rs.push_back(to_size(r));
            g.p = p;
            for (std::size_t i = 0; i < seeds; ++i)
                g.seeds.push_back(seed + i);
            if (cls)
            {
                auto t = parse_triangle_class(*cls);
                if (!t)
                    throw ConfigError("unknown triangle class '" + *cls + "'");
                g.triangle_class = t;
            }
            g.bandwidth = bandwidth;
            g.max_rounds = max_rounds;
            g.verify = !no_verify;
            return g;
        }
    };

    int cmd_sweep(const SweepFlags& flags)
    {
        SweepGrid grid = flags.grid();
        auto configs = expand(grid);
        std::ofstream file;
        auto summary = run_sweep(configs, grid.verify, sweep_workers(), open_out(flags.out, file));
        std::cerr << summary.runs << " runs\n";
        return summary.exit_code;
    }
} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"hypersim: distributed triangle enumeration in hypergraphs"};
    app.require_subcommand(1);

    GenFlags gen_flags;
    std::optional<std::string> gen_out;
    auto* gen = app.add_subcommand("gen", "generate a hypergraph");
    gen_flags.attach(gen, false);
    gen->add_option("--out", gen_out, "output file (default stdout)");

    RunFlags run_flags;
    auto* run = app.add_subcommand("run", "run an algorithm");
    run_flags.attach(run);

    RunFlags verify_flags;
    std::optional<std::string> listing;
    auto* verify = app.add_subcommand("verify", "check an algorithm against the oracle");
    verify_flags.attach(verify);
    verify->add_option("--listing", listing, "check this listing file instead of running");

    GenFlags bounds_flags;
    std::size_t bounds_seeds = 1;
    std::optional<std::string> bounds_out;
    auto* bounds = app.add_subcommand("bounds", "check the triangle/edge inequalities");
    bounds_flags.attach(bounds, true);
    bounds->add_option("--seeds", bounds_seeds, "instances, seeds seed..seed+N-1");
    bounds->add_option("--out", bounds_out, "CSV file (default stdout)");

    SweepFlags sweep_flags;
    auto* sweep = app.add_subcommand("sweep", "run a parameter grid to CSV");
    sweep_flags.attach(sweep);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp& e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e)
    {
        app.exit(e);
        return kExitConfig;
    }

    try
    {
        if (gen->parsed())
            return cmd_gen(gen_flags, gen_out);
        if (run->parsed())
            return cmd_run(run_flags);
        if (verify->parsed())
            return cmd_verify(verify_flags, listing);
        if (bounds->parsed())
            return cmd_bounds(bounds_flags, bounds_seeds, bounds_out);
        if (sweep->parsed())
            return cmd_sweep(sweep_flags);
    }
    catch (const ConfigError& e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    }
    catch (const sim::ModelViolation& e)
    {
        std::cerr << "model violation: " << e.what() << '\n';
        return kExitModelViolation;
    }
    catch (const sim::RoundBudgetExhausted& e)
    {
        std::cerr << e.what() << '\n';
        return kExitBudget;
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    return kExitConfig;
}

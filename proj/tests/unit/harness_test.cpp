#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include "hypersim/harness/harness.hpp"

using namespace hypersim;
using namespace hypersim::harness;
using sim::ModelKind;

namespace
{
    std::size_t columns(const std::string& line) { return std::count(line.begin(), line.end(), ',') + 1; }

    std::vector<std::string> lines(const std::string& text)
    {
        std::vector<std::string> out;
        std::istringstream in(text);
        for (std::string l; std::getline(in, l);)
            out.push_back(l);
        return out;
    }

    RunConfig uniform_config(Algorithm a, std::size_t n, std::size_t r, std::uint64_t seed)
    {
        RunConfig c;
        c.algorithm = a;
        c.generator = GeneratorSpec{"uniform", n, r, 0.5, 0.5, seed};
        return c;
    }
} // namespace

TEST(Legality, ModelPerAlgorithm)
{
    EXPECT_NO_THROW(check_legal(Algorithm::Clique, ModelKind::Clique));
    EXPECT_THROW(check_legal(Algorithm::Clique, ModelKind::EdgeBroadcast), ConfigError);
    for (auto a : {Algorithm::BoundedDegree, Algorithm::Light, Algorithm::Peel, Algorithm::Density})
    {
        EXPECT_NO_THROW(check_legal(a, ModelKind::EdgeBroadcast));
        EXPECT_NO_THROW(check_legal(a, ModelKind::PrimalCongest));
        for (auto m : {ModelKind::Clique, ModelKind::EdgeClique, ModelKind::EdgeUnicast, ModelKind::EdgeSolocast,
                       ModelKind::EdgePaircast})
            EXPECT_THROW(check_legal(a, m), ConfigError);
    }
    auto c = uniform_config(Algorithm::Density, 8, 3, 1);
    c.model = ModelKind::EdgeUnicast;
    EXPECT_THROW(execute(c), ConfigError);
}

TEST(Parsing, NamesAndRationals)
{
    EXPECT_EQ(parse_algorithm("bounded-degree"), Algorithm::BoundedDegree);
    EXPECT_THROW(parse_algorithm("fast"), ConfigError);
    EXPECT_EQ(parse_rational("3/2"), Rational(3, 2));
    EXPECT_EQ(parse_rational("4"), Rational(4));
    EXPECT_THROW(parse_rational("1/0"), ConfigError);
    EXPECT_THROW(parse_rational("-1"), ConfigError);
    EXPECT_EQ(default_class(Algorithm::BoundedDegree), TriangleClass::Induced);
    EXPECT_EQ(default_class(Algorithm::Density), TriangleClass::Simple);
}

TEST(Instances, GeneratedAndBad)
{
    auto c = uniform_config(Algorithm::Density, 8, 3, 4);
    EXPECT_EQ(load_instance(c).edges(), load_instance(c).edges());
    c.generator->r = 9;
    EXPECT_THROW(load_instance(c), ConfigError);
    RunConfig missing;
    missing.input = "/nonexistent/h.txt";
    EXPECT_THROW(load_instance(missing), ConfigError);
    RunConfig none;
    EXPECT_THROW(load_instance(none), ConfigError);
}

TEST(Listing, RoundTripAndVerify)
{
    auto c = uniform_config(Algorithm::Density, 9, 3, 2);
    auto outcome = execute(c);
    ASSERT_FALSE(outcome.listing.empty());
    std::stringstream text;
    write_listing(text, c, outcome);
    EXPECT_EQ(text.str().rfind("# algorithm=density model=EB class=simple gen=uniform n=9", 0), 0u);
    auto back = read_listing(text);
    EXPECT_EQ(back, outcome.listing);
    EXPECT_TRUE(verify_listing(outcome.instance, TriangleClass::Simple, back).ok);
    EXPECT_TRUE(verify_outcome(c, outcome).ok);

    auto dup = back;
    dup.push_back(dup.front());
    auto bad = verify_listing(outcome.instance, TriangleClass::Simple, dup);
    EXPECT_FALSE(bad.ok);
    EXPECT_NE(bad.detail.find("duplicate"), std::string::npos) << bad.detail;

    auto dropped = back;
    dropped.pop_back();
    EXPECT_FALSE(verify_listing(outcome.instance, TriangleClass::Simple, dropped).ok);

    auto out_of_range = back;
    out_of_range.front().first.edges[0] = static_cast<EdgeIndex>(outcome.instance.num_edges());
    EXPECT_FALSE(verify_listing(outcome.instance, TriangleClass::Simple, out_of_range).ok);

    std::stringstream garbage("0 1 2 | 0 1\n");
    EXPECT_THROW(read_listing(garbage), std::exception);
}

TEST(Peel, DefaultsToExactDensity)
{
    auto c = uniform_config(Algorithm::Peel, 9, 3, 5);
    auto outcome = execute(c);
    ASSERT_EQ(outcome.peel.size(), 9u);
    for (const auto& row : outcome.peel)
        EXPECT_FALSE(row.active);
    EXPECT_TRUE(verify_outcome(c, outcome).ok);
    std::stringstream text;
    write_listing(text, c, outcome);
    EXPECT_EQ(lines(text.str()).size(), 10u);
}

TEST(Metrics, HeaderAndRowAgree)
{
    auto c = uniform_config(Algorithm::BoundedDegree, 8, 3, 1);
    auto outcome = execute(c);
    auto header = lines(metrics_csv_header());
    ASSERT_EQ(header.size(), 2u);
    EXPECT_EQ(header[0], "# hypersim metrics v1");
    EXPECT_EQ(columns(header[1]), columns(metrics_csv_row(c, outcome)));
    EXPECT_EQ(metrics_csv_row(c, outcome), metrics_csv_row(c, execute(c)));
}

TEST(Sweep, RowsInOrderWithMatchingColumns)
{
    SweepGrid grid;
    grid.algorithms = {Algorithm::Density, Algorithm::Clique};
    grid.models = {ModelKind::EdgeBroadcast, ModelKind::Clique};
    grid.ns = {7, 8};
    grid.rs = {3};
    grid.seeds = {0, 1};
    auto configs = expand(grid);
    ASSERT_EQ(configs.size(), 16u);

    std::stringstream one, many;
    auto s1 = run_sweep(configs, true, 1, one);
    auto s4 = run_sweep(configs, true, 4, many);
    EXPECT_EQ(one.str(), many.str());
    // the illegal pairs are config errors
    EXPECT_EQ(s1.exit_code, kExitConfig);
    EXPECT_EQ(s4.exit_code, kExitConfig);

    auto rows = lines(one.str());
    ASSERT_EQ(rows.size(), 2u + configs.size());
    EXPECT_EQ(rows[0], "# hypersim sweep v1");
    const std::size_t width = columns(rows[1]);
    std::size_t errors = 0, passes = 0;
    for (std::size_t i = 2; i < rows.size(); ++i)
    {
        EXPECT_EQ(columns(rows[i]), width) << rows[i];
        std::vector<std::string> fields;
        std::stringstream ss(rows[i]);
        for (std::string f; std::getline(ss, f, ',');)
            fields.push_back(f);
        fields.resize(width);
        errors += fields[width - 2] == "1";
        passes += fields[width - 3] == "pass" && fields[width - 2] == "0";
    }
    EXPECT_EQ(errors, 8u);
    EXPECT_EQ(passes, 8u);
}

TEST(Sweep, BudgetRowsReportExitThree)
{
    SweepGrid grid;
    grid.algorithms = {Algorithm::Density};
    grid.models = {ModelKind::EdgeBroadcast};
    grid.ns = {8};
    grid.rs = {3};
    grid.seeds = {0};
    grid.max_rounds = 2;
    std::stringstream out;
    EXPECT_EQ(run_sweep(expand(grid), false, 1, out).exit_code, kExitBudget);
}

TEST(Sweep, WorkersFromEnvironment)
{
    ::setenv("HYPERSIM_WORKERS", "3", 1);
    EXPECT_EQ(sweep_workers(), 3u);
    ::setenv("HYPERSIM_WORKERS", "zero", 1);
    EXPECT_THROW(sweep_workers(), ConfigError);
    ::unsetenv("HYPERSIM_WORKERS");
    EXPECT_GE(sweep_workers(), 1u);
}

TEST(Bounds, CsvAndExitCode)
{
    std::vector<Hypergraph> hs{Hypergraph::build(3, {{0, 1}, {1, 2}, {0, 2}})};
    std::stringstream out;
    EXPECT_EQ(run_bounds(hs, out), kExitOk);
    auto rows = lines(out.str());
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[2], "3,2,3,1,1,6,6,pass,pass,pass");
}

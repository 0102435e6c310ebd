#include <gtest/gtest.h>

#include "hypersim/core/generators.hpp"
#include "hypersim/oracle/oracle.hpp"

using namespace hypersim;
using namespace hypersim::oracle;

namespace
{
    // sum over triples of the three pair degrees multiplied
    BigInt count_by_pair_degrees(const Hypergraph& h)
    {
        BigInt total = 0;
        const auto n = static_cast<VertexId>(h.num_vertices());
        for (VertexId u = 0; u < n; ++u)
            for (VertexId v = u + 1; v < n; ++v)
                for (VertexId w = v + 1; w < n; ++w)
                    total += BigInt(h.pair_degree(u, v)) * h.pair_degree(v, w) * h.pair_degree(u, w);
        return total;
    }

    Hypergraph graph_triangle() { return Hypergraph::build(3, {{0, 1}, {1, 2}, {0, 2}}); }
} // namespace

TEST(Bruteforce, GraphTriangle)
{
    auto h = graph_triangle();
    for (auto cls : {TriangleClass::General, TriangleClass::Simple, TriangleClass::Induced})
    {
        auto s = enumerate_bruteforce(h, cls);
        ASSERT_EQ(s.size(), 1u);
        EXPECT_EQ(s.items()[0].vertices, (std::array<VertexId, 3>{0, 1, 2}));
        EXPECT_EQ(s.items()[0].edges, (std::array<EdgeIndex, 3>{0, 1, 2}));
    }
    EXPECT_EQ(count_bruteforce(h), BigInt(1));
}

TEST(Bruteforce, SingleEdgeGivesOnlyGeneral)
{
    auto h = Hypergraph::build(4, {{0, 1, 2, 3}});
    EXPECT_EQ(enumerate_bruteforce(h, TriangleClass::General).size(), 4u);
    EXPECT_TRUE(enumerate_bruteforce(h, TriangleClass::Simple).empty());
}

TEST(Bruteforce, CountsMatchPairDegreeProducts)
{
    for (std::uint64_t seed = 0; seed < 20; ++seed)
    {
        auto h = sample_uniform_random(8 + seed % 3, 3 + seed % 2, 0.4, seed);
        const BigInt expect = count_by_pair_degrees(h);
        EXPECT_EQ(count_bruteforce(h), expect);
        EXPECT_EQ(BigInt(enumerate_bruteforce(h, TriangleClass::General).size()), expect);
        EXPECT_EQ(count_via_trace(h), expect);
    }
}

TEST(Bruteforce, ClassFiltersAgreeWithClassify)
{
    for (std::uint64_t seed = 0; seed < 10; ++seed)
    {
        auto h = sample_uniform_random(8, 3, 0.5, seed);
        auto general = enumerate_bruteforce(h, TriangleClass::General);
        std::vector<Triangle> simple, induced;
        for (const auto& t : general)
        {
            auto c = classify_triangle(h, t);
            if (satisfies(c, TriangleClass::Simple))
                simple.push_back(t);
            if (c == TriangleClass::Induced)
                induced.push_back(t);
        }
        EXPECT_EQ(enumerate_bruteforce(h, TriangleClass::Simple).items(), simple);
        EXPECT_EQ(enumerate_bruteforce(h, TriangleClass::Induced).items(), induced);
    }
}

TEST(TriangleSetTest, CanonicalizesAndDedupes)
{
    TriangleSet s({{{2, 1, 0}, {1, 0, 2}}, {{0, 1, 2}, {0, 1, 2}}}, TriangleClass::General);
    ASSERT_EQ(s.size(), 1u);
    EXPECT_TRUE(s.contains({{1, 2, 0}, {1, 2, 0}}));
    EXPECT_FALSE(s.contains({{0, 1, 2}, {0, 1, 3}}));
}

TEST(Traces, GraphTriangle)
{
    auto tr = traces(graph_triangle());
    EXPECT_EQ(tr.tr2, BigInt(6));
    EXPECT_EQ(tr.tr3, BigInt(6));
}

TEST(Bounds, GraphTriangle)
{
    auto b = check_edge_bounds(graph_triangle());
    EXPECT_EQ(b.t, BigInt(1));
    EXPECT_EQ(b.mu, 1u);
    EXPECT_EQ(b.ineq1, Verdict::Pass);
    EXPECT_EQ(b.ineq2, Verdict::Pass);
    EXPECT_EQ(b.ineq3, Verdict::Pass);
    EXPECT_TRUE(b.all_pass());
    EXPECT_EQ(to_csv_row(b), "3,2,3,1,1,6,6,pass,pass,pass");
}

TEST(Bounds, MixedSizesSkipTheUniformCheck)
{
    auto b = check_edge_bounds(Hypergraph::build(5, {{0, 1}, {1, 2, 3}, {0, 3, 4}}));
    EXPECT_EQ(b.ineq3, Verdict::NotApplicable);
    EXPECT_TRUE(b.all_pass());
}

TEST(Bounds, CompleteThreeUniformOnSixBreaksTheThirdBound)
{
    std::vector<VertexSet> edges;
    for (VertexId a = 0; a < 6; ++a)
        for (VertexId b = a + 1; b < 6; ++b)
            for (VertexId c = b + 1; c < 6; ++c)
                edges.push_back({a, b, c});
    auto b = check_edge_bounds(Hypergraph::build(6, edges));
    // 20 triples, pair degree 4 everywhere
    EXPECT_EQ(b.t, BigInt(20 * 64));
    EXPECT_EQ(b.ineq1, Verdict::Pass);
    EXPECT_EQ(b.ineq2, Verdict::Pass);
    // 9 t^2 = 14745600 > 2 (20 * 3 * 3)^3 = 11664000
    EXPECT_EQ(b.ineq3, Verdict::Fail);
}

TEST(Bounds, RandomInstancesPass)
{
    for (std::uint64_t seed = 0; seed < 50; ++seed)
    {
        auto b = check_edge_bounds(sample_uniform_random(6 + seed % 5, 3, 0.5, seed));
        EXPECT_TRUE(b.all_pass()) << to_csv_row(b);
    }
}

TEST(ExpectedBounds, Values)
{
    auto b = expected_triangle_bounds(10, 3);
    EXPECT_EQ(b.lower, Rational(3150));
    EXPECT_EQ(b.upper, Rational(41160));
    auto g = expected_triangle_bounds(10, 2);
    EXPECT_EQ(g.lower, Rational(120, 8));
    EXPECT_EQ(g.upper, Rational(120));
    EXPECT_NO_THROW(expected_triangle_bounds(6, 3));
    EXPECT_THROW(expected_triangle_bounds(5, 3), std::invalid_argument);
    EXPECT_THROW(expected_triangle_bounds(10, 1), std::invalid_argument);
}

TEST(CompareListing, Kinds)
{
    auto h = Hypergraph::build(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {1, 3}});
    auto ref = enumerate_bruteforce(h, TriangleClass::Induced);
    ASSERT_EQ(ref.size(), 2u);
    std::vector<std::pair<Triangle, VertexId>> listing;
    for (const auto& t : ref)
        listing.emplace_back(t, t.vertices[0]);
    EXPECT_FALSE(compare_listing(listing, ref));

    auto missing = listing;
    missing.pop_back();
    auto m = compare_listing(missing, ref);
    ASSERT_TRUE(m);
    EXPECT_EQ(m->kind, Mismatch::Kind::Missing);

    auto dup = listing;
    dup.emplace_back(listing[0].first, 3);
    m = compare_listing(dup, ref);
    ASSERT_TRUE(m);
    EXPECT_EQ(m->kind, Mismatch::Kind::Duplicate);
    EXPECT_EQ(m->owners.size(), 2u);
    EXPECT_FALSE(describe(*m).empty());

    auto extra = listing;
    extra.push_back({{{0, 1, 3}, {0, 4, 3}}, 0});
    m = compare_listing(extra, ref);
    ASSERT_TRUE(m);
    EXPECT_EQ(m->kind, Mismatch::Kind::Extra);
}

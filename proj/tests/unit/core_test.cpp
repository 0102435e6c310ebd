#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "hypersim/core/generators.hpp"
#include "hypersim/core/hypergraph.hpp"
#include "hypersim/core/hypergraph_io.hpp"
#include "hypersim/core/numeric.hpp"
#include "hypersim/core/triangle.hpp"

using namespace hypersim;

namespace
{
    Hypergraph k4() { return Hypergraph::build(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}); }

    Hypergraph star(std::size_t leaves)
    {
        std::vector<VertexSet> edges;
        for (VertexId v = 1; v <= leaves; ++v)
            edges.push_back({0, v});
        return Hypergraph::build(leaves + 1, edges);
    }

    // density by hand: restrict, then sum sizes
    Rational density_by_restrict(const Hypergraph& h, const VertexSet& u)
    {
        auto r = restrict_to(h, u);
        return Rational(r.total_size(), u.size());
    }
} // namespace

TEST(Build, SingleEdge)
{
    auto h = Hypergraph::build(4, {{0, 1, 2, 3}});
    EXPECT_EQ(h.rank(), 4u);
    EXPECT_EQ(h.degree(0), 1u);
}

TEST(Build, ThreeOverlappingEdges)
{
    auto h = Hypergraph::build(9, {{0, 1, 3, 4}, {1, 2, 3, 5}, {0, 2, 3, 6}});
    EXPECT_EQ(h.rank(), 4u);
    EXPECT_EQ(h.degree(3), 3u);
}

TEST(Build, GraphTriangle)
{
    auto h = Hypergraph::build(3, {{0, 1}, {1, 2}, {0, 2}});
    EXPECT_EQ(h.rank(), 2u);
    EXPECT_EQ(h.max_degree(), 2u);
}

TEST(Build, Rejects)
{
    EXPECT_THROW(Hypergraph::build(3, {{0, 0, 1}}), std::invalid_argument);
    EXPECT_THROW(Hypergraph::build(3, {{0, 3}}), std::invalid_argument);
    EXPECT_THROW(Hypergraph::build(3, {{1}}), std::invalid_argument);
}

TEST(Build, PortsFollowEdgeOrder)
{
    auto h = Hypergraph::build(4, {{2, 3}, {0, 2}, {1, 2, 3}});
    ASSERT_EQ(h.degree(2), 3u);
    EXPECT_EQ(h.incident(2)[0], 0u);
    EXPECT_EQ(h.incident(2)[1], 1u);
    EXPECT_EQ(h.incident(2)[2], 2u);
    EXPECT_EQ(h.port_of(3, 2), 1u);
    EXPECT_THROW(h.port_of(0, 0), std::invalid_argument);
}

TEST(PairDegree, Examples)
{
    auto h = Hypergraph::build(4, {{0, 1, 2}, {0, 1, 3}});
    EXPECT_EQ(h.pair_degree(0, 1), 2u);
    EXPECT_EQ(h.pair_degree(2, 3), 0u);
    EXPECT_THROW(h.pair_degree(1, 1), std::invalid_argument);
}

TEST(PairDegree, MatchesRecount)
{
    auto h = sample_uniform_random(8, 3, 0.5, 42);
    for (VertexId u = 0; u < 8; ++u)
        for (VertexId v = u + 1; v < 8; ++v)
        {
            std::size_t count = 0;
            for (const auto& e : h.edges())
                count += std::count(e.begin(), e.end(), u) && std::count(e.begin(), e.end(), v);
            EXPECT_EQ(h.pair_degree(u, v), count);
        }
}

TEST(InducedMultigraph, SingleEdge)
{
    auto a = induced_multigraph(Hypergraph::build(4, {{0, 1, 2}}));
    for (VertexId u = 0; u < 4; ++u)
        for (VertexId v = 0; v < 4; ++v)
            EXPECT_EQ(a.at(u, v), (u != v && u < 3 && v < 3) ? 1u : 0u);
}

TEST(InducedMultigraph, UniformTotals)
{
    for (std::uint64_t seed = 0; seed < 10; ++seed)
    {
        auto h = sample_uniform_random(9, 4, 0.5, seed);
        auto a = induced_multigraph(h);
        EXPECT_EQ(a.total_multiplicity(), BigInt(h.num_edges() * 6));
        EXPECT_LE(a.max_entry(), binomial_u64(7, 2));
        EXPECT_EQ(a.max_entry(), h.max_pair_degree());
    }
}

TEST(Restrict, Examples)
{
    auto h = Hypergraph::build(4, {{0, 1, 2, 3}});
    EXPECT_EQ(restrict_to(h, {0, 1}).edges(), (std::vector<VertexSet>{{0, 1}}));
    EXPECT_EQ(restrict_to(h, {0}).num_edges(), 0u);
    EXPECT_THROW(restrict_to(h, {}), std::invalid_argument);
}

TEST(Restrict, KeepsDuplicates)
{
    auto h = Hypergraph::build(4, {{0, 1, 2}, {1, 2, 3}});
    EXPECT_EQ(restrict_to(h, {1, 2}).edges(), (std::vector<VertexSet>{{1, 2}, {1, 2}}));
}

TEST(Restrict, WholeVertexSetIsIdentity)
{
    auto h = sample_uniform_random(7, 3, 0.5, 5);
    VertexSet all{0, 1, 2, 3, 4, 5, 6};
    EXPECT_EQ(restrict_to(h, all).edges(), h.edges());
}

TEST(Density, Examples)
{
    EXPECT_EQ(density(k4(), {0, 1, 2, 3}), Rational(3));
    EXPECT_EQ(density(Hypergraph::build(3, {{0, 1, 2}}), {0, 1, 2}), Rational(1));
    EXPECT_THROW(density(k4(), {}), std::invalid_argument);
}

TEST(Density, MatchesRestrictSum)
{
    auto h = sample_uniform_random(10, 3, 0.5, 7);
    Rng rng(99);
    for (int trial = 0; trial < 50; ++trial)
    {
        VertexSet u;
        for (VertexId v = 0; v < 10; ++v)
            if (rng.bernoulli(0.5))
                u.push_back(v);
        if (u.empty())
            continue;
        EXPECT_EQ(density(h, u), density_by_restrict(h, u));
    }
}

TEST(MaxDensity, Examples)
{
    EXPECT_EQ(max_density_exact(k4()), Rational(3));
    EXPECT_EQ(max_density_exact(Hypergraph::build(5, {{0, 1}})), Rational(1));
    EXPECT_THROW(max_density_exact(Hypergraph::build(21, {{0, 1}})), std::invalid_argument);
}

TEST(MaxDensity, ExhaustiveScan)
{
    auto h = sample_uniform_random(9, 3, 0.5, 3);
    Rational best = 0;
    for (unsigned mask = 1; mask < (1u << 9); ++mask)
    {
        VertexSet u;
        for (VertexId v = 0; v < 9; ++v)
            if (mask >> v & 1u)
                u.push_back(v);
        best = std::max(best, density_by_restrict(h, u));
    }
    EXPECT_EQ(max_density_exact(h), best);
}

TEST(Classify, ReferenceTriangles)
{
    // vertex 0 unused
    auto h = Hypergraph::build(10, {{1, 2, 3, 4},
                                    {2, 3, 5, 6},
                                    {1, 3, 7, 8},
                                    {1, 2, 4, 5},
                                    {2, 3, 4, 6},
                                    {1, 3, 4, 7},
                                    {2, 3, 6, 7},
                                    {1, 3, 8, 9}});
    EXPECT_EQ(classify_triangle(h, {{1, 2, 3}, {0, 0, 0}}), TriangleClass::General);
    EXPECT_EQ(classify_triangle(h, {{1, 2, 3}, {0, 1, 2}}), TriangleClass::Simple);
    EXPECT_EQ(classify_triangle(h, {{1, 2, 3}, {3, 4, 5}}), TriangleClass::Induced);
    EXPECT_EQ(classify_triangle(h, {{1, 2, 3}, {3, 6, 7}}), TriangleClass::Induced);
    EXPECT_THROW(classify_triangle(h, {{1, 2, 9}, {0, 0, 0}}), std::invalid_argument);
}

TEST(Classify, InvariantUnderRotationAndReflection)
{
    auto h = sample_uniform_random(8, 3, 0.5, 11);
    auto pair_edges = [&](VertexId a, VertexId b) {
        std::vector<EdgeIndex> out;
        for (EdgeIndex e = 0; e < h.num_edges(); ++e)
            if (h.contains(e, a) && h.contains(e, b))
                out.push_back(e);
        return out;
    };
    int checked = 0;
    for (VertexId u = 0; u < 8 && checked < 200; ++u)
        for (VertexId v = u + 1; v < 8; ++v)
            for (VertexId w = v + 1; w < 8; ++w)
                for (EdgeIndex e0 : pair_edges(u, v))
                    for (EdgeIndex e1 : pair_edges(v, w))
                        for (EdgeIndex e2 : pair_edges(w, u))
                        {
                            Triangle t{{u, v, w}, {e0, e1, e2}};
                            Triangle rot{{v, w, u}, {e1, e2, e0}};
                            Triangle refl{{u, w, v}, {e2, e1, e0}};
                            auto c = classify_triangle(h, t);
                            EXPECT_EQ(classify_triangle(h, rot), c);
                            EXPECT_EQ(classify_triangle(h, refl), c);
                            EXPECT_EQ(canonicalize(rot), canonicalize(t));
                            EXPECT_EQ(canonicalize(refl), canonicalize(t));
                            ++checked;
                        }
    EXPECT_GT(checked, 0);
}

TEST(Canonicalize, MinFirstSmallerSecond)
{
    Triangle t{{5, 2, 7}, {3, 1, 4}};
    auto c = canonicalize(t);
    EXPECT_EQ(c.vertices, (std::array<VertexId, 3>{2, 5, 7}));
    // path 2 -e3- 5 -e4- 7 -e1- 2
    EXPECT_EQ(c.edges, (std::array<EdgeIndex, 3>{3, 4, 1}));
}

TEST(Generators, UniformExtremes)
{
    EXPECT_EQ(sample_uniform_random(8, 3, 0.0, 1).num_edges(), 0u);
    EXPECT_EQ(sample_uniform_random(8, 3, 1.0, 1).num_edges(), 56u);
    EXPECT_EQ(to_text(sample_uniform_random(7, 3, 1.0, 1)).substr(0, 5), "7 35\n");
    EXPECT_EQ(sample_uniform_random(7, 3, 1.0, 1).edges(), sample_uniform_random(7, 3, 1.0, 2).edges());
    EXPECT_THROW(sample_uniform_random(3, 4, 0.5, 1), std::invalid_argument);
    EXPECT_THROW(sample_uniform_random(5, 3, 1.5, 1), std::invalid_argument);
}

TEST(Generators, UniformDeterministicAndRecorded)
{
    auto a = sample_uniform_random(8, 3, 0.5, 42);
    auto b = sample_uniform_random(8, 3, 0.5, 42);
    EXPECT_EQ(a.edges(), b.edges());
    EXPECT_EQ(a.metadata().at("seed"), "42");
    EXPECT_EQ(a.metadata().at("n"), "8");
    EXPECT_TRUE(a.is_uniform());
}

TEST(Generators, UniformMeanWithinThreeSigma)
{
    // Binomial(56, 1/2): mean 28, variance 14; the mean of 1000 draws has sd sqrt(14/1000)
    double sum = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed)
        sum += static_cast<double>(sample_uniform_random(8, 3, 0.5, seed).num_edges());
    EXPECT_NEAR(sum / 1000.0, 28.0, 3.0 * std::sqrt(14.0 / 1000.0));
}

TEST(Generators, SparsePlanted)
{
    auto shape = sparse_planted_shape(256, 0.5);
    EXPECT_EQ(shape.rank, 4u);
    EXPECT_EQ(shape.core, 4u);
    for (std::uint64_t seed = 0; seed < 5; ++seed)
    {
        auto h = sample_sparse_planted(256, 0.5, seed);
        // connected: union-find over edges
        std::vector<VertexId> parent(256);
        std::iota(parent.begin(), parent.end(), 0);
        std::function<VertexId(VertexId)> find = [&](VertexId x) {
            return parent[x] == x ? x : parent[x] = find(parent[x]);
        };
        for (const auto& e : h.edges())
            for (VertexId v : e)
                parent[find(v)] = find(e.front());
        std::set<VertexId> roots;
        for (VertexId v = 0; v < 256; ++v)
            roots.insert(find(v));
        EXPECT_EQ(roots.size(), 1u);
        EXPECT_LE(h.total_size(), 4u * 256u + 4u + 256u);
    }
    EXPECT_THROW(sample_sparse_planted(10, 0.0, 1), std::invalid_argument);
}

TEST(EdgeIds, Scheme)
{
    auto h = Hypergraph::build(8, {{3, 5, 7}, {0, 1}, {0, 2}});
    auto ids = assign_edge_ids(h);
    EXPECT_EQ(ids[0], (EdgeId{3, 0}));
    EXPECT_EQ(ids[1], (EdgeId{0, 0}));
    EXPECT_EQ(ids[2], (EdgeId{0, 1}));
}

TEST(EdgeIds, InjectiveOnRandomInstances)
{
    for (std::uint64_t seed = 0; seed < 20; ++seed)
    {
        auto h = sample_uniform_random(9, 3, 0.5, seed);
        auto ids = assign_edge_ids(h);
        std::set<EdgeId> seen(ids.begin(), ids.end());
        EXPECT_EQ(seen.size(), ids.size());
        for (EdgeIndex e = 0; e < h.num_edges(); ++e)
            EXPECT_EQ(ids[e].owner, h.edge(e)[0]);
    }
}

TEST(Layers, Star)
{
    auto d = layered_decomposition_reference(star(5), Rational(2));
    EXPECT_TRUE(d.complete);
    EXPECT_EQ(d.layer[0], 2u);
    for (VertexId v = 1; v <= 5; ++v)
        EXPECT_EQ(d.layer[v], 1u);
    EXPECT_EQ(d.depth, 2u);
}

TEST(Layers, LowDegreeIsOneLayer)
{
    auto h = sample_uniform_random(8, 3, 0.3, 4);
    auto d = layered_decomposition_reference(h, Rational(h.max_degree(), 2));
    EXPECT_TRUE(d.complete);
    EXPECT_EQ(d.depth, 1u);
}

TEST(Layers, K4TooSmallAlpha)
{
    auto h = k4();
    auto d = layered_decomposition_reference(h, Rational(1));
    EXPECT_FALSE(d.complete);
    EXPECT_GT(max_density_exact(h), Rational(1, 2));
}

TEST(Layers, ExactMuAlwaysSucceeds)
{
    for (std::uint64_t seed = 0; seed < 20; ++seed)
    {
        auto h = sample_uniform_random(10, 3, 0.5, seed);
        auto mu = max_density_exact(h);
        auto d = layered_decomposition_reference(h, mu);
        ASSERT_TRUE(d.complete);
        EXPECT_LE(d.depth, peel_round_budget(10));
        // each v in layer i has <= 2 mu edges meeting another vertex of layers >= i
        for (VertexId v = 0; v < 10; ++v)
        {
            std::size_t live = 0;
            for (EdgeIndex e : h.incident(v))
                for (VertexId w : h.edge(e))
                    if (w != v && d.layer[w] >= d.layer[v])
                    {
                        ++live;
                        break;
                    }
            EXPECT_LE(Rational(live), 2 * mu);
        }
    }
}

TEST(Invariants, HandshakeAndRankDegree)
{
    for (std::uint64_t seed = 0; seed < 10; ++seed)
    {
        auto h = sample_uniform_random(9, 4, 0.4, seed);
        std::size_t degrees = 0;
        for (VertexId v = 0; v < 9; ++v)
        {
            degrees += h.degree(v);
            EXPECT_LE(h.degree(v), h.rank_degree(v) == 0 ? 0 : h.rank_degree(v));
            EXPECT_LE(h.rank_degree(v), h.rank() * h.degree(v));
            EXPECT_LE(h.neighbors(v).size(), h.rank_degree(v));
        }
        EXPECT_EQ(degrees, h.total_size());
        EXPECT_EQ(density(h, {0, 1, 2, 3, 4, 5, 6, 7, 8}), Rational(h.total_size(), 9));
    }
}

TEST(Io, RoundTripAndComments)
{
    auto h = sample_uniform_random(7, 3, 0.5, 8);
    std::stringstream ss(to_text(h));
    auto back = read_hypergraph(ss);
    EXPECT_EQ(back.edges(), h.edges());
    EXPECT_EQ(back.metadata(), h.metadata());

    std::stringstream unordered("# hand written\n4 2\n3 1 0\n2 1\n");
    auto g = read_hypergraph(unordered);
    EXPECT_EQ(g.edges(), (std::vector<VertexSet>{{0, 1, 3}, {1, 2}}));

    std::stringstream bad("3 2\n0 1\n");
    EXPECT_THROW(read_hypergraph(bad), FormatError);
}

TEST(Numeric, Helpers)
{
    EXPECT_EQ(binomial(10, 3), BigInt(120));
    EXPECT_EQ(binomial(3, 5), BigInt(0));
    EXPECT_EQ(ceil_log2(std::uint64_t{1}), 0u);
    EXPECT_EQ(ceil_log2(std::uint64_t{5}), 3u);
    EXPECT_EQ(ceil_log2(std::uint64_t{8}), 3u);
    EXPECT_EQ(peel_round_budget(1), 1u);
    EXPECT_EQ(peel_round_budget(12), 4u);
}

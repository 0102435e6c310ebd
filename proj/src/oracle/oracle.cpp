#include "hypersim/oracle/oracle.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace hypersim::oracle
{
    TriangleSet::TriangleSet(std::vector<Triangle> triangles, TriangleClass filter)
        : items_(std::move(triangles)), filter_(filter)
    {
        for (auto& t : items_)
            t = canonicalize(t);
        if (!std::is_sorted(items_.begin(), items_.end()))
            std::sort(items_.begin(), items_.end());
        items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
    }

    bool TriangleSet::contains(const Triangle& t) const
    {
        return std::binary_search(items_.begin(), items_.end(), canonicalize(t));
    }

    namespace
    {
        /// Edges containing both u and v, for u < v, in index order.
        class PairEdges
        {
        public:
            explicit PairEdges(const Hypergraph& h) : n_(h.num_vertices()), lists_(n_ * n_)
            {
                for (EdgeIndex e = 0; e < h.num_edges(); ++e)
                {
                    auto members = h.edge(e);
                    for (std::size_t i = 0; i < members.size(); ++i)
                        for (std::size_t j = i + 1; j < members.size(); ++j)
                            lists_[members[i] * n_ + members[j]].push_back(e);
                }
            }
            const std::vector<EdgeIndex>& at(VertexId u, VertexId v) const
            {
                return u < v ? lists_[u * n_ + v] : lists_[v * n_ + u];
            }

        private:
            std::size_t n_;
            std::vector<std::vector<EdgeIndex>> lists_;
        };
    } // namespace

    TriangleSet enumerate_bruteforce(const Hypergraph& h, TriangleClass filter)
    {
        const std::size_t n = h.num_vertices();
        PairEdges pairs(h);
        std::vector<Triangle> out;
        for (VertexId u = 0; u < n; ++u)
            for (VertexId v = u + 1; v < n; ++v)
            {
                const auto& uv = pairs.at(u, v);
                if (uv.empty())
                    continue;
                for (VertexId w = v + 1; w < n; ++w)
                {
                    const auto& vw = pairs.at(v, w);
                    const auto& wu = pairs.at(w, u);
                    for (EdgeIndex e0 : uv)
                        for (EdgeIndex e1 : vw)
                            for (EdgeIndex e2 : wu)
                            {
                                Triangle t{{u, v, w}, {e0, e1, e2}};
                                if (satisfies(classify_triangle(h, t), filter))
                                    out.push_back(t);
                            }
                }
            }
        return TriangleSet(std::move(out), filter);
    }

    BigInt count_bruteforce(const Hypergraph& h)
    {
        const std::size_t n = h.num_vertices();
        PairEdges pairs(h);
        BigInt total = 0;
        for (VertexId u = 0; u < n; ++u)
            for (VertexId v = u + 1; v < n; ++v)
                for (VertexId w = v + 1; w < n; ++w)
                    total += BigInt(pairs.at(u, v).size()) * pairs.at(v, w).size() * pairs.at(w, u).size();
        return total;
    }

    Traces traces(const Hypergraph& h)
    {
        const std::size_t n = h.num_vertices();
        const MultiplicityMatrix a = induced_multigraph(h);
        Traces tr;
        std::vector<BigInt> row(n);
        for (VertexId u = 0; u < n; ++u)
        {
            // row = (A^2)[u][*]
            for (VertexId w = 0; w < n; ++w)
            {
                BigInt s = 0;
                for (VertexId v = 0; v < n; ++v)
                    if (a.at(u, v) && a.at(v, w))
                        s += BigInt(a.at(u, v)) * a.at(v, w);
                row[w] = s;
            }
            tr.tr2 += row[u];
            for (VertexId w = 0; w < n; ++w)
                if (a.at(w, u))
                    tr.tr3 += row[w] * a.at(w, u);
        }
        return tr;
    }

    BigInt count_via_trace(const Hypergraph& h)
    {
        BigInt tr3 = traces(h).tr3;
        if (tr3 % 6 != 0)
            throw std::logic_error("tr(A^3) is not a multiple of 6");
        return tr3 / 6;
    }

    std::string_view to_string(Verdict v)
    {
        switch (v)
        {
        case Verdict::Pass:
            return "pass";
        case Verdict::Fail:
            return "fail";
        case Verdict::NotApplicable:
            return "NA";
        }
        return "?";
    }

    bool BoundReport::all_pass() const
    {
        return ineq1 != Verdict::Fail && ineq2 != Verdict::Fail && ineq3 != Verdict::Fail;
    }

    namespace
    {
        Verdict verdict(bool ok) { return ok ? Verdict::Pass : Verdict::Fail; }
    } // namespace

    BoundReport check_edge_bounds(const Hypergraph& h)
    {
        BoundReport b;
        b.n = h.num_vertices();
        b.r = h.rank();
        b.m = h.num_edges();
        const MultiplicityMatrix a = induced_multigraph(h);
        b.mu = a.max_entry();
        Traces tr = traces(h);
        b.tr2 = tr.tr2;
        b.tr3 = tr.tr3;
        if (tr.tr3 % 6 != 0)
            throw std::logic_error("tr(A^3) is not a multiple of 6");
        b.t = tr.tr3 / 6;

        const BigInt m_prime = a.total_multiplicity();
        const BigInt two_mu_m = 2 * BigInt(b.mu) * m_prime;
        b.ineq1 = verdict(b.tr2 <= two_mu_m);
        const BigInt six_t = 6 * b.t;
        b.ineq2 = verdict(six_t * six_t <= two_mu_m * two_mu_m * two_mu_m);

        if (b.m > 0 && h.is_uniform() && b.n >= 3)
        {
            const BigInt x = BigInt(b.m) * binomial(b.n - 3, b.r - 2) * binomial(b.r, 2);
            const BigInt three_t = 3 * b.t;
            b.ineq3 = verdict(three_t * three_t <= 2 * x * x * x);
        }
        else if (b.m == 0)
        {
            b.ineq3 = Verdict::Pass;
        }
        return b;
    }

    std::string bound_csv_header() { return "n,r,m,t,mu,trA2,trA3,ineq1,ineq2,ineq3"; }

    std::string to_csv_row(const BoundReport& b)
    {
        std::ostringstream os;
        os << b.n << ',' << b.r << ',' << b.m << ',' << b.t << ',' << b.mu << ',' << b.tr2 << ',' << b.tr3 << ','
           << to_string(b.ineq1) << ',' << to_string(b.ineq2) << ',' << to_string(b.ineq3);
        return os.str();
    }

    ExpectedTriangleBounds expected_triangle_bounds(std::size_t n, std::size_t r)
    {
        if (r < 2)
            throw std::invalid_argument("rank must be at least 2");
        if (n + 3 < 3 * r || n < 3)
            throw std::invalid_argument("n = " + std::to_string(n) + " is too small for rank " + std::to_string(r)
                                        + " (need n >= 3r - 3)");
        const BigInt triples = binomial(n, 3);
        const BigInt c1 = binomial(n - 3, r - 2);
        ExpectedTriangleBounds b;
        b.lower = Rational(triples * c1 * binomial(n - r - 1, r - 2) * binomial(n - 2 * r + 1, r - 2), 8);
        b.upper = Rational(triples * c1 * c1 * c1);
        return b;
    }

    std::string describe(const Mismatch& m)
    {
        std::string kind;
        switch (m.kind)
        {
        case Mismatch::Kind::Missing:
            kind = "missing";
            break;
        case Mismatch::Kind::Extra:
            kind = "extra";
            break;
        case Mismatch::Kind::Duplicate:
            kind = "duplicate";
            break;
        }
        std::string out = kind + ": " + format_triangle(m.triangle);
        if (!m.owners.empty())
        {
            out += " | owners";
            for (VertexId v : m.owners)
                out += " " + std::to_string(v);
        }
        return out;
    }

    std::optional<Mismatch> compare_listing(const std::vector<std::pair<Triangle, VertexId>>& listing,
                                            const TriangleSet& reference)
    {
        const bool ready = std::is_sorted(listing.begin(), listing.end())
                           && std::all_of(listing.begin(), listing.end(),
                                          [](const auto& x) { return canonicalize(x.first) == x.first; });
        std::vector<std::pair<Triangle, VertexId>> copy;
        if (!ready)
        {
            copy.reserve(listing.size());
            for (const auto& [t, owner] : listing)
                copy.emplace_back(canonicalize(t), owner);
            std::sort(copy.begin(), copy.end());
        }
        const auto& sorted = ready ? listing : copy;

        for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
            if (sorted[i].first == sorted[i + 1].first)
            {
                Mismatch m{Mismatch::Kind::Duplicate, sorted[i].first, {}};
                for (std::size_t j = i; j < sorted.size() && sorted[j].first == sorted[i].first; ++j)
                    m.owners.push_back(sorted[j].second);
                return m;
            }

        const auto& ref = reference.items();
        std::size_t i = 0;
        std::size_t j = 0;
        while (i < sorted.size() || j < ref.size())
        {
            if (j == ref.size() || (i < sorted.size() && sorted[i].first < ref[j]))
                return Mismatch{Mismatch::Kind::Extra, sorted[i].first, {sorted[i].second}};
            if (i == sorted.size() || ref[j] < sorted[i].first)
                return Mismatch{Mismatch::Kind::Missing, ref[j], {}};
            ++i;
            ++j;
        }
        return std::nullopt;
    }

} // namespace hypersim::oracle

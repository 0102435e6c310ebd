#ifndef HYPERSIM_ORACLE_ORACLE_HPP
#define HYPERSIM_ORACLE_ORACLE_HPP

#include <optional>
#include <string>
#include <vector>

#include "hypersim/core/hypergraph.hpp"
#include "hypersim/core/numeric.hpp"
#include "hypersim/core/triangle.hpp"

namespace hypersim::oracle
{
    /// Sorted, duplicate-free canonical triangles listed under one class filter.
    class TriangleSet
    {
    public:
        TriangleSet() = default;
        /// Canonicalizes, sorts and removes duplicates.
        TriangleSet(std::vector<Triangle> triangles, TriangleClass filter);

        TriangleClass filter() const { return filter_; }
        const std::vector<Triangle>& items() const { return items_; }
        std::size_t size() const { return items_.size(); }
        bool empty() const { return items_.empty(); }
        bool contains(const Triangle& t) const;
        auto begin() const { return items_.begin(); }
        auto end() const { return items_.end(); }

        bool operator==(const TriangleSet& other) const { return items_ == other.items_; }

    private:
        std::vector<Triangle> items_;
        TriangleClass filter_ = TriangleClass::General;
    };

    /// All triangles of class `filter` or stricter, by scanning every vertex triple and every
    /// choice of the three connecting edges.
    TriangleSet enumerate_bruteforce(const Hypergraph& h, TriangleClass filter);

    /// Number of General triangles, without listing them.
    BigInt count_bruteforce(const Hypergraph& h);

    /// tr(A^2) and tr(A^3) of the induced multigraph.
    struct Traces
    {
        BigInt tr2;
        BigInt tr3;
    };
    Traces traces(const Hypergraph& h);

    /// tr(A^3) / 6. Throws std::logic_error if the trace is not a multiple of 6.
    BigInt count_via_trace(const Hypergraph& h);

    enum class Verdict
    {
        Pass,
        Fail,
        NotApplicable,
    };
    std::string_view to_string(Verdict v);

    struct BoundReport
    {
        std::size_t n = 0;
        std::size_t r = 0;
        std::size_t m = 0;
        BigInt t;
        std::uint64_t mu = 0;
        BigInt tr2;
        BigInt tr3;
        /// tr(A^2) <= 2 mu m', m' = total multiplicity.
        Verdict ineq1 = Verdict::NotApplicable;
        /// (6t)^2 <= (2 mu m')^3.
        Verdict ineq2 = Verdict::NotApplicable;
        /// (3t)^2 <= 2 (m C(n-3, r-2) C(r, 2))^3; r-uniform inputs only.
        Verdict ineq3 = Verdict::NotApplicable;

        bool all_pass() const;
    };

    BoundReport check_edge_bounds(const Hypergraph& h);

    std::string bound_csv_header();
    std::string to_csv_row(const BoundReport& b);

    struct ExpectedTriangleBounds
    {
        Rational lower;
        Rational upper;
    };

    /// For H(n, r, 1/2):
    /// lower = C(n,3) C(n-3,r-2) C(n-r-1,r-2) C(n-2r+1,r-2) / 8, upper = C(n,3) C(n-3,r-2)^3.
    /// Throws std::invalid_argument unless r >= 2 and n >= 3r - 3 (all binomials positive).
    ExpectedTriangleBounds expected_triangle_bounds(std::size_t n, std::size_t r);

    /// First difference between a listing and the reference set.
    struct Mismatch
    {
        enum class Kind
        {
            Missing,   ///< in the reference, not listed
            Extra,     ///< listed, not in the reference
            Duplicate, ///< listed more than once
        };
        Kind kind = Kind::Missing;
        Triangle triangle;
        std::vector<VertexId> owners;
    };
    std::string describe(const Mismatch& m);

    /// A listing is (triangle, owner) pairs. Checks that every triangle is listed exactly once
    /// and that the listed set equals `reference`.
    std::optional<Mismatch> compare_listing(const std::vector<std::pair<Triangle, VertexId>>& listing,
                                            const TriangleSet& reference);

} // namespace hypersim::oracle

#endif // HYPERSIM_ORACLE_ORACLE_HPP

#ifndef HYPERSIM_CORE_TRIANGLE_HPP
#define HYPERSIM_CORE_TRIANGLE_HPP

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "hypersim/core/hypergraph.hpp"

namespace hypersim
{
    /// Closed path v0 e0 v1 e1 v2 e2 with e_i containing v_i and v_{i+1 mod 3}.
    struct Triangle
    {
        std::array<VertexId, 3> vertices{};
        std::array<EdgeIndex, 3> edges{};

        auto operator<=>(const Triangle&) const = default;
    };

    /// Ordered by strictness: Induced implies Simple implies General.
    enum class TriangleClass
    {
        General = 0,
        Simple = 1,
        Induced = 2,
    };

    std::string_view to_string(TriangleClass c);
    std::optional<TriangleClass> parse_triangle_class(std::string_view s);

    /// True when a triangle of class `actual` is listed under `filter`.
    inline bool satisfies(TriangleClass actual, TriangleClass filter)
    {
        return static_cast<int>(actual) >= static_cast<int>(filter);
    }

    /// Rotate so the minimal vertex comes first and keep the orientation whose second
    /// vertex is smaller. Requires pairwise-distinct vertices.
    Triangle canonicalize(const Triangle& t);

    /// Throws std::invalid_argument if the vertices are not pairwise distinct or an edge
    /// misses one of its two endpoints.
    TriangleClass classify_triangle(const Hypergraph& h, const Triangle& t);

    /// Class from membership data alone; `contains(i, v)` tells whether edge slot i holds v.
    template <class Contains>
    TriangleClass classify_by_membership(const std::array<VertexId, 3>& v,
                                         const std::array<bool, 3>& edges_distinct, Contains contains)
    {
        if (!(edges_distinct[0] && edges_distinct[1] && edges_distinct[2]))
            return TriangleClass::General;
        for (int i = 0; i < 3; ++i)
            if (contains((i + 1) % 3, v[i]))
                return TriangleClass::Simple;
        return TriangleClass::Induced;
    }

    std::string format_triangle(const Triangle& t);

} // namespace hypersim

#endif // HYPERSIM_CORE_TRIANGLE_HPP

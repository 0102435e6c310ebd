#include "hypersim/core/triangle.hpp"

#include <algorithm>
#include <stdexcept>

namespace hypersim
{
    std::string_view to_string(TriangleClass c)
    {
        switch (c)
        {
        case TriangleClass::General:
            return "general";
        case TriangleClass::Simple:
            return "simple";
        case TriangleClass::Induced:
            return "induced";
        }
        return "?";
    }

    std::optional<TriangleClass> parse_triangle_class(std::string_view s)
    {
        if (s == "general")
            return TriangleClass::General;
        if (s == "simple")
            return TriangleClass::Simple;
        if (s == "induced")
            return TriangleClass::Induced;
        return std::nullopt;
    }

    Triangle canonicalize(const Triangle& t)
    {
        const auto& v = t.vertices;
        const auto& e = t.edges;
        int start = 0;
        for (int i = 1; i < 3; ++i)
            if (v[i] < v[start])
                start = i;
        int next = (start + 1) % 3;
        int prev = (start + 2) % 3;

        Triangle out;
        if (v[next] < v[prev])
        {
            out.vertices = {v[start], v[next], v[prev]};
            out.edges = {e[start], e[next], e[prev]};
        }
        else
        {
            // Reversed walk: v_start e_prev v_prev e_next v_next e_start.
            out.vertices = {v[start], v[prev], v[next]};
            out.edges = {e[prev], e[next], e[start]};
        }
        return out;
    }

    TriangleClass classify_triangle(const Hypergraph& h, const Triangle& t)
    {
        const auto& v = t.vertices;
        const auto& e = t.edges;
        if (v[0] == v[1] || v[1] == v[2] || v[0] == v[2])
            throw std::invalid_argument("triangle vertices must be pairwise distinct");
        for (int i = 0; i < 3; ++i)
        {
            if (e[i] >= h.num_edges())
                throw std::invalid_argument("triangle edge out of range");
            if (!h.contains(e[i], v[i]) || !h.contains(e[i], v[(i + 1) % 3]))
                throw std::invalid_argument("triangle edge " + std::to_string(e[i])
                                            + " misses an endpoint");
        }
        std::array<bool, 3> distinct{e[0] != e[1], e[1] != e[2], e[2] != e[0]};
        return classify_by_membership(v, distinct, [&](int i, VertexId x) { return h.contains(e[i], x); });
    }

    std::string format_triangle(const Triangle& t)
    {
        return std::to_string(t.vertices[0]) + " " + std::to_string(t.vertices[1]) + " "
               + std::to_string(t.vertices[2]) + " | " + std::to_string(t.edges[0]) + " "
               + std::to_string(t.edges[1]) + " " + std::to_string(t.edges[2]);
    }

} // namespace hypersim

#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "topocode/graph.hpp"

namespace topocode {

/// Integer color assignment on all vertices and edges of a target graph.
struct TotalColoring {
    std::map<VertexId, Color> vertex_colors;
    std::map<Edge, Color> edge_colors;

    Color vertex(VertexId v) const {
        auto it = vertex_colors.find(v);
        if (it == vertex_colors.end())
            throw std::invalid_argument("uncolored vertex " + std::to_string(v));
        return it->second;
    }

    Color edge(VertexId u, VertexId v) const {
        auto it = edge_colors.find(make_edge(u, v));
        if (it == edge_colors.end())
            throw std::invalid_argument("uncolored edge " + std::to_string(u) + "-" +
                                        std::to_string(v));
        return it->second;
    }

    Color edge(const Edge& e) const { return edge(e.first, e.second); }

    void set_vertex(VertexId v, Color c) { vertex_colors[v] = c; }
    void set_edge(VertexId u, VertexId v, Color c) { edge_colors[make_edge(u, v)] = c; }
    void set_edge(const Edge& e, Color c) { edge_colors[e] = c; }

    /// Throws unless every vertex and edge of g carries a non-negative color.
    void require_total(const Graph& g) const {
        for (VertexId v : g.vertices())
            if (vertex(v) < 0) throw std::invalid_argument("negative vertex color");
        for (const Edge& e : g.edges())
            if (edge(e) < 0) throw std::invalid_argument("negative edge color");
    }

    bool operator==(const TotalColoring& o) const {
        return vertex_colors == o.vertex_colors && edge_colors == o.edge_colors;
    }
};

}  // namespace topocode

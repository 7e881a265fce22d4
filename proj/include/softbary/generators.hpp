#pragma once

#include "softbary/complex.hpp"
#include "softbary/graph.hpp"
#include "softbary/refine.hpp"

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace softbary {

inline Graph cycle_graph(std::size_t n)
{
    if (n < 3)
        throw std::invalid_argument("cycle: n must be at least 3");
    std::vector<Edge> e;
    for (Vertex i = 0; i < n; ++i)
        e.emplace_back(i, static_cast<Vertex>((i + 1) % n));
    return Graph::from_edges(n, e);
}

inline Graph complete_graph(std::size_t n)
{
    std::vector<Edge> e;
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j)
            e.emplace_back(i, j);
    return Graph::from_edges(n, e);
}

/// Edgeless graph; two vertices give the 0-sphere.
inline Graph empty_graph(std::size_t n) { return Graph(n); }

/// Hub 0 joined to the rim cycle 1..n.
inline Graph wheel_graph(std::size_t rim)
{
    if (rim < 3)
        throw std::invalid_argument("wheel: rim must be at least 3");
    std::vector<Edge> e;
    for (Vertex i = 0; i < rim; ++i) {
        e.emplace_back(0, i + 1);
        e.emplace_back(i + 1, static_cast<Vertex>((i + 1) % rim + 1));
    }
    return Graph::from_edges(rim + 1, e);
}

/// Join of q+1 copies of the 0-sphere: the boundary of the (q+1)-dimensional
/// cross-polytope, a q-sphere on 2(q+1) vertices.
inline Graph cross_polytope(std::size_t q)
{
    const std::size_t n = 2 * (q + 1);
    std::vector<Edge> e;
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j)
            if (i / 2 != j / 2)
                e.emplace_back(i, j);
    return Graph::from_edges(n, e);
}

inline Graph octahedron() { return cross_polytope(2); }

/// Top 0, upper ring 1..5, lower ring 6..10, bottom 11.
inline Graph icosahedron()
{
    std::vector<Edge> e;
    for (Vertex i = 0; i < 5; ++i) {
        const Vertex up = 1 + i, up_next = 1 + (i + 1) % 5;
        const Vertex lo = 6 + i, lo_next = 6 + (i + 1) % 5;
        e.emplace_back(0, up);
        e.emplace_back(up, up_next);
        e.emplace_back(lo, lo_next);
        e.emplace_back(lo, 11);
        e.emplace_back(up, lo);
        e.emplace_back(up_next, lo);
    }
    return Graph::from_edges(12, e);
}

/// Triangulated m x n torus: (i,j) joined to (i+1,j), (i,j+1), (i+1,j+1).
inline Graph flat_torus(std::size_t m, std::size_t n)
{
    if (m < 4 || n < 4)
        throw std::invalid_argument("flat-torus: both sides must be at least 4");
    auto id = [n](std::size_t i, std::size_t j) { return static_cast<Vertex>(i * n + j); };
    std::vector<Edge> e;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            e.emplace_back(id(i, j), id((i + 1) % m, j));
            e.emplace_back(id(i, j), id(i, (j + 1) % n));
            e.emplace_back(id(i, j), id((i + 1) % m, (j + 1) % n));
        }
    return Graph::from_edges(m * n, e);
}

/**
 * Projective plane as the antipodal quotient of the Barycentric refined
 * icosahedron (31 vertices). The 6-vertex quotient of the icosahedron
 * itself is not a 2-manifold in the unit-sphere sense.
 */
inline Graph projective_plane()
{
    const Graph ico = icosahedron();
    std::vector<Vertex> antipode(ico.order());
    for (Vertex v = 0; v < ico.order(); ++v) {
        auto d = bfs_distances(ico, v);
        antipode[v] = static_cast<Vertex>(std::max_element(d.begin(), d.end()) - d.begin());
    }
    const auto refined = barycentric(whitney_complex(ico));
    std::map<Simplex, Vertex> cls;
    std::vector<Vertex> class_of(refined.graph.order());
    for (Vertex v = 0; v < refined.graph.order(); ++v) {
        Simplex s = refined.provenance[v];
        Simplex t;
        for (Vertex x : s)
            t.push_back(antipode[x]);
        std::sort(t.begin(), t.end());
        const Simplex& rep = std::min(s, t);
        auto [it, inserted] = cls.emplace(rep, static_cast<Vertex>(cls.size()));
        class_of[v] = it->second;
    }
    std::vector<Edge> e;
    for (auto [u, v] : refined.graph.edges())
        e.emplace_back(class_of[u], class_of[v]);
    return Graph::from_edges(cls.size(), e);
}

/// Join of a list of graphs.
inline Graph join_all(const std::vector<Graph>& parts)
{
    if (parts.empty())
        return Graph();
    Graph g = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i)
        g = graph_join(g, parts[i]);
    return g;
}

/// C8 with an apex on the even and one on the odd vertices.
inline Graph grotzsch_example()
{
    std::vector<Edge> e;
    for (Vertex i = 0; i < 8; ++i) {
        e.emplace_back(i, (i + 1) % 8);
        e.emplace_back(i, i % 2 == 0 ? 8 : 9);
    }
    return Graph::from_edges(10, e);
}

/**
 * Named generator.
 *
 *   cycle n | complete n | empty n | wheel rim | octahedron | icosahedron
 *   cross-polytope q | flat-torus m n | projective-plane | grotzsch
 *   join-of a b ...   (each entry: 1 -> K1, 2 -> 0-sphere, n>=3 -> C_n)
 */
inline Graph generate(std::string_view name, const std::vector<long>& params = {})
{
    auto need = [&](std::size_t k) {
        if (params.size() != k)
            throw std::invalid_argument(std::string(name) + ": expected "
                                        + std::to_string(k) + " parameter(s)");
        for (long p : params)
            if (p < 0)
                throw std::invalid_argument(std::string(name) + ": negative parameter");
    };
    auto p = [&](std::size_t i) { return static_cast<std::size_t>(params[i]); };
    if (name == "cycle") {
        need(1);
        return cycle_graph(p(0));
    }
    if (name == "complete") {
        need(1);
        return complete_graph(p(0));
    }
    if (name == "empty") {
        need(1);
        return empty_graph(p(0));
    }
    if (name == "wheel") {
        need(1);
        return wheel_graph(p(0));
    }
    if (name == "octahedron") {
        need(0);
        return octahedron();
    }
    if (name == "icosahedron") {
        need(0);
        return icosahedron();
    }
    if (name == "cross-polytope") {
        need(1);
        return cross_polytope(p(0));
    }
    if (name == "flat-torus") {
        need(2);
        return flat_torus(p(0), p(1));
    }
    if (name == "projective-plane") {
        need(0);
        return projective_plane();
    }
    if (name == "grotzsch") {
        need(0);
        return grotzsch_example();
    }
    if (name == "join-of") {
        if (params.empty())
            throw std::invalid_argument("join-of: needs at least one part");
        std::vector<Graph> parts;
        for (long k : params) {
            if (k == 1)
                parts.push_back(complete_graph(1));
            else if (k == 2)
                parts.push_back(empty_graph(2));
            else if (k >= 3)
                parts.push_back(cycle_graph(static_cast<std::size_t>(k)));
            else
                throw std::invalid_argument("join-of: parts must be >= 1");
        }
        return join_all(parts);
    }
    throw std::invalid_argument("unknown generator: " + std::string(name));
}

/**
 * Generator expression: "name:p1,p2" terms joined by '+', for example
 * "icosahedron+cycle:4" or "flat-torus:4,4".
 */
inline Graph generate_expr(std::string_view expr)
{
    std::vector<Graph> parts;
    std::size_t start = 0;
    while (start <= expr.size()) {
        std::size_t plus = expr.find('+', start);
        std::string_view term = expr.substr(start, plus == std::string_view::npos
                                                       ? std::string_view::npos
                                                       : plus - start);
        std::size_t colon = term.find(':');
        std::string name(term.substr(0, colon));
        std::vector<long> params;
        if (colon != std::string_view::npos) {
            std::stringstream ss{std::string(term.substr(colon + 1))};
            std::string item;
            while (std::getline(ss, item, ','))
                params.push_back(std::stol(item));
        }
        parts.push_back(generate(name, params));
        if (plus == std::string_view::npos)
            break;
        start = plus + 1;
    }
    return join_all(parts);
}

} // namespace softbary

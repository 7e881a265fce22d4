#pragma once

#include "softbary/complex.hpp"
#include "softbary/graph.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace softbary {

/**
 * (q-1)-faces of a complex split by how many facets contain them:
 * one (boundary), two (interior), three or more (singular).
 */
struct FaceClassification {
    int dimension = -1;
    std::vector<Simplex> facets;
    std::vector<Simplex> boundary_faces;
    std::vector<Simplex> interior_faces;
    std::vector<Simplex> singular_faces;
    /// Faces of dimension q-1 not contained in any facet (non-pure input).
    std::vector<Simplex> free_faces;
};

inline FaceClassification classify_faces(const SimplicialComplex& c)
{
    FaceClassification fc;
    const int q = c.max_dimension();
    fc.dimension = q;
    if (q < 0)
        return fc;
    auto facets = c.simplices(q);
    fc.facets.assign(facets.begin(), facets.end());
    if (q == 0)
        return fc;
    std::vector<std::size_t> counts(c.count(q - 1), 0);
    for (const auto& f : facets)
        for_each_facet_of(f, [&](const Simplex& face) { ++counts[*c.index_of(face)]; });
    auto faces = c.simplices(q - 1);
    for (std::size_t i = 0; i < faces.size(); ++i) {
        switch (counts[i]) {
        case 0: fc.free_faces.push_back(faces[i]); break;
        case 1: fc.boundary_faces.push_back(faces[i]); break;
        case 2: fc.interior_faces.push_back(faces[i]); break;
        default: fc.singular_faces.push_back(faces[i]); break;
        }
    }
    return fc;
}

/// Graph whose vertices stand for simplices of some complex.
struct RefinedGraph {
    Graph graph;
    /// provenance[v] is the simplex vertex v was made from.
    std::vector<Simplex> provenance;
    bool non_pure_input = false;

    int origin_dimension(Vertex v) const { return dimension(provenance.at(v)); }
};

namespace detail {

/// Vertices for `kept` (sorted by dimension, then lexicographically) and
/// edges for strict containment among kept simplices.
inline RefinedGraph containment_graph(std::vector<Simplex> kept)
{
    std::stable_sort(kept.begin(), kept.end(), [](const Simplex& a, const Simplex& b) {
        if (a.size() != b.size())
            return a.size() < b.size();
        return a < b;
    });
    std::unordered_map<Simplex, Vertex, SimplexHash> pos;
    pos.reserve(kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i)
        pos.emplace(kept[i], static_cast<Vertex>(i));
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < kept.size(); ++i)
        for_each_proper_face(kept[i], [&](const Simplex& face) {
            if (auto it = pos.find(face); it != pos.end())
                edges.emplace_back(it->second, static_cast<Vertex>(i));
        });
    RefinedGraph r;
    r.graph = Graph::from_edges(kept.size(), edges);
    r.provenance = std::move(kept);
    return r;
}

} // namespace detail

/// Barycentric refinement: every simplex becomes a vertex, strict
/// containment becomes an edge.
inline RefinedGraph barycentric(const SimplicialComplex& c)
{
    std::vector<Simplex> all;
    all.reserve(c.total_count());
    for (int d = 0; d <= c.max_dimension(); ++d)
        for (const auto& s : c.simplices(d))
            all.push_back(s);
    RefinedGraph r = detail::containment_graph(std::move(all));
    r.non_pure_input = !c.is_pure();
    return r;
}

namespace detail {

/// A 1-dimensional complex whose vertices all sit in exactly two edges.
inline bool is_closed_curve(const FaceClassification& fc)
{
    return fc.dimension == 1 && fc.boundary_faces.empty() && fc.singular_faces.empty()
           && fc.free_faces.empty();
}

} // namespace detail

/**
 * Soft Whitney complex: all k-simplices with k != q-1 together with the
 * boundary (q-1)-faces.
 *
 * Closed curves (q = 1, no boundary) are fixed points of the soft
 * refinement, so for them the 0-simplices are returned and the edges are
 * left to the graph.
 */
inline std::vector<Simplex> soft_whitney(const SimplicialComplex& c)
{
    const int q = c.max_dimension();
    std::vector<Simplex> out;
    if (q < 0)
        return out;
    auto fc = classify_faces(c);
    if (detail::is_closed_curve(fc)) {
        for (const auto& s : c.simplices(0))
            out.push_back(s);
        return out;
    }
    for (int d = 0; d <= q; ++d) {
        if (d == q - 1)
            continue;
        for (const auto& s : c.simplices(d))
            out.push_back(s);
    }
    out.insert(out.end(), fc.boundary_faces.begin(), fc.boundary_faces.end());
    return out;
}

/**
 * Soft Barycentric refinement.
 *
 * Vertices are the soft Whitney simplices. Two are joined if one strictly
 * contains the other, or if both are facets meeting in an interior face.
 * Singular faces contribute neither vertices nor edges.
 */
inline RefinedGraph soft_barycentric(const SimplicialComplex& c)
{
    const int q = c.max_dimension();
    auto fc = classify_faces(c);
    if (detail::is_closed_curve(fc)) {
        RefinedGraph r;
        Graph g = c.skeleton_graph();
        for (const auto& s : c.simplices(0))
            r.provenance.push_back(s);
        std::vector<Label> labels(g.order());
        std::iota(labels.begin(), labels.end(), Label{0});
        g.set_labels(std::move(labels));
        r.graph = std::move(g);
        return r;
    }
    RefinedGraph r = detail::containment_graph(soft_whitney(c));
    r.non_pure_input = !c.is_pure();
    if (q < 1)
        return r;
    std::unordered_map<Simplex, Vertex, SimplexHash> facet_vertex;
    for (Vertex v = 0; v < r.graph.order(); ++v)
        if (r.origin_dimension(v) == q)
            facet_vertex.emplace(r.provenance[v], v);
    std::unordered_map<Simplex, std::vector<Vertex>, SimplexHash> cofaces;
    for (const auto& face : fc.interior_faces)
        cofaces.emplace(face, std::vector<Vertex>{});
    for (const auto& [facet, v] : facet_vertex)
        for_each_facet_of(facet, [&](const Simplex& face) {
            if (auto it = cofaces.find(face); it != cofaces.end())
                it->second.push_back(v);
        });
    for (const auto& face : fc.interior_faces) {
        const auto& pair = cofaces.at(face);
        r.graph.add_edge(pair[0], pair[1]);
    }
    return r;
}

/// Dual graph: facets as vertices, adjacent when they share a (q-1)-face.
inline Graph dual_graph(const SimplicialComplex& c, std::vector<Simplex>* facets_out = nullptr)
{
    const int q = c.max_dimension();
    auto facets = c.simplices(q);
    if (facets_out)
        facets_out->assign(facets.begin(), facets.end());
    if (q < 1)
        return Graph(facets.size());
    std::unordered_map<Simplex, std::vector<Vertex>, SimplexHash> cofaces;
    for (std::size_t i = 0; i < facets.size(); ++i)
        for_each_facet_of(facets[i], [&](const Simplex& face) {
            cofaces[face].push_back(static_cast<Vertex>(i));
        });
    std::vector<Edge> edges;
    for (const auto& [face, fs] : cofaces)
        for (std::size_t i = 0; i < fs.size(); ++i)
            for (std::size_t j = i + 1; j < fs.size(); ++j)
                edges.emplace_back(fs[i], fs[j]);
    return Graph::from_edges(facets.size(), edges);
}

/// Complex generated by the boundary faces.
inline SimplicialComplex boundary_complex(const SimplicialComplex& c)
{
    return SimplicialComplex::generated_by(classify_faces(c).boundary_faces);
}

/// Length of a cyclic graph, or nullopt if g is not a single cycle.
inline std::optional<std::size_t> cycle_length(const Graph& g)
{
    if (g.order() < 3 || !is_connected(g))
        return std::nullopt;
    for (Vertex v = 0; v < g.order(); ++v)
        if (g.degree(v) != 2)
            return std::nullopt;
    return g.order();
}

struct DualCircle {
    Graph circle;
    std::size_t length = 0;
};

/**
 * Dual circle of a (q-2)-simplex x: the intersection of the unit spheres of
 * the vertices of x, taken in the 1-skeleton of c. Throws
 * std::domain_error if it is not a cycle.
 */
inline DualCircle dual_circle(const SimplicialComplex& c, const Graph& skeleton,
                              const Simplex& x)
{
    const int q = c.max_dimension();
    if (dimension(x) != q - 2)
        throw std::invalid_argument("dual_circle: simplex must have dimension q-2");
    if (!c.contains(x))
        throw std::invalid_argument("dual_circle: simplex not in complex");
    std::unordered_map<Label, Vertex> pos;
    for (Vertex v = 0; v < skeleton.order(); ++v)
        pos.emplace(skeleton.label(v), v);
    std::vector<Vertex> common;
    bool first = true;
    for (Vertex xv : x) {
        auto nb = skeleton.neighbors(pos.at(static_cast<Label>(xv)));
        if (first) {
            common.assign(nb.begin(), nb.end());
            first = false;
            continue;
        }
        std::vector<Vertex> next;
        std::set_intersection(common.begin(), common.end(), nb.begin(), nb.end(),
                              std::back_inserter(next));
        common = std::move(next);
    }
    DualCircle d;
    d.circle = induced_subgraph(skeleton, common);
    auto len = cycle_length(d.circle);
    if (!len)
        throw std::domain_error("dual_circle: not a manifold at this simplex");
    d.length = *len;
    return d;
}

inline DualCircle dual_circle(const SimplicialComplex& c, const Simplex& x)
{
    return dual_circle(c, c.skeleton_graph(), x);
}

/// n-fold soft (or strong) refinement of the Whitney complex of g.
inline Graph refine_graph(const Graph& g, int steps, bool soft)
{
    Graph cur = g;
    for (int i = 0; i < steps; ++i) {
        auto c = whitney_complex(cur);
        cur = soft ? soft_barycentric(c).graph : barycentric(c).graph;
    }
    return cur;
}

/// Indices of facet-facet edges of a soft refinement.
inline std::vector<Edge> facet_facet_edges(const RefinedGraph& r)
{
    int q = -1;
    for (const auto& s : r.provenance)
        q = std::max(q, dimension(s));
    std::vector<Edge> out;
    for (auto [u, v] : r.graph.edges())
        if (r.origin_dimension(u) == q && r.origin_dimension(v) == q)
            out.emplace_back(u, v);
    return out;
}

} // namespace softbary

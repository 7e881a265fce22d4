#include "oracles.hpp"

#include "softbary/canonical.hpp"
#include "softbary/generators.hpp"
#include "softbary/manifold.hpp"
#include "softbary/refine.hpp"

#include <gtest/gtest.h>

#include <map>
#include <set>

using namespace softbary;

namespace {

FVector fv(std::initializer_list<std::size_t> v) { return FVector(v); }

FVector f_map(const std::vector<std::vector<std::size_t>>& m, const FVector& f)
{
    FVector out(m.size(), 0);
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < f.size(); ++j)
            out[i] += m[i][j] * f[j];
    return out;
}

Graph cube()
{
    std::vector<Edge> e;
    for (Vertex a = 0; a < 8; ++a)
        for (Vertex b = a + 1; b < 8; ++b)
            if (__builtin_popcount(a ^ b) == 1)
                e.emplace_back(a, b);
    return Graph::from_edges(8, e);
}

Graph phi(const Graph& g) { return soft_barycentric(whitney_complex(g)).graph; }
Graph psi(const Graph& g) { return barycentric(whitney_complex(g)).graph; }

std::size_t girth(const Graph& g)
{
    std::size_t best = SIZE_MAX;
    for (Vertex s = 0; s < g.order(); ++s) {
        std::vector<int> dist(g.order(), -1), parent(g.order(), -1);
        std::vector<Vertex> queue{s};
        dist[s] = 0;
        for (std::size_t h = 0; h < queue.size(); ++h) {
            Vertex v = queue[h];
            for (Vertex w : g.neighbors(v)) {
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    parent[w] = static_cast<int>(v);
                    queue.push_back(w);
                } else if (parent[v] != static_cast<int>(w)) {
                    best = std::min(best, static_cast<std::size_t>(dist[v] + dist[w] + 1));
                }
            }
        }
    }
    return best;
}

struct CorpusEntry {
    const char* name;
    Graph g;
};

std::vector<CorpusEntry> manifold_corpus()
{
    std::vector<CorpusEntry> c;
    c.push_back({"octahedron", octahedron()});
    c.push_back({"icosahedron", icosahedron()});
    c.push_back({"flat-torus 4 4", flat_torus(4, 4)});
    c.push_back({"projective-plane", projective_plane()});
    for (std::size_t rim = 4; rim <= 8; ++rim)
        c.push_back({"wheel", wheel_graph(rim)});
    c.push_back({"C4+C4", generate_expr("cycle:4+cycle:4")});
    c.push_back({"phi(K4)", phi(complete_graph(4))});
    return c;
}

} // namespace

TEST(Faces, Examples)
{
    auto k4 = classify_faces(whitney_complex(complete_graph(4)));
    EXPECT_EQ(k4.dimension, 3);
    EXPECT_EQ(k4.boundary_faces.size(), 4u);
    EXPECT_TRUE(k4.interior_faces.empty());

    auto oct = classify_faces(whitney_complex(octahedron()));
    EXPECT_EQ(oct.interior_faces.size(), 12u);
    EXPECT_TRUE(oct.boundary_faces.empty());

    auto book = classify_faces(
        SimplicialComplex::generated_by(std::vector<Simplex>{{0, 1, 2}, {0, 1, 3}, {0, 1, 4}}));
    ASSERT_EQ(book.singular_faces.size(), 1u);
    EXPECT_EQ(book.singular_faces[0], (Simplex{0, 1}));
    EXPECT_EQ(book.boundary_faces.size(), 6u);
}

TEST(Faces, Partition)
{
    std::mt19937 rng(41);
    for (int t = 0; t < 20; ++t) {
        auto c = whitney_complex(oracle::random_graph(9, 0.5, rng));
        auto fc = classify_faces(c);
        if (fc.dimension < 1)
            continue;
        EXPECT_EQ(fc.boundary_faces.size() + fc.interior_faces.size() + fc.singular_faces.size()
                      + fc.free_faces.size(),
                  c.count(fc.dimension - 1));
    }
}

TEST(Barycentric, Examples)
{
    EXPECT_TRUE(isomorphic(psi(cycle_graph(4)), cycle_graph(8)));
    EXPECT_EQ(whitney_complex(psi(complete_graph(3))).f_vector(), fv({7, 12, 6}));
    EXPECT_EQ(whitney_complex(psi(octahedron())).f_vector(), fv({26, 72, 48}));
}

TEST(Barycentric, ProvenanceIsInjective)
{
    auto r = barycentric(whitney_complex(icosahedron()));
    std::set<Simplex> seen(r.provenance.begin(), r.provenance.end());
    EXPECT_EQ(seen.size(), r.graph.order());
    for (Vertex v = 0; v < r.graph.order(); ++v)
        for (Vertex w : r.graph.neighbors(v)) {
            const auto& a = r.provenance[v];
            const auto& b = r.provenance[w];
            EXPECT_TRUE(is_face_of(a, b) || is_face_of(b, a));
        }
}

TEST(SoftWhitney, Examples)
{
    EXPECT_EQ(soft_whitney(whitney_complex(complete_graph(3))).size(), 7u);
    EXPECT_EQ(soft_whitney(whitney_complex(octahedron())).size(), 14u);
    auto c5 = soft_whitney(whitney_complex(cycle_graph(5)));
    EXPECT_EQ(c5.size(), 5u);
    for (const auto& s : c5)
        EXPECT_EQ(dimension(s), 0);
}

TEST(Soft, Examples)
{
    EXPECT_TRUE(phi(cycle_graph(5)) == cycle_graph(5));
    Graph ico = phi(icosahedron());
    EXPECT_EQ(whitney_complex(ico).f_vector(), fv({32, 90, 60}));
    EXPECT_EQ(classify(ico).kind, ManifoldKind::sphere);
    Graph k2 = phi(complete_graph(2));
    EXPECT_TRUE(isomorphic(k2, Graph::from_edges(3, std::vector<Edge>{{0, 1}, {1, 2}})));
    EXPECT_TRUE(isomorphic(k2, psi(complete_graph(2))));
}

TEST(Soft, ZeroDimensionalFixedPoint)
{
    EXPECT_TRUE(phi(empty_graph(3)) == empty_graph(3));
    EXPECT_TRUE(psi(empty_graph(3)) == empty_graph(3));
}

TEST(Soft, SingularFacesDropped)
{
    auto c =
        SimplicialComplex::generated_by(std::vector<Simplex>{{0, 1, 2}, {0, 1, 3}, {0, 1, 4}});
    auto r = soft_barycentric(c);
    for (const auto& s : r.provenance)
        EXPECT_NE(s, (Simplex{0, 1}));
    EXPECT_TRUE(facet_facet_edges(r).empty());
}

TEST(Soft, NonPureInputFlagged)
{
    auto c = SimplicialComplex::generated_by(std::vector<Simplex>{{0, 1, 2}, {2, 3}});
    EXPECT_TRUE(soft_barycentric(c).non_pure_input);
    EXPECT_FALSE(soft_barycentric(whitney_complex(octahedron())).non_pure_input);
}

TEST(EdgeRefine, Examples)
{
    EXPECT_TRUE(isomorphic(edge_refine(cycle_graph(4), 0, 1), cycle_graph(5)));
    Graph k3 = edge_refine(complete_graph(3), 0, 1);
    EXPECT_EQ(k3.order(), 4u);
    EXPECT_EQ(k3.size(), 5u);
    EXPECT_THROW(edge_refine(cycle_graph(4), 0, 2), std::invalid_argument);
}

TEST(EdgeRefine, FacetEdgesRecoverBarycentric)
{
    for (const Graph& g : {octahedron(), icosahedron(), flat_torus(4, 4), flat_torus(4, 5),
                           cross_polytope(2)}) {
        if (g.order() > 30)
            continue;
        auto r = soft_barycentric(whitney_complex(g));
        // edge ids stay valid: edge_refine only appends vertices
        Graph h = r.graph;
        for (auto [a, b] : facet_facet_edges(r))
            h = edge_refine(h, a, b);
        EXPECT_TRUE(isomorphic(h, psi(g)));
    }
}

TEST(Dual, Examples)
{
    Graph c = dual_graph(whitney_complex(octahedron()));
    EXPECT_TRUE(isomorphic(c, cube()));

    Graph d = dual_graph(whitney_complex(icosahedron()));
    EXPECT_EQ(d.order(), 20u);
    for (Vertex v = 0; v < d.order(); ++v)
        EXPECT_EQ(d.degree(v), 3u);
    EXPECT_EQ(girth(d), 5u);

    Graph t = dual_graph(whitney_complex(flat_torus(4, 4)));
    EXPECT_EQ(t.order(), 32u);
    for (Vertex v = 0; v < t.order(); ++v)
        EXPECT_EQ(t.degree(v), 3u);
    EXPECT_EQ(clique_counts(t).size(), 2u);
}

TEST(Dual, SurfaceDualsAreCubicAndTriangleFree)
{
    for (const Graph& g : {octahedron(), icosahedron(), flat_torus(5, 6), projective_plane(),
                           phi(icosahedron())}) {
        Graph d = dual_graph(whitney_complex(g));
        for (Vertex v = 0; v < d.order(); ++v)
            EXPECT_EQ(d.degree(v), 3u);
        EXPECT_GE(girth(d), 4u);
    }
}

TEST(DualCircle, Examples)
{
    auto oct = whitney_complex(octahedron());
    for (const auto& v : oct.simplices(0))
        EXPECT_TRUE(isomorphic(dual_circle(oct, v).circle, cycle_graph(4)));
    auto ico = whitney_complex(icosahedron());
    for (const auto& v : ico.simplices(0))
        EXPECT_EQ(dual_circle(ico, v).length, 5u);
    auto s3 = whitney_complex(generate_expr("cycle:4+cycle:4"));
    for (const auto& e : s3.simplices(1))
        EXPECT_EQ(dual_circle(s3, e).length, 4u);
}

TEST(DualCircle, Errors)
{
    auto w = whitney_complex(wheel_graph(5));
    // rim vertex: the intersection is a path, not a cycle
    EXPECT_THROW(dual_circle(w, Simplex{1}), std::domain_error);
    EXPECT_THROW(dual_circle(w, Simplex{0, 1}), std::invalid_argument);
}

TEST(FVectorLaws, StrongOnRandomTwoComplexes)
{
    const std::vector<std::vector<std::size_t>> a{{1, 1, 1}, {0, 2, 6}, {0, 0, 6}};
    std::mt19937 rng(43);
    int done = 0;
    while (done < 20) {
        Graph g = oracle::random_graph(8, 0.45, rng);
        auto c = whitney_complex(g);
        if (c.max_dimension() != 2)
            continue;
        ++done;
        EXPECT_EQ(whitney_complex(psi(g)).f_vector(), f_map(a, c.f_vector()));
    }
}

TEST(FVectorLaws, SoftOnClosedSurfaces)
{
    const std::vector<std::vector<std::size_t>> b{{1, 0, 1}, {0, 1, 3}, {0, 0, 3}};
    for (const Graph& g : {octahedron(), icosahedron(), flat_torus(4, 4), projective_plane(),
                           phi(octahedron())}) {
        auto c = whitney_complex(g);
        ASSERT_TRUE(classify_faces(c).boundary_faces.empty());
        EXPECT_EQ(whitney_complex(phi(g)).f_vector(), f_map(b, c.f_vector()));
    }
}

TEST(Preservation, SoftRefinementPreservesManifolds)
{
    for (const auto& [name, g] : manifold_corpus()) {
        auto before = classify(g);
        auto after = classify(phi(g));
        ASSERT_TRUE(before.is_manifold()) << name;
        EXPECT_EQ(after.dimension, before.dimension) << name;
        EXPECT_EQ(after.is_closed_manifold(), before.is_closed_manifold()) << name;
        EXPECT_EQ(after.is_bounded_manifold(), before.is_bounded_manifold()) << name;
        EXPECT_EQ(after.kind, before.kind) << name;
    }
}

TEST(Preservation, BoundaryCommutes)
{
    std::vector<Graph> inputs;
    for (std::size_t rim = 4; rim <= 8; ++rim)
        inputs.push_back(wheel_graph(rim));
    inputs.push_back(complete_graph(4));
    inputs.push_back(phi(complete_graph(4)));
    for (const Graph& g : inputs) {
        auto c = whitney_complex(g);
        Graph lhs = boundary_complex(whitney_complex(phi(g))).skeleton_graph();
        Graph rhs = barycentric(boundary_complex(c)).graph;
        EXPECT_TRUE(isomorphic(lhs, rhs)) << g.order();
    }
}

TEST(Euler, InvariantUnderBothRefinements)
{
    for (const auto& [name, g] : manifold_corpus()) {
        const long long chi = euler_characteristic(g);
        EXPECT_EQ(euler_characteristic(phi(g)), chi) << name;
        EXPECT_EQ(euler_characteristic(psi(g)), chi) << name;
    }
    std::mt19937 rng(47);
    for (int t = 0; t < 10; ++t) {
        Graph g = oracle::random_graph(8, 0.5, rng);
        EXPECT_EQ(euler_characteristic(psi(g)), euler_characteristic(g));
    }
}

TEST(Tori, SoftRefinementKeepsFlatTori)
{
    Graph t = phi(flat_torus(4, 4));
    auto r = classify(t);
    EXPECT_EQ(r.kind, ManifoldKind::manifold);
    EXPECT_EQ(r.dimension, 2);
    EXPECT_EQ(euler_characteristic(t), 0);
    for (Vertex v = 0; v < t.order(); ++v)
        EXPECT_EQ(t.degree(v), 6u);
}

TEST(DualCircle, InvariantUnderSoftRefinement)
{
    for (const Graph& g : {generate_expr("cycle:4+cycle:4"), phi(complete_graph(4))}) {
        auto c = whitney_complex(g);
        auto fc = classify_faces(c);
        std::set<Simplex> boundary_edges;
        for (const auto& f : fc.boundary_faces)
            for_each_facet_of(f, [&](const Simplex& e) { boundary_edges.insert(e); });
        auto r = soft_barycentric(c);
        auto rc = whitney_complex(r.graph);
        const Graph skel = rc.skeleton_graph();
        std::map<Simplex, Vertex> vertex_of;
        for (Vertex v = 0; v < r.graph.order(); ++v)
            vertex_of[r.provenance[v]] = v;
        std::size_t checked = 0;
        for (const auto& e : c.simplices(1)) {
            if (boundary_edges.count(e))
                continue;
            const std::size_t len = dual_circle(c, e).length;
            const Vertex mid = vertex_of.at(e);
            for (Vertex end : {e[0], e[1]}) {
                Simplex half{std::min(mid, vertex_of.at(Simplex{end})),
                             std::max(mid, vertex_of.at(Simplex{end}))};
                EXPECT_EQ(dual_circle(rc, skel, half).length, len);
            }
            ++checked;
        }
        EXPECT_GT(checked, 0u);
    }
}

#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace softbary {

using Vertex = std::uint32_t;
using Label = std::int64_t;
using Edge = std::pair<Vertex, Vertex>;

/**
 * Finite simple graph on the dense vertex set 0..n-1.
 *
 * Adjacency lists are kept sorted so neighbour queries and induced
 * subgraphs are deterministic. Each vertex carries an opaque integer label
 * used only for serialization (defaults to its index).
 */
class Graph {
public:
    Graph() = default;

    explicit Graph(std::size_t n)
        : adj_(n)
        , labels_(n)
    {
        std::iota(labels_.begin(), labels_.end(), Label{0});
    }

    /// Builds a graph from an edge list; duplicate edges are merged.
    static Graph from_edges(std::size_t n, std::span<const Edge> edges)
    {
        Graph g(n);
        for (auto [u, v] : edges) {
            g.check_pair(u, v);
            g.adj_[u].push_back(v);
            g.adj_[v].push_back(u);
        }
        for (auto& nb : g.adj_) {
            std::sort(nb.begin(), nb.end());
            nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
        }
        g.recount();
        return g;
    }

    static Graph from_edges(std::size_t n, const std::vector<Edge>& edges)
    {
        return from_edges(n, std::span<const Edge>(edges));
    }

    std::size_t order() const { return adj_.size(); }
    std::size_t size() const { return edge_count_; }
    bool empty() const { return adj_.empty(); }

    /// Returns false if the edge was already present.
    bool add_edge(Vertex u, Vertex v)
    {
        check_pair(u, v);
        auto& a = adj_[u];
        auto it = std::lower_bound(a.begin(), a.end(), v);
        if (it != a.end() && *it == v)
            return false;
        a.insert(it, v);
        auto& b = adj_[v];
        b.insert(std::lower_bound(b.begin(), b.end(), u), u);
        ++edge_count_;
        return true;
    }

    bool remove_edge(Vertex u, Vertex v)
    {
        if (!has_edge(u, v))
            return false;
        auto& a = adj_[u];
        a.erase(std::lower_bound(a.begin(), a.end(), v));
        auto& b = adj_[v];
        b.erase(std::lower_bound(b.begin(), b.end(), u));
        --edge_count_;
        return true;
    }

    Vertex add_vertex(Label label)
    {
        adj_.emplace_back();
        labels_.push_back(label);
        return static_cast<Vertex>(adj_.size() - 1);
    }

    bool has_edge(Vertex u, Vertex v) const
    {
        if (u >= order() || v >= order())
            return false;
        const auto& a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
        Vertex w = adj_[u].size() <= adj_[v].size() ? v : u;
        return std::binary_search(a.begin(), a.end(), w);
    }

    std::span<const Vertex> neighbors(Vertex v) const { return adj_.at(v); }
    std::size_t degree(Vertex v) const { return adj_.at(v).size(); }

    std::size_t max_degree() const
    {
        std::size_t d = 0;
        for (const auto& a : adj_)
            d = std::max(d, a.size());
        return d;
    }

    /// Edges (u,v) with u < v in lexicographic order.
    std::vector<Edge> edges() const
    {
        std::vector<Edge> out;
        out.reserve(edge_count_);
        for (Vertex u = 0; u < order(); ++u)
            for (Vertex v : adj_[u])
                if (u < v)
                    out.emplace_back(u, v);
        return out;
    }

    Label label(Vertex v) const { return labels_.at(v); }
    const std::vector<Label>& labels() const { return labels_; }

    void set_labels(std::vector<Label> labels)
    {
        if (labels.size() != order())
            throw std::invalid_argument("label count does not match vertex count");
        labels_ = std::move(labels);
    }

    friend bool operator==(const Graph& a, const Graph& b)
    {
        return a.adj_ == b.adj_;
    }

private:
    void check_pair(Vertex u, Vertex v) const
    {
        if (u >= order() || v >= order())
            throw std::out_of_range("edge endpoint is not a vertex");
        if (u == v)
            throw std::invalid_argument("self-loops are not allowed");
    }

    void recount()
    {
        std::size_t s = 0;
        for (const auto& a : adj_)
            s += a.size();
        edge_count_ = s / 2;
    }

    std::vector<std::vector<Vertex>> adj_;
    std::vector<Label> labels_;
    std::size_t edge_count_ = 0;
};

/// Subgraph induced on `vertices` (need not be sorted); vertex i of the
/// result is vertices[i] and keeps its label.
inline Graph induced_subgraph(const Graph& g, std::span<const Vertex> vertices)
{
    std::vector<std::int64_t> pos(g.order(), -1);
    for (std::size_t i = 0; i < vertices.size(); ++i)
        pos[vertices[i]] = static_cast<std::int64_t>(i);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (Vertex w : g.neighbors(vertices[i]))
            if (pos[w] > static_cast<std::int64_t>(i))
                edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(pos[w]));
    Graph h = Graph::from_edges(vertices.size(), edges);
    std::vector<Label> labels;
    labels.reserve(vertices.size());
    for (Vertex v : vertices)
        labels.push_back(g.label(v));
    h.set_labels(std::move(labels));
    return h;
}

inline Graph induced_subgraph(const Graph& g, const std::vector<Vertex>& vertices)
{
    return induced_subgraph(g, std::span<const Vertex>(vertices));
}

/// Unit sphere S(v): the subgraph generated by the neighbours of v.
inline Graph unit_sphere(const Graph& g, Vertex v)
{
    if (v >= g.order())
        throw std::out_of_range("unit_sphere: unknown vertex");
    return induced_subgraph(g, g.neighbors(v));
}

/// G \ v.
inline Graph remove_vertex(const Graph& g, Vertex v)
{
    if (v >= g.order())
        throw std::out_of_range("remove_vertex: unknown vertex");
    std::vector<Vertex> keep;
    keep.reserve(g.order() - 1);
    for (Vertex w = 0; w < g.order(); ++w)
        if (w != v)
            keep.push_back(w);
    return induced_subgraph(g, keep);
}

/// Component index per vertex; returns the number of components.
inline std::size_t connected_components(const Graph& g, std::vector<std::size_t>& component)
{
    constexpr auto unset = static_cast<std::size_t>(-1);
    component.assign(g.order(), unset);
    std::size_t count = 0;
    std::vector<Vertex> stack;
    for (Vertex s = 0; s < g.order(); ++s) {
        if (component[s] != unset)
            continue;
        component[s] = count;
        stack.push_back(s);
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            for (Vertex w : g.neighbors(v))
                if (component[w] == unset) {
                    component[w] = count;
                    stack.push_back(w);
                }
        }
        ++count;
    }
    return count;
}

inline bool is_connected(const Graph& g)
{
    std::vector<std::size_t> comp;
    return connected_components(g, comp) <= 1;
}

/// BFS distances from `source`; unreachable vertices get -1.
inline std::vector<int> bfs_distances(const Graph& g, Vertex source)
{
    std::vector<int> dist(g.order(), -1);
    std::queue<Vertex> q;
    dist[source] = 0;
    q.push(source);
    while (!q.empty()) {
        Vertex v = q.front();
        q.pop();
        for (Vertex w : g.neighbors(v))
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                q.push(w);
            }
    }
    return dist;
}

/// True iff the graph has no cycle.
inline bool is_forest(const Graph& g)
{
    std::vector<std::size_t> comp;
    std::size_t c = connected_components(g, comp);
    return g.size() + c == g.order();
}

/// Disjoint union plus every edge between the two parts. Vertices of `h`
/// are shifted by g.order().
inline Graph graph_join(const Graph& g, const Graph& h)
{
    const auto shift = static_cast<Vertex>(g.order());
    std::vector<Edge> edges = g.edges();
    for (auto [u, v] : h.edges())
        edges.emplace_back(u + shift, v + shift);
    for (Vertex u = 0; u < g.order(); ++u)
        for (Vertex v = 0; v < h.order(); ++v)
            edges.emplace_back(u, v + shift);
    return Graph::from_edges(g.order() + h.order(), edges);
}

/// Number of edges in the symmetric difference of the edge sets; both
/// graphs must live on the same vertex set.
inline std::size_t graph_distance(const Graph& g, const Graph& h)
{
    if (g.order() != h.order())
        throw std::invalid_argument("graph_distance: graphs must share a vertex set");
    std::size_t d = 0;
    for (Vertex v = 0; v < g.order(); ++v) {
        auto a = g.neighbors(v);
        auto b = h.neighbors(v);
        std::vector<Vertex> diff;
        std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                      std::back_inserter(diff));
        d += diff.size();
    }
    return d / 2;
}

/// Removes edge (a,b) and adds a new vertex joined to a, b and every
/// common neighbour of a and b.
inline Graph edge_refine(const Graph& g, Vertex a, Vertex b)
{
    if (!g.has_edge(a, b))
        throw std::invalid_argument("edge_refine: edge is not present");
    std::vector<Vertex> common;
    auto na = g.neighbors(a);
    auto nb = g.neighbors(b);
    std::set_intersection(na.begin(), na.end(), nb.begin(), nb.end(),
                          std::back_inserter(common));
    Graph h = g;
    h.remove_edge(a, b);
    Label next = 0;
    for (Label l : g.labels())
        next = std::max(next, l + 1);
    Vertex m = h.add_vertex(next);
    h.add_edge(m, a);
    h.add_edge(m, b);
    for (Vertex c : common)
        h.add_edge(m, c);
    return h;
}

} // namespace softbary

#pragma once

#include "softbary/graph.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace softbary {

/**
 * Colour refinement (1-dimensional Weisfeiler-Leman).
 *
 * Colours are ranks of sorted signatures, so the result is invariant under
 * relabelling: isomorphic inputs with matching initial colours give
 * matching colour classes.
 */
inline std::vector<int> refine_colors(const Graph& g, std::vector<int> colors)
{
    const std::size_t n = g.order();
    std::size_t classes = 0;
    {
        auto tmp = colors;
        std::sort(tmp.begin(), tmp.end());
        classes = static_cast<std::size_t>(std::unique(tmp.begin(), tmp.end()) - tmp.begin());
    }
    std::vector<std::vector<int>> sig(n);
    while (true) {
        for (Vertex v = 0; v < n; ++v) {
            auto& s = sig[v];
            s.clear();
            s.push_back(colors[v]);
            for (Vertex w : g.neighbors(v))
                s.push_back(colors[w]);
            std::sort(s.begin() + 1, s.end());
        }
        std::vector<const std::vector<int>*> order;
        order.reserve(n);
        for (const auto& s : sig)
            order.push_back(&s);
        std::sort(order.begin(), order.end(),
                  [](const auto* a, const auto* b) { return *a < *b; });
        order.erase(std::unique(order.begin(), order.end(),
                                [](const auto* a, const auto* b) { return *a == *b; }),
                    order.end());
        std::vector<int> next(n);
        for (Vertex v = 0; v < n; ++v) {
            auto it = std::lower_bound(order.begin(), order.end(), &sig[v],
                                       [](const auto* a, const auto* b) { return *a < *b; });
            next[v] = static_cast<int>(it - order.begin());
        }
        colors = std::move(next);
        if (order.size() == classes)
            return colors;
        classes = order.size();
    }
}

namespace detail {

inline std::string adjacency_code(const Graph& g, const std::vector<Vertex>& order)
{
    const std::size_t n = g.order();
    std::vector<Vertex> pos(n);
    for (std::size_t i = 0; i < n; ++i)
        pos[order[i]] = static_cast<Vertex>(i);
    std::vector<std::uint64_t> packed;
    packed.reserve(g.size());
    for (auto [u, v] : g.edges()) {
        std::uint64_t a = pos[u], b = pos[v];
        if (a > b)
            std::swap(a, b);
        packed.push_back((a << 32) | b);
    }
    std::sort(packed.begin(), packed.end());
    std::string code = std::to_string(n) + ':' + std::to_string(packed.size()) + ':';
    code.reserve(code.size() + packed.size() * 8);
    for (std::uint64_t e : packed)
        for (int shift = 56; shift >= 0; shift -= 8)
            code.push_back(static_cast<char>((e >> shift) & 0xff));
    return code;
}

inline std::vector<Vertex> order_by_color(const std::vector<int>& colors)
{
    std::vector<Vertex> order(colors.size());
    std::iota(order.begin(), order.end(), Vertex{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Vertex a, Vertex b) { return colors[a] < colors[b]; });
    return order;
}

inline bool is_discrete(const std::vector<int>& colors)
{
    return colors.empty()
           || static_cast<std::size_t>(*std::max_element(colors.begin(), colors.end())) + 1
                  == colors.size();
}

/// Smallest non-singleton colour class, lowest colour on ties.
inline int target_cell(const std::vector<int>& colors)
{
    std::map<int, std::size_t> sizes;
    for (int c : colors)
        ++sizes[c];
    int best = -1;
    std::size_t best_size = 0;
    for (auto [c, s] : sizes)
        if (s > 1 && (best < 0 || s < best_size)) {
            best = c;
            best_size = s;
        }
    return best;
}

inline void canonical_search(const Graph& g, const std::vector<int>& colors,
                             std::string& best, std::size_t& leaves, std::size_t leaf_cap,
                             bool& exhausted)
{
    if (leaves >= leaf_cap) {
        exhausted = true;
        return;
    }
    if (is_discrete(colors)) {
        ++leaves;
        std::string code = adjacency_code(g, order_by_color(colors));
        if (best.empty() || code < best)
            best = std::move(code);
        return;
    }
    const int cell = target_cell(colors);
    const int fresh = static_cast<int>(colors.size());
    for (Vertex v = 0; v < colors.size(); ++v) {
        if (colors[v] != cell)
            continue;
        auto c = colors;
        c[v] = fresh;
        canonical_search(g, refine_colors(g, std::move(c)), best, leaves, leaf_cap, exhausted);
    }
}

} // namespace detail

/**
 * Memoisation key for g.
 *
 * Graphs with at most `canonical_limit` vertices get a true canonical form
 * (individualisation-refinement, minimum adjacency code over all leaves).
 * Larger graphs get the adjacency code under the refined colour order,
 * which is sound (equal keys imply isomorphic graphs) but may miss some
 * isomorphic pairs.
 */
inline std::string graph_key(const Graph& g, std::size_t canonical_limit = 12)
{
    auto colors = refine_colors(g, std::vector<int>(g.order(), 0));
    if (g.order() <= canonical_limit) {
        std::string best;
        std::size_t leaves = 0;
        bool exhausted = false;
        detail::canonical_search(g, colors, best, leaves, 1u << 20, exhausted);
        if (!exhausted)
            return "c" + best;
    }
    return "r" + detail::adjacency_code(g, detail::order_by_color(colors));
}

namespace detail {

inline bool balanced(const std::vector<int>& colors, std::size_t n)
{
    std::map<int, long> bal;
    for (std::size_t i = 0; i < colors.size(); ++i)
        bal[colors[i]] += i < n ? 1 : -1;
    return std::all_of(bal.begin(), bal.end(), [](const auto& p) { return p.second == 0; });
}

inline bool iso_search(const Graph& g, const Graph& h, const Graph& u,
                       const std::vector<int>& colors)
{
    const std::size_t n = g.order();
    if (!balanced(colors, n))
        return false;
    std::map<int, std::vector<Vertex>> cells;
    for (Vertex v = 0; v < colors.size(); ++v)
        cells[colors[v]].push_back(v);
    const std::vector<Vertex>* target = nullptr;
    for (const auto& [c, members] : cells)
        if (members.size() > 2 && (!target || members.size() < target->size()))
            target = &members;
    if (!target) {
        std::vector<Vertex> map(n);
        for (const auto& [c, members] : cells)
            map[members[0]] = members[1] - static_cast<Vertex>(n);
        for (auto [a, b] : g.edges())
            if (!h.has_edge(map[a], map[b]))
                return false;
        return true;
    }
    const Vertex x = (*target)[0];
    const int fresh = static_cast<int>(colors.size());
    for (Vertex y : *target) {
        if (y < n)
            continue;
        auto c = colors;
        c[x] = fresh;
        c[y] = fresh;
        if (iso_search(g, h, u, refine_colors(u, std::move(c))))
            return true;
    }
    return false;
}

} // namespace detail

/// Exact isomorphism test by refinement with backtracking.
inline bool isomorphic(const Graph& g, const Graph& h)
{
    if (g.order() != h.order() || g.size() != h.size())
        return false;
    if (g.order() == 0)
        return true;
    const auto n = static_cast<Vertex>(g.order());
    std::vector<Edge> edges = g.edges();
    for (auto [a, b] : h.edges())
        edges.emplace_back(a + n, b + n);
    Graph u = Graph::from_edges(2 * g.order(), edges);
    auto colors = refine_colors(u, std::vector<int>(u.order(), 0));
    return detail::iso_search(g, h, u, colors);
}

/// Degree sequence, sorted descending.
inline std::vector<std::size_t> degree_sequence(const Graph& g)
{
    std::vector<std::size_t> d;
    for (Vertex v = 0; v < g.order(); ++v)
        d.push_back(g.degree(v));
    std::sort(d.rbegin(), d.rend());
    return d;
}

} // namespace softbary

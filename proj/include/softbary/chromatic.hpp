#pragma once

#include "softbary/complex.hpp"
#include "softbary/graph.hpp"
#include "softbary/manifold.hpp"
#include "softbary/refine.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace softbary {

/// Vertex colouring; -1 marks an unassigned vertex.
struct Coloring {
    std::vector<int> colors;

    std::size_t color_count() const
    {
        std::set<int> used;
        for (int c : colors)
            if (c >= 0)
                used.insert(c);
        return used.size();
    }

    bool total() const
    {
        return std::none_of(colors.begin(), colors.end(), [](int c) { return c < 0; });
    }
};

/// True iff every edge has differently coloured endpoints. Throws on a
/// partial assignment.
inline bool verify_coloring(const Graph& g, const Coloring& col)
{
    if (col.colors.size() != g.order() || !col.total())
        throw std::invalid_argument("verify_coloring: partial assignment");
    for (auto [u, v] : g.edges())
        if (col.colors[u] == col.colors[v])
            return false;
    return true;
}

inline bool is_eulerian(const Graph& g)
{
    for (Vertex v = 0; v < g.order(); ++v)
        if (g.degree(v) % 2 != 0)
            return false;
    return true;
}

namespace detail {

struct UnionFind {
    std::vector<Vertex> parent;
    explicit UnionFind(std::size_t n)
        : parent(n)
    {
        std::iota(parent.begin(), parent.end(), Vertex{0});
    }
    Vertex find(Vertex x)
    {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    bool unite(Vertex a, Vertex b)
    {
        a = find(a);
        b = find(b);
        if (a == b)
            return false;
        parent[a] = b;
        return true;
    }
};

/// Cycle rank of the subgraph induced on colours {a, b}.
inline std::size_t bichromatic_cycle_rank(const Graph& g, const std::vector<int>& colors, int a,
                                          int b)
{
    UnionFind uf(g.order());
    std::size_t rank = 0;
    for (auto [u, v] : g.edges()) {
        const int cu = colors[u], cv = colors[v];
        if ((cu == a && cv == b) || (cu == b && cv == a))
            if (!uf.unite(u, v))
                ++rank;
    }
    return rank;
}

} // namespace detail

/// True iff every pair of colour classes induces a forest (no Kempe cycle).
inline bool kempe_free(const Graph& g, const Coloring& col)
{
    if (!verify_coloring(g, col))
        throw std::invalid_argument("kempe_free: colouring is not proper");
    int k = 0;
    for (int c : col.colors)
        k = std::max(k, c + 1);
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b)
            if (detail::bichromatic_cycle_rank(g, col.colors, a, b) > 0)
                return false;
    return true;
}

// ---------------------------------------------------------------------------
// Exact chromatic number

struct ChromaticResult {
    bool exact = false;
    std::size_t lower = 0;
    std::size_t upper = 0;
    Coloring witness;
    std::size_t nodes = 0;

    std::size_t value() const { return upper; }
};

/// Largest clique found by branch and bound within `budget` nodes; the
/// result is always a clique, hence a valid lower bound.
inline std::vector<Vertex> max_clique(const Graph& g, std::size_t budget = 1'000'000)
{
    std::vector<Vertex> best, current;
    std::size_t nodes = 0;
    std::vector<Vertex> order(g.order());
    std::iota(order.begin(), order.end(), Vertex{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
    auto expand = [&](auto&& self, std::vector<Vertex>& cand) -> void {
        if (++nodes > budget)
            return;
        if (current.size() > best.size())
            best = current;
        while (!cand.empty()) {
            if (current.size() + cand.size() <= best.size())
                return;
            Vertex v = cand.back();
            cand.pop_back();
            std::vector<Vertex> next;
            for (Vertex w : cand)
                if (g.has_edge(v, w))
                    next.push_back(w);
            current.push_back(v);
            self(self, next);
            current.pop_back();
        }
    };
    std::vector<Vertex> cand(order.rbegin(), order.rend());
    expand(expand, cand);
    return best;
}

namespace detail {

/// DSATUR branch and bound with the initial clique precoloured.
class DsaturSearch {
public:
    DsaturSearch(const Graph& g, std::size_t budget)
        : g_(g)
        , budget_(budget)
    {
    }

    ChromaticResult run()
    {
        ChromaticResult r;
        const std::size_t n = g_.order();
        if (n == 0) {
            r.exact = true;
            return r;
        }
        clique_ = max_clique(g_);
        r.lower = clique_.size();

        Coloring greedy = greedy_dsatur();
        best_ = greedy.colors;
        ub_ = greedy.color_count();
        if (ub_ > r.lower) {
            colors_.assign(n, -1);
            counts_.assign(n, std::vector<int>(ub_, 0));
            sat_.assign(n, 0);
            colored_ = 0;
            int used = 0;
            for (Vertex v : clique_)
                assign(v, used++);
            search(used, r.lower);
        }
        r.upper = ub_;
        r.exact = !aborted_ || ub_ == r.lower;
        if (r.exact)
            r.lower = ub_;
        r.witness.colors = best_;
        r.nodes = nodes_;
        return r;
    }

private:
    Coloring greedy_dsatur() const
    {
        const std::size_t n = g_.order();
        Coloring col;
        col.colors.assign(n, -1);
        std::vector<std::set<int>> seen(n);
        for (std::size_t step = 0; step < n; ++step) {
            Vertex pick = 0;
            bool found = false;
            for (Vertex v = 0; v < n; ++v) {
                if (col.colors[v] >= 0)
                    continue;
                if (!found || seen[v].size() > seen[pick].size()
                    || (seen[v].size() == seen[pick].size() && g_.degree(v) > g_.degree(pick))) {
                    pick = v;
                    found = true;
                }
            }
            int c = 0;
            while (seen[pick].count(c))
                ++c;
            col.colors[pick] = c;
            for (Vertex w : g_.neighbors(pick))
                seen[w].insert(c);
        }
        return col;
    }

    void assign(Vertex v, int c)
    {
        colors_[v] = c;
        ++colored_;
        for (Vertex w : g_.neighbors(v))
            if (counts_[w][static_cast<std::size_t>(c)]++ == 0)
                ++sat_[w];
    }

    void unassign(Vertex v)
    {
        const int c = colors_[v];
        colors_[v] = -1;
        --colored_;
        for (Vertex w : g_.neighbors(v))
            if (--counts_[w][static_cast<std::size_t>(c)] == 0)
                --sat_[w];
    }

    Vertex select() const
    {
        Vertex pick = 0;
        bool found = false;
        for (Vertex v = 0; v < g_.order(); ++v) {
            if (colors_[v] >= 0)
                continue;
            if (!found || sat_[v] > sat_[pick]
                || (sat_[v] == sat_[pick] && g_.degree(v) > g_.degree(pick))) {
                pick = v;
                found = true;
            }
        }
        return pick;
    }

    /// Returns true when the search should stop (optimum proven or budget).
    bool search(int used, std::size_t lower)
    {
        if (++nodes_ > budget_) {
            aborted_ = true;
            return true;
        }
        if (colored_ == g_.order()) {
            best_ = colors_;
            ub_ = static_cast<std::size_t>(used);
            return ub_ <= lower;
        }
        const Vertex v = select();
        // ub_ can shrink during the loop
        for (int c = 0; c < std::min(used + 1, static_cast<int>(ub_) - 1); ++c) {
            if (counts_[v][static_cast<std::size_t>(c)] != 0)
                continue;
            assign(v, c);
            const bool stop = search(std::max(used, c + 1), lower);
            unassign(v);
            if (stop)
                return true;
        }
        return false;
    }

    const Graph& g_;
    std::size_t budget_;
    std::size_t nodes_ = 0;
    bool aborted_ = false;
    std::vector<Vertex> clique_;
    std::vector<int> colors_;
    std::vector<std::vector<int>> counts_;
    std::vector<int> sat_;
    std::size_t colored_ = 0;
    std::vector<int> best_;
    std::size_t ub_ = 0;
};

} // namespace detail

/**
 * Chromatic number by DSATUR branch and bound with a clique lower bound.
 * If the node budget runs out the result is the bracket
 * [clique size, best colouring found] with exact = false.
 */
inline ChromaticResult chromatic_number(const Graph& g, std::size_t budget = 10'000'000)
{
    return detail::DsaturSearch(g, budget).run();
}

// ---------------------------------------------------------------------------
// Acyclic colourings of dual graphs

enum class AcyclicMode {
    /// every colour pair induces a forest (Kempe-free)
    all_pairs,
    /// colours 0 and 1 together induce a forest; colour 2 is independent
    forest_pair,
};

struct DualColoring {
    bool success = false;
    Graph dual;
    std::vector<Simplex> facets;
    Coloring coloring;
    /// parity, repair or exhaustive
    std::string method;
    std::string failure_reason;
    /// Subgraph (dual vertices) certifying a failure.
    std::vector<Vertex> offending;
};

namespace detail {

inline std::size_t acyclic_cost(const Graph& g, const std::vector<int>& colors, AcyclicMode mode)
{
    std::size_t cost = 0;
    for (auto [u, v] : g.edges())
        if (colors[u] == colors[v])
            ++cost;
    if (mode == AcyclicMode::all_pairs)
        cost += bichromatic_cycle_rank(g, colors, 0, 1) + bichromatic_cycle_rank(g, colors, 0, 2)
                + bichromatic_cycle_rank(g, colors, 1, 2);
    else
        cost += bichromatic_cycle_rank(g, colors, 0, 1);
    return cost;
}

/// Distance-parity colouring from an interior start, third colour on
/// parity clashes.
inline std::vector<int> parity_coloring(const Graph& g, Vertex start)
{
    const std::size_t n = g.order();
    std::vector<int> dist(n, -1);
    std::vector<Vertex> order;
    auto bfs = [&](Vertex s) {
        dist[s] = 0;
        std::size_t head = order.size();
        order.push_back(s);
        while (head < order.size()) {
            Vertex v = order[head++];
            for (Vertex w : g.neighbors(v))
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    order.push_back(w);
                }
        }
    };
    bfs(start);
    for (Vertex v = 0; v < n; ++v)
        if (dist[v] < 0)
            bfs(v);
    std::vector<int> colors(n);
    for (Vertex v = 0; v < n; ++v)
        colors[v] = dist[v] % 2;
    for (Vertex v : order) {
        bool clash = false, has_third = false;
        for (Vertex w : g.neighbors(v)) {
            if (colors[w] == colors[v])
                clash = true;
            if (colors[w] == 2)
                has_third = true;
        }
        if (clash && !has_third)
            colors[v] = 2;
    }
    return colors;
}

/// Tabu search on the number of monochromatic edges plus cycle ranks.
inline bool repair_coloring(const Graph& g, std::vector<int>& colors, AcyclicMode mode,
                            std::size_t iterations, std::uint32_t seed)
{
    const std::size_t n = g.order();
    std::mt19937 rng(seed);
    std::size_t cost = acyclic_cost(g, colors, mode);
    std::vector<int> best = colors;
    std::size_t best_cost = cost;
    std::vector<std::size_t> tabu_until(n * 3, 0);
    for (std::size_t it = 1; it <= iterations && best_cost > 0; ++it) {
        std::size_t move_cost = static_cast<std::size_t>(-1);
        std::vector<std::pair<Vertex, int>> moves;
        for (Vertex v = 0; v < n; ++v) {
            const int old = colors[v];
            for (int c = 0; c < 3; ++c) {
                if (c == old)
                    continue;
                colors[v] = c;
                const std::size_t cc = acyclic_cost(g, colors, mode);
                colors[v] = old;
                const bool is_tabu = tabu_until[v * 3 + static_cast<std::size_t>(c)] > it;
                if (is_tabu && cc >= best_cost)
                    continue;
                if (cc < move_cost) {
                    move_cost = cc;
                    moves.clear();
                }
                if (cc == move_cost)
                    moves.emplace_back(v, c);
            }
        }
        if (moves.empty())
            continue;
        auto [v, c] = moves[std::uniform_int_distribution<std::size_t>(0, moves.size() - 1)(rng)];
        tabu_until[v * 3 + static_cast<std::size_t>(colors[v])] =
            it + 7 + std::uniform_int_distribution<std::size_t>(0, 9)(rng);
        colors[v] = c;
        cost = move_cost;
        if (cost < best_cost) {
            best_cost = cost;
            best = colors;
        }
    }
    colors = best;
    return best_cost == 0;
}

/// Exhaustive backtracking over 3-colourings satisfying the acyclicity
/// constraints, vertices in BFS order.
inline bool exhaustive_acyclic(const Graph& g, std::vector<int>& colors, AcyclicMode mode,
                               std::size_t budget, bool& exhausted_budget)
{
    const std::size_t n = g.order();
    std::vector<Vertex> order;
    std::vector<bool> seen(n, false);
    for (Vertex s = 0; s < n; ++s) {
        if (seen[s])
            continue;
        seen[s] = true;
        std::size_t head = order.size();
        order.push_back(s);
        while (head < order.size()) {
            Vertex v = order[head++];
            for (Vertex w : g.neighbors(v))
                if (!seen[w]) {
                    seen[w] = true;
                    order.push_back(w);
                }
        }
    }
    std::vector<int> cur(n, -1);
    std::size_t nodes = 0;
    auto consistent = [&](Vertex v) {
        for (Vertex w : g.neighbors(v))
            if (cur[w] == cur[v])
                return false;
        // only pairs involving v's colour can have gained a cycle
        for (int d = 0; d < 3; ++d) {
            if (d == cur[v])
                continue;
            if (mode == AcyclicMode::forest_pair && !((cur[v] == 0 && d == 1) || (cur[v] == 1 && d == 0)))
                continue;
            if (bichromatic_cycle_rank(g, cur, std::min(cur[v], d), std::max(cur[v], d)) > 0)
                return false;
        }
        return true;
    };
    auto rec = [&](auto&& self, std::size_t k, int used) -> bool {
        if (++nodes > budget) {
            exhausted_budget = true;
            return false;
        }
        if (k == n)
            return true;
        const Vertex v = order[k];
        // colour symmetry: a fresh colour is only tried once
        const int limit = mode == AcyclicMode::all_pairs ? std::min(3, used + 1) : 3;
        for (int c = 0; c < limit; ++c) {
            cur[v] = c;
            if (consistent(v) && self(self, k + 1, std::max(used, c + 1)))
                return true;
            cur[v] = -1;
            if (exhausted_budget)
                return false;
        }
        return false;
    };
    exhausted_budget = false;
    if (rec(rec, 0, 0)) {
        colors = cur;
        return true;
    }
    return false;
}

} // namespace detail

struct AcyclicOptions {
    AcyclicMode mode = AcyclicMode::all_pairs;
    std::size_t repair_iterations = 4000;
    std::size_t exhaustive_limit = 40;
    std::size_t exhaustive_budget = 20'000'000;
    std::uint32_t seed = 0;
};

/**
 * 3-colouring of the dual graph of c in which colour pairs induce forests.
 *
 * Parity colouring from an interior facet, third colour at parity clashes,
 * then tabu repair; duals of at most `exhaustive_limit` vertices fall back
 * to exhaustive search. A Kempe-free 3-colouring forces
 * |E| <= 2|V| - 3 (each of the three pair subgraphs is a forest), so denser
 * duals are rejected up front with that certificate.
 */
inline DualColoring dual_acyclic_3color(const SimplicialComplex& c,
                                        const AcyclicOptions& opt = {})
{
    DualColoring r;
    r.dual = dual_graph(c, &r.facets);
    const Graph& g = r.dual;
    const std::size_t n = g.order();
    if (n == 0) {
        r.success = true;
        r.method = "parity";
        return r;
    }
    if (opt.mode == AcyclicMode::all_pairs && n >= 2 && g.size() + 3 > 2 * n) {
        r.failure_reason = "edge count " + std::to_string(g.size())
                           + " exceeds 2|V|-3 = " + std::to_string(2 * n - 3)
                           + ": no 3-colouring can make all three colour pairs acyclic";
        r.offending.resize(n);
        std::iota(r.offending.begin(), r.offending.end(), Vertex{0});
        return r;
    }

    Vertex start = 0;
    {
        const int q = c.max_dimension();
        std::unordered_map<Simplex, int, SimplexHash> face_count;
        for (const auto& f : r.facets)
            for_each_facet_of(f, [&](const Simplex& x) { ++face_count[x]; });
        for (Vertex v = 0; v < n; ++v) {
            bool interior = q >= 1;
            for_each_facet_of(r.facets[v], [&](const Simplex& x) {
                if (face_count[x] < 2)
                    interior = false;
            });
            if (interior) {
                start = v;
                break;
            }
        }
    }
    std::vector<int> colors = detail::parity_coloring(g, start);
    if (detail::acyclic_cost(g, colors, opt.mode) == 0) {
        r.success = true;
        r.method = "parity";
    } else if (detail::repair_coloring(g, colors, opt.mode, opt.repair_iterations, opt.seed)) {
        r.success = true;
        r.method = "repair";
    } else if (n <= opt.exhaustive_limit) {
        bool budget_hit = false;
        if (detail::exhaustive_acyclic(g, colors, opt.mode, opt.exhaustive_budget, budget_hit)) {
            r.success = true;
            r.method = "exhaustive";
        } else {
            r.failure_reason = budget_hit ? "exhaustive search budget exhausted"
                                          : "exhaustive search: no such 3-colouring exists";
        }
    } else {
        r.failure_reason = "repair budget exhausted on a dual above the exhaustive limit";
    }
    r.coloring.colors = colors;
    if (!r.success) {
        // report the vertices still in conflict
        std::set<Vertex> bad;
        for (auto [u, v] : g.edges())
            if (colors[u] == colors[v]) {
                bad.insert(u);
                bad.insert(v);
            }
        for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b) {
                if (opt.mode == AcyclicMode::forest_pair && !(a == 0 && b == 1))
                    continue;
                if (detail::bichromatic_cycle_rank(g, colors, a, b) == 0)
                    continue;
                for (Vertex v = 0; v < n; ++v)
                    if (colors[v] == a || colors[v] == b)
                        bad.insert(v);
            }
        r.offending.assign(bad.begin(), bad.end());
    }
    return r;
}

/// Partition of V into induced forests.
struct ForestCover {
    std::vector<std::vector<Vertex>> parts;
};

/**
 * Two induced forests from a proper colouring with at most three colours:
 * the union of an acyclic colour pair, and the remaining colour class.
 * A Kempe-free colouring qualifies with any pair; pairs are tried in the
 * order (0,1), (0,2), (1,2). Empty parts are dropped.
 */
inline ForestCover two_forest_cover(const Graph& g, const Coloring& col)
{
    if (!verify_coloring(g, col))
        throw std::invalid_argument("two_forest_cover: colouring is not proper");
    int k = 0;
    for (int c : col.colors)
        k = std::max(k, c + 1);
    if (k > 3)
        throw std::invalid_argument("two_forest_cover: more than three colours");
    const std::pair<int, int> pairs[] = {{0, 1}, {0, 2}, {1, 2}};
    for (auto [a, b] : pairs) {
        if (detail::bichromatic_cycle_rank(g, col.colors, a, b) != 0)
            continue;
        const int rest = 3 - a - b;
        ForestCover fc;
        fc.parts.resize(2);
        for (Vertex v = 0; v < g.order(); ++v)
            fc.parts[col.colors[v] == rest ? 1 : 0].push_back(v);
        fc.parts.erase(std::remove_if(fc.parts.begin(), fc.parts.end(),
                                      [](const auto& p) { return p.empty(); }),
                       fc.parts.end());
        for (const auto& p : fc.parts)
            if (!is_forest(induced_subgraph(g, p)))
                throw std::logic_error("two_forest_cover: part is not a forest");
        return fc;
    }
    throw std::invalid_argument("two_forest_cover: no colour pair induces a forest");
}

inline bool verify_forest_cover(const Graph& g, const ForestCover& fc)
{
    std::vector<int> seen(g.order(), 0);
    for (const auto& p : fc.parts) {
        for (Vertex v : p)
            if (v >= g.order() || seen[v]++)
                return false;
        if (!is_forest(induced_subgraph(g, p)))
            return false;
    }
    return std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; });
}

// ---------------------------------------------------------------------------
// Colourings of refinements

struct RefinementColoring {
    RefinedGraph refined;
    Coloring coloring;
    bool verified = false;
};

/**
 * Colours the soft refinement of a q-manifold: simplices of dimension
 * <= q-2 by their dimension, facets by q-1 + their dual colour. A boundary
 * face only touches its own faces and its single facet, so it takes the
 * first facet colour differing from that facet's.
 */
inline RefinementColoring color_soft_refinement(const SimplicialComplex& c,
                                                const Coloring& dual_col)
{
    std::vector<Simplex> facets;
    Graph dual = dual_graph(c, &facets);
    if (dual_col.colors.size() != dual.order() || !verify_coloring(dual, dual_col))
        throw std::invalid_argument("color_soft_refinement: improper dual colouring");
    if (detail::is_closed_curve(classify_faces(c)))
        throw std::invalid_argument(
            "color_soft_refinement: closed curves are fixed points, colour them directly");
    const int q = c.max_dimension();
    RefinementColoring r;
    r.refined = soft_barycentric(c);
    const auto& g = r.refined.graph;
    std::unordered_map<Simplex, int, SimplexHash> facet_color;
    for (std::size_t i = 0; i < facets.size(); ++i)
        facet_color.emplace(facets[i], q - 1 + dual_col.colors[i]);
    r.coloring.colors.assign(g.order(), -1);
    for (Vertex v = 0; v < g.order(); ++v) {
        const Simplex& s = r.refined.provenance[v];
        const int d = dimension(s);
        if (d == q) {
            r.coloring.colors[v] = facet_color.at(s);
        } else if (d == q - 1 && q >= 1) {
            int own = -1;
            for (Vertex w : g.neighbors(v))
                if (r.refined.origin_dimension(w) == q)
                    own = r.coloring.colors[w] >= 0 ? r.coloring.colors[w]
                                                    : facet_color.at(r.refined.provenance[w]);
            r.coloring.colors[v] = own == q - 1 ? q : q - 1;
        } else {
            r.coloring.colors[v] = d;
        }
    }
    r.verified = verify_coloring(g, r.coloring);
    return r;
}

struct SphereRefinementColoring {
    RefinementColoring result;
    bool eulerian = false;
    /// The face propagation rule closed without conflict.
    bool rule_closed = false;
    std::optional<std::pair<Vertex, Vertex>> conflict;
    std::string method;
};

/**
 * Colours the soft refinement of a triangulated surface from a colouring of
 * the surface.
 *
 * Eulerian case: old vertices get 0, faces alternate 1 and 2 across shared
 * edges (c' -> -c' mod 3). Otherwise old vertices get 3 and faces take
 * values in {0,1,2}: +1 across an edge when the two faces carry the same
 * colour triple, -1 otherwise. When propagation meets a face pair it cannot
 * satisfy, the pair is recorded and the faces are re-coloured by an exact
 * 3-colouring of the (cubic) dual.
 */
inline SphereRefinementColoring color_2sphere_refinement(const SimplicialComplex& c,
                                                         const Coloring& col)
{
    if (c.max_dimension() != 2)
        throw std::invalid_argument("color_2sphere_refinement: complex must be 2-dimensional");
    const Graph skel = c.skeleton_graph();
    if (col.colors.size() != skel.order() || !verify_coloring(skel, col))
        throw std::invalid_argument("color_2sphere_refinement: improper surface colouring");
    SphereRefinementColoring out;
    out.eulerian = is_eulerian(skel);
    auto& r = out.result;
    r.refined = soft_barycentric(c);
    const auto& g = r.refined.graph;

    std::unordered_map<Vertex, Vertex> skel_pos;
    for (Vertex v = 0; v < skel.order(); ++v)
        skel_pos.emplace(static_cast<Vertex>(skel.label(v)), v);
    auto triple = [&](const Simplex& f) {
        std::vector<int> t;
        for (Vertex x : f)
            t.push_back(col.colors[skel_pos.at(x)]);
        std::sort(t.begin(), t.end());
        return t;
    };

    std::vector<Vertex> faces;
    for (Vertex v = 0; v < g.order(); ++v)
        if (r.refined.origin_dimension(v) == 2)
            faces.push_back(v);
    r.coloring.colors.assign(g.order(), -1);
    const int vertex_color = out.eulerian ? 0 : 3;
    for (Vertex v = 0; v < g.order(); ++v)
        if (r.refined.origin_dimension(v) == 0)
            r.coloring.colors[v] = vertex_color;

    auto rule = [&](Vertex from, Vertex to) {
        const int cf = r.coloring.colors[from];
        if (out.eulerian)
            return (3 - cf) % 3;
        const bool same = triple(r.refined.provenance[from]) == triple(r.refined.provenance[to]);
        return ((cf + (same ? 1 : -1)) % 3 + 3) % 3;
    };
    auto is_face = [&](Vertex v) { return r.refined.origin_dimension(v) == 2; };

    bool closed = true;
    for (Vertex root : faces) {
        if (r.coloring.colors[root] >= 0)
            continue;
        r.coloring.colors[root] = out.eulerian ? 1 : 0;
        std::vector<Vertex> queue{root};
        for (std::size_t head = 0; head < queue.size() && closed; ++head) {
            Vertex f = queue[head];
            for (Vertex h : g.neighbors(f)) {
                if (!is_face(h))
                    continue;
                const int want = rule(f, h);
                if (r.coloring.colors[h] < 0) {
                    r.coloring.colors[h] = want;
                    queue.push_back(h);
                } else if (r.coloring.colors[h] != want) {
                    closed = false;
                    out.conflict = std::make_pair(f, h);
                    break;
                }
            }
        }
        if (!closed)
            break;
    }
    out.rule_closed = closed;
    out.method = "propagation";
    if (!closed) {
        std::vector<Vertex> face_list = faces;
        Graph face_graph = induced_subgraph(g, face_list);
        auto exact = chromatic_number(face_graph);
        if (exact.upper <= 3) {
            const int offset = out.eulerian ? 1 : 0;
            for (std::size_t i = 0; i < faces.size(); ++i)
                r.coloring.colors[faces[i]] = exact.witness.colors[i] + offset;
            out.method = "dual-search";
        } else {
            out.method = "failed";
            return out;
        }
    }
    r.verified = r.coloring.total() && verify_coloring(g, r.coloring);
    return out;
}

// ---------------------------------------------------------------------------
// Fisk complex and edge degrees

struct FiskComponent {
    std::vector<Simplex> simplices;
    SimplicialComplex complex;
    Graph graph;
};

struct FiskComplex {
    int dimension = -1;
    /// (q-2)-simplices with odd dual circle and their circle lengths.
    std::vector<Simplex> simplices;
    std::vector<std::size_t> circle_lengths;
    std::vector<FiskComponent> components;
};

/**
 * (q-2)-simplices of a q-manifold whose dual circle has odd length,
 * grouped into connected components of the complex they generate.
 */
inline FiskComplex fisk_complex(const SimplicialComplex& c)
{
    const int q = c.max_dimension();
    if (q < 2)
        throw std::invalid_argument("fisk_complex: need dimension at least 2");
    FiskComplex fk;
    fk.dimension = q;
    const Graph skel = c.skeleton_graph();
    for (const auto& x : c.simplices(q - 2)) {
        auto circle = dual_circle(c, skel, x);
        if (circle.length % 2 == 1) {
            fk.simplices.push_back(x);
            fk.circle_lengths.push_back(circle.length);
        }
    }
    // components via shared vertices
    std::map<Vertex, Vertex> vid;
    for (const auto& s : fk.simplices)
        for (Vertex v : s)
            vid.emplace(v, static_cast<Vertex>(vid.size()));
    detail::UnionFind uf(vid.size());
    for (const auto& s : fk.simplices)
        for (std::size_t i = 1; i < s.size(); ++i)
            uf.unite(vid.at(s[0]), vid.at(s[i]));
    std::map<Vertex, std::size_t> comp_index;
    for (const auto& s : fk.simplices) {
        const Vertex root = uf.find(vid.at(s[0]));
        auto [it, inserted] = comp_index.emplace(root, fk.components.size());
        if (inserted)
            fk.components.emplace_back();
        fk.components[it->second].simplices.push_back(s);
    }
    for (auto& comp : fk.components) {
        comp.complex = SimplicialComplex::generated_by(comp.simplices);
        comp.graph = comp.complex.skeleton_graph();
    }
    return fk;
}

struct EdgeCensus {
    std::map<std::size_t, std::size_t> interior;
    std::map<std::size_t, std::size_t> boundary;
};

enum class EdgeDegree {
    /// number of facets containing the edge
    facets,
    /// number of vertices of the dual circle |S(a) & S(b)|; equals the facet
    /// count on interior edges and exceeds it by one on boundary edges
    circle_vertices,
};

/// Edge degree census, split by whether the edge lies in a boundary face.
inline EdgeCensus edge_degree_stats(const SimplicialComplex& c,
                                    EdgeDegree measure = EdgeDegree::facets)
{
    const int q = c.max_dimension();
    if (q < 1)
        throw std::invalid_argument("edge_degree_stats: need edges");
    std::vector<std::size_t> degree(c.count(1), 0);
    if (measure == EdgeDegree::facets) {
        for (const auto& f : c.simplices(q))
            for (std::size_t i = 0; i < f.size(); ++i)
                for (std::size_t j = i + 1; j < f.size(); ++j)
                    ++degree[*c.index_of(Simplex{f[i], f[j]})];
    } else {
        const Graph skel = c.skeleton_graph();
        std::unordered_map<Label, Vertex> pos;
        for (Vertex v = 0; v < skel.order(); ++v)
            pos.emplace(skel.label(v), v);
        const auto edges = c.simplices(1);
        for (std::size_t e = 0; e < edges.size(); ++e) {
            auto na = skel.neighbors(pos.at(static_cast<Label>(edges[e][0])));
            auto nb = skel.neighbors(pos.at(static_cast<Label>(edges[e][1])));
            std::vector<Vertex> common;
            std::set_intersection(na.begin(), na.end(), nb.begin(), nb.end(),
                                  std::back_inserter(common));
            degree[e] = common.size();
        }
    }
    std::vector<bool> on_boundary(c.count(1), false);
    for (const auto& b : classify_faces(c).boundary_faces)
        for (std::size_t i = 0; i < b.size(); ++i)
            for (std::size_t j = i + 1; j < b.size(); ++j)
                on_boundary[*c.index_of(Simplex{b[i], b[j]})] = true;
    EdgeCensus census;
    for (std::size_t e = 0; e < degree.size(); ++e)
        ++(on_boundary[e] ? census.boundary : census.interior)[degree[e]];
    return census;
}

struct EvenDualCircleReport {
    bool colorable = false;
    std::size_t fisk_size = 0;
    std::optional<ChromaticResult> chromatic;
};

/// Fisk complex empty; cross-checked against the exact chromatic number of
/// small inputs (which should then be q+1).
inline EvenDualCircleReport even_dual_circle_colorable(const SimplicialComplex& c,
                                                       std::size_t check_limit = 64)
{
    EvenDualCircleReport r;
    auto fk = fisk_complex(c);
    r.fisk_size = fk.simplices.size();
    r.colorable = fk.simplices.empty();
    const Graph skel = c.skeleton_graph();
    if (skel.order() <= check_limit)
        r.chromatic = chromatic_number(skel);
    return r;
}

} // namespace softbary

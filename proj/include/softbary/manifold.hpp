#pragma once

#include "softbary/canonical.hpp"
#include "softbary/complex.hpp"
#include "softbary/graph.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace softbary {

/// Three-valued answer of the recursive recognisers.
enum class Verdict { no, yes, undecided };

inline std::string_view to_string(Verdict v)
{
    switch (v) {
    case Verdict::no: return "no";
    case Verdict::yes: return "yes";
    case Verdict::undecided: return "undecided";
    }
    return "?";
}

enum class ManifoldKind {
    not_manifold,
    manifold,
    manifold_with_boundary,
    sphere,
    ball,
    contractible,
    undecided,
};

inline std::string_view to_string(ManifoldKind k)
{
    switch (k) {
    case ManifoldKind::not_manifold: return "not-manifold";
    case ManifoldKind::manifold: return "manifold";
    case ManifoldKind::manifold_with_boundary: return "manifold-with-boundary";
    case ManifoldKind::sphere: return "sphere";
    case ManifoldKind::ball: return "ball";
    case ManifoldKind::contractible: return "contractible-flag";
    case ManifoldKind::undecided: return "undecided-at-cap";
    }
    return "?";
}

struct ManifoldReport {
    ManifoldKind kind = ManifoldKind::not_manifold;
    int dimension = -1;
    std::vector<Vertex> boundary_vertices;
    std::optional<Vertex> witness;

    /// sphere and manifold both describe closed manifolds.
    bool is_closed_manifold() const
    {
        return kind == ManifoldKind::manifold || kind == ManifoldKind::sphere;
    }
    bool is_bounded_manifold() const
    {
        return kind == ManifoldKind::manifold_with_boundary || kind == ManifoldKind::ball;
    }
    bool is_manifold() const { return is_closed_manifold() || is_bounded_manifold(); }
};

/**
 * Recursive recognisers for contractible graphs, spheres, balls and
 * manifolds.
 *
 * - K1 is contractible; G is contractible if some v has S(v) and G\v
 *   contractible.
 * - The empty graph is the (-1)-sphere; a d-sphere is a d-manifold with a
 *   vertex v such that G\v is contractible.
 * - A d-ball is a punctured d-sphere. We test it by coning off the
 *   vertices whose unit spheres are balls and asking for a sphere whose
 *   puncture at the cone point gives back G.
 *
 * Results are memoised on graph_key(). Every recursive call costs one unit
 * of work; once the cap is hit the answer becomes Verdict::undecided, never
 * a silent "no".
 */
class Recognizer {
public:
    explicit Recognizer(std::size_t work_cap = 5'000'000)
        : work_cap_(work_cap)
    {
    }

    std::size_t work_done() const { return work_; }
    bool cap_hit() const { return cap_hit_; }

    Verdict contractible(const Graph& g)
    {
        const std::size_t n = g.order();
        if (n == 0)
            return Verdict::no;
        if (n == 1)
            return Verdict::yes;
        if (has_dominating_vertex(g))
            return Verdict::yes;
        if (!is_connected(g) || euler_characteristic(g) != 1)
            return Verdict::no;
        const std::string key = "C" + graph_key(g);
        if (auto it = memo_.find(key); it != memo_.end())
            return it->second;
        if (!spend())
            return Verdict::undecided;

        Verdict result = Verdict::no;
        for (Vertex v : vertices_by_degree(g)) {
            Graph s = unit_sphere(g, v);
            // chi(G) = chi(G\v) + 1 - chi(S(v)) and both parts need chi = 1.
            if (s.order() == 0 || euler_characteristic(s) != 1)
                continue;
            Verdict a = contractible(s);
            if (a == Verdict::no)
                continue;
            Verdict b = contractible(remove_vertex(g, v));
            if (a == Verdict::yes && b == Verdict::yes) {
                result = Verdict::yes;
                break;
            }
            if (a == Verdict::undecided || b == Verdict::undecided)
                result = Verdict::undecided;
        }
        return remember(key, result);
    }

    Verdict sphere(const Graph& g, int dim) { return sphere_impl(g, dim, std::nullopt); }

    Verdict ball(const Graph& g, int dim)
    {
        if (dim < 0 || g.order() == 0)
            return Verdict::no;
        const std::string key = "B" + std::to_string(dim) + graph_key(g);
        if (auto it = memo_.find(key); it != memo_.end())
            return it->second;
        if (!spend())
            return Verdict::undecided;
        std::vector<Vertex> boundary;
        Verdict local = Verdict::yes;
        for (Vertex v = 0; v < g.order() && local != Verdict::no; ++v) {
            Graph s = unit_sphere(g, v);
            Verdict sp = sphere(s, dim - 1);
            if (sp == Verdict::yes)
                continue;
            Verdict bl = ball(s, dim - 1);
            if (bl == Verdict::yes)
                boundary.push_back(v);
            else if (sp == Verdict::undecided || bl == Verdict::undecided)
                local = Verdict::undecided;
            else
                local = Verdict::no;
        }
        if (local != Verdict::yes)
            return remember(key, local);
        Graph coned = g;
        Vertex apex = coned.add_vertex(-1);
        for (Vertex b : boundary)
            coned.add_edge(apex, b);
        return remember(key, sphere_impl(coned, dim, apex));
    }

    /// Every unit sphere is a (dim-1)-sphere.
    Verdict closed_manifold(const Graph& g, int dim)
    {
        Verdict result = Verdict::yes;
        for (Vertex v = 0; v < g.order(); ++v) {
            Verdict s = sphere(unit_sphere(g, v), dim - 1);
            if (s == Verdict::no)
                return Verdict::no;
            if (s == Verdict::undecided)
                result = Verdict::undecided;
        }
        return result;
    }

    ManifoldReport classify(const Graph& g)
    {
        ManifoldReport r;
        if (g.order() == 0) {
            r.kind = ManifoldKind::sphere;
            r.dimension = -1;
            return r;
        }
        const int q = static_cast<int>(max_clique_size(g)) - 1;
        r.dimension = q;
        bool undecided = false;
        std::vector<Vertex> boundary;
        for (Vertex v = 0; v < g.order(); ++v) {
            Graph s = unit_sphere(g, v);
            Verdict sp = sphere(s, q - 1);
            if (sp == Verdict::yes)
                continue;
            Verdict bl = ball(s, q - 1);
            if (bl == Verdict::yes) {
                boundary.push_back(v);
                continue;
            }
            if (sp == Verdict::undecided || bl == Verdict::undecided) {
                undecided = true;
                continue;
            }
            r.witness = v;
            break;
        }
        if (r.witness) {
            Verdict c = contractible(g);
            r.kind = c == Verdict::yes         ? ManifoldKind::contractible
                     : c == Verdict::undecided ? ManifoldKind::undecided
                                               : ManifoldKind::not_manifold;
            return r;
        }
        if (undecided) {
            r.kind = ManifoldKind::undecided;
            return r;
        }
        if (boundary.empty()) {
            Verdict s = sphere_impl(g, q, std::nullopt, /*skip_local=*/true);
            r.kind = s == Verdict::yes         ? ManifoldKind::sphere
                     : s == Verdict::undecided ? ManifoldKind::undecided
                                               : ManifoldKind::manifold;
            return r;
        }
        r.boundary_vertices = boundary;
        Verdict b = ball(g, q);
        r.kind = b == Verdict::yes         ? ManifoldKind::ball
                 : b == Verdict::undecided ? ManifoldKind::undecided
                                           : ManifoldKind::manifold_with_boundary;
        return r;
    }

private:
    Verdict sphere_impl(const Graph& g, int dim, std::optional<Vertex> try_first,
                        bool skip_local = false)
    {
        if (dim < 0)
            return g.order() == 0 ? Verdict::yes : Verdict::no;
        if (g.order() == 0)
            return Verdict::no;
        const long long expected_chi = dim % 2 == 0 ? 2 : 0;
        if (euler_characteristic(g) != expected_chi)
            return Verdict::no;
        const std::string key = "S" + std::to_string(dim) + graph_key(g);
        if (auto it = memo_.find(key); it != memo_.end())
            return it->second;
        if (!spend())
            return Verdict::undecided;

        Verdict local = skip_local ? Verdict::yes : closed_manifold(g, dim);
        if (local != Verdict::yes)
            return remember(key, local);

        std::vector<Vertex> order;
        if (try_first)
            order.push_back(*try_first);
        for (Vertex v : vertices_by_degree(g))
            if (!try_first || v != *try_first)
                order.push_back(v);
        Verdict result = Verdict::no;
        for (Vertex v : order) {
            Verdict c = contractible(remove_vertex(g, v));
            if (c == Verdict::yes) {
                result = Verdict::yes;
                break;
            }
            if (c == Verdict::undecided)
                result = Verdict::undecided;
        }
        return remember(key, result);
    }

    static bool has_dominating_vertex(const Graph& g)
    {
        for (Vertex v = 0; v < g.order(); ++v)
            if (g.degree(v) + 1 == g.order())
                return true;
        return false;
    }

    static std::vector<Vertex> vertices_by_degree(const Graph& g)
    {
        std::vector<Vertex> order(g.order());
        std::iota(order.begin(), order.end(), Vertex{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](Vertex a, Vertex b) { return g.degree(a) < g.degree(b); });
        return order;
    }

    static std::size_t max_clique_size(const Graph& g) { return clique_number(g); }

    bool spend()
    {
        if (work_ >= work_cap_) {
            cap_hit_ = true;
            return false;
        }
        ++work_;
        return true;
    }

    Verdict remember(const std::string& key, Verdict v)
    {
        // undecided answers depend on the remaining budget and are not cached
        if (v != Verdict::undecided)
            memo_.emplace(key, v);
        return v;
    }

    std::size_t work_cap_;
    std::size_t work_ = 0;
    bool cap_hit_ = false;
    std::unordered_map<std::string, Verdict> memo_;
};

inline Verdict is_contractible(const Graph& g, std::size_t work_cap = 5'000'000)
{
    Recognizer r(work_cap);
    return r.contractible(g);
}

inline ManifoldReport classify(const Graph& g, std::size_t work_cap = 5'000'000)
{
    Recognizer r(work_cap);
    return r.classify(g);
}

} // namespace softbary

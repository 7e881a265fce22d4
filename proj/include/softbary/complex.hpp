#pragma once

#include "softbary/graph.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace softbary {

/// Sorted, duplicate-free, non-empty vertex set.
using Simplex = std::vector<Vertex>;

inline int dimension(const Simplex& s) { return static_cast<int>(s.size()) - 1; }

struct SimplexHash {
    std::size_t operator()(const Simplex& s) const noexcept
    {
        std::uint64_t h = 1469598103934665603ULL;
        for (Vertex v : s) {
            h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            h *= 1099511628211ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

inline Simplex make_simplex(std::vector<Vertex> vertices)
{
    if (vertices.empty())
        throw std::invalid_argument("simplex must be non-empty");
    std::sort(vertices.begin(), vertices.end());
    if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end())
        throw std::invalid_argument("simplex has repeated vertices");
    return vertices;
}

inline bool is_face_of(const Simplex& a, const Simplex& b)
{
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

/// Calls f on every non-empty proper subset of s (as a sorted Simplex).
template <typename F>
void for_each_proper_face(const Simplex& s, F&& f)
{
    const std::size_t k = s.size();
    if (k > 30)
        throw std::length_error("simplex too large for face enumeration");
    const std::uint32_t full = (1u << k) - 1;
    Simplex face;
    for (std::uint32_t mask = 1; mask < full; ++mask) {
        face.clear();
        for (std::size_t i = 0; i < k; ++i)
            if (mask & (1u << i))
                face.push_back(s[i]);
        f(face);
    }
}

/// Calls f on each codimension-one face of s.
template <typename F>
void for_each_facet_of(const Simplex& s, F&& f)
{
    if (s.size() < 2)
        return;
    Simplex face(s.size() - 1);
    for (std::size_t skip = 0; skip < s.size(); ++skip) {
        std::size_t j = 0;
        for (std::size_t i = 0; i < s.size(); ++i)
            if (i != skip)
                face[j++] = s[i];
        f(face);
    }
}

using FVector = std::vector<std::size_t>;

/**
 * Finite abstract simplicial complex, stratified by dimension.
 *
 * Vertex ids are those of whatever graph or complex the simplices came
 * from; they need not be dense. Each stratum is sorted lexicographically
 * and indexed for O(1) membership lookup.
 */
class SimplicialComplex {
public:
    SimplicialComplex() = default;

    /// Closure of the given simplices under taking non-empty subsets.
    static SimplicialComplex generated_by(std::span<const Simplex> generators)
    {
        std::vector<std::vector<Simplex>> strata;
        std::vector<std::unordered_map<Simplex, std::size_t, SimplexHash>> seen;
        auto insert = [&](const Simplex& s) {
            const auto d = static_cast<std::size_t>(dimension(s));
            if (strata.size() <= d) {
                strata.resize(d + 1);
                seen.resize(d + 1);
            }
            if (seen[d].emplace(s, 0).second)
                strata[d].push_back(s);
        };
        for (const auto& g : generators) {
            Simplex s = make_simplex(g);
            insert(s);
            for_each_proper_face(s, insert);
        }
        return SimplicialComplex(std::move(strata));
    }

    static SimplicialComplex generated_by(const std::vector<Simplex>& generators)
    {
        return generated_by(std::span<const Simplex>(generators));
    }

    /// Takes ownership of strata that are already closed under subsets.
    static SimplicialComplex from_closed_strata(std::vector<std::vector<Simplex>> strata)
    {
        return SimplicialComplex(std::move(strata));
    }

    int max_dimension() const { return static_cast<int>(strata_.size()) - 1; }
    bool empty() const { return strata_.empty(); }

    std::span<const Simplex> simplices(int dim) const
    {
        if (dim < 0 || dim > max_dimension())
            return {};
        return strata_[static_cast<std::size_t>(dim)];
    }

    std::size_t count(int dim) const { return simplices(dim).size(); }

    std::size_t total_count() const
    {
        std::size_t n = 0;
        for (const auto& s : strata_)
            n += s.size();
        return n;
    }

    /// Position of s inside its stratum.
    std::optional<std::size_t> index_of(const Simplex& s) const
    {
        const int d = dimension(s);
        if (d < 0 || d > max_dimension())
            return std::nullopt;
        const auto& idx = index_[static_cast<std::size_t>(d)];
        auto it = idx.find(s);
        if (it == idx.end())
            return std::nullopt;
        return it->second;
    }

    bool contains(const Simplex& s) const { return index_of(s).has_value(); }

    FVector f_vector() const
    {
        FVector f;
        for (const auto& s : strata_)
            f.push_back(s.size());
        return f;
    }

    long long euler_characteristic() const
    {
        long long chi = 0;
        for (std::size_t d = 0; d < strata_.size(); ++d)
            chi += (d % 2 == 0 ? 1 : -1) * static_cast<long long>(strata_[d].size());
        return chi;
    }

    /// True iff every maximal simplex has dimension max_dimension().
    bool is_pure() const
    {
        if (strata_.size() <= 1)
            return true;
        std::unordered_map<Simplex, bool, SimplexHash> covered;
        for (int d = max_dimension(); d >= 1; --d)
            for (const auto& s : simplices(d))
                if (d == max_dimension() || covered.count(s))
                    for_each_facet_of(s, [&](const Simplex& f) { covered[f] = true; });
        for (int d = 0; d < max_dimension(); ++d)
            for (const auto& s : simplices(d))
                if (!covered.count(s))
                    return false;
        return true;
    }

    /// 1-skeleton as a dense graph; vertex i is the i-th 0-simplex and is
    /// labelled with the original vertex id.
    Graph skeleton_graph() const
    {
        auto verts = simplices(0);
        std::unordered_map<Vertex, Vertex> pos;
        std::vector<Label> labels;
        for (std::size_t i = 0; i < verts.size(); ++i) {
            pos[verts[i][0]] = static_cast<Vertex>(i);
            labels.push_back(verts[i][0]);
        }
        std::vector<Edge> edges;
        for (const auto& e : simplices(1))
            edges.emplace_back(pos.at(e[0]), pos.at(e[1]));
        Graph g = Graph::from_edges(verts.size(), edges);
        g.set_labels(std::move(labels));
        return g;
    }

private:
    explicit SimplicialComplex(std::vector<std::vector<Simplex>> strata)
        : strata_(std::move(strata))
    {
        while (!strata_.empty() && strata_.back().empty())
            strata_.pop_back();
        index_.resize(strata_.size());
        for (std::size_t d = 0; d < strata_.size(); ++d) {
            std::sort(strata_[d].begin(), strata_[d].end());
            index_[d].reserve(strata_[d].size());
            for (std::size_t i = 0; i < strata_[d].size(); ++i)
                index_[d].emplace(strata_[d][i], i);
        }
    }

    std::vector<std::vector<Simplex>> strata_;
    std::vector<std::unordered_map<Simplex, std::size_t, SimplexHash>> index_;
};

namespace detail {

template <typename F>
void extend_cliques(const Graph& g, Simplex& clique, std::vector<Vertex>& candidates, F& f)
{
    f(clique);
    std::vector<Vertex> next;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        Vertex v = candidates[i];
        next.clear();
        auto nb = g.neighbors(v);
        std::set_intersection(candidates.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                              candidates.end(), nb.begin(), nb.end(),
                              std::back_inserter(next));
        clique.push_back(v);
        std::vector<Vertex> sub = next;
        extend_cliques(g, clique, sub, f);
        clique.pop_back();
    }
}

} // namespace detail

/// Calls f on every clique of g, each as a sorted vertex list.
template <typename F>
void for_each_clique(const Graph& g, F&& f)
{
    Simplex clique;
    for (Vertex v = 0; v < g.order(); ++v) {
        std::vector<Vertex> cand;
        for (Vertex w : g.neighbors(v))
            if (w > v)
                cand.push_back(w);
        clique.assign(1, v);
        detail::extend_cliques(g, clique, cand, f);
    }
}

/// Whitney (clique) complex: every vertex set of a complete subgraph.
inline SimplicialComplex whitney_complex(const Graph& g)
{
    std::vector<std::vector<Simplex>> strata;
    for_each_clique(g, [&](const Simplex& c) {
        const auto d = c.size() - 1;
        if (strata.size() <= d)
            strata.resize(d + 1);
        strata[d].push_back(c);
    });
    return SimplicialComplex::from_closed_strata(std::move(strata));
}

inline FVector f_vector(const SimplicialComplex& c) { return c.f_vector(); }

inline long long euler_characteristic(const SimplicialComplex& c)
{
    return c.euler_characteristic();
}

/// Clique counts per dimension without materialising the complex.
inline FVector clique_counts(const Graph& g)
{
    FVector f;
    for_each_clique(g, [&](const Simplex& c) {
        if (f.size() < c.size())
            f.resize(c.size(), 0);
        ++f[c.size() - 1];
    });
    return f;
}

/// Euler characteristic of the Whitney complex of g.
inline long long euler_characteristic(const Graph& g)
{
    long long chi = 0;
    for_each_clique(g, [&](const Simplex& c) { chi += (c.size() % 2 == 1) ? 1 : -1; });
    return chi;
}

inline std::size_t clique_number(const Graph& g)
{
    std::size_t best = 0;
    for_each_clique(g, [&](const Simplex& c) { best = std::max(best, c.size()); });
    return best;
}

} // namespace softbary

#pragma once

#include "softbary/chromatic.hpp"
#include "softbary/graph.hpp"
#include "softbary/refine.hpp"
#include "softbary/spectral.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace softbary::io {

using nlohmann::json;

/// Shortest text that reads back to the same double.
inline std::string format_double(double x)
{
    char buf[32];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, x);
        if (std::strtod(buf, nullptr) == x)
            break;
    }
    return buf;
}

// ---------------------------------------------------------------------------
// Graph JSON: {"vertices":[labels],"edges":[[a,b],...]}, edges sorted by label

inline json graph_to_json(const Graph& g)
{
    json j;
    j["vertices"] = g.labels();
    std::vector<std::pair<Label, Label>> edges;
    edges.reserve(g.size());
    for (auto [u, v] : g.edges()) {
        Label a = g.label(u), b = g.label(v);
        edges.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(edges.begin(), edges.end());
    json e = json::array();
    for (auto [a, b] : edges)
        e.push_back({a, b});
    j["edges"] = std::move(e);
    return j;
}

inline Graph graph_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
        throw std::invalid_argument("graph JSON: need \"vertices\" and \"edges\"");
    const auto labels = j.at("vertices").get<std::vector<Label>>();
    std::unordered_map<Label, Vertex> pos;
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (!pos.emplace(labels[i], static_cast<Vertex>(i)).second)
            throw std::invalid_argument("graph JSON: duplicate vertex label "
                                        + std::to_string(labels[i]));
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2)
            throw std::invalid_argument("graph JSON: edges must be pairs");
        auto a = pos.find(e[0].get<Label>()), b = pos.find(e[1].get<Label>());
        if (a == pos.end() || b == pos.end())
            throw std::invalid_argument("graph JSON: edge endpoint is not a vertex");
        edges.emplace_back(a->second, b->second);
    }
    Graph g = Graph::from_edges(labels.size(), edges);
    g.set_labels(labels);
    return g;
}

/// Graph JSON plus "provenance": [[label, [simplex]], ...]. Simplex vertices
/// are written as labels of `source` when it is given.
inline json refined_to_json(const RefinedGraph& r, const Graph* source = nullptr)
{
    json j = graph_to_json(r.graph);
    json p = json::array();
    for (Vertex v = 0; v < r.graph.order(); ++v) {
        std::vector<Label> simplex;
        for (Vertex x : r.provenance[v])
            simplex.push_back(source ? source->label(x) : static_cast<Label>(x));
        p.push_back({r.graph.label(v), simplex});
    }
    j["provenance"] = std::move(p);
    if (r.non_pure_input)
        j["nonPureInput"] = true;
    return j;
}

// ---------------------------------------------------------------------------
// Colourings and censuses

inline json coloring_to_json(const Graph& g, const Coloring& col, bool verified,
                             bool kempe)
{
    json c = json::array();
    for (Vertex v = 0; v < g.order(); ++v)
        c.push_back({g.label(v), col.colors[v]});
    return {{"colors", std::move(c)}, {"verified", verified}, {"kempeFree", kempe}};
}

/// Reads the colour of each vertex of g by label.
inline Coloring coloring_from_json(const Graph& g, const json& j)
{
    std::unordered_map<Label, Vertex> pos;
    for (Vertex v = 0; v < g.order(); ++v)
        pos.emplace(g.label(v), v);
    Coloring col;
    col.colors.assign(g.order(), -1);
    for (const auto& e : j.at("colors")) {
        auto it = pos.find(e.at(0).get<Label>());
        if (it == pos.end())
            throw std::invalid_argument("coloring JSON: unknown vertex");
        col.colors[it->second] = e.at(1).get<int>();
    }
    return col;
}

inline json census_to_json(const EdgeCensus& c)
{
    auto side = [](const std::map<std::size_t, std::size_t>& m) {
        json o = json::object();
        for (auto [deg, count] : m)
            o[std::to_string(deg)] = count;
        return o;
    };
    return {{"interior", side(c.interior)}, {"boundary", side(c.boundary)}};
}

// ---------------------------------------------------------------------------
// CSV

inline std::string eigenvalues_csv(const SpectralSummary& s)
{
    std::string out;
    for (double x : s.values) {
        out += format_double(x);
        out += '\n';
    }
    return out;
}

inline std::string histogram_csv(const DosHistogram& h)
{
    std::string out = "binLeft,binRight,mass\n";
    for (std::size_t i = 0; i < h.bins(); ++i)
        out += format_double(h.left(i)) + ',' + format_double(h.right(i)) + ','
               + format_double(h.masses[i]) + '\n';
    return out;
}

inline DosHistogram histogram_from_csv(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "binLeft,binRight,mass")
        throw std::invalid_argument("histogram CSV: bad header");
    DosHistogram h;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        double l = 0, r = 0, m = 0;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &l, &r, &m) != 3)
            throw std::invalid_argument("histogram CSV: bad row: " + line);
        if (first)
            h.lo = l;
        first = false;
        h.hi = r;
        h.masses.push_back(m);
    }
    return h;
}

// ---------------------------------------------------------------------------
// Files

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << text;
}

/// Compact serialisation with sorted keys and a trailing newline.
inline std::string dump(const json& j) { return j.dump() + '\n'; }

inline Graph read_graph(const std::string& path)
{
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
    return graph_from_json(j);
}

} // namespace softbary::io

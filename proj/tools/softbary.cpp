// softbary: command line front end for refinement, spectral and colouring
// experiments. Every command prints a one-line JSON summary on stdout.
//
// Exit status: 0 success, 1 verified failure report, 2 usage or input error.

#include "softbary/canonical.hpp"
#include "softbary/chromatic.hpp"
#include "softbary/complex.hpp"
#include "softbary/generators.hpp"
#include "softbary/io.hpp"
#include "softbary/manifold.hpp"
#include "softbary/refine.hpp"
#include "softbary/spectral.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

using namespace softbary;
using io::json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Verified failure: the summary is printed and the exit status is 1.
struct ReportedFailure {
    json summary;
};

struct Source {
    std::string in;
    std::string gen;
};

void add_source(CLI::App* cmd, Source& s)
{
    cmd->add_option("--in", s.in, "input graph JSON");
    cmd->add_option("--gen", s.gen, "generator expression, e.g. flat-torus:4,4 or icosahedron+cycle:4");
}

Graph load(const Source& s)
{
    if (s.in.empty() == s.gen.empty())
        throw UsageError("exactly one of --in and --gen is required");
    if (!s.in.empty())
        return io::read_graph(s.in);
    return generate_expr(s.gen);
}

std::size_t work_cap = 5'000'000;

/// f-vector, Euler characteristic and classification of g.
json describe(const Graph& g)
{
    auto c = whitney_complex(g);
    auto rep = classify(g, work_cap);
    json cls = {{"kind", std::string(to_string(rep.kind))}, {"dimension", rep.dimension}};
    if (rep.is_bounded_manifold())
        cls["boundaryVertices"] = rep.boundary_vertices.size();
    return {{"vertices", g.order()},
            {"edges", g.size()},
            {"fvector", c.f_vector()},
            {"euler", c.euler_characteristic()},
            {"classification", std::move(cls)}};
}

json summary(const std::string& command, const Graph& g)
{
    json j = describe(g);
    j["command"] = command;
    return j;
}

void write_if(const std::string& path, const std::string& text)
{
    if (!path.empty())
        io::write_file(path, text);
}

std::optional<std::pair<double, double>> hist_range(std::optional<double> lo,
                                                    std::optional<double> hi)
{
    if (lo.has_value() != hi.has_value())
        throw UsageError("--lo and --hi must be given together");
    if (!lo)
        return std::nullopt;
    if (!(*lo < *hi))
        throw UsageError("--lo must be below --hi");
    return std::make_pair(*lo, *hi);
}

Coloring dual_coloring_for(const SimplicialComplex& c, AcyclicMode mode, DualColoring* out)
{
    AcyclicOptions opt;
    opt.mode = mode;
    *out = dual_acyclic_3color(c, opt);
    return out->coloring;
}

AcyclicMode parse_mode(const std::string& m)
{
    if (m == "all-pairs")
        return AcyclicMode::all_pairs;
    if (m == "forest-pair")
        return AcyclicMode::forest_pair;
    throw UsageError("unknown mode " + m);
}

json certificate(const DualColoring& d)
{
    json off = json::array();
    for (Vertex v : d.offending)
        off.push_back(d.facets[v]);
    return {{"reason", d.failure_reason}, {"offendingFacets", std::move(off)}};
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Soft Barycentric refinement toolkit"};
    app.require_subcommand(1);
    app.add_option("--work-cap", work_cap, "recognizer work cap for classifications");

    Source src;
    std::string out, out_dir, other;
    int steps = 1;
    bool soft = false, strong = false;
    std::size_t bins = 128, grid = 400, budget = 10'000'000;
    std::optional<double> lo, hi;
    double z = 0.0;
    std::string name, mode = "all-pairs", refiner = "soft", measure = "facets";
    std::vector<long> params;
    bool exact = false, construct = false, sphere = false;

    auto* gen = app.add_subcommand("gen", "generate a named graph");
    gen->add_option("--name", name, "generator name or expression")->required();
    gen->add_option("--params", params, "generator parameters");
    gen->add_option("--out", out, "output graph JSON");

    auto* refine = app.add_subcommand("refine", "soft or strong Barycentric refinement");
    add_source(refine, src);
    auto* soft_flag = refine->add_flag("--soft", soft, "soft refinement (phi)");
    refine->add_flag("--strong", strong, "strong refinement (psi)")->excludes(soft_flag);
    refine->add_option("--steps", steps, "number of refinement steps")->check(CLI::PositiveNumber);
    refine->add_option("--out", out, "output graph JSON with provenance of the last step");

    auto* cls = app.add_subcommand("classify", "manifold classification");
    add_source(cls, src);

    auto* dual = app.add_subcommand("dual", "dual graph of the Whitney complex");
    add_source(dual, src);
    dual->add_option("--out", out, "output graph JSON");

    auto* fvec = app.add_subcommand("fvector", "f-vector and Euler characteristic");
    add_source(fvec, src);

    auto* spec = app.add_subcommand("spectrum", "Kirchhoff eigenvalues");
    add_source(spec, src);
    spec->add_option("--out", out, "eigenvalue CSV");

    auto* dosc = app.add_subcommand("dos", "density of states histogram");
    add_source(dosc, src);
    dosc->add_option("--bins", bins)->check(CLI::PositiveNumber);
    dosc->add_option("--lo", lo);
    dosc->add_option("--hi", hi);
    dosc->add_option("--out", out, "histogram CSV");

    auto* hex = app.add_subcommand("hexdos", "hexagonal lattice density of states");
    hex->add_option("--grid", grid)->check(CLI::Range(16, 100000));
    hex->add_option("--bins", bins)->check(CLI::PositiveNumber);
    hex->add_option("--lo", lo);
    hex->add_option("--hi", hi);
    hex->add_option("--out", out, "histogram CSV");

    auto* conv = app.add_subcommand("converge", "spectral convergence under repeated refinement");
    add_source(conv, src);
    conv->add_option("--steps", steps)->check(CLI::Range(2, 12));
    conv->add_option("--refiner", refiner)->check(CLI::IsMember({"soft", "strong"}));
    conv->add_option("--bins", bins)->check(CLI::PositiveNumber);
    conv->add_option("--lo", lo);
    conv->add_option("--hi", hi);
    conv->add_option("--out-dir", out_dir, "directory for experiment.json and histograms");

    auto* tf = app.add_subcommand("treeforest", "pseudo-determinant and forest determinant");
    add_source(tf, src);

    auto* pot = app.add_subcommand("potential", "spectral potential at z");
    add_source(pot, src);
    pot->add_option("--z", z)->required();

    auto* color = app.add_subcommand("color", "colour a graph or its soft refinement");
    add_source(color, src);
    auto* exact_flag = color->add_flag("--exact", exact, "exact chromatic number of the input");
    auto* construct_flag =
        color->add_flag("--construct", construct, "construct a colouring of the soft refinement");
    exact_flag->excludes(construct_flag);
    color->add_flag("--sphere", sphere, "with --construct: 2-sphere face propagation")
        ->needs(construct_flag);
    color->add_option("--budget", budget, "branch node budget for --exact");
    color->add_option("--out", out, "coloring JSON");

    auto* dcol = app.add_subcommand("dualcolor", "acyclic 3-colouring of the dual graph");
    add_source(dcol, src);
    dcol->add_option("--mode", mode)->check(CLI::IsMember({"all-pairs", "forest-pair"}));
    dcol->add_option("--out", out, "coloring JSON of the dual");

    auto* fcov = app.add_subcommand("forestcover", "two induced forests covering the dual graph");
    add_source(fcov, src);
    fcov->add_option("--mode", mode)->check(CLI::IsMember({"all-pairs", "forest-pair"}));
    fcov->add_option("--out", out, "forest cover JSON");

    auto* fisk = app.add_subcommand("fisk", "simplices with odd dual circles");
    add_source(fisk, src);
    fisk->add_option("--out", out, "Fisk complex JSON");

    auto* census = app.add_subcommand("edgecensus", "edge degree census");
    add_source(census, src);
    census->add_option("--measure", measure)->check(CLI::IsMember({"facets", "circle"}));
    census->add_option("--out", out, "census JSON");

    auto* dist = app.add_subcommand("distance", "edge symmetric difference of two graphs");
    add_source(dist, src);
    dist->add_option("--other", other, "second graph JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        json s;
        if (gen->parsed()) {
            Graph g = params.empty() ? generate_expr(name) : generate(name, params);
            write_if(out, io::dump(io::graph_to_json(g)));
            s = summary("gen", g);
        } else if (refine->parsed()) {
            Graph g = load(src);
            if (!soft && !strong)
                throw UsageError("refine needs --soft or --strong");
            Graph prev = g;
            RefinedGraph r;
            for (int i = 0; i < steps; ++i) {
                auto c = whitney_complex(prev);
                r = soft ? soft_barycentric(c) : barycentric(c);
                if (i + 1 < steps)
                    prev = r.graph;
            }
            write_if(out, io::dump(io::refined_to_json(r, &prev)));
            s = summary("refine", r.graph);
            s["operator"] = soft ? "soft" : "strong";
            s["steps"] = steps;
            if (r.non_pure_input)
                s["nonPureInput"] = true;
        } else if (cls->parsed()) {
            Graph g = load(src);
            s = summary("classify", g);
        } else if (dual->parsed()) {
            Graph g = load(src);
            Graph d = dual_graph(whitney_complex(g));
            write_if(out, io::dump(io::graph_to_json(d)));
            s = summary("dual", g);
            s["dual"] = {{"vertices", d.order()}, {"edges", d.size()}};
        } else if (fvec->parsed()) {
            s = summary("fvector", load(src));
        } else if (spec->parsed()) {
            Graph g = load(src);
            auto sp = spectrum(g, dense_cap_from_env());
            write_if(out, io::eigenvalues_csv(sp));
            s = summary("spectrum", g);
            s["lambdaMax"] = sp.values.empty() ? 0.0 : sp.values.back();
        } else if (dosc->parsed()) {
            Graph g = load(src);
            auto range = hist_range(lo, hi);
            const std::size_t cap = dense_cap_from_env();
            DosHistogram h;
            if (g.order() <= cap) {
                h = dos(spectrum(g, cap), bins, range);
            } else {
                auto r = range.value_or(std::make_pair(0.0, 2.0 * g.max_degree() + 1.0));
                h = dos_by_counting(kirchhoff(g), bins, r.first, r.second);
            }
            write_if(out, io::histogram_csv(h));
            s = summary("dos", g);
            s["bins"] = h.bins();
            s["mass"] = h.total();
            s["countingMode"] = g.order() > cap;
        } else if (hex->parsed()) {
            auto h = hex_dos(grid, bins, hist_range(lo, hi).value_or(std::make_pair(0.0, 9.0)));
            write_if(out, io::histogram_csv(h));
            s = {{"command", "hexdos"}, {"grid", grid}, {"bins", h.bins()}, {"mass", h.total()}};
        } else if (conv->parsed()) {
            Graph g = load(src);
            ConvergenceOptions opt;
            opt.bins = bins;
            opt.dense_cap = dense_cap_from_env();
            opt.range = hist_range(lo, hi);
            auto rep = convergence_experiment(
                g, steps, refiner == "soft" ? Refiner::soft : Refiner::strong, opt);
            json report;
            json js = json::array();
            for (std::size_t i = 0; i < rep.steps.size(); ++i) {
                const auto& st = rep.steps[i];
                const std::string ref = "step" + std::to_string(i) + ".csv";
                json e = {{"fvector", st.fvector},
                          {"order", st.order},
                          {"countingMode", st.counting_mode},
                          {"histogramRef", ref}};
                e["l1ToNext"] = st.l1_to_next ? json(*st.l1_to_next) : json(nullptr);
                js.push_back(std::move(e));
                if (!out_dir.empty()) {
                    std::filesystem::create_directories(out_dir);
                    io::write_file(out_dir + "/" + ref, io::histogram_csv(st.histogram));
                }
            }
            report["steps"] = std::move(js);
            report["final"] = {{"histogramRef", "final.csv"}};
            if (!out_dir.empty()) {
                io::write_file(out_dir + "/final.csv", io::histogram_csv(rep.final_dos));
                io::write_file(out_dir + "/experiment.json", io::dump(report));
            }
            s = summary("converge", g);
            json l1 = json::array();
            for (const auto& st : rep.steps)
                if (st.l1_to_next)
                    l1.push_back(*st.l1_to_next);
            s["l1ToNext"] = std::move(l1);
            s["finalOrder"] = rep.final_graph.order();
        } else if (tf->parsed()) {
            Graph g = load(src);
            auto r = tree_forest(g);
            s = summary("treeforest", g);
            s["connected"] = r.connected;
            s["logPseudoDeterminant"] = r.log_pseudo_determinant;
            s["logForestDeterminant"] = r.log_forest_determinant;
            s["treeForestIndex"] = r.tree_forest_index;
            if (r.pseudo_determinant)
                s["pseudoDeterminant"] = *r.pseudo_determinant;
            if (r.forest_determinant)
                s["forestDeterminant"] = *r.forest_determinant;
        } else if (pot->parsed()) {
            Graph g = load(src);
            auto p = potential(spectrum(g, dense_cap_from_env()), z);
            s = summary("potential", g);
            s["z"] = z;
            s["value"] = p.value;
            s["omitted"] = p.omitted;
        } else if (color->parsed()) {
            Graph g = load(src);
            if (exact == construct)
                throw UsageError("color needs --exact or --construct");
            if (exact) {
                auto r = chromatic_number(g, budget);
                const bool ok = g.order() == 0 || verify_coloring(g, r.witness);
                write_if(out, io::dump(io::coloring_to_json(g, r.witness, ok,
                                                            g.order() == 0 || kempe_free(g, r.witness))));
                s = summary("color", g);
                s["exact"] = r.exact;
                s["lower"] = r.lower;
                s["upper"] = r.upper;
                s["nodes"] = r.nodes;
            } else {
                auto c = whitney_complex(g);
                RefinementColoring rc;
                s = summary("color", g);
                if (sphere) {
                    auto col = chromatic_number(g, budget);
                    auto sr = color_2sphere_refinement(c, col.witness);
                    rc = std::move(sr.result);
                    s["eulerian"] = sr.eulerian;
                    s["ruleClosed"] = sr.rule_closed;
                    s["method"] = sr.method;
                    if (sr.conflict)
                        s["conflict"] = {rc.refined.provenance[sr.conflict->first],
                                         rc.refined.provenance[sr.conflict->second]};
                } else {
                    DualColoring d;
                    Coloring dc = dual_coloring_for(c, AcyclicMode::all_pairs, &d);
                    if (!d.success)
                        dc = dual_coloring_for(c, AcyclicMode::forest_pair, &d);
                    if (!d.success)
                        dc = chromatic_number(d.dual, budget).witness;
                    rc = color_soft_refinement(c, dc);
                    s["dualColors"] = dc.color_count();
                }
                const Graph& rg = rc.refined.graph;
                write_if(out, io::dump(io::coloring_to_json(
                                  rg, rc.coloring, rc.verified,
                                  rc.verified && kempe_free(rg, rc.coloring))));
                s["refinedVertices"] = rg.order();
                s["colors"] = rc.coloring.color_count();
                s["verified"] = rc.verified;
                if (!rc.verified)
                    throw ReportedFailure{s};
            }
        } else if (dcol->parsed() || fcov->parsed()) {
            const bool cover = fcov->parsed();
            Graph g = load(src);
            auto c = whitney_complex(g);
            DualColoring d;
            dual_coloring_for(c, parse_mode(mode), &d);
            s = summary(cover ? "forestcover" : "dualcolor", g);
            s["mode"] = mode;
            s["dual"] = {{"vertices", d.dual.order()}, {"edges", d.dual.size()}};
            s["success"] = d.success;
            if (!d.success) {
                s["failure"] = certificate(d);
                throw ReportedFailure{s};
            }
            s["method"] = d.method;
            s["colors"] = d.coloring.color_count();
            s["kempeFree"] = kempe_free(d.dual, d.coloring);
            if (cover) {
                auto fc = two_forest_cover(d.dual, d.coloring);
                s["parts"] = fc.parts.size();
                s["verified"] = verify_forest_cover(d.dual, fc);
                json parts = json::array();
                for (const auto& p : fc.parts)
                    parts.push_back(p);
                write_if(out, io::dump({{"parts", std::move(parts)},
                                        {"dual", io::graph_to_json(d.dual)}}));
            } else {
                write_if(out, io::dump(io::coloring_to_json(d.dual, d.coloring, true,
                                                            s["kempeFree"].get<bool>())));
            }
        } else if (fisk->parsed()) {
            Graph g = load(src);
            auto fk = fisk_complex(whitney_complex(g));
            s = summary("fisk", g);
            s["simplices"] = fk.simplices.size();
            s["components"] = fk.components.size();
            json comps = json::array();
            for (const auto& comp : fk.components) {
                json labelled = json::array();
                for (const auto& x : comp.simplices) {
                    std::vector<Label> l;
                    for (Vertex v : x)
                        l.push_back(g.label(v));
                    labelled.push_back(l);
                }
                comps.push_back({{"simplices", std::move(labelled)},
                                 {"fvector", comp.complex.f_vector()}});
            }
            json lengths = fk.circle_lengths;
            write_if(out, io::dump({{"dimension", fk.dimension},
                                    {"circleLengths", std::move(lengths)},
                                    {"components", std::move(comps)}}));
        } else if (census->parsed()) {
            Graph g = load(src);
            auto e = edge_degree_stats(whitney_complex(g), measure == "facets"
                                                               ? EdgeDegree::facets
                                                               : EdgeDegree::circle_vertices);
            json cj = io::census_to_json(e);
            write_if(out, io::dump(cj));
            s = summary("edgecensus", g);
            s["measure"] = measure;
            s["census"] = std::move(cj);
        } else if (dist->parsed()) {
            Graph g = load(src);
            Graph h = io::read_graph(other);
            s = summary("distance", g);
            s["distance"] = graph_distance(g, h);
        }
        std::cout << s.dump() << '\n';
        return 0;
    } catch (const ReportedFailure& f) {
        std::cout << f.summary.dump() << '\n';
        return 1;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

#include "cli_run.hpp"
#include "oracles.hpp"

#include "softbary/generators.hpp"
#include "softbary/io.hpp"

#include <gtest/gtest.h>

using namespace softbary;
using io::json;

TEST(GraphJson, Format)
{
    EXPECT_EQ(io::graph_to_json(cycle_graph(3)).dump(),
              R"({"edges":[[0,1],[0,2],[1,2]],"vertices":[0,1,2]})");
}

TEST(GraphJson, RoundTripIsByteIdentical)
{
    std::mt19937 rng(89);
    for (int t = 0; t < 20; ++t) {
        Graph g = oracle::random_graph(15, 0.3, rng);
        const std::string a = io::dump(io::graph_to_json(g));
        Graph h = io::graph_from_json(json::parse(a));
        EXPECT_TRUE(g == h);
        EXPECT_EQ(io::dump(io::graph_to_json(h)), a);
    }
}

TEST(GraphJson, KeepsLabels)
{
    auto j = json::parse(R"({"vertices":[10,3,7],"edges":[[7,10],[3,7]]})");
    Graph g = io::graph_from_json(j);
    EXPECT_EQ(g.order(), 3u);
    EXPECT_EQ(g.size(), 2u);
    EXPECT_EQ(g.label(0), 10);
    EXPECT_TRUE(g.has_edge(0, 2));
    EXPECT_EQ(io::graph_to_json(g).dump(), R"({"edges":[[3,7],[7,10]],"vertices":[10,3,7]})");
}

TEST(GraphJson, Errors)
{
    EXPECT_THROW(io::graph_from_json(json::parse(R"({"vertices":[0,0],"edges":[]})")),
                 std::invalid_argument);
    EXPECT_THROW(io::graph_from_json(json::parse(R"({"vertices":[0,1],"edges":[[0,2]]})")),
                 std::invalid_argument);
    EXPECT_THROW(io::graph_from_json(json::parse(R"({"vertices":[0,1],"edges":[[0]]})")),
                 std::invalid_argument);
    EXPECT_THROW(io::graph_from_json(json::parse(R"({"edges":[]})")), std::invalid_argument);
    EXPECT_THROW(io::graph_from_json(json::parse(R"({"vertices":[0,1],"edges":[[1,1]]})")),
                 std::invalid_argument);
}

TEST(RefinedJson, Provenance)
{
    auto r = barycentric(whitney_complex(complete_graph(2)));
    auto j = io::refined_to_json(r);
    ASSERT_EQ(j["provenance"].size(), 3u);
    std::set<std::vector<Label>> simplices;
    for (const auto& p : j["provenance"])
        simplices.insert(p[1].get<std::vector<Label>>());
    EXPECT_EQ(simplices, (std::set<std::vector<Label>>{{0}, {1}, {0, 1}}));
    EXPECT_FALSE(j.contains("nonPureInput"));
}

TEST(ColoringJson, RoundTrip)
{
    Graph g = cycle_graph(4);
    Coloring col{{0, 1, 0, 2}};
    auto j = io::coloring_to_json(g, col, true, true);
    EXPECT_EQ(j.dump(), R"({"colors":[[0,0],[1,1],[2,0],[3,2]],"kempeFree":true,"verified":true})");
    EXPECT_EQ(io::coloring_from_json(g, j).colors, col.colors);
}

TEST(CensusJson, Format)
{
    EdgeCensus c;
    c.interior = {{4, 6}, {6, 8}};
    c.boundary = {{2, 3}};
    EXPECT_EQ(io::census_to_json(c).dump(), R"({"boundary":{"2":3},"interior":{"4":6,"6":8}})");
}

TEST(Csv, Eigenvalues)
{
    EXPECT_EQ(io::eigenvalues_csv(SpectralSummary{{0.0, 2.0, 0.1}}), "0\n2\n0.1\n");
}

TEST(Csv, HistogramRoundTrip)
{
    auto h = dos(spectrum(icosahedron()), 7);
    auto text = io::histogram_csv(h);
    EXPECT_EQ(text.substr(0, 22), "binLeft,binRight,mass\n");
    auto back = io::histogram_from_csv(text);
    EXPECT_EQ(back.lo, h.lo);
    EXPECT_EQ(back.hi, h.hi);
    EXPECT_EQ(back.masses, h.masses);
    EXPECT_EQ(io::histogram_csv(back), text);
    EXPECT_THROW(io::histogram_from_csv("a,b,c\n"), std::invalid_argument);
}

TEST(FormatDouble, ShortestRoundTrip)
{
    for (double x : {0.0, 1.0, 0.1, 1.0 / 3.0, 8.391701949150146, 1e-300, -2.5})
        EXPECT_EQ(std::strtod(io::format_double(x).c_str(), nullptr), x);
    EXPECT_EQ(io::format_double(0.5), "0.5");
}

// ---------------------------------------------------------------------------
// CLI

TEST(Cli, GenRefineDos)
{
    cli::ScratchDir d;
    auto gen = cli::run(d, "gen --name icosahedron --out g.json");
    ASSERT_EQ(gen.exit_code, 0);
    auto summary = json::parse(gen.out);
    EXPECT_EQ(summary["vertices"], 12);
    EXPECT_EQ(io::read_graph(d.file("g.json")).order(), 12u);

    auto ref = cli::run(d, "refine --soft --steps 1 --in g.json --out g1.json");
    ASSERT_EQ(ref.exit_code, 0);
    EXPECT_EQ(json::parse(ref.out)["fvector"], json({32, 90, 60}));
    auto refined = json::parse(cli::slurp(d.file("g1.json")));
    EXPECT_EQ(refined["provenance"].size(), 32u);

    auto h = cli::run(d, "dos --in g1.json --bins 256 --out h.csv");
    ASSERT_EQ(h.exit_code, 0);
    auto hist = io::histogram_from_csv(cli::slurp(d.file("h.csv")));
    EXPECT_EQ(hist.bins(), 256u);
    EXPECT_NEAR(hist.total(), 1.0, 1e-12);
}

TEST(Cli, GenParseSerializeIdentity)
{
    cli::ScratchDir d;
    for (const char* name : {"icosahedron", "projective-plane", "flat-torus --params 4 5",
                             "icosahedron+cycle:4"}) {
        ASSERT_EQ(cli::run(d, std::string("gen --name ") + name + " --out g.json").exit_code, 0);
        const std::string text = cli::slurp(d.file("g.json"));
        EXPECT_EQ(io::dump(io::graph_to_json(io::graph_from_json(json::parse(text)))), text)
            << name;
    }
}

TEST(Cli, ReproducibleArtifacts)
{
    cli::ScratchDir a, b;
    const std::string cmds[] = {
        "gen --name flat-torus --params 4 4 --out g.json",
        "refine --soft --steps 2 --in g.json --out r.json",
        "spectrum --in r.json --out ev.csv",
        "color --construct --in g.json --out col.json",
        "dualcolor --mode forest-pair --in g.json --out dual.json",
        "converge --gen cycle:5 --steps 2 --bins 16 --out-dir conv",
    };
    for (const auto& c : cmds) {
        auto ra = cli::run(a, c), rb = cli::run(b, c);
        EXPECT_EQ(ra.exit_code, 0) << c;
        EXPECT_EQ(ra.out, rb.out) << c;
    }
    for (const char* f : {"g.json", "r.json", "ev.csv", "col.json", "dual.json",
                          "conv/experiment.json", "conv/final.csv"}) {
        const auto x = cli::slurp(a.file(f));
        EXPECT_FALSE(x.empty()) << f;
        EXPECT_EQ(x, cli::slurp(b.file(f))) << f;
    }
}

TEST(Cli, ExitCodes)
{
    cli::ScratchDir d;
    EXPECT_EQ(cli::run(d, "classify --gen octahedron").exit_code, 0);
    // verified failure with a certificate
    auto fail = cli::run(d, "dualcolor --gen octahedron");
    EXPECT_EQ(fail.exit_code, 1);
    EXPECT_FALSE(json::parse(fail.out)["failure"]["offendingFacets"].empty());
    // usage errors
    EXPECT_EQ(cli::run(d, "refine --gen octahedron").exit_code, 2);
    EXPECT_EQ(cli::run(d, "classify").exit_code, 2);
    EXPECT_EQ(cli::run(d, "classify --gen octahedron --in x.json").exit_code, 2);
    EXPECT_EQ(cli::run(d, "nonsense").exit_code, 2);
    EXPECT_EQ(cli::run(d, "classify --in missing.json").exit_code, 2);
    EXPECT_EQ(cli::run(d, "gen --name no-such-graph").exit_code, 2);
    EXPECT_EQ(cli::run(d, "--help").exit_code, 0);
}

TEST(Cli, Summaries)
{
    cli::ScratchDir d;
    auto c = json::parse(cli::run(d, "classify --gen wheel:6").out);
    EXPECT_EQ(c["classification"]["kind"], "ball");
    EXPECT_EQ(c["classification"]["boundaryVertices"], 6);

    auto col = json::parse(cli::run(d, "color --exact --gen icosahedron").out);
    EXPECT_EQ(col["upper"], 4);
    EXPECT_EQ(col["exact"], true);

    auto dist = cli::run(d, "gen --name cycle --params 4 --out a.json");
    ASSERT_EQ(dist.exit_code, 0);
    auto r = json::parse(cli::run(d, "distance --in a.json --other a.json").out);
    EXPECT_EQ(r["distance"], 0);

    auto census = json::parse(cli::run(d, "edgecensus --gen cycle:4+cycle:4").out);
    EXPECT_EQ(census["census"]["interior"]["4"], 24);
}

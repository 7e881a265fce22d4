#include "oracles.hpp"

#include "softbary/generators.hpp"
#include "softbary/spectral.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace softbary;

namespace {

/// Dense eigenvalue count below t, from the oracle solve.
std::size_t dense_count(const SpectralSummary& s, double t)
{
    return static_cast<std::size_t>(std::lower_bound(s.values.begin(), s.values.end(), t)
                                    - s.values.begin());
}

/// Midpoint-rule integral of |F_a - F_b| on a fine grid.
double sampled_l1(const SpectralSummary& a, const SpectralSummary& b, int grid)
{
    double s = 0;
    for (int i = 0; i < grid; ++i) {
        const double x = (i + 0.5) / grid;
        s += std::abs(a.F(x) - b.F(x));
    }
    return s / grid;
}

Graph connected_random(std::size_t n, double p, std::mt19937& rng)
{
    while (true) {
        Graph g = oracle::random_graph(n, p, rng);
        if (is_connected(g))
            return g;
    }
}

} // namespace

TEST(Kirchhoff, Examples)
{
    Eigen::MatrixXd k2 = kirchhoff(complete_graph(2)).dense();
    EXPECT_EQ(k2(0, 0), 1);
    EXPECT_EQ(k2(0, 1), -1);
    EXPECT_EQ(k2(1, 0), -1);
    EXPECT_EQ(k2(1, 1), 1);
    for (int i = 0; i < 4; ++i) {
        EXPECT_EQ(kirchhoff(cycle_graph(4)).dense()(i, i), 2);
        EXPECT_EQ(kirchhoff(complete_graph(4)).dense()(i, i), 3);
    }
}

TEST(Kirchhoff, RowSumsAndTrace)
{
    std::mt19937 rng(53);
    for (int t = 0; t < 20; ++t) {
        Graph g = oracle::random_graph(30, 0.2, rng);
        Eigen::MatrixXd k = kirchhoff(g).dense();
        for (Eigen::Index i = 0; i < k.rows(); ++i)
            EXPECT_EQ(k.row(i).sum(), 0.0);
        EXPECT_TRUE(k.isApprox(k.transpose()));
        auto s = spectrum(g);
        double sum = 0;
        for (double x : s.values)
            sum += x;
        EXPECT_NEAR(sum, 2.0 * static_cast<double>(g.size()), 1e-8 * (1.0 + 2.0 * g.size()));
        EXPECT_GT(s.values.front(), -1e-9);
    }
}

TEST(Eigenvalues, Examples)
{
    for (std::size_t n = 2; n <= 7; ++n) {
        auto s = spectrum(complete_graph(n));
        EXPECT_NEAR(s.values[0], 0.0, 1e-9);
        for (std::size_t i = 1; i < n; ++i)
            EXPECT_NEAR(s.values[i], static_cast<double>(n), 1e-9);
    }
    auto c4 = spectrum(cycle_graph(4));
    const double want[] = {0, 2, 2, 4};
    for (int i = 0; i < 4; ++i)
        EXPECT_NEAR(c4.values[static_cast<std::size_t>(i)], want[i], 1e-9);
    auto k2 = spectrum(complete_graph(2));
    EXPECT_NEAR(k2.values[1], 2.0, 1e-12);
}

TEST(Eigenvalues, CycleSpectrumFormula)
{
    for (std::size_t n : {5u, 9u, 16u}) {
        std::vector<double> want;
        for (std::size_t k = 0; k < n; ++k)
            want.push_back(2.0 - 2.0 * std::cos(2.0 * std::numbers::pi * k / n));
        std::sort(want.begin(), want.end());
        auto s = spectrum(cycle_graph(n));
        for (std::size_t i = 0; i < n; ++i)
            EXPECT_NEAR(s.values[i], want[i], 1e-9);
    }
}

TEST(Eigenvalues, DenseCap)
{
    EXPECT_THROW(spectrum(cycle_graph(50), 10), DenseCapExceeded);
}

TEST(Eigenvalues, BoundedByTwiceMaxDegree)
{
    for (const Graph& g : {octahedron(), icosahedron(), flat_torus(4, 4), projective_plane(),
                           wheel_graph(7), complete_graph(6), grotzsch_example(),
                           generate_expr("cycle:4+cycle:4"),
                           generate_expr("cycle:5+cycle:5+cycle:5")}) {
        auto s = spectrum(g);
        EXPECT_LE(s.values.back(), 2.0 * static_cast<double>(g.max_degree()) + 1e-9);
    }
}

TEST(SpectralCount, Examples)
{
    EXPECT_EQ(spectral_count(kirchhoff(complete_graph(4)), 1.0).count, 1u);
    EXPECT_EQ(spectral_count(kirchhoff(cycle_graph(4)), 3.0).count, 3u);
}

TEST(SpectralCount, ShiftsOffEigenvalues)
{
    // t = 2 is an eigenvalue of C4; the shifted count must be that of 2 + eps
    auto r = spectral_count(kirchhoff(cycle_graph(4)), 2.0);
    EXPECT_GT(r.retries, 0);
    EXPECT_GT(r.shift, 2.0);
    EXPECT_EQ(r.count, 3u);
}

TEST(SpectralCount, MatchesDenseCounts)
{
    std::mt19937 rng(59);
    for (int t = 0; t < 20; ++t) {
        const std::size_t n = 20 + 9 * static_cast<std::size_t>(t);
        Graph g = oracle::random_graph(n, 4.0 / static_cast<double>(n), rng);
        auto k = kirchhoff(g);
        auto s = eigenvalues(k);
        const double hi = s.values.back() + 0.5;
        for (int i = 0; i < 100; ++i) {
            const double x = hi * (i + 0.37) / 100.0;
            auto c = spectral_count(k, x);
            EXPECT_EQ(c.count, dense_count(s, c.shift)) << "n=" << n << " t=" << x;
        }
    }
}

TEST(SpectralFunction, L1Examples)
{
    auto c4 = spectrum(cycle_graph(4));
    EXPECT_EQ(spectral_function_l1(c4, c4), 0.0);

    Graph chord = cycle_graph(4);
    chord.add_edge(0, 2);
    auto ch = spectrum(chord);
    const double d = spectral_function_l1(c4, ch);
    EXPECT_NEAR(d, 0.5, 1e-12);
    EXPECT_NEAR(d, sampled_l1(c4, ch, 4000), 1e-9);

    auto k2 = spectrum(complete_graph(2));
    auto e2 = spectrum(empty_graph(2));
    EXPECT_NEAR(spectral_function_l1(k2, e2), 1.0, 1e-12);
}

TEST(SpectralFunction, L1MatchesSamplingAcrossSizes)
{
    auto a = spectrum(icosahedron());
    auto b = spectrum(flat_torus(4, 5));
    // 12 and 20 eigenvalues: breakpoints at multiples of 1/60
    EXPECT_NEAR(spectral_function_l1(a, b), sampled_l1(a, b, 60 * 200), 1e-9);
    EXPECT_NEAR(spectral_function_l1(a, b), spectral_function_l1(b, a), 1e-15);
}

TEST(SpectralFunction, StepConvention)
{
    auto c4 = spectrum(cycle_graph(4));
    EXPECT_NEAR(c4.F(0.0), 0.0, 1e-12);
    EXPECT_NEAR(c4.F(0.25), 0.0, 1e-12);
    EXPECT_NEAR(c4.F(0.26), 2.0, 1e-12);
    EXPECT_NEAR(c4.F(1.0), 4.0, 1e-12);
}

TEST(Lidskii, RandomPairs)
{
    std::mt19937 rng(61);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 5 + static_cast<std::size_t>(t) % 36;
        Graph g = oracle::random_graph(n, 0.3, rng), h = oracle::random_graph(n, 0.3, rng);
        EXPECT_LE(eigenvalue_l1(spectrum(g), spectrum(h)),
                  4.0 * static_cast<double>(graph_distance(g, h)) + 1e-6);
    }
}

TEST(Dos, Examples)
{
    auto h = dos(spectrum(complete_graph(2)), 2, std::make_pair(0.0, 2.0));
    EXPECT_DOUBLE_EQ(h.masses[0], 0.5);
    EXPECT_DOUBLE_EQ(h.masses[1], 0.5);
    auto t = dos(spectrum(flat_torus(5, 6)), 37);
    EXPECT_NEAR(t.total(), 1.0, 1e-12);
    for (double m : t.masses)
        EXPECT_GE(m, 0.0);
    EXPECT_THROW(dos(spectrum(cycle_graph(4)), 0), std::invalid_argument);
}

TEST(Dos, CountingAgreesWithDense)
{
    Graph g = refine_graph(flat_torus(4, 4), 2, true);
    auto k = kirchhoff(g);
    auto dense = dos(eigenvalues(k), 64, std::make_pair(0.0, 9.01));
    auto counted = dos_by_counting(k, 64, 0.0, 9.01);
    for (std::size_t i = 0; i < 64; ++i)
        EXPECT_NEAR(dense.masses[i], counted.masses[i], 1e-12) << i;
}

TEST(HexDos, Reference)
{
    auto h = hex_dos(64, 90);
    EXPECT_EQ(h.lo, 0.0);
    EXPECT_EQ(h.hi, 9.0);
    EXPECT_NEAR(h.total(), 1.0, 1e-12);
    // the symbol attains its extreme values 0 and 9 only at isolated points
    EXPECT_NEAR(hex_symbol(0, 0), 0.0, 1e-12);
    EXPECT_NEAR(hex_symbol(2 * std::numbers::pi / 3, 2 * std::numbers::pi / 3), 9.0, 1e-12);
    std::size_t best = 1;
    for (std::size_t i = 1; i + 1 < h.bins(); ++i)
        if (h.masses[i] > h.masses[best])
            best = i;
    EXPECT_GE(h.left(best), 7.5);
    EXPECT_LE(h.right(best), 8.5);
    EXPECT_THROW(hex_dos(8, 10), std::invalid_argument);
}

TEST(TreeForest, Examples)
{
    auto k4 = tree_forest(complete_graph(4));
    ASSERT_TRUE(k4.pseudo_determinant);
    EXPECT_EQ(*k4.pseudo_determinant, 64);
    EXPECT_EQ(oracle::spanning_trees(complete_graph(4)), 16);
    auto k2 = tree_forest(complete_graph(2));
    EXPECT_EQ(*k2.forest_determinant, 3);
    EXPECT_NEAR(k2.tree_forest_index, 1.5, 1e-12);
}

TEST(TreeForest, MatrixTreeAndForestTheorems)
{
    std::mt19937 rng(67);
    for (int t = 0; t < 60; ++t) {
        Graph g = connected_random(2 + static_cast<std::size_t>(t) % 5, 0.6, rng);
        auto r = tree_forest(g);
        const auto n = static_cast<long long>(g.order());
        EXPECT_EQ(*r.pseudo_determinant, n * oracle::spanning_trees(g));
        EXPECT_EQ(*r.forest_determinant, oracle::rooted_forests(g));
        EXPECT_GT(r.tree_forest_index, 1.0);
        EXPECT_NEAR(r.log_pseudo_determinant, std::log(static_cast<double>(*r.pseudo_determinant)),
                    1e-9 * std::max(1.0, r.log_pseudo_determinant));
        EXPECT_NEAR(r.log_forest_determinant, std::log(static_cast<double>(*r.forest_determinant)),
                    1e-9 * std::max(1.0, r.log_forest_determinant));
    }
}

TEST(TreeForest, Disconnected)
{
    Graph two = Graph::from_edges(4, std::vector<Edge>{{0, 1}, {2, 3}});
    auto r = tree_forest(two);
    EXPECT_FALSE(r.connected);
    EXPECT_EQ(*r.pseudo_determinant, 4);
    EXPECT_EQ(*r.forest_determinant, oracle::rooted_forests(two));
}

TEST(TreeForest, LargeGraphsUseLogScale)
{
    auto r = tree_forest(flat_torus(4, 4));
    EXPECT_FALSE(r.pseudo_determinant.has_value());
    EXPECT_GT(r.tree_forest_index, 1.0);
}

TEST(Bareiss, Determinants)
{
    EXPECT_EQ(bareiss_determinant({{2, 1}, {1, 2}}), 3);
    EXPECT_EQ(bareiss_determinant({{0, 1}, {1, 0}}), -1);
    EXPECT_EQ(bareiss_determinant({{1, 2}, {2, 4}}), 0);
    EXPECT_EQ(bareiss_determinant({}), 1);
}

TEST(Potential, Examples)
{
    auto k2 = spectrum(complete_graph(2));
    auto p0 = potential(k2, 0.0);
    EXPECT_NEAR(p0.value, -0.5 * std::log(2.0), 1e-12);
    EXPECT_EQ(p0.omitted, 1u);
    EXPECT_NEAR(potential(k2, -1.0).value, -0.5 * (std::log(1.0) + std::log(3.0)), 1e-12);
    auto c4 = spectrum(cycle_graph(4));
    EXPECT_NEAR(potential(c4, 0.0).value,
                -0.25 * (std::log(2.0) + std::log(2.0) + std::log(4.0)), 1e-12);
}

TEST(Potential, TreeAndForestIndices)
{
    Graph g = wheel_graph(5);
    auto s = spectrum(g);
    auto r = tree_forest(g);
    const double n = static_cast<double>(g.order());
    EXPECT_NEAR(-potential(s, 0.0).value * n, r.log_pseudo_determinant, 1e-9);
    EXPECT_NEAR(-potential(s, -1.0).value * n, r.log_forest_determinant, 1e-9);
}

TEST(Convergence, CycleIsAFixedPoint)
{
    auto r = convergence_experiment(cycle_graph(5), 3, Refiner::soft);
    for (const auto& st : r.steps) {
        ASSERT_TRUE(st.spectrum);
        EXPECT_EQ(st.spectrum->values, r.steps[0].spectrum->values);
    }
    for (std::size_t i = 0; i + 1 < r.steps.size(); ++i)
        EXPECT_EQ(*r.steps[i].l1_to_next, 0.0);
}

TEST(Convergence, TorusDistancesDecrease)
{
    auto r = convergence_experiment(flat_torus(4, 4), 3, Refiner::soft);
    ASSERT_EQ(r.steps.size(), 4u);
    EXPECT_LT(*r.steps[1].l1_to_next, *r.steps[0].l1_to_next);
    EXPECT_LT(*r.steps[2].l1_to_next, *r.steps[1].l1_to_next);
    EXPECT_EQ(r.steps[3].fvector, (FVector{432, 1296, 864}));
    EXPECT_FALSE(r.steps[3].l1_to_next.has_value());
}

TEST(Convergence, CountingModeTracksDense)
{
    ConvergenceOptions dense_opt;
    ConvergenceOptions count_opt;
    count_opt.dense_cap = 100;
    auto a = convergence_experiment(flat_torus(4, 4), 2, Refiner::soft, dense_opt);
    auto b = convergence_experiment(flat_torus(4, 4), 2, Refiner::soft, count_opt);
    EXPECT_TRUE(b.steps[2].counting_mode);
    EXPECT_FALSE(b.steps[0].counting_mode);
    // grid integration of the integrated densities of states
    EXPECT_NEAR(*a.steps[1].l1_to_next, *b.steps[1].l1_to_next, 0.05);
}

TEST(Convergence, Errors)
{
    EXPECT_THROW(convergence_experiment(cycle_graph(5), 1, Refiner::soft),
                 std::invalid_argument);
}

#pragma once

#include "softbary/complex.hpp"
#include "softbary/graph.hpp"
#include "softbary/refine.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace softbary {

/// Kirchhoff Laplacian K = D - A, stored sparse.
struct KirchhoffMatrix {
    std::size_t n = 0;
    Eigen::SparseMatrix<double> matrix;

    Eigen::MatrixXd dense() const { return Eigen::MatrixXd(matrix); }
};

inline KirchhoffMatrix kirchhoff(const Graph& g)
{
    KirchhoffMatrix k;
    k.n = g.order();
    std::vector<Eigen::Triplet<double>> t;
    t.reserve(g.order() + 2 * g.size());
    for (Vertex v = 0; v < g.order(); ++v) {
        t.emplace_back(v, v, static_cast<double>(g.degree(v)));
        for (Vertex w : g.neighbors(v))
            t.emplace_back(v, w, -1.0);
    }
    k.matrix.resize(static_cast<Eigen::Index>(k.n), static_cast<Eigen::Index>(k.n));
    k.matrix.setFromTriplets(t.begin(), t.end());
    return k;
}

/// Sorted eigenvalues lambda_0 <= ... <= lambda_{n-1}.
struct SpectralSummary {
    std::vector<double> values;

    std::size_t size() const { return values.size(); }

    /// Spectral function F(x) = lambda_{ceil(n x) - 1}, F(0) = lambda_0.
    double F(double x) const
    {
        if (values.empty())
            throw std::domain_error("spectral function of an empty spectrum");
        const auto n = static_cast<double>(values.size());
        auto k = static_cast<std::size_t>(std::ceil(n * std::clamp(x, 0.0, 1.0)));
        return values[k == 0 ? 0 : std::min(k - 1, values.size() - 1)];
    }

    /// Fraction of eigenvalues strictly below t.
    double ids(double t) const
    {
        auto it = std::lower_bound(values.begin(), values.end(), t);
        return static_cast<double>(it - values.begin()) / static_cast<double>(values.size());
    }
};

struct DenseCapExceeded : std::length_error {
    explicit DenseCapExceeded(std::size_t n, std::size_t cap)
        : std::length_error("matrix of order " + std::to_string(n) + " exceeds dense cap "
                            + std::to_string(cap) + "; use spectral_count instead")
    {
    }
};

constexpr std::size_t default_dense_cap = 4000;

/// Dense cap, overridable through SOFTBARY_DENSE_CAP.
inline std::size_t dense_cap_from_env()
{
    if (const char* s = std::getenv("SOFTBARY_DENSE_CAP")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(s, &end, 10);
        if (end != s && *end == '\0' && v > 0)
            return static_cast<std::size_t>(v);
    }
    return default_dense_cap;
}

inline SpectralSummary eigenvalues(const KirchhoffMatrix& m,
                                   std::size_t dense_cap = default_dense_cap)
{
    if (m.n > dense_cap)
        throw DenseCapExceeded(m.n, dense_cap);
    SpectralSummary s;
    if (m.n == 0)
        return s;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.dense(), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigensolver failed to converge");
    const auto& ev = solver.eigenvalues();
    s.values.assign(ev.data(), ev.data() + ev.size());
    std::sort(s.values.begin(), s.values.end());
    return s;
}

inline SpectralSummary spectrum(const Graph& g, std::size_t dense_cap = default_dense_cap)
{
    return eigenvalues(kirchhoff(g), dense_cap);
}

struct SpectralCount {
    std::size_t count = 0;
    /// Shift actually factorised; differs from the requested t after retries.
    double shift = 0.0;
    int retries = 0;
};

/**
 * Number of eigenvalues below t from the inertia of an LDL^T factorisation
 * of K - tI (Sylvester's law). A tiny or zero pivot means t sits on or near
 * an eigenvalue; the shift is then nudged upward by 1e-7 and retried.
 */
inline SpectralCount spectral_count(const KirchhoffMatrix& m, double t, int max_retries = 8)
{
    SpectralCount out;
    if (m.n == 0)
        return out;
    Eigen::SparseMatrix<double> id(static_cast<Eigen::Index>(m.n),
                                   static_cast<Eigen::Index>(m.n));
    id.setIdentity();
    double shift = t;
    for (int attempt = 0; attempt <= max_retries; ++attempt) {
        Eigen::SparseMatrix<double> a = m.matrix - shift * id;
        Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(a);
        bool ok = ldlt.info() == Eigen::Success;
        std::size_t negative = 0;
        if (ok) {
            const auto d = ldlt.vectorD();
            const double scale = 1.0 + std::abs(shift);
            for (Eigen::Index i = 0; i < d.size(); ++i) {
                if (!std::isfinite(d[i]) || std::abs(d[i]) < 1e-10 * scale) {
                    ok = false;
                    break;
                }
                if (d[i] < 0)
                    ++negative;
            }
        }
        if (ok) {
            out.count = negative;
            out.shift = shift;
            out.retries = attempt;
            return out;
        }
        shift += 1e-7 * (attempt + 1);
    }
    throw std::runtime_error("spectral_count: LDL^T broke down for every perturbed shift");
}

/**
 * L1 distance on [0,1] between two spectral functions. Both are step
 * functions with breakpoints k/n, so the integral is summed exactly over
 * the merged breakpoints.
 */
inline double spectral_function_l1(const SpectralSummary& a, const SpectralSummary& b)
{
    if (a.values.empty() || b.values.empty())
        throw std::domain_error("spectral_function_l1: empty spectrum");
    const auto na = static_cast<std::uint64_t>(a.size());
    const auto nb = static_cast<std::uint64_t>(b.size());
    const long double denom = static_cast<long double>(na) * static_cast<long double>(nb);
    std::uint64_t i = 0, j = 0, pos = 0;
    long double total = 0;
    while (i < na && j < nb) {
        const std::uint64_t end_a = (i + 1) * nb;
        const std::uint64_t end_b = (j + 1) * na;
        const std::uint64_t end = std::min(end_a, end_b);
        total += static_cast<long double>(end - pos)
                 * std::abs(static_cast<long double>(a.values[i]) - b.values[j]);
        pos = end;
        if (end == end_a)
            ++i;
        if (end == end_b)
            ++j;
    }
    return static_cast<double>(total / denom);
}

/// Sum of |lambda_i - mu_i| for two spectra of the same size.
inline double eigenvalue_l1(const SpectralSummary& a, const SpectralSummary& b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("eigenvalue_l1: spectra differ in size");
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += std::abs(a.values[i] - b.values[i]);
    return s;
}

/// Normalised histogram on [lo, hi] with equal-width bins.
struct DosHistogram {
    double lo = 0.0;
    double hi = 1.0;
    std::vector<double> masses;

    std::size_t bins() const { return masses.size(); }
    double width() const { return (hi - lo) / static_cast<double>(masses.size()); }
    double left(std::size_t i) const { return lo + width() * static_cast<double>(i); }
    double right(std::size_t i) const
    {
        return i + 1 == masses.size() ? hi : lo + width() * static_cast<double>(i + 1);
    }

    double total() const
    {
        double s = 0;
        for (double m : masses)
            s += m;
        return s;
    }

    std::size_t bin_of(double x) const
    {
        if (x <= lo)
            return 0;
        auto k = static_cast<std::size_t>((x - lo) / width());
        return std::min(k, masses.size() - 1);
    }
};

/// Histogram of the eigenvalues; default range is [0, lambda_max].
inline DosHistogram dos(const SpectralSummary& a, std::size_t bins,
                        std::optional<std::pair<double, double>> range = std::nullopt)
{
    if (bins == 0)
        throw std::invalid_argument("dos: need at least one bin");
    if (a.values.empty())
        throw std::domain_error("dos: empty spectrum");
    DosHistogram h;
    if (range) {
        h.lo = range->first;
        h.hi = range->second;
    } else {
        h.lo = 0.0;
        h.hi = std::max(a.values.back(), 1e-12);
    }
    if (!(h.hi > h.lo))
        throw std::invalid_argument("dos: empty range");
    std::vector<std::size_t> counts(bins, 0);
    h.masses.assign(bins, 0.0);
    for (double v : a.values)
        ++counts[h.bin_of(v)];
    for (std::size_t i = 0; i < bins; ++i)
        h.masses[i] = static_cast<double>(counts[i]) / static_cast<double>(a.size());
    return h;
}

/// Histogram from eigenvalue counts on the bin edges (no eigenvectors).
inline DosHistogram dos_by_counting(const KirchhoffMatrix& m, std::size_t bins, double lo,
                                    double hi)
{
    if (bins == 0 || !(hi > lo))
        throw std::invalid_argument("dos_by_counting: bad binning");
    DosHistogram h;
    h.lo = lo;
    h.hi = hi;
    h.masses.assign(bins, 0.0);
    // counts strictly below each interior edge; hi is above the spectrum
    std::vector<std::size_t> below(bins + 1, 0);
    below[0] = 0;
    below[bins] = m.n;
    for (std::size_t i = 1; i < bins; ++i)
        below[i] = spectral_count(m, h.left(i)).count;
    for (std::size_t i = 0; i < bins; ++i)
        h.masses[i] = static_cast<double>(below[i + 1] - below[i]) / static_cast<double>(m.n);
    return h;
}

/// Fourier symbol of the Laplacian of the degree-6 planar lattice.
inline double hex_symbol(double x, double y)
{
    return 6.0 - 2.0 * std::cos(x) - 2.0 * std::cos(y) - 2.0 * std::cos(x + y);
}

/// Histogram of the lattice symbol sampled on a uniform grid of the torus.
inline DosHistogram hex_dos(std::size_t grid, std::size_t bins,
                            std::pair<double, double> range = {0.0, 9.0})
{
    if (grid < 16)
        throw std::invalid_argument("hex_dos: grid must be at least 16");
    SpectralSummary s;
    s.values.reserve(grid * grid);
    const double step = 2.0 * std::numbers::pi / static_cast<double>(grid);
    for (std::size_t i = 0; i < grid; ++i)
        for (std::size_t j = 0; j < grid; ++j)
            s.values.push_back(hex_symbol(step * static_cast<double>(i),
                                          step * static_cast<double>(j)));
    std::sort(s.values.begin(), s.values.end());
    return dos(s, bins, range);
}

/// Sum of absolute mass differences; the binnings must agree.
inline double histogram_l1(const DosHistogram& a, const DosHistogram& b)
{
    if (a.bins() != b.bins() || a.lo != b.lo || a.hi != b.hi)
        throw std::invalid_argument("histogram_l1: binnings differ");
    double s = 0;
    for (std::size_t i = 0; i < a.bins(); ++i)
        s += std::abs(a.masses[i] - b.masses[i]);
    return s;
}

/// Pseudo-determinant, forest determinant and their ratio.
struct TreeForestReport {
    bool connected = true;
    double log_pseudo_determinant = 0.0;
    double log_forest_determinant = 0.0;
    /// Integer values from fraction-free elimination (n <= 12 only).
    std::optional<long long> pseudo_determinant;
    std::optional<long long> forest_determinant;
    double tree_forest_index = 0.0;
};

/// Determinant of an integer matrix by Bareiss fraction-free elimination.
inline long long bareiss_determinant(std::vector<std::vector<long long>> a)
{
    const std::size_t n = a.size();
    if (n == 0)
        return 1;
    std::vector<std::vector<__int128>> m(n, std::vector<__int128>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m[i][j] = a[i][j];
    __int128 prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && m[r][k] == 0)
                ++r;
            if (r == n)
                return 0;
            std::swap(m[k], m[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return static_cast<long long>(sign * m[n - 1][n - 1]);
}

inline TreeForestReport tree_forest(const Graph& g, std::size_t exact_limit = 12)
{
    TreeForestReport r;
    const std::size_t n = g.order();
    if (n == 0)
        throw std::invalid_argument("tree_forest: empty graph");
    std::vector<std::size_t> comp;
    const std::size_t ncomp = connected_components(g, comp);
    r.connected = ncomp == 1;

    const auto spec = spectrum(g);
    // the kernel has dimension = number of components
    for (std::size_t i = 0; i < spec.size(); ++i) {
        if (i >= ncomp)
            r.log_pseudo_determinant += std::log(spec.values[i]);
        r.log_forest_determinant += std::log1p(spec.values[i]);
    }

    if (n <= exact_limit) {
        auto laplacian = [&](const std::vector<Vertex>& vs, bool plus_identity, bool drop_first) {
            std::vector<std::vector<long long>> a;
            for (std::size_t i = drop_first ? 1 : 0; i < vs.size(); ++i) {
                std::vector<long long> row;
                for (std::size_t j = drop_first ? 1 : 0; j < vs.size(); ++j) {
                    long long v = 0;
                    if (i == j)
                        v = static_cast<long long>(g.degree(vs[i])) + (plus_identity ? 1 : 0);
                    else if (g.has_edge(vs[i], vs[j]))
                        v = -1;
                    row.push_back(v);
                }
                a.push_back(std::move(row));
            }
            return a;
        };
        long long pdet = 1;
        for (std::size_t c = 0; c < ncomp; ++c) {
            std::vector<Vertex> vs;
            for (Vertex v = 0; v < n; ++v)
                if (comp[v] == c)
                    vs.push_back(v);
            // matrix tree theorem: n_c times the reduced determinant
            pdet *= static_cast<long long>(vs.size())
                    * bareiss_determinant(laplacian(vs, false, true));
        }
        std::vector<Vertex> all(n);
        std::iota(all.begin(), all.end(), Vertex{0});
        r.pseudo_determinant = pdet;
        r.forest_determinant = bareiss_determinant(laplacian(all, true, false));
    }
    r.tree_forest_index = std::exp(r.log_forest_determinant - r.log_pseudo_determinant);
    return r;
}

struct PotentialValue {
    double value = 0.0;
    std::size_t omitted = 0;
};

/// -(1/n) sum log|z - lambda|, skipping terms with |z - lambda| < 1e-12.
inline PotentialValue potential(const SpectralSummary& a, double z)
{
    if (a.values.empty())
        throw std::domain_error("potential: empty spectrum");
    PotentialValue p;
    double s = 0;
    for (double l : a.values) {
        const double d = std::abs(z - l);
        if (d < 1e-12) {
            ++p.omitted;
            continue;
        }
        s += std::log(d);
    }
    p.value = -s / static_cast<double>(a.size());
    return p;
}

// ---------------------------------------------------------------------------
// Refinement limit experiments

enum class Refiner { soft, strong };

struct ConvergenceOptions {
    std::size_t bins = 128;
    std::size_t dense_cap = default_dense_cap;
    /// Grid for counting-mode histograms and L1 integration.
    std::size_t count_grid = 512;
    std::optional<std::pair<double, double>> range;
};

struct ConvergenceStep {
    FVector fvector;
    std::size_t order = 0;
    std::size_t max_degree = 0;
    bool counting_mode = false;
    std::optional<SpectralSummary> spectrum;
    /// Fraction of eigenvalues below each grid point (counting mode only).
    std::vector<double> ids_grid;
    double grid_hi = 0.0;
    DosHistogram histogram;
    std::optional<double> l1_to_next;
};

struct ConvergenceReport {
    std::vector<ConvergenceStep> steps;
    DosHistogram final_dos;
    Graph final_graph;
};

namespace detail {

inline double step_ids(const ConvergenceStep& s, double t)
{
    if (s.spectrum)
        return s.spectrum->ids(t);
    if (t >= s.grid_hi)
        return 1.0;
    const double h = s.grid_hi / static_cast<double>(s.ids_grid.size() - 1);
    auto k = static_cast<std::size_t>(t / h);
    return s.ids_grid[std::min(k, s.ids_grid.size() - 1)];
}

/// ||F_a - F_b||_1 equals the area between the two integrated densities
/// of states; in counting mode it is integrated on a grid.
inline double step_l1(const ConvergenceStep& a, const ConvergenceStep& b, std::size_t grid)
{
    if (a.spectrum && b.spectrum)
        return spectral_function_l1(*a.spectrum, *b.spectrum);
    const double hi = std::max(a.grid_hi, b.grid_hi);
    const double h = hi / static_cast<double>(grid);
    double s = 0;
    for (std::size_t i = 0; i < grid; ++i) {
        const double t = h * (static_cast<double>(i) + 0.5);
        s += std::abs(step_ids(a, t) - step_ids(b, t)) * h;
    }
    return s;
}

inline ConvergenceStep analyse_step(const Graph& g, const SimplicialComplex& c,
                                    const ConvergenceOptions& opt)
{
    ConvergenceStep s;
    s.fvector = c.f_vector();
    s.order = g.order();
    s.max_degree = g.max_degree();
    s.grid_hi = 2.0 * static_cast<double>(std::max<std::size_t>(s.max_degree, 1)) + 1.0;
    const auto range = opt.range.value_or(std::make_pair(0.0, s.grid_hi));
    auto k = kirchhoff(g);
    if (g.order() <= opt.dense_cap) {
        s.spectrum = eigenvalues(k, opt.dense_cap);
        s.histogram = dos(*s.spectrum, opt.bins, range);
    } else {
        s.counting_mode = true;
        s.ids_grid.resize(opt.count_grid + 1);
        for (std::size_t i = 0; i <= opt.count_grid; ++i) {
            const double t = s.grid_hi * static_cast<double>(i)
                             / static_cast<double>(opt.count_grid);
            s.ids_grid[i] = i == 0 ? 0.0
                                   : static_cast<double>(spectral_count(k, t).count)
                                         / static_cast<double>(g.order());
        }
        s.histogram = dos_by_counting(k, opt.bins, range.first, range.second);
    }
    return s;
}

} // namespace detail

/**
 * Refines `seed` `steps` times and records f-vectors, spectra (or counting
 * histograms above the dense cap) and the L1 distance between successive
 * spectral functions. steps[0] is the seed itself.
 */
inline ConvergenceReport convergence_experiment(const Graph& seed, int steps, Refiner refiner,
                                                const ConvergenceOptions& opt = {})
{
    if (steps < 2)
        throw std::invalid_argument("convergence_experiment: steps must be at least 2");
    ConvergenceReport r;
    Graph g = seed;
    for (int i = 0; i <= steps; ++i) {
        auto c = whitney_complex(g);
        r.steps.push_back(detail::analyse_step(g, c, opt));
        if (i < steps)
            g = refiner == Refiner::soft ? soft_barycentric(c).graph : barycentric(c).graph;
    }
    for (std::size_t i = 0; i + 1 < r.steps.size(); ++i)
        r.steps[i].l1_to_next = detail::step_l1(r.steps[i], r.steps[i + 1], opt.count_grid);
    r.final_dos = r.steps.back().histogram;
    r.final_graph = std::move(g);
    return r;
}

} // namespace softbary

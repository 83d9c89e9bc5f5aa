#pragma once

#include "utaylor/geometry.hpp"
#include "utaylor/poly.hpp"
#include "utaylor/potential.hpp"
#include "utaylor/universal.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace utaylor {

using Evaluable = std::function<cd(cd)>;

/// Box-grid coverage of a finite set of values: the box is cut into
/// grid_n x grid_n cells and a cell counts once it holds a value.
struct CoverageScore {
    BoxRegion box;
    int grid_n = 0;
    double hit_fraction = 0.0;
    std::size_t samples_used = 0;
    std::size_t cells_hit = 0;
    // Row-major (imag major) flags, grid_n * grid_n entries.
    std::vector<std::uint8_t> hits;
};

CoverageScore coverage_of(const std::vector<cd>& values, const BoxRegion& box, int grid_n);

// Hit cells lying entirely outside the closed disc D(center, radius).
std::size_t hits_outside_disc(const CoverageScore& s, cd center, double radius);

// Doubles of f over region_samples(r, depth, per_level).
std::vector<cd> sample_values(const Evaluable& f, const ApproachRegion& r, int depth, int per_level);

CoverageScore plessner_probe(const Evaluable& f, const ApproachRegion& r, const BoxRegion& box, int grid_n,
                             int depth, int per_level);

// Coverage after each depth 1..max_depth (entry d-1 uses the first d strata).
std::vector<CoverageScore> plessner_curve(const Evaluable& f, const ApproachRegion& r, const BoxRegion& box,
                                          int grid_n, int max_depth, int per_level);

struct FatouResult {
    bool convergent = false;
    cd limit{0.0, 0.0};
    // Largest spread over the last three strata.
    double spread = 0.0;
    std::vector<double> stratum_spreads;
    std::vector<cd> stratum_means;
};

struct FatouConfig {
    int per_level = 16;
    double tol = 1e-6;
};

FatouResult fatou_probe(const Evaluable& f, const ApproachRegion& r, int depth, const FatouConfig& cfg = {});

// Values f(r zeta) on r = 1 - 2^{-m}, m = 1..r_levels, with `substeps`
// geometric points per dyadic interval.
CoverageScore radial_density(const Evaluable& f, cd zeta, const BoxRegion& box, int grid_n, int r_levels,
                             int substeps = 1);

enum class UkStatus { satisfied, violated, indeterminate };
const char* to_string(UkStatus s);

struct UkPoint {
    cd z;
    // (1/N) log|S_N - f_built|; -inf where the built tail vanishes.
    double u = 0.0;
    double margin = 0.0;  // u - log|z|
    double tail_bound = 0.0;
    UkStatus status = UkStatus::indeterminate;
};

struct UkReport {
    long N = 0;
    std::vector<UkPoint> points;
    std::size_t satisfied = 0;
    std::size_t violated = 0;
    std::size_t indeterminate = 0;
    // satisfied / (satisfied + violated); 1 when every point is indeterminate.
    double satisfied_fraction = 0.0;
    // Valuation assumed for the unbuilt tail and the constant in its bound.
    long tail_valuation = 0;
    double tail_constant = 0.0;
};

struct UkOptions {
    // Growth weight of the build; the tail bound uses its maximum on the
    // circles |z| = j/(j+1).
    Weight w = Weight::power_at({1.0, 0.0}, 0.5);
    int tail_terms = 200;
    int circle_samples = 4096;
};

// u_k = (1/N) log|S_N - f| against log|z| / 2, with f the built blocks plus a
// certified bound on the unbuilt tail. Disc series only.
UkReport uk_diagnostic(const UniversalSeries& f, long N, const std::vector<cd>& grid, const UkOptions& opt = {});

// Points r e^{i theta} with r in (0, rho], nr radii and nt angles.
std::vector<cd> polar_grid(double rho, int nr, int nt);

struct BernsteinReport {
    long N = 0;
    double sup_arc = 0.0;
    std::size_t arc_samples = 0;
    // max over the grid of log|S| - (N G + log sup_arc).
    double max_violation = 0.0;
    std::size_t violations = 0;
    std::vector<double> excess;
};

// Tolerance used to count violations: 1e-9 + 10 map tolerance.
double bernstein_tolerance();

BernsteinReport bernstein_verify(const Poly& S, const ArcOnCircle& arc, const std::vector<cd>& grid);

}  // namespace utaylor

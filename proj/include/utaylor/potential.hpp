#pragma once

#include "utaylor/complex.hpp"
#include "utaylor/geometry.hpp"
#include "utaylor/quadrature.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace utaylor {

// P(z, zeta) = (1 - |z|^2) / |z - zeta|^2; DomainError unless |z| < 1.
Real poisson_kernel(const Complex& z, const Complex& zeta);
double poisson_kernel(cd z, cd zeta);

// log(1/|z|) for 0 < |z| < 1.
Real green_disc(const Complex& z);
double green_disc(cd z);

enum class ThinVerdict { minimally_thin, not_minimally_thin, inconclusive };
const char* to_string(ThinVerdict v);

struct MinThinReport {
    ThinVerdict verdict = ThinVerdict::inconclusive;
    // partial[m-1] = integral of t^{-2} psi(t) over [2^{-m}, 1].
    std::vector<double> partial;
    std::vector<double> increments;
    // Geometric extrapolation of the limit (thin verdicts only).
    double limit_estimate = 0.0;
    // Least-squares slope of partial[m] against m over the last half.
    double slope = 0.0;
    double decay_ratio = 0.0;
};

// Dyadic test of the integral of t^{-2} psi(t) over (0,1] for increasing
// psi: [0,1] -> [0,1]. The verdict uses q.abs_tol for both the Cauchy and the
// growth thresholds.
MinThinReport minthin_psi_test(const RealFunction& psi, const Quadrature& q = {}, int levels = 40);

struct MeasureEstimate {
    double functional_value = 0.0;
    long walks = 0;
    double confidence_radius = 0.0;  // 3 sigma / sqrt(walks)
    std::uint64_t seed = 0;
    long discarded = 0;
    bool inconclusive = false;  // more than 1% of walks exceeded the step budget
};

struct WalkConfig {
    // Stopping shell, relative to the domain scale.
    double eps_stop = 1e-6;
    long step_budget = 100000;
};

using BoundaryFunction = std::function<double(cd)>;

// Walk-on-spheres estimate of the integral of phi against harmonic measure at z.
MeasureEstimate harmonic_measure(const DomainDesc& domain, cd z, const BoundaryFunction& phi, long walks,
                                 std::uint64_t seed, const WalkConfig& cfg = {});

// Same walks, each boundary value weighted by log(1/|zeta|) / log(1/|z|).
MeasureEstimate modified_measure_functional(const DomainDesc& domain, cd z, const BoundaryFunction& phi,
                                            long walks, std::uint64_t seed, const WalkConfig& cfg = {});

/// Closed arc {e^{i theta} : theta_lo <= theta <= theta_hi} of the unit circle.
struct ArcOnCircle {
    double theta_lo;
    double theta_hi;

    ArcOnCircle(double lo, double hi);
    double half_angle() const noexcept { return 0.5 * (theta_hi - theta_lo); }
    double mid_angle() const noexcept { return 0.5 * (theta_hi + theta_lo); }
    // Distance from z to the arc.
    double distance(cd z) const;
};

// Relative accuracy of the explicit conformal composition used below.
inline constexpr double kGreenMapTolerance = 1e-12;

// Green function of the complement of the arc with pole at infinity; 0 on the arc.
double green_arc_complement(cd z, const ArcOnCircle& arc);

// -1/2 for |z| < 1 - 1/j, otherwise G(z)/log(1/|z|) with G the arc Green function.
double psi_j_barrier(cd z, int j, const ArcOnCircle& arc);

struct SuperharmonicReport {
    int trials = 0;
    int violations = 0;
    // min over trials of u(c) - (circle average); negative means violation.
    double worst_margin = 0.0;
};

SuperharmonicReport superharmonicity_check(const std::function<double(cd)>& u, const DomainDesc& domain,
                                           int trials, std::uint64_t seed, double tol = 1e-9);

}  // namespace utaylor

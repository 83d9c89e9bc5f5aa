#pragma once

#include "utaylor/approx.hpp"
#include "utaylor/geometry.hpp"
#include "utaylor/poly.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace utaylor {

enum class SeriesDomain { disc, strip };
enum class BuildMode { strict, empirical };
const char* to_string(SeriesDomain d);
const char* to_string(BuildMode m);
SeriesDomain series_domain_from_string(const std::string& s);
BuildMode build_mode_from_string(const std::string& s);

/// Growth weight w. Evaluated in double precision; +inf at the singular
/// point(s), where every growth inequality holds trivially.
struct Weight {
    enum class Kind { power, strip_poisson };
    Kind kind = Kind::power;
    // power: |z - zeta|^{-exponent}
    cd zeta{1.0, 0.0};
    double exponent = 0.5;
    // strip_poisson: exp(lambda (P(T, 1) + P(T, -1))) with T = tan(pi z / 4),
    // which maps the strip onto the disc fixing +-1.
    double lambda = 1.0;

    double operator()(cd z) const;

    static Weight power_at(cd zeta, double exponent);
    static Weight strip_poisson(double lambda);
};

struct ScheduleStep {
    CompactSet K;
    Poly p;
    // Mergelyan tolerance used in empirical mode instead of the nominal value.
    std::optional<Real> tau;
};

struct Schedule {
    SeriesDomain domain = SeriesDomain::disc;
    CompactSet A;
    Weight w;
    std::vector<ScheduleStep> steps;

    // Degree cap handed to the approximation engine.
    long max_degree = 400;
    // Exponent search guard.
    long n_max = 1000000;
    // Sample density of the fitting sets.
    int fit_density = 256;
    // Certificate and exponent grids: density per set, at least
    // min_grid_points samples per set.
    int grid_density = 768;
    std::size_t min_grid_points = 1000;
    // Strip, empirical mode only: delta_k is raised to at least 2^{-k} delta_floor.
    double delta_floor = 0.0;
    int complement_grid = 256;

    Schedule(SeriesDomain domain, CompactSet A, Weight w);

    // Shipped schedules. Disc: A the tangent disc at 1 with c = 4, targets on
    // a small disc hugging the circle at -1 (d_k = 1.04). Strip: A a polygon
    // inscribed in the lens between +-1, targets on a disc right of the strip.
    static Schedule default_disc(int steps = 8);
    static Schedule default_strip(int steps = 3);

    // Throws ScheduleError on a violated schedule invariant; only the first
    // k_max steps are checked when k_max >= 0.
    void validate(int k_max = -1) const;
};

struct SeriesBlock {
    // Exponent chosen at this step (z^n for the disc, F_+-^n for the strip).
    long n = 0;
    // q_k(z) = z^shift qstar(z); shift = n for the disc and 0 for the strip.
    long shift = 0;
    Poly qstar;

    Poly q() const { return qstar.shifted(shift); }
    long degree() const { return qstar.is_zero() ? -1 : shift + qstar.degree(); }
};

struct StepCertificate {
    int k = 0;
    long n_k = 0;
    long degree = -1;

    // |q_k| <= 2^{-k} w on A u core (disc) or on A (strip).
    double requested_growth_bound = 0.0;  // 2^{-k} min w over the grid
    double achieved_growth_margin = 0.0;  // min over the grid of 2^{-k} w - |q_k|
    double growth_ratio = 0.0;            // max over the grid of |q_k| / (2^{-k} w)
    std::size_t growth_points = 0;

    // |p_k - sum_{j<=k} q_j| on K_k: 2^{-k-1} (disc) or 2^{-k} (strip).
    double requested_target_err = 0.0;
    double achieved_target_err = 0.0;
    std::size_t target_points = 0;

    bool mergelyan_met = false;
    double mergelyan_tol = 0.0;
    double mergelyan_error = 0.0;
    long mergelyan_degree = -1;

    // Strip only.
    double delta = 0.0;
    double delta_nominal = 0.0;
    double core_requested = 0.0;  // 2^{-k} delta_k
    double core_achieved = 0.0;   // max |q_k| on R_k
    std::size_t core_points = 0;
    // Final partial-sum check on K_k as printed: |p_k - S_{m_{k-1}}(f, 0)|
    // against 2^{1-k}, and the relaxed threshold max(2^{1-k}, 4 e d_k^{n_k}).
    double partial_requested = 0.0;
    double partial_achieved = 0.0;
    double partial_relaxed = 0.0;
    // Same with the index m_k, which is what the Cauchy bound supports.
    double partial_achieved_mk = 0.0;

    std::string relaxation_note;

    bool growth_ok() const { return achieved_growth_margin >= 0.0; }
    bool target_ok() const { return achieved_target_err <= requested_target_err; }
};

struct UniversalSeries {
    SeriesDomain domain = SeriesDomain::disc;
    BuildMode mode = BuildMode::strict;
    long precision = 0;
    std::string schedule_hash;
    std::vector<SeriesBlock> blocks;
    std::vector<StepCertificate> certificates;

    // deg(sum of built blocks) + 1.
    long coefficient_count() const;
    // sum_{j <= k} q_j (k counted from 1; k = 0 gives the zero polynomial).
    Poly block_sum(std::size_t k) const;
    Poly built() const { return block_sum(blocks.size()); }
    // S_N of the built function.
    Poly partial_sum(long N) const;
    Complex operator()(const Complex& z) const;
    // Double-precision evaluator at the given working precision.
    std::function<cd(cd)> evaluator(long bits = 128) const;
};

// Exact coefficient a_j of the built function; IndexError past the last block.
Complex series_coefficient(const UniversalSeries& f, long j);

using StepObserver = std::function<void(const SeriesBlock&, const StepCertificate&)>;

struct BuildOptions {
    BuildMode mode = BuildMode::strict;
    int k_max = 1;
    ApproxConfig approx;
    StepObserver observer;
};

// Certificate grid of a set: at least min_points samples.
CompactSet certificate_grid(const CompactSet& set, int density, std::size_t min_points);

// Smallest n > deg(prev_sum) with |z^n (p_k - prev_sum)(1)| <= 2^{-k-1} w(z)
// on every sample of A and core_disc; doubling then bisection.
long choose_exponent_disc(int k, const Poly& prev_sum, const Poly& p_k, const CompactSet& A, const Weight& w,
                          const CompactSet& core_disc, long n_max = 1000000);

struct DiscStep {
    SeriesBlock block;
    StepCertificate certificate;
};

// Step k of the disc construction given prev_sum = q_1 + ... + q_{k-1}.
// Strict mode throws CertificateError when a bound is missed.
DiscStep build_disc_step(int k, const Poly& prev_sum, const Schedule& schedule, BuildMode mode,
                         const ApproxConfig& approx = {});

UniversalSeries build_universal_disc(const Schedule& schedule, const BuildOptions& opts);
UniversalSeries build_universal_disc(const Schedule& schedule, BuildMode mode, int k_max);

// F_+(z) = z / (2 - z) on Re z < 1; F_-(z) = F_+(-z) on Re z > -1.
Complex conformal_Fplus(const Complex& z);
Complex conformal_Fminus(const Complex& z);

// delta_k = 2^{-k} (2D)^{-(m_prev + 1)}, D = max(1, d_max of the K sets),
// halved below delta_prev when needed.
Real choose_delta_k(int k, long m_prev, const std::vector<CompactSet>& K_sets,
                    const std::optional<Real>& delta_prev = std::nullopt);

// R_n = {|Re z| <= n/(n+1), |Im z| <= n}.
CompactSet strip_rectangle(int n, int density = 256);

UniversalSeries build_universal_strip(const Schedule& schedule, const BuildOptions& opts);
UniversalSeries build_universal_strip(const Schedule& schedule, BuildMode mode, int k_max);

// Dispatches on schedule.domain.
UniversalSeries build_universal(const Schedule& schedule, const BuildOptions& opts);

}  // namespace utaylor

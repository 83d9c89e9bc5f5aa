#include "utaylor/error.hpp"
#include "utaylor/potential.hpp"
#include "utaylor/rng.hpp"

#include <cmath>
#include <numbers>

namespace utaylor {

namespace {

struct WalkOutcome {
    bool ok;
    cd exit;
};

WalkOutcome walk(const DomainDesc& d, cd start, CounterRng& rng, double eps, long budget) {
    cd x = start;
    for (long step = 0; step < budget; ++step) {
        const double r = d.distance(x);
        if (r < eps) return {true, d.nearest_boundary(x)};
        const double th = 2.0 * std::numbers::pi * rng.uniform();
        x += std::polar(r, th);
    }
    return {false, x};
}

template <class Weight>
MeasureEstimate run_walks(const DomainDesc& d, cd z, const BoundaryFunction& phi, long walks, std::uint64_t seed,
                          const WalkConfig& cfg, Weight&& weight) {
    if (walks < 2) throw PreconditionError("harmonic measure needs at least 2 walks");
    if (!d.inside(z) || !(d.distance(z) > 0.0)) throw PreconditionError("start point must lie inside the domain");
    const double eps = cfg.eps_stop * d.scale;
    MeasureEstimate est;
    est.seed = seed;
    // Welford accumulation in walk-index order.
    double mean = 0.0, m2 = 0.0;
    long used = 0;
    for (long i = 0; i < walks; ++i) {
        CounterRng rng(seed, static_cast<std::uint64_t>(i));
        const WalkOutcome w = walk(d, z, rng, eps, cfg.step_budget);
        if (!w.ok) {
            ++est.discarded;
            continue;
        }
        const double v = weight(w.exit) * phi(w.exit);
        ++used;
        const double delta = v - mean;
        mean += delta / static_cast<double>(used);
        m2 += delta * (v - mean);
    }
    est.walks = used;
    est.functional_value = mean;
    est.confidence_radius = used > 1 ? 3.0 * std::sqrt(m2 / static_cast<double>(used - 1)) /
                                           std::sqrt(static_cast<double>(used))
                                     : 0.0;
    est.inconclusive = static_cast<double>(est.discarded) > 0.01 * static_cast<double>(walks);
    return est;
}

}  // namespace

MeasureEstimate harmonic_measure(const DomainDesc& domain, cd z, const BoundaryFunction& phi, long walks,
                                 std::uint64_t seed, const WalkConfig& cfg) {
    return run_walks(domain, z, phi, walks, seed, cfg, [](cd) { return 1.0; });
}

MeasureEstimate modified_measure_functional(const DomainDesc& domain, cd z, const BoundaryFunction& phi,
                                            long walks, std::uint64_t seed, const WalkConfig& cfg) {
    // 0 must lie outside the closure of U.
    if (domain.inside(0.0) || !(domain.distance(0.0) < 0.0)) {
        throw PreconditionError("modified measure needs 0 outside the closure of the domain");
    }
    const double mz = std::abs(z);
    if (!(mz > 0.0 && mz < 1.0)) throw PreconditionError("modified measure needs 0 < |z| < 1");
    const double denom = std::log(1.0 / mz);
    const double tol = 10.0 * cfg.eps_stop * domain.scale;
    return run_walks(domain, z, phi, walks, seed, cfg, [&](cd zeta) {
        const double m = std::abs(zeta);
        if (m >= 1.0 + tol) throw PreconditionError("walk terminated outside the closed unit disc");
        return m >= 1.0 ? 0.0 : std::log(1.0 / m) / denom;
    });
}

SuperharmonicReport superharmonicity_check(const std::function<double(cd)>& u, const DomainDesc& domain,
                                           int trials, std::uint64_t seed, double tol) {
    if (trials < 1) throw PreconditionError("superharmonicity check needs at least one trial");
    SuperharmonicReport rep;
    rep.worst_margin = std::numeric_limits<double>::infinity();
    const double min_dist = 0.02 * domain.scale;
    for (int t = 0; t < trials; ++t) {
        CounterRng rng(seed, static_cast<std::uint64_t>(t));
        cd c;
        double dist = 0.0;
        for (int attempt = 0;; ++attempt) {
            if (attempt > 100000) throw PreconditionError("could not place a test disc inside the domain");
            c = cd(domain.box_lo.real() + (domain.box_hi.real() - domain.box_lo.real()) * rng.uniform(),
                   domain.box_lo.imag() + (domain.box_hi.imag() - domain.box_lo.imag()) * rng.uniform());
            if (!domain.inside(c)) continue;
            dist = domain.distance(c);
            if (dist >= min_dist) break;
        }
        const double r = dist * (0.25 + 0.65 * rng.uniform());
        auto on_circle = [&](double th) { return u(c + std::polar(r, th)); };
        const QuadResult avg = integrate_interval(on_circle, 0.0, 2.0 * std::numbers::pi, QuadRule::adaptive, 1e-11);
        const double margin = u(c) - avg.estimate / (2.0 * std::numbers::pi);
        ++rep.trials;
        if (margin < -tol) ++rep.violations;
        rep.worst_margin = std::min(rep.worst_margin, margin);
    }
    return rep;
}

}  // namespace utaylor

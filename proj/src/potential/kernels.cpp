#include "utaylor/error.hpp"
#include "utaylor/potential.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace utaylor {

Real poisson_kernel(const Complex& z, const Complex& zeta) {
    const Real m2 = norm(z);
    if (!(m2 < Real(1))) throw DomainError("Poisson kernel needs |z| < 1");
    const Real d2 = norm(z - zeta);
    if (d2.is_zero()) throw DomainError("Poisson kernel is singular at z = zeta");
    return (Real(1) - m2) / d2;
}

double poisson_kernel(cd z, cd zeta) {
    const double m2 = std::norm(z);
    if (!(m2 < 1.0)) throw DomainError("Poisson kernel needs |z| < 1");
    return (1.0 - m2) / std::norm(z - zeta);
}

Real green_disc(const Complex& z) {
    const Real m = abs(z);
    if (m.is_zero()) throw DomainError("Green function pole at z = 0");
    if (!(m < Real(1))) throw DomainError("Green function of the disc needs |z| < 1");
    return -log(m);
}

double green_disc(cd z) {
    const double m = std::abs(z);
    if (m == 0.0) throw DomainError("Green function pole at z = 0");
    if (!(m < 1.0)) throw DomainError("Green function of the disc needs |z| < 1");
    return -std::log(m);
}

const char* to_string(ThinVerdict v) {
    switch (v) {
        case ThinVerdict::minimally_thin: return "minimally_thin";
        case ThinVerdict::not_minimally_thin: return "not_minimally_thin";
        case ThinVerdict::inconclusive: return "inconclusive";
    }
    return "?";
}

namespace {

double lsq_slope(const std::vector<double>& y, std::size_t from) {
    const std::size_t n = y.size() - from;
    double mx = 0.0, my = 0.0;
    for (std::size_t i = from; i < y.size(); ++i) {
        mx += static_cast<double>(i);
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = from; i < y.size(); ++i) {
        sxy += (static_cast<double>(i) - mx) * (y[i] - my);
        sxx += (static_cast<double>(i) - mx) * (static_cast<double>(i) - mx);
    }
    return sxy / sxx;
}

}  // namespace

MinThinReport minthin_psi_test(const RealFunction& psi, const Quadrature& q, int levels) {
    if (levels < 8) throw PreconditionError("minimal thinness test needs at least 8 levels");
    // Validate 0 <= psi <= 1 and monotonicity on a grid that reaches into the
    // dyadic range.
    double prev = -1.0;
    for (int i = 0; i <= 1000; ++i) {
        const double t = i == 0 ? 0.0 : std::ldexp(1.0, -levels) + (1.0 - std::ldexp(1.0, -levels)) * i / 1000.0;
        const double v = psi(t);
        if (!(v >= 0.0 && v <= 1.0)) throw PreconditionError("psi must take values in [0, 1]");
        if (v < prev) throw PreconditionError("psi must be increasing");
        prev = v;
    }

    MinThinReport rep;
    auto integrand = [&](double t) { return psi(t) / (t * t); };
    double total = 0.0;
    for (int m = 1; m <= levels; ++m) {
        const double lo = std::ldexp(1.0, -m), hi = 2.0 * lo;
        const double scale = std::abs(integrand(0.5 * (lo + hi))) * (hi - lo);
        const double tol = std::max(q.abs_tol * std::ldexp(1.0, -m), 1e-13 * scale);
        const double d = tol > 0.0 ? integrate_interval(integrand, lo, hi, q.rule, tol).estimate : 0.0;
        rep.increments.push_back(d);
        total += d;
        rep.partial.push_back(total);
    }

    const std::size_t half = rep.partial.size() / 2;
    rep.slope = lsq_slope(rep.partial, half);
    const auto& inc = rep.increments;
    const std::size_t n = inc.size();

    // Vanishing increments: the partial sums are already constant.
    if (inc[n - 1] == 0.0 && inc[n - 2] == 0.0 && inc[n - 3] == 0.0) {
        rep.verdict = ThinVerdict::minimally_thin;
        rep.limit_estimate = total;
        return rep;
    }

    // Geometric decay of the increments: extrapolate the tail and require the
    // extrapolated limits of the last levels to agree.
    bool decaying = true;
    double worst_ratio = 0.0;
    for (std::size_t i = n - 6; i < n; ++i) {
        if (!(inc[i - 1] > 0.0) || inc[i] < 0.0) {
            decaying = false;
            break;
        }
        worst_ratio = std::max(worst_ratio, inc[i] / inc[i - 1]);
    }
    if (decaying && worst_ratio < 1.0) {
        std::vector<double> limits;
        for (std::size_t i = n - 3; i < n; ++i) {
            const double r = inc[i] / inc[i - 1];
            limits.push_back(rep.partial[i] + inc[i] * r / (1.0 - r));
        }
        const auto [lo, hi] = std::minmax_element(limits.begin(), limits.end());
        rep.decay_ratio = worst_ratio;
        rep.limit_estimate = limits.back();
        if (*hi - *lo <= q.abs_tol * std::max(1.0, std::abs(limits.back()))) {
            rep.verdict = ThinVerdict::minimally_thin;
            return rep;
        }
    }

    // Growth: the partial sums keep rising linearly or faster, with no sign
    // of geometric decay in the increments.
    std::vector<double> log_inc;
    for (std::size_t i = half; i < n; ++i) log_inc.push_back(inc[i] > 0.0 ? std::log(inc[i]) : -745.0);
    const double log_slope = lsq_slope(log_inc, 0);
    rep.decay_ratio = std::exp(log_slope);
    if (rep.slope > q.abs_tol && log_slope > -0.01) {
        rep.verdict = ThinVerdict::not_minimally_thin;
        return rep;
    }
    rep.verdict = ThinVerdict::inconclusive;
    return rep;
}

}  // namespace utaylor

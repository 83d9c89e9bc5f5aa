#include "utaylor/quadrature.hpp"

#include "utaylor/error.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace utaylor {

namespace {

// Gauss-Kronrod 7/15 nodes on [-1,1] (non-negative half).
constexpr std::array<double, 8> kXk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851, 0.864864423359769072789712788640926,
    0.741531185599394439863864773280788, 0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204, 0.104790010322250183839876322541518,
    0.140653259715525918745189590510238, 0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                       0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b, kronrod, err;
};

Panel gk15(const RealFunction& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double k = kWk[7] * fc;
    double g = kWg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double x = h * kXk[j];
        const double s = f(c - x) + f(c + x);
        k += kWk[j] * s;
        if (j % 2 == 1) g += kWg[j / 2] * s;
    }
    return {a, b, k * h, std::abs((k - g) * h)};
}

QuadResult adaptive_gk(const RealFunction& f, double a, double b, double tol) {
    constexpr int kMaxPanels = 4000;
    std::vector<Panel> work{gk15(f, a, b)};
    double total = work[0].kronrod;
    double err = work[0].err;
    while (err > tol && static_cast<int>(work.size()) < kMaxPanels) {
        // Split the panel with the largest error estimate.
        std::size_t worst = 0;
        for (std::size_t i = 1; i < work.size(); ++i) {
            if (work[i].err > work[worst].err) worst = i;
        }
        const Panel p = work[worst];
        const double mid = 0.5 * (p.a + p.b);
        if (!(mid > p.a && mid < p.b)) break;
        Panel left = gk15(f, p.a, mid);
        Panel right = gk15(f, mid, p.b);
        total += left.kronrod + right.kronrod - p.kronrod;
        err += left.err + right.err - p.err;
        work[worst] = left;
        work.push_back(right);
    }
    // Re-sum to shed accumulated cancellation in the running totals.
    total = 0.0;
    err = 0.0;
    for (const auto& p : work) {
        total += p.kronrod;
        err += p.err;
    }
    return {total, err, err <= tol, static_cast<int>(work.size())};
}

QuadResult midpoint(const RealFunction& f, double a, double b, double tol) {
    constexpr int kMaxLevels = 22;
    long n = 8;
    auto rule = [&](long m) {
        const double h = (b - a) / static_cast<double>(m);
        double s = 0.0;
        for (long i = 0; i < m; ++i) s += f(a + (static_cast<double>(i) + 0.5) * h);
        return s * h;
    };
    double prev = rule(n);
    double prev_extrap = prev;
    for (int level = 0; level < kMaxLevels; ++level) {
        n *= 2;
        const double cur = rule(n);
        // Richardson on the O(h^2) midpoint error; successive extrapolants
        // give the error estimate.
        const double extrap = cur + (cur - prev) / 3.0;
        const double err = level == 0 ? std::abs(cur - prev) : std::abs(extrap - prev_extrap);
        if (err <= tol) return {extrap, err, true, level + 1};
        prev = cur;
        prev_extrap = extrap;
    }
    return {prev_extrap, std::abs(prev_extrap - prev) + tol, false, kMaxLevels};
}

}  // namespace

QuadResult integrate_interval(const RealFunction& f, double a, double b, QuadRule rule, double abs_tol) {
    if (!(abs_tol > 0.0)) throw PreconditionError("quadrature tolerance must be positive");
    if (!(b > a)) throw PreconditionError("quadrature interval must have b > a");
    return rule == QuadRule::adaptive ? adaptive_gk(f, a, b, abs_tol) : midpoint(f, a, b, abs_tol);
}

QuadResult integrate(const RealFunction& f, const Quadrature& q) {
    if (!(q.abs_tol > 0.0)) throw PreconditionError("quadrature tolerance must be positive");
    if (q.max_refinements < 3) throw PreconditionError("quadrature needs at least 3 refinements");

    // Half of the budget goes to the panels (shared geometrically), half to the tail.
    double sum = 0.0;
    double quad_err = 0.0;
    std::vector<double> panels;
    QuadResult out;
    for (int m = 0; m < q.max_refinements; ++m) {
        const double hi = std::ldexp(1.0, -m);
        const double lo = std::ldexp(1.0, -m - 1);
        const double panel_tol = 0.25 * q.abs_tol * std::ldexp(1.0, -std::min(m, 60)) + 1e-300;
        const QuadResult p = integrate_interval(f, lo, hi, q.rule, std::max(panel_tol, 1e-17 * (hi - lo)));
        sum += p.estimate;
        quad_err += p.bound;
        panels.push_back(p.estimate);
        out.panels = m + 1;
        if (m < 2) continue;

        const double p2 = panels[m - 2], p1 = panels[m - 1], p0 = panels[m];
        if (p0 == 0.0 && p1 == 0.0) {
            out = {sum, quad_err, quad_err <= q.abs_tol, m + 1};
            if (out.converged) return out;
            continue;
        }
        if (p1 == 0.0 || p2 == 0.0) continue;
        const double r1 = p0 / p1, r2 = p1 / p2;
        // Geometric decay with a stable ratio.
        if (!(std::abs(r1) < 0.95 && std::abs(r2) < 0.95 && std::abs(r1 - r2) <= 0.1)) continue;
        const double r = std::max(std::abs(r1), std::abs(r2));
        const double tail = p0 * r1 / (1.0 - r1);
        const double tail_bound = std::abs(p0) * r / (1.0 - r);
        const double bound = tail_bound + quad_err;
        if (bound <= q.abs_tol) return {sum + tail, bound, true, m + 1};
    }
    out.estimate = sum;
    out.bound = quad_err;
    out.converged = false;
    return out;
}

}  // namespace utaylor

#pragma once

#include <functional>

namespace utaylor {

enum class QuadRule { midpoint_dyadic, adaptive };

struct Quadrature {
    QuadRule rule = QuadRule::adaptive;
    double abs_tol = 1e-10;
    // Number of dyadic panels [2^{-m-1}, 2^{-m}] examined before giving up.
    int max_refinements = 200;
};

struct QuadResult {
    double estimate = 0.0;
    double bound = 0.0;
    bool converged = false;
    int panels = 0;
};

using RealFunction = std::function<double(double)>;

// Integral of f over a finite interval on which f is continuous.
QuadResult integrate_interval(const RealFunction& f, double a, double b, QuadRule rule, double abs_tol);

// Integral of f over (0,1]. The singular end at 0 is handled by dyadic panels;
// the remaining tail is extrapolated geometrically once the panel integrals
// decay, and the extrapolated tail is charged to the bound.
QuadResult integrate(const RealFunction& f, const Quadrature& q = {});

}  // namespace utaylor

#pragma once

#include "utaylor/geometry.hpp"
#include "utaylor/poly.hpp"

#include <functional>
#include <string>

namespace utaylor {

using TargetFunction = std::function<Complex(const Complex&)>;

struct ApproxProblem {
    TargetFunction target;
    CompactSet set;
    long degree = 0;
    Real tol;
    // Skip the connected complement gate (the caller vouches for the set).
    bool complement_waived = false;
};

struct ApproxConfig {
    // Validation is attempted once the fit-grid error drops below safety * tol.
    double safety = 0.5;
    // Validation grid density relative to the fitting grid.
    int validation_factor = 4;
    std::size_t min_validation_points = 1000;
    // Fitting grid must have at least oversample * (degree + 1) points.
    int oversample = 2;
    // Stop at the first degree whose validated error meets tol.
    bool early_stop = true;
    int complement_grid = 128;
    // Throw PrecisionError when a miss is dominated by roundoff; otherwise
    // record it in the note.
    bool precision_guard = true;
};

struct ApproxResult {
    Poly poly;
    Real achieved_error;  // sup over the validation grid
    Real requested_tol;
    bool met = false;
    long degree_used = -1;
    Real fit_error;  // sup over the fitting grid
    std::size_t fit_points = 0;
    std::size_t validation_points = 0;
    std::string note;
};

// Discrete least squares in a basis orthogonalized against the weighted
// sample inner product (boundary weight 1, interior weight 1/4), with the
// reported error measured on a denser validation grid.
ApproxResult mergelyan_approximate(const ApproxProblem& prob, const ApproxConfig& cfg = {});

// Fits q* as above and returns z^n q*(z). The requested tolerance and the
// achieved error are both scaled by max(1, d_max)^n.
ApproxResult shifted_fit(const ApproxProblem& prob, long n, const ApproxConfig& cfg = {});

// Validation grid used by mergelyan_approximate for a given fitting set.
CompactSet validation_grid(const CompactSet& fit, const ApproxConfig& cfg);

}  // namespace utaylor

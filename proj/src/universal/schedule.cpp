#include "utaylor/error.hpp"
#include "utaylor/universal.hpp"

#include <cmath>

namespace utaylor {

namespace {

Complex num(const char* re, const char* im = "0") { return {Real::parse(re), Real::parse(im)}; }

Poly poly(std::vector<Complex> c) { return Poly(std::move(c)); }

// Filled polygon inscribed in the lens bounded by the circles through +-1
// centred at +-2i (radius sqrt 5). Vertices +-1 are exact.
CompactSet lens_polygon(int per_arc, int density) {
    const Real r = sqrt(Real(5));
    const Real t0 = atan2(Real(2), Real(1));
    const Real span = Real::pi() - ldexp(t0, 1);
    std::vector<Complex> v;
    v.emplace_back(Real(1));
    const Complex up(Real(0), Real(-2)), lo(Real(0), Real(2));
    for (int j = 1; j < per_arc; ++j) v.push_back(up + Complex::polar(r, t0 + span * Real(j) / Real(per_arc)));
    v.emplace_back(Real(-1));
    const Real s0 = Real::pi() + t0;
    for (int j = 1; j < per_arc; ++j) v.push_back(lo + Complex::polar(r, s0 + span * Real(j) / Real(per_arc)));
    return CompactSet::polyline("A", std::move(v), true, true, density);
}

}  // namespace

Schedule::Schedule(SeriesDomain d, CompactSet a, Weight wt) : domain(d), A(std::move(a)), w(wt) {}

Schedule Schedule::default_disc(int steps) {
    const TangentDisc td = tangent_disc(Complex(1), Real(4));
    Schedule s(SeriesDomain::disc, CompactSet::disc("A", td.center, td.radius), Weight::power_at({1.0, 0.0}, 0.5));
    const CompactSet K = CompactSet::disc("K", num("-1.02"), Real::parse("0.02"));
    // Every target vanishes at 1: the exponent n_k needed on the tangent
    // disc grows like |(p_k - sum q_j)(1)|^4, so a nonzero value at the
    // tangency point makes the strict tolerances unreachable within a few steps.
    const std::vector<Poly> targets = {
        poly({num("0.5"), num("-0.5")}),
        poly({num("-0.2", "-0.3"), num("0.2", "0.3")}),
        poly({num("0.25"), num("-0.5"), num("0.25")}),
        poly({num("0", "0.3"), num("0"), num("0"), num("0", "-0.3")}),
        poly({num("0"), num("-0.4"), num("0.4")}),
        poly({num("0.1", "-0.35"), num("-0.1", "0.35")}),
        poly({num("0.5"), num("-0.3"), num("0"), num("0"), num("-0.2")}),
        poly({num("0", "-0.25"), num("0", "0.5"), num("0", "-0.25")}),
    };
    for (int k = 0; k < steps; ++k) s.steps.push_back({K, targets[static_cast<std::size_t>(k) % targets.size()], {}});
    return s;
}

Schedule Schedule::default_strip(int steps) {
    Schedule s(SeriesDomain::strip, lens_polygon(64, 256), Weight::strip_poisson(1.0));
    const Complex c = num("1.06", "0.45");
    const CompactSet K = CompactSet::disc("K", c, Real::parse("0.05"));
    const std::vector<Poly> targets = {
        poly({num("0.5")}),
        poly({num("0.5") - c * num("0.25"), num("0.25")}),
        poly({num("0", "0.5")}),
    };
    for (int k = 0; k < steps; ++k) s.steps.push_back({K, targets[static_cast<std::size_t>(k) % targets.size()], {}});
    s.max_degree = 200;
    s.delta_floor = 1e-2;
    return s;
}

void Schedule::validate(int k_max) const {
    if (steps.empty()) throw ScheduleError("schedule has no steps");
    if (max_degree < 0) throw ScheduleError("max_degree must be non-negative");
    if (fit_density < 2 || grid_density < 2) throw ScheduleError("sample densities must be at least 2");
    const std::size_t count =
        k_max < 0 ? steps.size() : std::min(steps.size(), static_cast<std::size_t>(k_max));

    const Real one(1);
    const Real slack = ldexp(Real(1), -(working_precision() - 8));
    const CompactSet grid = certificate_grid(A, grid_density, min_grid_points);
    for (const auto& z : grid.all_samples()) {
        const cd zd = z.to_std();
        if (domain == SeriesDomain::disc) {
            const Real r = abs(z);
            if (r > one + slack) throw ScheduleError("A leaves the closed unit disc at " + z.re.to_string(8));
        } else {
            const Real x = abs(z.re);
            if (x > one + slack) throw ScheduleError("A leaves the closed strip at Re z = " + z.re.to_string(8));
            if (x >= one - slack && !(abs(z.im) <= slack))
                throw ScheduleError("closure of A meets the strip boundary away from +-1");
        }
        const double wv = w(zd);
        if (!(wv > 1.0)) {
            throw ScheduleError("weight is not > 1 on A (w = " + std::to_string(wv) + " at " +
                                std::to_string(zd.real()) + (zd.imag() < 0 ? "" : "+") + std::to_string(zd.imag()) +
                                "i)");
        }
    }

    for (std::size_t i = 0; i < count; ++i) {
        const int k = static_cast<int>(i) + 1;
        const auto& st = steps[i];
        for (const auto& z : st.K.all_samples()) {
            const bool outside =
                domain == SeriesDomain::disc ? abs(z) >= one - slack : abs(z.re) >= one - slack;
            if (!outside) {
                throw ScheduleError("step " + std::to_string(k) + ": K '" + st.K.id() +
                                    "' meets the open domain");
            }
        }
        const CompactSet core = domain == SeriesDomain::disc
                                    ? CompactSet::disc("core", Complex(), Real(k) / Real(k + 1), fit_density)
                                    : strip_rectangle(k, fit_density);
        const std::vector<CompactSet> sets = {A, core, st.K};
        const auto v = connected_complement_check(sets, default_bounding_box(sets), complement_grid);
        if (v == ComplementVerdict::fail) {
            throw ScheduleError("step " + std::to_string(k) + ": A, the core set and K '" + st.K.id() +
                                "' do not have connected complement");
        }
        if (st.tau && !(st.tau->sign() > 0)) throw ScheduleError("step " + std::to_string(k) + ": tau must be positive");
    }
}

}  // namespace utaylor

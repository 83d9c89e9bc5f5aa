#include "doctest.h"

#include "utaylor/error.hpp"
#include "utaylor/geometry.hpp"

#include <cmath>
#include <random>

using namespace utaylor;

namespace {

Real poisson(const Complex& z, const Complex& zeta) { return (Real(1) - norm(z)) / norm(z - zeta); }

}  // namespace

TEST_CASE("region_membership examples") {
    const ApproachRegion r(Complex(1), Real(2), Real(1));
    CHECK_FALSE(region_membership(r, Complex(0)));
    CHECK(region_membership(r, Complex(0.5)));
    const ApproachRegion shallow(Complex(1), Real(2), Real(0.1));
    CHECK_FALSE(region_membership(shallow, Complex(0.5)));
    CHECK_THROWS_AS(ApproachRegion(Complex(1), Real(1), Real(1)), PreconditionError);
    CHECK_THROWS_AS(ApproachRegion(Complex(0.5), Real(2), Real(1)), PreconditionError);
}

TEST_CASE("region_samples lie in the region and on their strata") {
    const ApproachRegion one(Complex(1), Real(2), Real(1));
    auto single = region_samples(one, 1, 1);
    REQUIRE(single.size() == 1);
    CHECK(region_membership(one, single[0]));

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        const double th = 2.0 * M_PI * u(rng);
        const ApproachRegion r(Complex::unit(Real(th)), Real(1.05 + 3.0 * u(rng)), Real(0.05 + 0.95 * u(rng)));
        const int per = 7;
        auto pts = region_samples(r, 6, per);
        REQUIRE(pts.size() == 42);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            CHECK(region_membership(r, pts[i]));
            const int m = static_cast<int>(i / per) + 1;
            CHECK(abs(Real(1) - abs(pts[i]) - ldexp(r.t, -m)) < Real(1e-60));
        }
    }
}

TEST_CASE("tangent_disc examples") {
    auto d = tangent_disc(Complex(1), Real(1));
    CHECK(d.center == Complex(0.5));
    CHECK(d.radius == Real(0.5));
    // Real-axis oracle: (1 - x^2)/(1 - x)^2 = (1 + x)/(1 - x) = c at x = (c - 1)/(c + 1).
    for (double c : {0.5, 1.0, 4.0}) {
        auto t = tangent_disc(Complex(1), Real(c));
        const Real x = (Real(c) - Real(1)) / (Real(c) + Real(1));
        CHECK(abs(t.center.re - t.radius - x) < Real(1e-70));
    }
    const Complex zeta = Complex::unit(Real(2.1));
    auto t = tangent_disc(zeta, Real(3));
    CHECK(abs(t.center + zeta * t.radius - zeta) < Real(1e-70));
    auto tiny = tangent_disc(Complex(1), Real(1e-12));
    CHECK(abs(tiny.center) < Real(1e-11));
    CHECK(abs(tiny.radius - Real(1)) < Real(1e-11));
    CHECK_THROWS_AS(tangent_disc(Complex(1), Real(0)), PreconditionError);
}

TEST_CASE("property: P equals c on the tangent circle") {
    for (double c : {0.5, 1.0, 4.0}) {
        const Complex zeta = Complex::unit(Real(0.7));
        auto t = tangent_disc(zeta, Real(c));
        Real worst(0);
        for (int j = 1; j < 1000; ++j) {
            const Real th = ldexp(Real::pi(), 1) * Real(j) / Real(1000);
            const Complex z = t.center + zeta * Complex::polar(t.radius, th);
            worst = max(worst, abs(poisson(z, zeta) - Real(c)));
        }
        CHECK(worst <= Real(1e-10));
    }
}

TEST_CASE("compact set samples and d_max") {
    auto k = CompactSet::disc("K", Complex(3), Real(0.5), 100);
    CHECK(k.boundary_samples().size() == 100);
    CHECK_FALSE(k.interior_samples().empty());
    CHECK(abs(k.d_max() - Real(3.5)) < Real(1e-60));
    Real m(0);
    for (const auto& z : k.all_samples()) m = max(m, abs(z));
    CHECK(m == k.d_max());
    auto fine = k.resampled(2.0);
    CHECK(fine.boundary_samples().size() == 200);
    auto r = CompactSet::rectangle("R", Complex(-0.5, -2), Complex(0.5, 2), 200);
    CHECK(r.shape_tag() == ShapeTag::rectangle);
    CHECK(abs(r.d_max() - sqrt(Real(4.25))) < Real(1e-60));
    auto u = CompactSet::unite("U", {k, r});
    CHECK(u.shape_tag() == ShapeTag::union_);
    CHECK(u.d_max() == k.d_max());
    CHECK(u.distance(cd(3.0, 0.0)) == 0.0);
    CHECK(u.distance(cd(2.0, 0.0)) == doctest::Approx(0.5));
    CHECK_THROWS_AS(CompactSet::disc("bad", Complex(0), Real(-1)), PreconditionError);
}

TEST_CASE("sup with densification") {
    auto k = CompactSet::disc("K", Complex(0), Real(1), 64);
    auto s = sup_with_densification(k, [](const Complex& z) { return abs(z); });
    CHECK(s.stable);
    CHECK(abs(s.value - Real(1)) < Real(1e-60));
}

TEST_CASE("connected_complement_check examples") {
    auto disc = CompactSet::disc("D", Complex(0), Real(1));
    const BoxRegion box{cd(-4, -4), cd(4, 4)};
    CHECK(connected_complement_check({disc}, box, 64) == ComplementVerdict::pass);

    std::vector<CompactSet> ring;
    for (int j = 0; j < 40; ++j) {
        ring.push_back(CompactSet::disc("r", Complex::polar(Real(2), Real(2.0 * M_PI * j / 40)), Real(0.25)));
    }
    CHECK(connected_complement_check(ring, box, 64) == ComplementVerdict::fail);

    auto a = CompactSet::disc("a", Complex(-2), Real(0.5));
    auto b = CompactSet::disc("b", Complex(2), Real(0.5));
    CHECK(connected_complement_check({a, b}, box, 64) == ComplementVerdict::pass);

    // A closed polyline encloses its inside unless filled.
    std::vector<Complex> square = {Complex(-1, -1), Complex(1, -1), Complex(1, 1), Complex(-1, 1)};
    CHECK(connected_complement_check({CompactSet::polyline("o", square, true, false)}, box, 64) ==
          ComplementVerdict::fail);
    CHECK(connected_complement_check({CompactSet::polyline("f", square, true, true)}, box, 64) ==
          ComplementVerdict::pass);
    CHECK_THROWS_AS(connected_complement_check({disc}, box, 32), PreconditionError);
}

TEST_CASE("property: adding sets away from an enclosed hole keeps a failing union failing") {
    std::vector<CompactSet> ring;
    for (int j = 0; j < 40; ++j) {
        ring.push_back(CompactSet::disc("r", Complex::polar(Real(2), Real(2.0 * M_PI * j / 40)), Real(0.25)));
    }
    const BoxRegion box{cd(-5, -5), cd(5, 5)};
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    for (int trial = 0; trial < 5; ++trial) {
        cd c;
        do {
            c = cd(u(rng), u(rng));
        } while (std::abs(c) < 2.6);
        auto sets = ring;
        sets.push_back(CompactSet::disc("x", Complex(c), Real(0.3)));
        CHECK(connected_complement_check(sets, box, 64) != ComplementVerdict::pass);
    }
}

TEST_CASE("domains: inside and distance agree") {
    CHECK(domain_consistency_violations(DomainDesc::unit_disc(), 64) == 0);
    CHECK(domain_consistency_violations(DomainDesc::strip(), 64) == 0);
    CHECK(domain_consistency_violations(DomainDesc::tangent_disc(cd(0, 1), 3.0), 64) == 0);
    CHECK(domain_consistency_violations(DomainDesc::psi_region([](double t) { return t * t; }, 400), 64) == 0);
    auto d = DomainDesc::tangent_disc(cd(1, 0), 3.0);
    CHECK(d.distance(cd(0.75, 0.0)) == doctest::Approx(0.25));
    CHECK(std::abs(d.nearest_boundary(cd(0.8, 0.0)) - cd(1.0, 0.0)) < 1e-15);
}

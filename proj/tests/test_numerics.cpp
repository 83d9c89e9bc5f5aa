#include "doctest.h"

#include "utaylor/error.hpp"
#include "utaylor/poly.hpp"
#include "utaylor/quadrature.hpp"

#include <cmath>
#include <random>

using namespace utaylor;

namespace {

Poly random_poly(std::mt19937_64& rng, int degree) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Complex> c;
    for (int j = 0; j <= degree; ++j) {
        double re, im;
        do {
            re = u(rng);
            im = u(rng);
        } while (re * re + im * im > 1.0);
        c.emplace_back(re, im);
    }
    return Poly(std::move(c));
}

}  // namespace

TEST_CASE("real parse accepts decimal, hex and rationals") {
    CHECK(Real::parse("3/10") == Real(3) / Real(10));
    CHECK(Real::parse("0x1.8p+1") == Real(3));
    CHECK(Real::parse(" -2.5 ") == Real(-2.5));
    CHECK_THROWS_AS(Real::parse("abc"), PreconditionError);
    CHECK_THROWS_AS(Real::parse("1/0"), PreconditionError);
}

TEST_CASE("hex rendering round-trips bit-exactly") {
    const Real x = Real::pi() / Real(7);
    CHECK(Real::parse(x.to_hex()) == x);
}

TEST_CASE("precision floor is enforced") {
    CHECK_THROWS_AS(set_working_precision(52), PreconditionError);
    {
        PrecisionScope scope(80);
        CHECK(Real(1).precision() == 80);
    }
    CHECK(working_precision() == kDefaultPrecisionBits);
}

TEST_CASE("moved-from reals can be reassigned") {
    Real a(2);
    Real b(std::move(a));
    a = Real(5);
    CHECK(a == Real(5));
    CHECK(b == Real(2));
}

TEST_CASE("complex arithmetic") {
    const Complex z(3, 4);
    CHECK(abs(z) == Real(5));
    CHECK(z * conj(z) == Complex(25));
    CHECK((z / z - Complex(1)).is_zero());
    CHECK_THROWS_AS(z / Complex(0), DomainError);
    const Complex s = sqrt(Complex(-4));
    CHECK(s == Complex(0, 2));
    CHECK(abs(pow(z, -2) * pow(z, 2) - Complex(1)) < Real(1e-70));
}

TEST_CASE("poly_eval examples") {
    CHECK(poly_eval(Poly({Complex(0), Complex(1)}), Complex(3, 4)) == Complex(3, 4));
    CHECK(poly_eval(Poly({Complex(1), Complex(1), Complex(1)}), Complex(1)) == Complex(3));
    // (z-1)^5 expanded by the binomial theorem, compared against direct powering.
    const Poly p({Complex(-1), Complex(5), Complex(-10), Complex(10), Complex(-5), Complex(1)});
    CHECK(poly_eval(p, Complex(2)) == Complex(1));
    const Complex z(0.3, -1.7);
    CHECK(abs(poly_eval(p, z) - pow(z - Complex(1), 5)) < Real(1e-70));
}

TEST_CASE("degree and trimming") {
    CHECK(Poly().degree() == -1);
    CHECK(Poly({Complex(1), Complex(0), Complex(0)}).degree() == 0);
    const Poly q = Poly::monomial(3, Complex(2));
    CHECK(q.degree() == 3);
    CHECK(q.valuation() == 3);
    CHECK(q.shifted(4).degree() == 7);
    CHECK(q.shifted(4).valuation() == 7);
    CHECK((q - q).degree() == -1);
}

TEST_CASE("compose and multiply") {
    const Poly p({Complex(1), Complex(2), Complex(3)});
    const Poly inner({Complex(0, 1), Complex(1)});
    const Complex z(0.25, 0.5);
    CHECK(abs(p.compose(inner)(z) - p(inner(z))) < Real(1e-70));
}

TEST_CASE("partial_sum") {
    CoefficientStream ones = [](long) { return std::optional<Complex>(Complex(1)); };
    CHECK(partial_sum(ones, 2) == Poly({Complex(1), Complex(1), Complex(1)}));
    CoefficientStream finite = [](long j) -> std::optional<Complex> {
        if (j < 3) return Complex(j + 7);
        return std::nullopt;
    };
    CHECK(partial_sum(finite, 0) == Poly::constant(Complex(7)));
    CHECK_THROWS_AS(partial_sum(finite, 3), StreamExhausted);
}

TEST_CASE("property: Horner at 2p agrees with p") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const int deg = static_cast<int>(rng() % 51);
        const Poly p = random_poly(rng, deg);
        const Complex z(std::complex<double>(0.9 * std::cos(trial), 0.9 * std::sin(trial)));
        const Complex lo = poly_eval(p, z);
        Complex hi;
        {
            PrecisionScope scope(512);
            hi = poly_eval(p, z);
        }
        CHECK(abs(lo - hi) < Real(1e-70));
    }
}

TEST_CASE("property: (p*q)(z) = p(z) q(z)") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        const Poly p = random_poly(rng, static_cast<int>(rng() % 20));
        const Poly q = random_poly(rng, static_cast<int>(rng() % 20));
        const Complex z(std::complex<double>(std::sin(trial), std::cos(3.0 * trial)));
        CHECK(abs((p * q)(z) - p(z) * q(z)) < Real(1e-65));
    }
}

TEST_CASE("integrate examples") {
    for (QuadRule rule : {QuadRule::adaptive, QuadRule::midpoint_dyadic}) {
        Quadrature q;
        q.rule = rule;
        q.abs_tol = 1e-9;
        auto one = integrate([](double) { return 1.0; }, q);
        CHECK(one.converged);
        CHECK(std::abs(one.estimate - 1.0) <= one.bound);
        auto lin = integrate([](double t) { return t; }, q);
        CHECK(lin.converged);
        CHECK(std::abs(lin.estimate - 0.5) <= lin.bound + 1e-15);
        auto sing = integrate([](double t) { return 1.0 / std::sqrt(t); }, q);
        CHECK(sing.converged);
        CHECK(std::abs(sing.estimate - 2.0) <= 1e-6);
    }
}

TEST_CASE("integrate reports divergence as unconverged") {
    Quadrature q;
    q.max_refinements = 50;
    auto r = integrate([](double t) { return 1.0 / t; }, q);
    CHECK_FALSE(r.converged);
}

TEST_CASE("property: integrate is monotone under domination") {
    Quadrature q;
    q.abs_tol = 1e-8;
    for (int a = 1; a <= 6; ++a) {
        const double s = 0.1 * a;
        auto f = [s](double t) { return std::pow(t, s) * std::cos(t); };
        auto g = [s](double t) { return std::pow(t, s); };
        auto rf = integrate(f, q);
        auto rg = integrate(g, q);
        CHECK(rf.estimate <= rg.estimate + 2.0 * std::max(rf.bound, rg.bound));
    }
}

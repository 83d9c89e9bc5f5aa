#include "doctest.h"

#include "utaylor/approx.hpp"
#include "utaylor/error.hpp"

#include <random>

using namespace utaylor;

namespace {

ApproxProblem problem(TargetFunction f, CompactSet set, long degree, double tol) {
    return ApproxProblem{std::move(f), std::move(set), degree, Real(tol)};
}

Real neumann_tail_bound(int degree) {
    // 1/z = sum (-1)^j (z-3)^j / 3^{j+1}; on |z-3| <= 1/2 the tail after
    // degree N is at most (1/3)(1/6)^{N+1}/(5/6).
    return Real(1) / Real(3) * pow(Real(1) / Real(6), degree + 1) / (Real(5) / Real(6));
}

}  // namespace

TEST_CASE("polynomial target is reproduced") {
    auto k = CompactSet::disc("K", Complex(0.5, 0.2), Real(0.7), 64);
    auto res = mergelyan_approximate(problem([](const Complex& z) { return z * z; }, k, 4, 1e-30));
    CHECK(res.met);
    CHECK(res.achieved_error <= Real(1e-30));
    CHECK(res.validation_points >= 1000);
    CHECK(res.validation_points >= 4 * res.fit_points);
}

TEST_CASE("1/z on a disc around 3") {
    auto k = CompactSet::disc("K", Complex(3), Real(0.5), 128);
    auto inv = [](const Complex& z) { return Complex(1) / z; };
    auto res = mergelyan_approximate(problem(inv, k, 40, 1e-8));
    CHECK(res.met);
    CHECK(res.achieved_error <= Real(1e-8));

    // Full degree 40 against the Neumann-series truncation.
    ApproxConfig full;
    full.early_stop = false;
    auto deep = mergelyan_approximate(problem(inv, k, 40, 1e-60), full);
    CHECK(deep.degree_used == 40);
    CHECK(deep.achieved_error <= Real(10) * neumann_tail_bound(40));
}

TEST_CASE("piecewise constant target on a union") {
    auto u = CompactSet::unite("U", {CompactSet::disc("a", Complex(0), Real(0.5), 96),
                                     CompactSet::disc("b", Complex(3), Real(0.5), 96)});
    auto step = [](const Complex& z) { return z.re > Real(1.5) ? Complex(1) : Complex(0); };
    ApproxConfig full;
    full.early_stop = false;
    Real prev(1e9);
    for (long d : {10, 20, 40, 60}) {
        auto res = mergelyan_approximate(problem(step, u, d, 1e-6), full);
        CHECK(res.achieved_error <= prev * Real(1.01));
        prev = res.achieved_error;
    }
    CHECK(prev <= Real(1e-6));
}

TEST_CASE("property: random polynomial targets are reproduced") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    auto k = CompactSet::rectangle("R", Complex(-0.5, -0.5), Complex(0.5, 0.5), 96);
    for (int trial = 0; trial < 5; ++trial) {
        const int deg = 3 + static_cast<int>(rng() % 15);
        std::vector<Complex> c;
        for (int j = 0; j <= deg; ++j) c.emplace_back(u(rng) * 0.7, u(rng) * 0.7);
        const Poly p(c);
        ApproxConfig full;
        full.early_stop = false;
        auto res = mergelyan_approximate(problem([&](const Complex& z) { return p(z); }, k, deg, 1e-25), full);
        CHECK(res.achieved_error <= Real(1e-25));
    }
}

TEST_CASE("property: achieved error is non-increasing in degree") {
    auto k = CompactSet::disc("K", Complex(3), Real(0.5), 96);
    auto inv = [](const Complex& z) { return Complex(1) / z; };
    ApproxConfig full;
    full.early_stop = false;
    Real prev(1e9);
    for (long d = 2; d <= 30; d += 4) {
        auto res = mergelyan_approximate(problem(inv, k, d, 1e-70), full);
        CHECK(res.achieved_error <= prev * Real(1.01));
        prev = res.achieved_error;
    }
}

TEST_CASE("property: doubling the samples changes the error by less than 10%") {
    auto inv = [](const Complex& z) { return Complex(1) / z; };
    ApproxConfig full;
    full.early_stop = false;
    auto a = mergelyan_approximate(problem(inv, CompactSet::disc("K", Complex(3), Real(0.5), 96), 16, 1e-70), full);
    auto b = mergelyan_approximate(problem(inv, CompactSet::disc("K", Complex(3), Real(0.5), 192), 16, 1e-70), full);
    CHECK(abs(a.achieved_error - b.achieved_error) <= Real(0.1) * a.achieved_error);
}

TEST_CASE("shifted_fit") {
    auto k = CompactSet::disc("K", Complex(1.5), Real(0.5), 64);
    auto f = [](const Complex& z) { return exp(z); };
    auto base = mergelyan_approximate(problem(f, k, 20, 1e-12));
    auto same = shifted_fit(problem(f, k, 20, 1e-12), 0);
    CHECK(same.poly == base.poly);
    CHECK(same.achieved_error == base.achieved_error);
    auto sh = shifted_fit(problem(f, k, 20, 1e-12), 10);
    CHECK(sh.poly.valuation() >= 10);
    for (long j = 0; j < 10; ++j) CHECK(sh.poly.coeff(j).is_zero());
    CHECK(abs(sh.achieved_error - base.achieved_error * Real(1024)) <= Real(1e-60));
    CHECK(sh.met == base.met);
    CHECK_THROWS_AS(shifted_fit(problem(f, k, 20, 1e-12), -1), PreconditionError);
}

TEST_CASE("sets with enclosed holes are rejected") {
    std::vector<CompactSet> ring;
    for (int j = 0; j < 40; ++j) ring.push_back(CompactSet::disc("r", Complex::polar(Real(2), Real(6.283185307 * j / 40)), Real(0.25), 32));
    auto u = CompactSet::unite("ring", ring);
    CHECK_THROWS_AS(mergelyan_approximate(problem([](const Complex& z) { return z; }, u, 3, 1e-6)), PreconditionError);
}

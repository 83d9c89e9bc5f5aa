#include "utaylor/error.hpp"
#include "utaylor/universal.hpp"

#include <cmath>
#include <limits>

namespace utaylor {

const char* to_string(SeriesDomain d) { return d == SeriesDomain::disc ? "disc" : "strip"; }

const char* to_string(BuildMode m) { return m == BuildMode::strict ? "strict" : "empirical"; }

SeriesDomain series_domain_from_string(const std::string& s) {
    if (s == "disc") return SeriesDomain::disc;
    if (s == "strip") return SeriesDomain::strip;
    throw ScheduleError("unknown domain '" + s + "' (expected disc or strip)");
}

BuildMode build_mode_from_string(const std::string& s) {
    if (s == "strict") return BuildMode::strict;
    if (s == "empirical") return BuildMode::empirical;
    throw ScheduleError("unknown mode '" + s + "' (expected strict or empirical)");
}

double Weight::operator()(cd z) const {
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (kind == Kind::power) {
        const double d = std::abs(z - zeta);
        if (d == 0.0) return inf;
        return std::pow(d, -exponent);
    }
    const cd t = std::tan(0.25 * M_PI * z);
    const double r2 = std::norm(t);
    const double a = std::norm(t - 1.0), b = std::norm(t + 1.0);
    if (a == 0.0 || b == 0.0) return inf;
    const double h = lambda * ((1.0 - r2) / a + (1.0 - r2) / b);
    return std::exp(h);
}

Weight Weight::power_at(cd zeta, double exponent) {
    Weight w;
    w.kind = Kind::power;
    w.zeta = zeta;
    w.exponent = exponent;
    return w;
}

Weight Weight::strip_poisson(double lambda) {
    Weight w;
    w.kind = Kind::strip_poisson;
    w.lambda = lambda;
    return w;
}

CompactSet certificate_grid(const CompactSet& set, int density, std::size_t min_points) {
    CompactSet g = set.with_density(density);
    while (g.sample_count() < min_points) {
        density *= 2;
        g = set.with_density(density);
    }
    return g;
}

Poly UniversalSeries::block_sum(std::size_t k) const {
    if (k > blocks.size()) throw IndexError("only " + std::to_string(blocks.size()) + " blocks are built");
    Poly s;
    for (std::size_t j = 0; j < k; ++j) s += blocks[j].q();
    return s;
}

long UniversalSeries::coefficient_count() const { return built().degree() + 1; }

Poly UniversalSeries::partial_sum(long N) const {
    if (N < 0) throw IndexError("partial sum index must be non-negative");
    return built().truncated(N);
}

Complex UniversalSeries::operator()(const Complex& z) const {
    Complex s;
    for (const auto& b : blocks) {
        if (b.qstar.is_zero()) continue;
        s += pow(z, b.shift) * b.qstar(z);
    }
    return s;
}

std::function<cd(cd)> UniversalSeries::evaluator(long bits) const {
    return [f = *this, bits](cd z) {
        PrecisionScope scope(bits);
        return f(Complex(z)).to_std();
    };
}

Complex series_coefficient(const UniversalSeries& f, long j) {
    const long count = f.coefficient_count();
    if (j < 0 || j >= count) {
        throw IndexError("coefficient " + std::to_string(j) + " is beyond the built blocks (" +
                         std::to_string(count) + " coefficients available)");
    }
    Complex a;
    for (const auto& b : f.blocks) {
        if (j >= b.shift) a += b.qstar.coeff(j - b.shift);
    }
    return a;
}

}  // namespace utaylor

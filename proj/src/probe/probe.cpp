#include "utaylor/probe.hpp"

#include "utaylor/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace utaylor {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct CellGrid {
    const BoxRegion& box;
    int n;

    // -1 for values outside the box or non-finite.
    long index(cd v) const {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return -1;
        const double fx = (v.real() - box.lo.real()) / (box.hi.real() - box.lo.real());
        const double fy = (v.imag() - box.lo.imag()) / (box.hi.imag() - box.lo.imag());
        if (fx < 0.0 || fx > 1.0 || fy < 0.0 || fy > 1.0) return -1;
        const long ix = std::min<long>(n - 1, static_cast<long>(fx * n));
        const long iy = std::min<long>(n - 1, static_cast<long>(fy * n));
        return iy * n + ix;
    }
};

void finish(CoverageScore& s) {
    s.cells_hit = static_cast<std::size_t>(std::count(s.hits.begin(), s.hits.end(), std::uint8_t{1}));
    s.hit_fraction = static_cast<double>(s.cells_hit) / (static_cast<double>(s.grid_n) * s.grid_n);
}

CoverageScore empty_score(const BoxRegion& box, int grid_n) {
    if (grid_n < 1) throw PreconditionError("coverage grid needs grid_n >= 1");
    if (!(box.hi.real() > box.lo.real()) || !(box.hi.imag() > box.lo.imag()))
        throw PreconditionError("coverage box is empty");
    CoverageScore s;
    s.box = box;
    s.grid_n = grid_n;
    s.hits.assign(static_cast<std::size_t>(grid_n) * static_cast<std::size_t>(grid_n), 0);
    return s;
}

void add_values(CoverageScore& s, const cd* first, const cd* last) {
    const CellGrid g{s.box, s.grid_n};
    for (const cd* v = first; v != last; ++v) {
        ++s.samples_used;
        const long i = g.index(*v);
        if (i >= 0) s.hits[static_cast<std::size_t>(i)] = 1;
    }
}

double diameter(const std::vector<cd>& v) {
    double d = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag())) return kInf;
        for (std::size_t j = i + 1; j < v.size(); ++j) d = std::max(d, std::abs(v[i] - v[j]));
    }
    return d;
}

// Maximum of w on |z| = rho.
double circle_max(const Weight& w, double rho, int samples) {
    if (w.kind == Weight::Kind::power && w.exponent >= 0.0) {
        const double gap = std::abs(w.zeta) - rho;
        if (gap > 0.0) return std::pow(gap, -w.exponent);
    }
    double m = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double th = 2.0 * std::numbers::pi * i / samples + std::arg(w.zeta);
        m = std::max(m, w(std::polar(rho, th)));
    }
    return m;
}

}  // namespace

CoverageScore coverage_of(const std::vector<cd>& values, const BoxRegion& box, int grid_n) {
    CoverageScore s = empty_score(box, grid_n);
    add_values(s, values.data(), values.data() + values.size());
    finish(s);
    return s;
}

std::size_t hits_outside_disc(const CoverageScore& s, cd center, double radius) {
    const double w = (s.box.hi.real() - s.box.lo.real()) / s.grid_n;
    const double h = (s.box.hi.imag() - s.box.lo.imag()) / s.grid_n;
    std::size_t count = 0;
    for (int iy = 0; iy < s.grid_n; ++iy) {
        for (int ix = 0; ix < s.grid_n; ++ix) {
            if (!s.hits[static_cast<std::size_t>(iy) * s.grid_n + ix]) continue;
            const double x0 = s.box.lo.real() + ix * w, y0 = s.box.lo.imag() + iy * h;
            const double nx = std::clamp(center.real(), x0, x0 + w);
            const double ny = std::clamp(center.imag(), y0, y0 + h);
            if (std::hypot(nx - center.real(), ny - center.imag()) > radius) ++count;
        }
    }
    return count;
}

std::vector<cd> sample_values(const Evaluable& f, const ApproachRegion& r, int depth, int per_level) {
    const auto pts = region_samples(r, depth, per_level);
    std::vector<cd> out;
    out.reserve(pts.size());
    for (const auto& z : pts) out.push_back(f(z.to_std()));
    return out;
}

CoverageScore plessner_probe(const Evaluable& f, const ApproachRegion& r, const BoxRegion& box, int grid_n,
                             int depth, int per_level) {
    return coverage_of(sample_values(f, r, depth, per_level), box, grid_n);
}

std::vector<CoverageScore> plessner_curve(const Evaluable& f, const ApproachRegion& r, const BoxRegion& box,
                                          int grid_n, int max_depth, int per_level) {
    const auto vals = sample_values(f, r, max_depth, per_level);
    std::vector<CoverageScore> out;
    CoverageScore s = empty_score(box, grid_n);
    for (int d = 0; d < max_depth; ++d) {
        const cd* first = vals.data() + static_cast<std::size_t>(d) * per_level;
        add_values(s, first, first + per_level);
        finish(s);
        out.push_back(s);
    }
    return out;
}

FatouResult fatou_probe(const Evaluable& f, const ApproachRegion& r, int depth, const FatouConfig& cfg) {
    if (depth < 3) throw PreconditionError("fatou_probe needs at least 3 strata");
    const auto vals = sample_values(f, r, depth, cfg.per_level);
    FatouResult res;
    for (int m = 0; m < depth; ++m) {
        const auto first = vals.begin() + static_cast<long>(m) * cfg.per_level;
        const std::vector<cd> stratum(first, first + cfg.per_level);
        res.stratum_spreads.push_back(diameter(stratum));
        cd mean{0.0, 0.0};
        for (const auto& v : stratum) mean += v;
        res.stratum_means.push_back(mean / static_cast<double>(cfg.per_level));
    }
    const auto& sp = res.stratum_spreads;
    const auto& mu = res.stratum_means;
    const std::size_t L = sp.size();
    res.spread = std::max({sp[L - 1], sp[L - 2], sp[L - 3]});
    bool ok = res.spread < cfg.tol;
    // Spreads must decrease; differences far below tol are rounding noise.
    for (std::size_t i = L - 2; ok && i < L; ++i) {
        if (sp[i] > sp[i - 1] && sp[i] > 1e-3 * cfg.tol) ok = false;
    }
    for (std::size_t i = L - 2; ok && i < L; ++i) {
        const double step = std::abs(mu[i] - mu[i - 1]);
        if (!(step < cfg.tol)) ok = false;
    }
    res.convergent = ok;
    // Errors halve per stratum, so one Richardson step removes the leading term.
    res.limit = ok ? 2.0 * mu[L - 1] - mu[L - 2] : mu[L - 1];
    return res;
}

CoverageScore radial_density(const Evaluable& f, cd zeta, const BoxRegion& box, int grid_n, int r_levels,
                             int substeps) {
    if (r_levels < 1 || substeps < 1) throw PreconditionError("radial_density needs r_levels, substeps >= 1");
    const cd u = zeta / std::abs(zeta);
    std::vector<cd> vals;
    for (int m = 1; m <= r_levels; ++m) {
        for (int s = 0; s < substeps; ++s) {
            const double r = 1.0 - std::exp2(-m - static_cast<double>(s) / substeps);
            vals.push_back(f(r * u));
        }
    }
    return coverage_of(vals, box, grid_n);
}

const char* to_string(UkStatus s) {
    switch (s) {
        case UkStatus::satisfied: return "satisfied";
        case UkStatus::violated: return "violated";
        case UkStatus::indeterminate: return "indeterminate";
    }
    return "?";
}

UkReport uk_diagnostic(const UniversalSeries& f, long N, const std::vector<cd>& grid, const UkOptions& opt) {
    if (f.domain != SeriesDomain::disc) throw PreconditionError("uk_diagnostic needs a disc series");
    if (N < 1) throw PreconditionError("uk_diagnostic needs N >= 1");
    const Poly built = f.built();
    if (N + 1 > f.coefficient_count()) {
        throw IndexError("uk_diagnostic: N = " + std::to_string(N) + " needs " + std::to_string(N + 1) +
                         " coefficients, " + std::to_string(f.coefficient_count()) + " available");
    }

    UkReport rep;
    rep.N = N;
    const Poly tail = built - built.truncated(N);
    const int K = static_cast<int>(f.blocks.size());
    const double rho = static_cast<double>(K + 1) / (K + 2);
    rep.tail_valuation = built.degree() + 1;
    double C = 0.0;
    for (int j = K + 1; j <= K + opt.tail_terms; ++j) {
        const double rj = static_cast<double>(j) / (j + 1);
        C += std::ldexp(circle_max(opt.w, rj, opt.circle_samples), -j);
    }
    rep.tail_constant = C;

    const double Nd = static_cast<double>(N);
    for (const cd z : grid) {
        const double r = std::abs(z);
        if (!(r > 0.0) || !(r < 1.0)) throw PreconditionError("uk_diagnostic grid must lie in the punctured disc");
        UkPoint p;
        p.z = z;
        const double d = tail.is_zero() ? 0.0 : abs(tail(Complex(z))).to_double();
        p.u = d > 0.0 ? std::log(d) / Nd : -kInf;
        p.margin = p.u - std::log(r);
        p.tail_bound = r <= rho ? C * std::pow(r / rho, static_cast<double>(rep.tail_valuation)) : kInf;
        const double target = 0.5 * std::log(r);
        const double upper = d + p.tail_bound;
        const double lower = d - p.tail_bound;
        if (upper == 0.0 || std::log(upper) / Nd <= target) p.status = UkStatus::satisfied;
        else if (lower > 0.0 && std::log(lower) / Nd > target) p.status = UkStatus::violated;
        else p.status = UkStatus::indeterminate;
        switch (p.status) {
            case UkStatus::satisfied: ++rep.satisfied; break;
            case UkStatus::violated: ++rep.violated; break;
            case UkStatus::indeterminate: ++rep.indeterminate; break;
        }
        rep.points.push_back(p);
    }
    const std::size_t decided = rep.satisfied + rep.violated;
    rep.satisfied_fraction = decided == 0 ? 1.0 : static_cast<double>(rep.satisfied) / decided;
    return rep;
}

std::vector<cd> polar_grid(double rho, int nr, int nt) {
    std::vector<cd> out;
    out.reserve(static_cast<std::size_t>(nr) * nt);
    for (int i = 1; i <= nr; ++i) {
        const double r = rho * i / nr;
        for (int j = 0; j < nt; ++j) out.push_back(std::polar(r, 2.0 * std::numbers::pi * (j + 0.5) / nt));
    }
    return out;
}

double bernstein_tolerance() { return 1e-9 + 10.0 * kGreenMapTolerance; }

BernsteinReport bernstein_verify(const Poly& S, const ArcOnCircle& arc, const std::vector<cd>& grid) {
    if (S.is_zero()) throw PreconditionError("bernstein_verify needs a nonzero polynomial");
    BernsteinReport rep;
    rep.N = S.degree();
    auto mod = [&](double th) { return std::abs(S.eval(std::polar(1.0, th))); };

    // Dense arc grid, then golden-section refinement around local maxima.
    const std::size_t M = std::max<std::size_t>(2048, 64 * static_cast<std::size_t>(rep.N + 1));
    const double h = (arc.theta_hi - arc.theta_lo) / static_cast<double>(M - 1);
    std::vector<double> vals(M);
    for (std::size_t i = 0; i < M; ++i) vals[i] = mod(arc.theta_lo + h * static_cast<double>(i));
    rep.arc_samples = M;
    double sup = *std::max_element(vals.begin(), vals.end());
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    for (std::size_t i = 1; i + 1 < M; ++i) {
        if (!(vals[i] >= vals[i - 1] && vals[i] >= vals[i + 1])) continue;
        double a = arc.theta_lo + h * static_cast<double>(i - 1), b = a + 2.0 * h;
        double c = b - g * (b - a), d = a + g * (b - a);
        double fc = mod(c), fd = mod(d);
        for (int it = 0; it < 60; ++it) {
            if (fc > fd) {
                b = d, d = c, fd = fc;
                c = b - g * (b - a), fc = mod(c);
            } else {
                a = c, c = d, fc = fd;
                d = a + g * (b - a), fd = mod(d);
            }
            rep.arc_samples += 1;
        }
        sup = std::max({sup, fc, fd});
    }
    rep.sup_arc = sup;

    const double log_sup = std::log(sup);
    const double tol = bernstein_tolerance();
    rep.max_violation = -kInf;
    for (const cd z : grid) {
        const double s = std::abs(S.eval(z));
        const double lhs = s > 0.0 ? std::log(s) : -kInf;
        const double e = lhs - (static_cast<double>(rep.N) * green_arc_complement(z, arc) + log_sup);
        rep.excess.push_back(e);
        rep.max_violation = std::max(rep.max_violation, e);
        if (e > tol) ++rep.violations;
    }
    return rep;
}

}  // namespace utaylor

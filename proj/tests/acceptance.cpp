// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include "utaylor/approx.hpp"
#include "utaylor/cli.hpp"
#include "utaylor/error.hpp"
#include "utaylor/io.hpp"
#include "utaylor/potential.hpp"
#include "utaylor/probe.hpp"
#include "utaylor/rng.hpp"
#include "utaylor/universal.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

using namespace utaylor;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

// Built once and shared by criteria 7 and 8.
const UniversalSeries& strict_disc4() {
    static const UniversalSeries f = build_universal_disc(Schedule::default_disc(), BuildMode::strict, 4);
    return f;
}

Outcome criterion1() {
    const auto s = Schedule::default_disc();
    const auto t0 = std::chrono::steady_clock::now();
    UniversalSeries f;
    try {
        f = build_universal_disc(s, BuildMode::strict, 3);
    } catch (const Error& e) {
        return {false, e.what()};
    }
    const double secs = seconds_since(t0);
    bool ok = secs < 300.0 && f.certificates.size() == 3;
    std::ostringstream os;
    for (std::size_t i = 0; i < 3 && i < f.certificates.size(); ++i) {
        const auto& c = f.certificates[i];
        const int k = c.k;
        const auto& K = s.steps[i].K;
        const std::size_t a_pts = certificate_grid(s.A, s.grid_density, s.min_grid_points).sample_count();
        const std::size_t core_pts = certificate_grid(CompactSet::disc("core", Complex(), Real(k) / Real(k + 1)),
                                                      s.grid_density, s.min_grid_points)
                                         .sample_count();
        ok = ok && c.growth_ok() && c.target_ok() && c.relaxation_note.empty() && a_pts >= 1000 &&
             core_pts >= 1000 && c.target_points >= 1000 && K.d_max() <= Real(1.25) &&
             c.requested_target_err == std::ldexp(1.0, -k - 1);
        os << "k=" << k << " growth " << fmt(c.growth_ratio) << "<=1 target " << fmt(c.achieved_target_err)
           << "<=" << fmt(c.requested_target_err) << "; ";
    }
    os << "runtime " << fmt(secs) << " s";
    return {ok, os.str()};
}

Outcome criterion2() {
    const auto s = Schedule::default_strip();
    BuildOptions o;
    o.mode = BuildMode::empirical;
    o.k_max = 3;
    const auto t0 = std::chrono::steady_clock::now();
    const auto f = build_universal_strip(s, o);
    const double secs = seconds_since(t0);
    bool ok = secs < 600.0 && f.certificates.size() == 3;
    std::ostringstream os;
    for (const auto& c : f.certificates) {
        const bool missed = !c.growth_ok() || !c.target_ok() || !c.mergelyan_met ||
                            c.core_achieved > c.core_requested || c.partial_achieved > c.partial_requested ||
                            c.delta != c.delta_nominal;
        const bool logged = !missed || !c.relaxation_note.empty();
        const double d = std::max(1.0, s.steps[static_cast<std::size_t>(c.k) - 1].K.d_max().to_double());
        const double relaxed = std::max(std::ldexp(1.0, 1 - c.k), 4.0 * c.mergelyan_error * std::pow(d, c.n_k));
        ok = ok && c.growth_ok() && c.partial_achieved <= c.partial_relaxed && logged &&
             std::abs(c.partial_relaxed - relaxed) <= 1e-12 * relaxed;
        os << "k=" << c.k << " growth " << fmt(c.growth_ratio) << "<=1 partial " << fmt(c.partial_achieved) << "<="
           << fmt(c.partial_relaxed) << (c.relaxation_note.empty() ? "" : " (relaxed)") << "; ";
    }
    os << "runtime " << fmt(secs) << " s";
    return {ok, os.str()};
}

Outcome criterion3() {
    auto k = CompactSet::disc("K", Complex(3), Real(0.5), 128);
    const TargetFunction recip = [](const Complex& z) { return Complex(1) / z; };
    const auto inv = mergelyan_approximate({recip, k, 40, Real(1e-8)});
    ApproxConfig full;
    full.early_stop = false;
    const auto inv40 = mergelyan_approximate({recip, k, 40, Real(1e-8)}, full);
    auto d = CompactSet::disc("D", Complex(0.5, 0.2), Real(0.7), 64);
    const Poly p({Complex(0.3, -0.1), Complex(0), Complex(1), Complex(0, 2), Complex(-0.25)});
    const auto rep = mergelyan_approximate({[&](const Complex& z) { return p(z); }, d, 4, Real(1e-60)});
    const bool ok = inv.achieved_error <= Real(1e-8) && inv40.degree_used == 40 && inv40.achieved_error <= Real(1e-8) &&
                    rep.achieved_error <= Real(1e-25) && working_precision() == 256;
    return {ok, "1/z error " + fmt(inv.achieved_error.to_double()) + " (early stop at degree " +
                    std::to_string(inv.degree_used) + "), " + fmt(inv40.achieved_error.to_double()) +
                    " at full degree 40; reproduction error " + fmt(rep.achieved_error.to_double())};
}

double poisson_integral(cd z, const BoundaryFunction& phi, std::vector<double> breaks) {
    breaks.push_back(0.0);
    breaks.push_back(2.0 * kPi);
    std::sort(breaks.begin(), breaks.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (!(breaks[i + 1] > breaks[i])) continue;
        total += integrate_interval(
                     [&](double th) { return poisson_kernel(z, std::polar(1.0, th)) * phi(std::polar(1.0, th)); },
                     breaks[i], breaks[i + 1], QuadRule::adaptive, 1e-12)
                     .estimate;
    }
    return total / (2.0 * kPi);
}

Outcome criterion4() {
    std::mt19937_64 g(2024);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const auto disc = DomainDesc::unit_disc();
    int within = 0;
    for (int i = 0; i < 20; ++i) {
        const cd z = std::polar(0.9 * std::sqrt(u(g)), 2.0 * kPi * u(g));
        BoundaryFunction phi;
        std::vector<double> breaks;
        const int kind = i % 4;
        const int m = 1 + static_cast<int>(u(g) * 4);
        const double c = 2.0 * kPi * u(g);
        if (kind == 0) {
            phi = [m, c](cd w) { return std::cos(m * std::arg(w) + c); };
        } else if (kind == 1) {
            const double lo = c, hi = c + 0.5 + 2.0 * u(g);
            phi = [lo, hi](cd w) {
                double a = std::arg(w);
                while (a < lo) a += 2.0 * kPi;
                return a <= hi ? 1.0 : 0.0;
            };
            for (double b : {lo, hi}) breaks.push_back(std::fmod(b, 2.0 * kPi));
        } else if (kind == 2) {
            phi = [c](cd w) { return std::exp(std::cos(std::arg(w) - c)); };
        } else {
            phi = [m](cd w) { return std::abs(std::sin(m * std::arg(w))); };
            for (int j = 0; j <= 2 * m; ++j) breaks.push_back(j * kPi / m);
        }
        const auto est = harmonic_measure(disc, z, phi, 100000, 1000 + static_cast<std::uint64_t>(i));
        const double oracle = poisson_integral(z, phi, breaks);
        if (std::abs(est.functional_value - oracle) <= est.confidence_radius) ++within;
    }
    const std::vector<DomainDesc> sets = {DomainDesc::tangent_disc({1.0, 0.0}, 1.5),
                                          DomainDesc::tangent_disc({1.0, 0.0}, 3.0),
                                          DomainDesc::tangent_disc({0.0, 1.0}, 2.0),
                                          DomainDesc::open_disc({-0.4, 0.3}, 0.25),
                                          DomainDesc::open_disc({0.2, -0.5}, 0.3)};
    const std::vector<cd> starts = {{0.6, 0.1}, {0.75, -0.05}, {0.1, 0.7}, {-0.35, 0.25}, {0.25, -0.45}};
    int mass_ok = 0;
    std::ostringstream os;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        const auto m = modified_measure_functional(sets[i], starts[i], [](cd) { return 1.0; }, 100000, 77 + i);
        if (std::abs(m.functional_value - 1.0) <= m.confidence_radius) ++mass_ok;
        os << fmt(std::abs(m.functional_value - 1.0)) << "/" << fmt(m.confidence_radius) << " ";
    }
    return {within >= 19 && mass_ok == 5,
            std::to_string(within) + "/20 within 3 sigma; mass |est - 1|/radius: " + os.str()};
}

Outcome criterion5() {
    const std::vector<std::pair<double, ThinVerdict>> cases = {{0.5, ThinVerdict::not_minimally_thin},
                                                                {1.0, ThinVerdict::not_minimally_thin},
                                                                {1.5, ThinVerdict::minimally_thin},
                                                                {2.0, ThinVerdict::minimally_thin}};
    bool ok = true;
    std::ostringstream os;
    for (const auto& [a, want] : cases) {
        const auto r = minthin_psi_test([a](double t) { return std::pow(t, a); });
        ok = ok && r.verdict == want;
        os << "a=" << a << " " << to_string(r.verdict) << "; ";
    }
    double worst = 0.0;
    for (const char* c : {"0.5", "1", "4"}) {
        const Complex zeta(1);
        const Real cv = Real::parse(c);
        const auto td = tangent_disc(zeta, cv);
        for (int j = 0; j < 1000; ++j) {
            const Real th = ldexp(Real::pi(), 1) * Real(2 * j + 1) / Real(2000);
            const Complex z = td.center + Complex::polar(td.radius, th);
            worst = std::max(worst, abs(poisson_kernel(z, zeta) - cv).to_double());
        }
    }
    ok = ok && worst <= 1e-10;
    os << "tangent disc residual " << fmt(worst);
    return {ok, os.str()};
}

Outcome criterion6() {
    std::mt19937_64 g(606);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::size_t violations = 0;
    double worst = -INFINITY;
    double cap_err = 0.0;
    for (double beta : {kPi / 6, kPi / 3, 2 * kPi / 3}) {
        const double mid = 2.0 * kPi * u(g);
        const ArcOnCircle arc(mid - beta, mid + beta);
        for (int t = 0; t < 100; ++t) {
            const int deg = static_cast<int>(u(g) * 31);
            std::vector<Complex> c;
            for (int j = 0; j <= deg; ++j) c.push_back(Complex(std::polar(std::sqrt(u(g)), 2.0 * kPi * u(g))));
            const Poly S(c);
            if (S.is_zero()) continue;
            std::vector<cd> grid;
            while (grid.size() < 1000) {
                const cd z = std::polar(0.05 + 3.95 * u(g), 2.0 * kPi * u(g));
                if (arc.distance(z) > 1e-6) grid.push_back(z);
            }
            const auto rep = bernstein_verify(S, arc, grid);
            violations += rep.violations;
            worst = std::max(worst, rep.max_violation);
        }
        const double G = green_arc_complement(std::polar(1e6, mid + 0.7), arc);
        cap_err = std::max(cap_err, std::abs(G - std::log(1e6) + std::log(std::sin(beta / 2.0))));
    }
    return {violations == 0 && cap_err <= 1e-3,
            std::to_string(violations) + " violations (max excess " + fmt(worst) + ", tolerance " +
                fmt(bernstein_tolerance()) + "); capacity asymptote error " + fmt(cap_err)};
}

Outcome criterion7() {
    const auto& f = strict_disc4();
    const auto grid = polar_grid(0.75, 40, 128);
    bool ok = f.blocks.size() == 4;
    std::ostringstream os;
    for (int k : {2, 3}) {
        const long N = f.blocks[static_cast<std::size_t>(k)].n - 1;
        const auto rep = uk_diagnostic(f, N, grid);
        const double frac_all = static_cast<double>(rep.satisfied) / static_cast<double>(grid.size());
        ok = ok && rep.satisfied_fraction >= 0.99;
        os << "k=" << k << " N=" << N << ": " << rep.satisfied << " satisfied, " << rep.violated << " violated, "
           << rep.indeterminate << " indeterminate of " << grid.size() << " (" << fmt(100.0 * frac_all)
           << "% of all points); ";
    }
    os << "tail valuation " << (f.built().degree() + 1);
    return {ok, os.str()};
}

Outcome criterion8() {
    auto s = Schedule::default_disc();
    s.max_degree = 120;
    BuildOptions o;
    o.mode = BuildMode::empirical;
    o.k_max = 8;
    const auto f = build_universal_disc(s, o);
    std::size_t relaxed = 0;
    for (const auto& c : f.certificates) relaxed += c.relaxation_note.empty() ? 0 : 1;

    const Poly b = f.built();
    std::vector<cd> coef;
    for (const auto& a : b.coeffs()) coef.push_back(a.to_std());
    auto eval = [&](cd z) {
        cd acc{0.0, 0.0};
        for (auto it = coef.rbegin(); it != coef.rend(); ++it) acc = acc * z + *it;
        return acc;
    };

    CounterRng rng(8, 0);
    const double th = 2.0 * kPi * rng.uniform();
    const ApproachRegion r(Complex::unit(Real(th)), Real(2), Real(0.5));
    const int n = 32;
    const BoxRegion box{{-3.0, -3.0}, {3.0, 3.0}};
    const auto curve = plessner_curve(eval, r, box, n, 10, 64);
    bool mono = true;
    for (std::size_t d = 1; d < curve.size(); ++d) mono = mono && curve[d].hit_fraction >= curve[d - 1].hit_fraction;
    const double baseline = plessner_probe([](cd) { return cd(0.5, 0.5); }, r, box, n, 8, 64).hit_fraction;
    const double ratio = curve[7].hit_fraction / baseline;

    // |f| <= sum |a_j| on the closed disc; radial values never leave that disc.
    double bound = 0.0;
    for (const auto& a : coef) bound += std::abs(a);
    const double half = std::max(3.0, 1.1 * bound);
    const BoxRegion wide{{-half, -half}, {half, half}};
    std::size_t outside = 0;
    for (int i = 0; i < 5; ++i) {
        const cd zeta = std::polar(1.0, 2.0 * kPi * rng.uniform());
        outside += hits_outside_disc(radial_density(eval, zeta, wide, 64, 30, 8), {0.0, 0.0}, bound);
        outside += hits_outside_disc(radial_density([](cd z) { return 0.5 * z * z * z; }, zeta, box, 64, 30, 8),
                                     {0.0, 0.0}, 0.5);
    }
    return {mono && ratio >= 10.0 && outside == 0 && f.blocks.size() >= 6,
            "K_max=" + std::to_string(f.blocks.size()) + " (" + std::to_string(relaxed) +
                " steps relaxed); coverage at depth 8 " + fmt(curve[7].hit_fraction) + " = " + fmt(ratio) +
                "x baseline; monotone " + (mono ? "yes" : "no") + "; cells outside confinement " +
                std::to_string(outside)};
}

int run_bin(const std::string& args) {
    const char* bin = std::getenv("UTAYLOR_BIN");
    const std::string exe = bin ? bin : "utaylor";
    const int st = std::system((exe + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const fs::path& p) {
    try {
        return read_file(p.string());
    } catch (const IoError&) {
        return "<missing>";
    }
}

Outcome criterion9() {
    const fs::path root = fs::temp_directory_path() / ("utaylor_accept_" + std::to_string(::getpid()));
    fs::remove_all(root);
    fs::create_directories(root);
    const std::vector<std::string> runs = {"a", "b"};
    bool ok = true;
    int compared = 0;
    for (const auto& r : runs) {
        const fs::path d = root / r;
        ok = ok && run_bin("build --kmax 2 --mode strict --out " + d.string()) == 0;
        ok = ok && run_bin("build --schedule preset:strip --kmax 1 --mode empirical --out " + (d / "strip").string()) == 0;
        for (const char* suite : {"growth", "targets", "uk", "plessner", "radial"}) {
            ok = ok && run_bin("verify " + (d / "series.utl").string() + " --suite " + suite + " --grid 512 --out " +
                               (d / "v").string()) == 0;
        }
        ok = ok && run_bin("potential hmeasure --z 0.3,0.4 --phi upper --walks 20000 --seed 5 --out " +
                           (d / "hm.json").string()) == 0;
        ok = ok && run_bin("potential minthin --a 1.5 --out " + (d / "mt.json").string()) == 0;
    }
    std::vector<std::string> files = {"series.utl", "certificates.csv", "summary.txt", "strip/series.utl",
                                      "strip/certificates.csv", "hm.json", "mt.json"};
    for (const char* suite : {"growth", "targets", "uk", "plessner", "radial"}) {
        files.push_back(std::string("v/verify_") + suite + ".csv");
        files.push_back(std::string("v/verify_") + suite + ".json");
    }
    for (const auto& f : files) {
        const std::string x = slurp(root / "a" / f), y = slurp(root / "b" / f);
        ok = ok && x == y && x != "<missing>";
        ++compared;
    }
    fs::remove_all(root);
    return {ok, std::to_string(compared) + " output files compared across two runs of build, verify and potential"};
}

}  // namespace

// Optional arguments select criteria by number; all run by default.
int main(int argc, char** argv) {
    using Fn = Outcome (*)();
    const std::vector<std::pair<const char*, Fn>> criteria = {
        {"strict disc build, K_max = 3", criterion1},
        {"empirical strip build, K_max = 3", criterion2},
        {"approximation engine oracle", criterion3},
        {"harmonic measure by walk-on-spheres", criterion4},
        {"minimal thinness verdicts and tangent discs", criterion5},
        {"Bernstein inequality fuzz and arc capacity", criterion6},
        {"u_k diagnostic on the strict disc build", criterion7},
        {"Plessner and radial probes (report-only)", criterion8},
        {"byte-identical reruns", criterion9},
    };
    int failed = 0;
    std::vector<bool> selected(criteria.size(), argc < 2);
    for (int a = 1; a < argc; ++a) {
        const int n = std::atoi(argv[a]);
        if (n >= 1 && n <= static_cast<int>(criteria.size())) selected[static_cast<std::size_t>(n) - 1] = true;
    }
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (!selected[i]) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << (i + 1) << ": " << criteria[i].first << " -- "
                  << o.detail << " [" << fmt(seconds_since(t0)) << " s]" << std::endl;
    }
    return failed == 0 ? 0 : 1;
}

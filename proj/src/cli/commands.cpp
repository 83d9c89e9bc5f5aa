#include "utaylor/cli.hpp"

#include "utaylor/error.hpp"
#include "utaylor/io.hpp"
#include "utaylor/potential.hpp"
#include "utaylor/probe.hpp"
#include "utaylor/rng.hpp"
#include "utaylor/universal.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <sstream>

namespace utaylor {

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

cd parse_point(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) return {parse_double(s), 0.0};
    return {parse_double(s.substr(0, comma)), parse_double(s.substr(comma + 1))};
}

struct Stamp {
    std::string config_hash;
    long precision = 0;
    std::uint64_t seed = 0;

    std::string csv_line() const {
        return "# config_hash=" + config_hash + " precision=" + std::to_string(precision) +
               " seed=" + std::to_string(seed) + "\n";
    }
    void into(json& j) const {
        j["config_hash"] = config_hash;
        j["precision"] = precision;
        j["seed"] = seed;
    }
};

Stamp stamp_for(const json& config, long precision, std::uint64_t seed) {
    return {hash_hex(fnv1a(config.dump())), precision, seed};
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory '" + dir + "': " + ec.message());
}

std::string path_in(const std::string& dir, const std::string& name) { return (fs::path(dir) / name).string(); }

// ---- build ----

struct BuildArgs {
    std::string schedule = "preset:disc";
    std::string mode = "strict";
    int kmax = 3;
    long precision = kDefaultPrecisionBits;
    std::string out = ".";
    std::uint64_t seed = 0;
};

Schedule resolve_schedule(const std::string& spec) {
    if (spec == "preset:disc") return Schedule::default_disc();
    if (spec == "preset:strip") return Schedule::default_strip();
    return load_schedule(spec);
}

std::string certificates_csv(const UniversalSeries& f, const Stamp& st) {
    std::ostringstream os;
    os << st.csv_line();
    os << "k,n_k,degree,requested_growth_bound,achieved_growth_margin,growth_ratio,growth_points,"
          "requested_target_err,achieved_target_err,target_points,mergelyan_met,mergelyan_tol,mergelyan_error,"
          "mergelyan_degree,delta,delta_nominal,core_requested,core_achieved,partial_requested,partial_achieved,"
          "partial_relaxed,partial_achieved_mk,relaxed\n";
    for (const auto& c : f.certificates) {
        os << c.k << ',' << c.n_k << ',' << c.degree << ',' << num(c.requested_growth_bound) << ','
           << num(c.achieved_growth_margin) << ',' << num(c.growth_ratio) << ',' << c.growth_points << ','
           << num(c.requested_target_err) << ',' << num(c.achieved_target_err) << ',' << c.target_points << ','
           << (c.mergelyan_met ? 1 : 0) << ',' << num(c.mergelyan_tol) << ',' << num(c.mergelyan_error) << ','
           << c.mergelyan_degree << ',' << num(c.delta) << ',' << num(c.delta_nominal) << ',' << num(c.core_requested)
           << ',' << num(c.core_achieved) << ',' << num(c.partial_requested) << ',' << num(c.partial_achieved) << ','
           << num(c.partial_relaxed) << ',' << num(c.partial_achieved_mk) << ','
           << (c.relaxation_note.empty() ? 0 : 1) << '\n';
    }
    return os.str();
}

std::string summary_text(const UniversalSeries& f, const Stamp& st, int kmax, const std::string& failure) {
    std::ostringstream os;
    os << "utaylor build summary\n";
    os << "domain: " << to_string(f.domain) << "\nmode: " << to_string(f.mode) << "\nK_max: " << kmax
       << "\nprecision: " << st.precision << "\nconfig_hash: " << st.config_hash
       << "\nschedule_hash: " << f.schedule_hash << "\n";
    std::size_t relaxed = 0;
    for (const auto& c : f.certificates) {
        os << "step " << c.k << ": n_k = " << c.n_k << ", degree = " << c.degree
           << ", growth ratio = " << num(c.growth_ratio) << ", target error = " << num(c.achieved_target_err)
           << " (requested " << num(c.requested_target_err) << ")";
        if (f.domain == SeriesDomain::strip) {
            os << ", partial sum = " << num(c.partial_achieved) << " (relaxed bound " << num(c.partial_relaxed)
               << ")";
        }
        os << "\n";
        if (!c.relaxation_note.empty()) {
            ++relaxed;
            os << "  relaxation: " << c.relaxation_note << "\n";
        }
    }
    os << "relaxations: " << relaxed << "\n";
    if (!failure.empty()) os << "FAILED: " << failure << "\n";
    return os.str();
}

int cmd_build(const BuildArgs& a) {
    PrecisionScope scope(a.precision);
    Schedule s = resolve_schedule(a.schedule);
    const std::string sched_text = schedule_to_text(s);
    json config = {{"command", "build"},
                   {"mode", a.mode},
                   {"kmax", a.kmax},
                   {"precision", a.precision},
                   {"seed", a.seed},
                   {"schedule_hash", schedule_hash(s)}};
    const Stamp st = stamp_for(config, a.precision, a.seed);

    BuildOptions o;
    o.mode = build_mode_from_string(a.mode);
    o.k_max = a.kmax;
    UniversalSeries partial;
    partial.domain = s.domain;
    partial.mode = o.mode;
    partial.precision = a.precision;
    partial.schedule_hash = schedule_hash(s);
    o.observer = [&](const SeriesBlock& b, const StepCertificate& c) {
        partial.blocks.push_back(b);
        partial.certificates.push_back(c);
        std::cerr << "step " << c.k << ": n_k = " << c.n_k << ", degree = " << c.degree
                  << (c.relaxation_note.empty() ? "" : " (relaxed)") << "\n";
    };

    ensure_dir(a.out);
    std::string failure;
    int code = kExitOk;
    try {
        UniversalSeries f = build_universal(s, o);
        f.schedule_hash = partial.schedule_hash;
        partial = std::move(f);
    } catch (const CertificateError& e) {
        failure = e.what();
        code = kExitCertificate;
    }

    SeriesArtifact art{partial, sched_text, config.dump(), st.config_hash, a.seed};
    save_artifact(art, path_in(a.out, "series.utl"));
    write_file(path_in(a.out, "certificates.csv"), certificates_csv(partial, st));
    write_file(path_in(a.out, "summary.txt"), summary_text(partial, st, a.kmax, failure));
    if (!failure.empty()) std::cerr << "error: " << failure << "\n";
    return code;
}

// ---- verify ----

struct VerifyArgs {
    std::string artifact;
    std::string suite = "growth";
    int grid = 1024;
    std::string out = ".";
    std::uint64_t seed = 1;
    int depth = 10;
    int cells = 32;
    double box = 3.0;
    int zetas = 3;
};

struct Check {
    std::string name;
    bool pass = false;
    double value = 0.0;
    double threshold = 0.0;
    bool gate = true;
};

std::function<cd(cd)> double_evaluator(const Poly& p) {
    std::vector<cd> c;
    for (const auto& a : p.coeffs()) c.push_back(a.to_std());
    return [c](cd z) {
        cd s{0.0, 0.0};
        for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * z + *it;
        return s;
    };
}

std::vector<double> random_angles(std::uint64_t seed, int count) {
    CounterRng rng(seed, 0x7a657461);
    std::vector<double> out;
    for (int i = 0; i < count; ++i) out.push_back(2.0 * std::numbers::pi * rng.uniform());
    return out;
}

struct SuiteOutput {
    std::vector<Check> checks;
    std::string csv_columns;
    std::vector<std::string> rows;
};

SuiteOutput suite_growth(const SeriesArtifact& art, const Schedule& s, const VerifyArgs& a) {
    const auto& f = art.series;
    SuiteOutput out;
    out.csv_columns = "k,set,points,max_ratio";
    const std::size_t minpts = std::max<std::size_t>(1000, static_cast<std::size_t>(a.grid));
    const auto a_pts = certificate_grid(s.A, a.grid, minpts).all_samples();
    for (std::size_t i = 0; i < f.blocks.size(); ++i) {
        const int k = static_cast<int>(i) + 1;
        const Poly q = f.blocks[i].q();
        std::vector<std::pair<std::string, std::vector<Complex>>> sets = {{"A", a_pts}};
        if (f.domain == SeriesDomain::disc) {
            const auto core = CompactSet::disc("core", Complex(), Real(k) / Real(k + 1));
            sets.emplace_back("core", certificate_grid(core, a.grid, minpts).all_samples());
        }
        for (const auto& [name, pts] : sets) {
            double worst = 0.0;
            for (const auto& z : pts) {
                const double w = s.w(z.to_std());
                if (std::isinf(w)) continue;
                worst = std::max(worst, abs(q(z)).to_double() / std::ldexp(w, -k));
            }
            out.rows.push_back(std::to_string(k) + "," + name + "," + std::to_string(pts.size()) + "," + num(worst));
            out.checks.push_back({"growth k=" + std::to_string(k) + " on " + name, worst <= 1.0, worst, 1.0, true});
        }
    }
    // |f| <= w on A.
    const Poly b = f.built();
    double worst = 0.0;
    for (const auto& z : a_pts) {
        const double w = s.w(z.to_std());
        if (!std::isinf(w)) worst = std::max(worst, abs(b(z)).to_double() / w);
    }
    out.rows.push_back("all,A," + std::to_string(a_pts.size()) + "," + num(worst));
    out.checks.push_back({"|f| <= w on A", worst <= 1.0, worst, 1.0, true});
    return out;
}

SuiteOutput suite_targets(const SeriesArtifact& art, const Schedule& s, const VerifyArgs& a) {
    const auto& f = art.series;
    SuiteOutput out;
    out.csv_columns = "k,index,points,fresh_error,certificate_error,requested";
    for (std::size_t i = 0; i < f.blocks.size() && i < f.certificates.size(); ++i) {
        const int k = static_cast<int>(i) + 1;
        const auto& step = s.steps[i];
        Poly S;
        long index;
        if (f.domain == SeriesDomain::disc) {
            index = i + 1 < f.blocks.size() ? f.blocks[i + 1].n - 1 : f.built().degree();
            S = f.partial_sum(std::max<long>(0, index));
        } else {
            S = f.block_sum(i + 1);
            index = S.degree();
        }
        const int dens = std::max(2 * s.grid_density, a.grid);
        const auto pts = certificate_grid(step.K, dens, 2 * s.min_grid_points).all_samples();
        double e = 0.0;
        for (const auto& z : pts) e = std::max(e, abs(step.p(z) - S(z)).to_double());
        const auto& c = f.certificates[i];
        out.rows.push_back(std::to_string(k) + "," + std::to_string(index) + "," + std::to_string(pts.size()) + "," +
                           num(e) + "," + num(c.achieved_target_err) + "," + num(c.requested_target_err));
        out.checks.push_back({"target k=" + std::to_string(k) + " within 2x certificate",
                              e <= 2.0 * c.achieved_target_err, e, 2.0 * c.achieved_target_err, true});
    }
    return out;
}

SuiteOutput suite_uk(const SeriesArtifact& art, const Schedule& s, const VerifyArgs& a) {
    const auto& f = art.series;
    if (f.domain != SeriesDomain::disc) throw PreconditionError("the uk suite needs a disc series");
    SuiteOutput out;
    out.csv_columns = "k,N,re,im,u,margin,tail_bound,status";
    UkOptions opt;
    opt.w = s.w;
    const int nt = std::max(16, a.grid / 16);
    const auto grid = polar_grid(0.75, std::max(4, a.grid / nt), nt);
    for (std::size_t i = 0; i + 1 < f.blocks.size(); ++i) {
        const int k = static_cast<int>(i) + 1;
        const long N = f.blocks[i + 1].n - 1;
        if (N < 1) continue;
        const auto rep = uk_diagnostic(f, N, grid, opt);
        for (const auto& p : rep.points) {
            out.rows.push_back(std::to_string(k) + "," + std::to_string(N) + "," + num(p.z.real()) + "," +
                               num(p.z.imag()) + "," + num(p.u) + "," + num(p.margin) + "," + num(p.tail_bound) +
                               "," + to_string(p.status));
        }
        out.checks.push_back({"u_k <= log|z|/2 on |z| <= 3/4, k=" + std::to_string(k) + " (indeterminate " +
                                  std::to_string(rep.indeterminate) + ")",
                              rep.satisfied_fraction >= 0.99, rep.satisfied_fraction, 0.99, true});
    }
    return out;
}

SuiteOutput suite_plessner(const SeriesArtifact& art, const VerifyArgs& a) {
    const auto f = double_evaluator(art.series.built());
    SuiteOutput out;
    out.csv_columns = "zeta_angle,depth,cells_hit,hit_fraction,samples";
    const BoxRegion box{{-a.box, -a.box}, {a.box, a.box}};
    const double baseline = 1.0 / (static_cast<double>(a.cells) * a.cells);
    for (double th : random_angles(a.seed, std::max(1, a.zetas))) {
        const ApproachRegion r(Complex::unit(Real(th)), Real(2), Real(0.5));
        const auto curve = plessner_curve(f, r, box, a.cells, a.depth, 64);
        bool mono = true;
        for (std::size_t d = 0; d < curve.size(); ++d) {
            out.rows.push_back(num(th) + "," + std::to_string(d + 1) + "," + std::to_string(curve[d].cells_hit) + "," +
                               num(curve[d].hit_fraction) + "," + std::to_string(curve[d].samples_used));
            if (d > 0 && curve[d].hit_fraction < curve[d - 1].hit_fraction) mono = false;
        }
        out.checks.push_back({"coverage monotone in depth at angle " + num(th), mono, mono ? 1.0 : 0.0, 1.0, true});
        const std::size_t d8 = std::min<std::size_t>(8, curve.size()) - 1;
        const double ratio = curve[d8].hit_fraction / baseline;
        out.checks.push_back({"coverage / constant baseline at depth " + std::to_string(d8 + 1) + ", angle " + num(th),
                              ratio >= 10.0, ratio, 10.0, false});
    }
    return out;
}

SuiteOutput suite_radial(const SeriesArtifact& art, const VerifyArgs& a) {
    const auto f = double_evaluator(art.series.built());
    SuiteOutput out;
    out.csv_columns = "zeta_angle,r_levels,cells_hit,hit_fraction,max_modulus,cells_outside";
    const BoxRegion box{{-a.box, -a.box}, {a.box, a.box}};
    for (double th : random_angles(a.seed, std::max(1, a.zetas))) {
        const cd zeta = std::polar(1.0, th);
        std::size_t prev = 0;
        bool mono = true, confined = true;
        for (int L = 1; L <= 30; ++L) {
            const auto sc = radial_density(f, zeta, box, a.cells, L, 8);
            double amax = 0.0;
            for (int m = 1; m <= L; ++m) {
                for (int j = 0; j < 8; ++j) amax = std::max(amax, std::abs(f((1.0 - std::exp2(-m - j / 8.0)) * zeta)));
            }
            const std::size_t outside = hits_outside_disc(sc, {0.0, 0.0}, amax);
            out.rows.push_back(num(th) + "," + std::to_string(L) + "," + std::to_string(sc.cells_hit) + "," +
                               num(sc.hit_fraction) + "," + num(amax) + "," + std::to_string(outside));
            if (sc.cells_hit < prev) mono = false;
            if (outside != 0) confined = false;
            prev = sc.cells_hit;
        }
        out.checks.push_back({"radial coverage nested at angle " + num(th), mono, mono ? 1.0 : 0.0, 1.0, true});
        out.checks.push_back({"radial values confined to D(0, max|f|) at angle " + num(th), confined,
                              confined ? 1.0 : 0.0, 1.0, true});
    }
    return out;
}

int cmd_verify(const VerifyArgs& a) {
    const SeriesArtifact art = load_artifact(a.artifact);
    PrecisionScope scope(std::max<long>(art.series.precision, kMinPrecisionBits));
    if (art.schedule_text.empty()) throw IoError("artifact carries no schedule");
    const Schedule s = parse_schedule(art.schedule_text);
    if (s.steps.size() < art.series.blocks.size()) throw IoError("artifact has more blocks than schedule steps");

    json config = {{"command", "verify"},
                   {"suite", a.suite},
                   {"grid", a.grid},
                   {"seed", a.seed},
                   {"depth", a.depth},
                   {"cells", a.cells},
                   {"box", num(a.box)},
                   {"zetas", a.zetas},
                   {"artifact_config_hash", art.config_hash}};
    const Stamp st = stamp_for(config, art.series.precision, a.seed);

    SuiteOutput res;
    if (a.suite == "growth") res = suite_growth(art, s, a);
    else if (a.suite == "targets") res = suite_targets(art, s, a);
    else if (a.suite == "uk") res = suite_uk(art, s, a);
    else if (a.suite == "plessner") res = suite_plessner(art, a);
    else if (a.suite == "radial") res = suite_radial(art, a);
    else throw PreconditionError("unknown suite '" + a.suite + "'");

    ensure_dir(a.out);
    std::string csv = st.csv_line() + res.csv_columns + "\n";
    for (const auto& r : res.rows) csv += r + "\n";
    write_file(path_in(a.out, "verify_" + a.suite + ".csv"), csv);

    json report;
    st.into(report);
    report["config"] = config;
    report["suite"] = a.suite;
    json checks = json::array();
    bool ok = true;
    for (const auto& c : res.checks) {
        checks.push_back({{"name", c.name},
                          {"pass", c.pass},
                          {"value", num(c.value)},
                          {"threshold", num(c.threshold)},
                          {"gate", c.gate}});
        std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << " (" << num(c.value) << " vs " << num(c.threshold)
                  << (c.gate ? "" : ", report only") << ")\n";
        if (c.gate && !c.pass) ok = false;
    }
    report["checks"] = checks;
    report["pass"] = ok;
    write_file(path_in(a.out, "verify_" + a.suite + ".json"), report.dump(1) + "\n");
    return ok ? kExitOk : kExitCertificate;
}

// ---- potential ----

struct PotentialArgs {
    long walks = 10000;
    std::uint64_t seed = 1;
    std::string out;
    long precision = kDefaultPrecisionBits;
    std::string z = "0.3,0.2";
    double zeta_angle = 0.0;
    double a = 2.0;
    std::string domain = "disc";
    std::string phi = "one";
    double c = 1.0;
    double beta = std::numbers::pi / 3;
    double R = 1e6;
    int points = 1000;
};

BoundaryFunction boundary_function(const std::string& name) {
    if (name == "one") return [](cd) { return 1.0; };
    if (name == "re") return [](cd z) { return z.real(); };
    if (name == "im") return [](cd z) { return z.imag(); };
    if (name == "upper") return [](cd z) { return z.imag() > 0.0 ? 1.0 : 0.0; };
    throw PreconditionError("unknown boundary function '" + name + "' (one, re, im, upper)");
}

DomainDesc domain_by_name(const std::string& name, double c) {
    if (name == "disc") return DomainDesc::unit_disc();
    if (name == "strip") return DomainDesc::strip();
    if (name == "tangent-disc") return DomainDesc::tangent_disc({1.0, 0.0}, c);
    throw PreconditionError("unknown domain '" + name + "' (disc, strip, tangent-disc)");
}

int cmd_potential(const std::string& sub, const PotentialArgs& a) {
    PrecisionScope scope(a.precision);
    json config = {{"command", "potential"}, {"sub", sub}, {"walks", a.walks}, {"seed", a.seed}};
    json rep;
    bool ok = true;
    if (sub == "poisson") {
        config["z"] = a.z;
        config["zeta_angle"] = num(a.zeta_angle);
        const cd z = parse_point(a.z);
        const Real v = poisson_kernel(Complex(z), Complex::unit(Real(a.zeta_angle)));
        rep["value"] = v.to_string(30);
        rep["value_hex"] = v.to_hex();
    } else if (sub == "minthin") {
        config["a"] = num(a.a);
        const double e = a.a;
        const auto r = minthin_psi_test([e](double t) { return std::pow(t, e); });
        rep["verdict"] = to_string(r.verdict);
        rep["limit_estimate"] = num(r.limit_estimate);
        rep["slope"] = num(r.slope);
        rep["levels"] = r.partial.size();
    } else if (sub == "hmeasure") {
        config["z"] = a.z;
        config["domain"] = a.domain;
        config["phi"] = a.phi;
        config["c"] = num(a.c);
        const auto m = harmonic_measure(domain_by_name(a.domain, a.c), parse_point(a.z), boundary_function(a.phi),
                                        a.walks, a.seed);
        rep["estimate"] = num(m.functional_value);
        rep["confidence_radius"] = num(m.confidence_radius);
        rep["walks"] = m.walks;
        rep["discarded"] = m.discarded;
        rep["inconclusive"] = m.inconclusive;
    } else if (sub == "green-arc") {
        config["beta"] = num(a.beta);
        config["R"] = num(a.R);
        const ArcOnCircle arc(-a.beta, a.beta);
        const double G = green_arc_complement(std::polar(a.R, 0.4), arc);
        const double robin = G - std::log(a.R);
        const double expected = -std::log(std::sin(a.beta / 2.0));
        rep["G"] = num(G);
        rep["G_minus_logR"] = num(robin);
        rep["minus_log_capacity"] = num(expected);
        rep["capacity"] = num(std::sin(a.beta / 2.0));
        rep["difference"] = num(std::abs(robin - expected));
        ok = std::abs(robin - expected) <= 1e-3;
    } else if (sub == "tangent-disc") {
        config["c"] = num(a.c);
        config["points"] = a.points;
        const Complex zeta(1);
        const TangentDisc td = tangent_disc(zeta, Real(a.c));
        Real worst(0);
        for (int j = 0; j < a.points; ++j) {
            const Real th = ldexp(Real::pi(), 1) * Real(2 * j + 1) / Real(2 * a.points);
            const Complex z = td.center + Complex::polar(td.radius, th);
            worst = max(worst, abs(poisson_kernel(z, zeta) - Real(a.c)));
        }
        rep["center"] = td.center.re.to_string(30);
        rep["radius"] = td.radius.to_string(30);
        rep["max_residual"] = num(worst.to_double());
        ok = worst.to_double() <= 1e-10;
    } else {
        throw PreconditionError("unknown potential subcommand '" + sub + "'");
    }
    const Stamp st = stamp_for(config, a.precision, a.seed);
    st.into(rep);
    rep["config"] = config;
    rep["sub"] = sub;
    rep["pass"] = ok;
    const std::string text = rep.dump(1) + "\n";
    if (a.out.empty()) std::cout << text;
    else write_file(a.out, text);
    return ok ? kExitOk : kExitCertificate;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"Universal Taylor series builder and diagnostics", "utaylor"};
    app.require_subcommand(1);

    BuildArgs b;
    auto* build = app.add_subcommand("build", "Build a universal series from a schedule");
    build->add_option("--schedule", b.schedule, "Schedule file, or preset:disc / preset:strip");
    build->add_option("--mode", b.mode, "strict or empirical")->check(CLI::IsMember({"strict", "empirical"}));
    build->add_option("--kmax", b.kmax, "Number of steps")->check(CLI::PositiveNumber);
    build->add_option("--precision", b.precision, "Working precision in bits")->check(CLI::Range(53L, 1L << 20));
    build->add_option("--out", b.out, "Output directory");
    build->add_option("--seed", b.seed, "Seed recorded in the outputs");

    VerifyArgs v;
    auto* verify = app.add_subcommand("verify", "Re-check a stored series");
    verify->add_option("artifact", v.artifact, "Series artifact")->required();
    verify->add_option("--suite", v.suite, "growth, targets, uk, plessner or radial")
        ->check(CLI::IsMember({"growth", "targets", "uk", "plessner", "radial"}));
    verify->add_option("--grid", v.grid, "Grid size")->check(CLI::PositiveNumber);
    verify->add_option("--out", v.out, "Report directory");
    verify->add_option("--seed", v.seed, "Seed for random boundary points");
    verify->add_option("--depth", v.depth, "Probe depth levels")->check(CLI::Range(1, 60));
    verify->add_option("--cells", v.cells, "Coverage grid cells per side")->check(CLI::PositiveNumber);
    verify->add_option("--box", v.box, "Half-width of the coverage window")->check(CLI::PositiveNumber);
    verify->add_option("--zetas", v.zetas, "Number of random boundary points")->check(CLI::PositiveNumber);

    PotentialArgs p;
    std::string psub;
    auto* pot = app.add_subcommand("potential", "Potential theory helpers");
    pot->add_option("sub", psub, "poisson, minthin, hmeasure, green-arc or tangent-disc")
        ->required()
        ->check(CLI::IsMember({"poisson", "minthin", "hmeasure", "green-arc", "tangent-disc"}));
    pot->add_option("--walks", p.walks, "Walks for hmeasure")->check(CLI::PositiveNumber);
    pot->add_option("--seed", p.seed, "Seed");
    pot->add_option("--out", p.out, "Write the report here instead of stdout");
    pot->add_option("--precision", p.precision, "Working precision in bits")->check(CLI::Range(53L, 1L << 20));
    pot->add_option("--z", p.z, "Point as re,im");
    pot->add_option("--zeta-angle", p.zeta_angle, "Boundary point angle (poisson)");
    pot->add_option("--a", p.a, "Exponent of psi(t) = t^a (minthin)");
    pot->add_option("--domain", p.domain, "disc, strip or tangent-disc (hmeasure)");
    pot->add_option("--phi", p.phi, "one, re, im or upper (hmeasure)");
    pot->add_option("--c", p.c, "Level of the tangent disc {P(., 1) > c}");
    pot->add_option("--beta", p.beta, "Arc half-angle (green-arc)");
    pot->add_option("--R", p.R, "Radius for the capacity asymptote (green-arc)");
    pot->add_option("--points", p.points, "Boundary points (tangent-disc)")->check(CLI::PositiveNumber);

    std::string preset = "disc";
    int steps = 0;
    auto* sched = app.add_subcommand("schedule", "Print a shipped schedule as JSON");
    sched->add_option("--preset", preset, "disc or strip")->check(CLI::IsMember({"disc", "strip"}));
    sched->add_option("--steps", steps, "Number of steps (default: preset length)");

    std::vector<std::string> argv_s = {"utaylor"};
    argv_s.insert(argv_s.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_s) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (*build) return cmd_build(b);
        if (*verify) return cmd_verify(v);
        if (*pot) return cmd_potential(psub, p);
        if (*sched) {
            const Schedule s = preset == "disc" ? (steps > 0 ? Schedule::default_disc(steps) : Schedule::default_disc())
                                                : (steps > 0 ? Schedule::default_strip(steps) : Schedule::default_strip());
            std::cout << schedule_to_text(s) << "\n";
            return kExitOk;
        }
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const CertificateError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCertificate;
    } catch (const PrecisionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCertificate;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitValidation;
}

}  // namespace utaylor

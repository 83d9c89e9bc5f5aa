#include "utaylor/error.hpp"
#include "utaylor/universal.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace utaylor {

namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(4);
    os << x;
    return os.str();
}

void add_note(std::string& note, const std::string& s) {
    if (!note.empty()) note += "; ";
    note += s;
}

// Log-space samples for the exponent predicate |z|^n c <= bound(z).
struct ExpSample {
    double log_r;
    double log_bound;
    cd z;
};

}  // namespace

long choose_exponent_disc(int k, const Poly& prev_sum, const Poly& p_k, const CompactSet& A, const Weight& w,
                          const CompactSet& core_disc, long n_max) {
    const long n0 = std::max<long>(0, prev_sum.degree() + 1);
    const Complex one(1);
    const double g1 = abs(p_k(one) - prev_sum(one)).to_double();
    if (g1 == 0.0) return n0;
    const double log_g = std::log(g1);
    const double log_c = -(k + 1) * std::log(2.0);

    std::vector<ExpSample> pts;
    for (const auto* set : {&A, &core_disc}) {
        for (const auto& z : set->all_samples()) {
            const cd zd = z.to_std();
            const double wv = w(zd);
            if (std::isinf(wv)) continue;
            const double r = std::abs(zd);
            pts.push_back({r == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(r), log_c + std::log(wv), zd});
        }
    }
    auto holds = [&](long n) {
        for (const auto& s : pts) {
            const double lhs = n == 0 ? log_g : static_cast<double>(n) * s.log_r + log_g;
            if (lhs > s.log_bound) return false;
        }
        return true;
    };
    if (holds(n0)) return n0;
    long lo = n0, hi = std::max<long>(1, n0);
    while (!holds(hi)) {
        lo = hi;
        hi *= 2;
        if (hi > n_max) {
            // Name the sample that forces the largest exponent.
            const ExpSample* worst = nullptr;
            double need = -1.0;
            for (const auto& s : pts) {
                const double req = s.log_r < 0.0 ? (s.log_bound - log_g) / s.log_r : std::numeric_limits<double>::infinity();
                if (req > need) {
                    need = req;
                    worst = &s;
                }
            }
            std::ostringstream os;
            os << "step " << k << ": exponent search exceeded n_max = " << n_max;
            if (worst) {
                os << " (sample " << worst->z.real() << (worst->z.imag() < 0 ? "" : "+") << worst->z.imag()
                   << "i with |z| = " << std::abs(worst->z) << " and w = " << w(worst->z)
                   << " is too close to the unit circle)";
            }
            throw ScheduleError(os.str());
        }
    }
    while (hi - lo > 1) {
        const long mid = lo + (hi - lo) / 2;
        if (holds(mid)) hi = mid;
        else lo = mid;
    }
    return hi;
}

DiscStep build_disc_step(int k, const Poly& sum, const Schedule& s, BuildMode mode, const ApproxConfig& cfg) {
    if (k < 1 || static_cast<std::size_t>(k) > s.steps.size())
        throw ScheduleError("step " + std::to_string(k) + " is not in the schedule");
    const bool strict = mode == BuildMode::strict;
    ApproxConfig acfg = cfg;
    acfg.precision_guard = strict;

    const CompactSet a_grid = certificate_grid(s.A, s.grid_density, s.min_grid_points);
    const auto a_pts = a_grid.all_samples();
    const Complex one(1);
    const auto& step = s.steps[static_cast<std::size_t>(k) - 1];
    const CompactSet core =
        CompactSet::disc("core" + std::to_string(k), Complex(), Real(k) / Real(k + 1), s.fit_density);
    const CompactSet core_grid = certificate_grid(core, s.grid_density, s.min_grid_points);
    const auto core_pts = core_grid.all_samples();
    const long n = choose_exponent_disc(k, sum, step.p, a_grid, s.w, core_grid, s.n_max);

    const Complex g1 = step.p(one) - sum(one);
    const Real d = max(Real(1), step.K.d_max());
    const Real tol_nominal = Real(1) / (ldexp(pow(d, n), k + 1));
    const Real tol = (!strict && step.tau) ? *step.tau : tol_nominal;

    // Points of K on the unit circle may round to just inside it.
    const Real edge = Real(1) - ldexp(Real(1), -(working_precision() - 8));
    const Poly& p = step.p;
    auto target = [&](const Complex& z) -> Complex {
        if (abs(z) >= edge) return pow(z, -n) * (p(z) - sum(z));
        return g1;
    };
    const CompactSet fit = CompactSet::unite(
        "fit" + std::to_string(k), {s.A.with_density(s.fit_density), core, step.K.with_density(s.fit_density)});
    const ApproxProblem prob{target, fit, s.max_degree, tol, true};
    ApproxResult res = mergelyan_approximate(prob, acfg);

    SeriesBlock block{n, n, res.poly};
    StepCertificate c;
    c.k = k;
    c.n_k = n;
    c.degree = block.degree();
    c.mergelyan_met = res.met;
    c.mergelyan_tol = tol.to_double();
    c.mergelyan_error = res.achieved_error.to_double();
    c.mergelyan_degree = res.degree_used;

    // |q_k| <= 2^{-k} w on A and on the core disc.
    double min_w = std::numeric_limits<double>::infinity();
    c.achieved_growth_margin = std::numeric_limits<double>::infinity();
    c.growth_ratio = 0.0;
    for (const auto* pts : {&a_pts, &core_pts}) {
        for (const auto& z : *pts) {
            ++c.growth_points;
            const double wv = s.w(z.to_std());
            if (std::isinf(wv)) continue;
            const double bound = std::ldexp(wv, -k);
            const double q = abs(pow(z, n) * block.qstar(z)).to_double();
            min_w = std::min(min_w, wv);
            c.achieved_growth_margin = std::min(c.achieved_growth_margin, bound - q);
            c.growth_ratio = std::max(c.growth_ratio, q / bound);
        }
    }
    c.requested_growth_bound = std::ldexp(min_w, -k);

    // |p_k - sum_{j<=k} q_j| <= 2^{-k-1} on K_k.
    const Poly next = sum + block.q();
    const CompactSet k_grid = certificate_grid(step.K, s.grid_density, s.min_grid_points);
    c.requested_target_err = std::ldexp(1.0, -k - 1);
    Real worst(0);
    for (const auto& z : k_grid.all_samples()) {
        ++c.target_points;
        Real e = abs(p(z) - next(z));
        if (e > worst) worst = std::move(e);
    }
    c.achieved_target_err = worst.to_double();

    if (!res.met) {
        add_note(c.relaxation_note, "Mergelyan tolerance " + fmt(c.mergelyan_tol) + " not met (achieved " +
                                        fmt(c.mergelyan_error) + " at degree " + std::to_string(res.degree_used) +
                                        ")");
    }
    if (!res.note.empty() && !res.met) add_note(c.relaxation_note, res.note);
    if (!c.growth_ok()) {
        add_note(c.relaxation_note, "growth bound missed (max |q_k|/(2^-k w) = " + fmt(c.growth_ratio) + ")");
    }
    if (!c.target_ok()) {
        add_note(c.relaxation_note, "target error " + fmt(c.achieved_target_err) + " exceeds " +
                                        fmt(c.requested_target_err));
    }
    if (strict && !c.relaxation_note.empty()) throw CertificateError(k, c.relaxation_note);
    return {std::move(block), std::move(c)};
}

UniversalSeries build_universal_disc(const Schedule& s, const BuildOptions& o) {
    if (s.domain != SeriesDomain::disc) throw ScheduleError("disc builder needs a disc schedule");
    if (o.k_max < 1) throw ScheduleError("K_max must be at least 1");
    if (static_cast<std::size_t>(o.k_max) > s.steps.size()) {
        throw ScheduleError("K_max = " + std::to_string(o.k_max) + " exceeds the " + std::to_string(s.steps.size()) +
                            " scheduled steps");
    }
    s.validate(o.k_max);

    UniversalSeries f;
    f.domain = SeriesDomain::disc;
    f.mode = o.mode;
    f.precision = working_precision();
    Poly sum;
    for (int k = 1; k <= o.k_max; ++k) {
        DiscStep st = build_disc_step(k, sum, s, o.mode, o.approx);
        sum += st.block.q();
        f.blocks.push_back(std::move(st.block));
        f.certificates.push_back(std::move(st.certificate));
        if (o.observer) o.observer(f.blocks.back(), f.certificates.back());
    }
    return f;
}

UniversalSeries build_universal_disc(const Schedule& schedule, BuildMode mode, int k_max) {
    BuildOptions o;
    o.mode = mode;
    o.k_max = k_max;
    return build_universal_disc(schedule, o);
}

UniversalSeries build_universal(const Schedule& schedule, const BuildOptions& opts) {
    return schedule.domain == SeriesDomain::disc ? build_universal_disc(schedule, opts)
                                                 : build_universal_strip(schedule, opts);
}

}  // namespace utaylor

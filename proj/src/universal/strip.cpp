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

Real sup_diff(const std::vector<Complex>& pts, const Poly& a, const Poly& b) {
    Real worst(0);
    for (const auto& z : pts) {
        Real e = abs(a(z) - b(z));
        if (e > worst) worst = std::move(e);
    }
    return worst;
}

struct StripSample {
    double log_fp;
    double log_fm;
    double log_w;
};

// Smallest n > m_prev satisfying the two-sided exponent inequality on the
// samples together with |b_k|, |c_k| < 2^{-k-1} delta.
long choose_exponent_strip(int k, long m_prev, double g1, double gm1, double delta, double wk,
                           const std::vector<StripSample>& pts, long n_max) {
    const double log_c = -(k + 2) * std::log(2.0) + std::log(delta) - std::log(wk);
    const double bc_bound = std::ldexp(delta, -k - 1);
    const double lg1 = g1 > 0.0 ? std::log(g1) : -std::numeric_limits<double>::infinity();
    const double lgm = gm1 > 0.0 ? std::log(gm1) : -std::numeric_limits<double>::infinity();
    const double lmax = std::max(lg1, lgm);
    auto holds = [&](long n) {
        const double nd = static_cast<double>(n);
        if (std::isfinite(lmax) && !(nd * std::log(1.0 / 3.0) + lmax < std::log(bc_bound))) return false;
        for (const auto& s : pts) {
            const double rhs = log_c + s.log_w;
            if (std::isfinite(lg1) && nd * s.log_fp + lg1 > rhs) return false;
            if (std::isfinite(lgm) && nd * s.log_fm + lgm > rhs) return false;
        }
        return true;
    };
    const long n0 = m_prev + 1;
    if (holds(n0)) return n0;
    long lo = n0, hi = n0;
    while (!holds(hi)) {
        lo = hi;
        hi *= 2;
        if (hi > n_max) {
            throw ScheduleError("step " + std::to_string(k) + ": exponent search exceeded n_max = " +
                                std::to_string(n_max) + " (w is not large enough near +-1 relative to w_k = " +
                                fmt(wk) + ")");
        }
    }
    while (hi - lo > 1) {
        const long mid = lo + (hi - lo) / 2;
        if (holds(mid)) hi = mid;
        else lo = mid;
    }
    return hi;
}

}  // namespace

Complex conformal_Fplus(const Complex& z) {
    if (!(z.re < Real(1))) throw DomainError("F_+ is defined on Re z < 1");
    return z / (Complex(2) - z);
}

Complex conformal_Fminus(const Complex& z) {
    if (!(z.re > Real(-1))) throw DomainError("F_- is defined on Re z > -1");
    return conformal_Fplus(-z);
}

Real choose_delta_k(int k, long m_prev, const std::vector<CompactSet>& K_sets, const std::optional<Real>& delta_prev) {
    if (m_prev < 0) throw PreconditionError("m_prev must be non-negative");
    if (K_sets.empty()) throw PreconditionError("choose_delta_k needs at least one K set");
    Real D(1);
    for (const auto& K : K_sets) D = max(D, K.d_max());
    Real delta = ldexp(Real(1), -k) / pow(ldexp(D, 1), m_prev + 1);
    if (delta_prev && !(delta < *delta_prev)) delta = ldexp(*delta_prev, -1);
    return delta;
}

CompactSet strip_rectangle(int n, int density) {
    if (n < 1) throw PreconditionError("rectangle index must be at least 1");
    const Real x = Real(n) / Real(n + 1);
    return CompactSet::rectangle("R" + std::to_string(n), Complex(-x, Real(-n)), Complex(x, Real(n)), density);
}

UniversalSeries build_universal_strip(const Schedule& s, const BuildOptions& o) {
    if (s.domain != SeriesDomain::strip) throw ScheduleError("strip builder needs a strip schedule");
    if (o.k_max < 1) throw ScheduleError("K_max must be at least 1");
    if (static_cast<std::size_t>(o.k_max) > s.steps.size()) {
        throw ScheduleError("K_max = " + std::to_string(o.k_max) + " exceeds the " + std::to_string(s.steps.size()) +
                            " scheduled steps");
    }
    s.validate(o.k_max);

    const bool strict = o.mode == BuildMode::strict;
    ApproxConfig acfg = o.approx;
    acfg.precision_guard = strict;

    UniversalSeries f;
    f.domain = SeriesDomain::strip;
    f.mode = o.mode;
    f.precision = working_precision();

    const CompactSet a_grid = certificate_grid(s.A, s.grid_density, s.min_grid_points);
    const CompactSet a_fit = s.A.with_density(s.fit_density);
    const auto a_pts = a_grid.all_samples();
    const Complex one(1), minus_one(-1);
    const Complex third = Complex(-1) / Complex(3);  // F_-(1) = F_+(-1)

    Poly sum;
    std::vector<CompactSet> ks;
    std::vector<Poly> sums{Poly()};  // sums[k] = sum_{j<=k} q_j
    std::vector<std::vector<Complex>> k_pts;
    std::optional<Real> delta_prev_nominal, delta_prev;

    for (int k = 1; k <= o.k_max; ++k) {
        const auto& step = s.steps[static_cast<std::size_t>(k) - 1];
        const CompactSet rk = strip_rectangle(k, s.fit_density);
        const CompactSet r_grid = certificate_grid(rk, s.grid_density, s.min_grid_points);
        const auto r_pts = r_grid.all_samples();
        ks.push_back(step.K);

        const long m_prev = std::max<long>(0, sum.degree());
        const Real delta_nominal = choose_delta_k(k, m_prev, ks, delta_prev_nominal);
        delta_prev_nominal = delta_nominal;
        Real delta = delta_nominal;
        StepCertificate c;
        if (!strict && s.delta_floor > 0.0) {
            const Real floor_k = ldexp(Real(s.delta_floor), -k);
            if (floor_k > delta) {
                delta = floor_k;
                add_note(c.relaxation_note,
                         "delta raised from " + fmt(delta_nominal.to_double()) + " to " + fmt(delta.to_double()));
            }
        }
        if (delta_prev && !(delta < *delta_prev)) delta = ldexp(*delta_prev, -1);
        delta_prev = delta;

        const Poly& p = step.p;
        const Complex g1 = p(one) - sum(one);
        const Complex gm1 = p(minus_one) - sum(minus_one);

        double wk = 0.0;
        for (const auto& z : r_pts) wk = std::max(wk, s.w(z.to_std()));

        std::vector<StripSample> samples;
        for (const auto* pts : {&a_pts, &r_pts}) {
            for (const auto& z : *pts) {
                const cd zd = z.to_std();
                const double wv = s.w(zd);
                if (std::isinf(wv)) continue;
                samples.push_back({std::log(std::abs(zd / (2.0 - zd))), std::log(std::abs(zd / (2.0 + zd))), std::log(wv)});
            }
        }
        const long n = choose_exponent_strip(k, m_prev, abs(g1).to_double(), abs(gm1).to_double(), delta.to_double(),
                                             wk, samples, s.n_max);

        const Complex b = pow(third, n) * gm1;
        const Complex cc = pow(third, n) * g1;
        const Real tol_nominal = ldexp(delta, -k - 1);
        const Real tol = (!strict && step.tau) ? *step.tau : tol_nominal;

        const Real edge = Real(1) - ldexp(Real(1), -(working_precision() - 8));
        auto target = [&](const Complex& z) -> Complex {
            if (z.re >= edge) return p(z) - sum(z) + b;
            if (z.re <= -edge) return p(z) - sum(z) + cc;
            return pow(conformal_Fplus(z), n) * g1 + pow(conformal_Fminus(z), n) * gm1;
        };
        const CompactSet fit =
            CompactSet::unite("fit" + std::to_string(k), {a_fit, rk, step.K.with_density(s.fit_density)});
        const ApproxProblem prob{target, fit, s.max_degree, tol, true};
        ApproxResult res = mergelyan_approximate(prob, acfg);

        SeriesBlock block{n, 0, res.poly};
        const Poly& q = block.qstar;
        c.k = k;
        c.n_k = n;
        c.degree = block.degree();
        c.delta = delta.to_double();
        c.delta_nominal = delta_nominal.to_double();
        c.mergelyan_met = res.met;
        c.mergelyan_tol = tol.to_double();
        c.mergelyan_error = res.achieved_error.to_double();
        c.mergelyan_degree = res.degree_used;

        // |q_k| <= 2^{-k} w on A.
        double min_w = std::numeric_limits<double>::infinity();
        c.achieved_growth_margin = std::numeric_limits<double>::infinity();
        for (const auto& z : a_pts) {
            ++c.growth_points;
            const double wv = s.w(z.to_std());
            if (std::isinf(wv)) continue;
            const double bound = std::ldexp(wv, -k);
            const double qv = abs(q(z)).to_double();
            min_w = std::min(min_w, wv);
            c.achieved_growth_margin = std::min(c.achieved_growth_margin, bound - qv);
            c.growth_ratio = std::max(c.growth_ratio, qv / bound);
        }
        c.requested_growth_bound = std::ldexp(min_w, -k);

        // |q_k| <= 2^{-k} delta_k on R_k.
        c.core_requested = ldexp(delta, -k).to_double();
        Real core(0);
        for (const auto& z : r_pts) {
            ++c.core_points;
            Real v = abs(q(z));
            if (v > core) core = std::move(v);
        }
        c.core_achieved = core.to_double();

        // |p_k - sum_{j<=k} q_j| <= 2^{-k} on K_k.
        const Poly next = sum + q;
        const CompactSet k_grid = certificate_grid(step.K, s.grid_density, s.min_grid_points);
        k_pts.push_back(k_grid.all_samples());
        c.target_points = k_pts.back().size();
        c.requested_target_err = std::ldexp(1.0, -k);
        c.achieved_target_err = sup_diff(k_pts.back(), p, next).to_double();

        if (!res.met) {
            add_note(c.relaxation_note, "Mergelyan tolerance " + fmt(c.mergelyan_tol) + " not met (achieved " +
                                            fmt(c.mergelyan_error) + " at degree " + std::to_string(res.degree_used) +
                                            ")");
            if (!res.note.empty()) add_note(c.relaxation_note, res.note);
        }
        if (!c.growth_ok()) {
            add_note(c.relaxation_note, "growth bound on A missed (max |q_k|/(2^-k w) = " + fmt(c.growth_ratio) + ")");
        }
        if (c.core_achieved > c.core_requested) {
            add_note(c.relaxation_note, "bound on R_k missed (" + fmt(c.core_achieved) + " > " +
                                            fmt(c.core_requested) + ")");
        }
        if (!c.target_ok()) {
            add_note(c.relaxation_note, "target error " + fmt(c.achieved_target_err) + " exceeds " +
                                            fmt(c.requested_target_err));
        }
        if (strict && !c.relaxation_note.empty()) throw CertificateError(k, c.relaxation_note);

        sum = next;
        sums.push_back(sum);
        f.blocks.push_back(block);
        f.certificates.push_back(c);
        if (o.observer) o.observer(f.blocks.back(), f.certificates.back());
    }

    // Final partial-sum certificates against the built function.
    const Poly built = f.built();
    for (int k = 1; k <= o.k_max; ++k) {
        auto& c = f.certificates[static_cast<std::size_t>(k) - 1];
        const auto& step = s.steps[static_cast<std::size_t>(k) - 1];
        const long m_prev = std::max<long>(0, sums[static_cast<std::size_t>(k) - 1].degree());
        const long m_k = std::max<long>(0, sums[static_cast<std::size_t>(k)].degree());
        const auto& pts = k_pts[static_cast<std::size_t>(k) - 1];
        c.partial_requested = std::ldexp(1.0, 1 - k);
        c.partial_achieved = sup_diff(pts, step.p, built.truncated(m_prev)).to_double();
        c.partial_achieved_mk = sup_diff(pts, step.p, built.truncated(m_k)).to_double();
        const Real d = max(Real(1), step.K.d_max());
        const double relaxed = (Real(4) * Real(c.mergelyan_error) * pow(d, c.n_k)).to_double();
        c.partial_relaxed = std::max(c.partial_requested, relaxed);
        if (c.partial_achieved > c.partial_requested) {
            add_note(c.relaxation_note, "|p_k - S_{m_(k-1)}| = " + fmt(c.partial_achieved) + " exceeds " +
                                            fmt(c.partial_requested) + " (with index m_k: " +
                                            fmt(c.partial_achieved_mk) + ")");
            if (strict) throw CertificateError(k, c.relaxation_note);
        }
    }
    return f;
}

UniversalSeries build_universal_strip(const Schedule& schedule, BuildMode mode, int k_max) {
    BuildOptions o;
    o.mode = mode;
    o.k_max = k_max;
    return build_universal_strip(schedule, o);
}

}  // namespace utaylor

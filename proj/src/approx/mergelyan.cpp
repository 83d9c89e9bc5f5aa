#include "utaylor/approx.hpp"
#include "utaylor/error.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace utaylor {

namespace {

// Weighted sample inner product <u, v> = sum w_i conj(u_i) v_i / W, with the
// first nb entries at weight 1 and the rest at weight 1/4.
class InnerProduct {
public:
    InnerProduct(std::size_t nb, std::size_t m) : nb_(nb), m_(m) {
        const Real total = Real(static_cast<long>(nb)) + ldexp(Real(static_cast<long>(m - nb)), -2);
        inv_total_ = Real(1) / total;
    }

    void operator()(Complex& out, const std::vector<Complex>& u, const std::vector<Complex>& v) {
        Complex& b = acc_b_;
        Complex& i = acc_i_;
        b = Complex();
        i = Complex();
        for (std::size_t k = 0; k < nb_; ++k) kernel::conj_mul_acc(b, u[k], v[k], tmp_);
        for (std::size_t k = nb_; k < m_; ++k) kernel::conj_mul_acc(i, u[k], v[k], tmp_);
        mpfr_mul_2si(i.re.get(), i.re.get(), -2, MPFR_RNDN);
        mpfr_mul_2si(i.im.get(), i.im.get(), -2, MPFR_RNDN);
        b += i;
        out = b * inv_total_;
    }

    Real norm(const std::vector<Complex>& v) {
        Complex out;
        (*this)(out, v, v);
        return sqrt(out.re);
    }

private:
    std::size_t nb_, m_;
    Real inv_total_;
    Complex acc_b_, acc_i_;
    Real tmp_;
};

Real max_abs2(const std::vector<Complex>& r) {
    Real best(0);
    for (const auto& x : r) {
        Real n = norm(x);
        if (n > best) best = std::move(n);
    }
    return best;
}

struct Validator {
    const ApproxProblem& prob;
    const ApproxConfig& cfg;
    const CompactSet& fit;
    std::optional<CompactSet> grid;
    std::vector<Complex> points;
    std::vector<Complex> values;
    Real radius;
    bool precision_limited = false;

    Real error(const Poly& p) {
        if (!grid) {
            grid = validation_grid(fit, cfg);
            points = grid->all_samples();
            values.reserve(points.size());
            for (const auto& z : points) values.push_back(prob.target(z));
            radius = max(Real(1), grid->d_max());
        }
        Real worst(0);
        for (std::size_t k = 0; k < points.size(); ++k) {
            Real e = norm(poly_eval(p, points[k]) - values[k]);
            if (e > worst) worst = std::move(e);
        }
        worst = sqrt(worst);
        // Roundoff of Horner on the validation grid is bounded by
        // (deg + 1) eps sum |a_j| r^j. A miss dominated by that level is a
        // precision failure rather than an approximation failure.
        Real growth(0), rj(1);
        for (const auto& a : p.coeffs()) {
            growth += abs(a) * rj;
            rj *= radius;
        }
        const Real eps = ldexp(Real(1), -(working_precision() - 4));
        const Real noise = growth * eps * Real(std::max<long>(1, p.degree() + 1));
        if (worst > prob.tol && ldexp(noise, 4) >= worst) {
            if (!cfg.precision_guard) {
                precision_limited = true;
                return worst;
            }
            throw PrecisionError("least-squares fit is ill-conditioned at " + std::to_string(working_precision()) +
                                 " bits (coefficient growth " + growth.to_string(6) +
                                 "); raise the precision or lower the degree");
        }
        return worst;
    }
};

}  // namespace

CompactSet validation_grid(const CompactSet& fit, const ApproxConfig& cfg) {
    const std::size_t want =
        std::max(cfg.min_validation_points, static_cast<std::size_t>(cfg.validation_factor) * fit.sample_count());
    long density = static_cast<long>(fit.density()) * std::max(4, cfg.validation_factor);
    CompactSet grid = fit.with_density(static_cast<int>(density));
    while (grid.sample_count() < want) {
        density *= 2;
        grid = fit.with_density(static_cast<int>(density));
    }
    return grid;
}

namespace {

// Least squares on a fixed fitting grid up to degree cap.
ApproxResult fit_once(const ApproxProblem& prob, const ApproxConfig& cfg, const CompactSet& fit, long cap,
                      ApproxResult res) {
    const auto& bd = fit.boundary_samples();
    const auto& in = fit.interior_samples();
    std::vector<Complex> z = bd;
    z.insert(z.end(), in.begin(), in.end());
    const std::size_t m = z.size();
    res.fit_points = m;

    std::vector<Complex> r;
    r.reserve(m);
    for (const auto& p : z) r.push_back(prob.target(p));

    InnerProduct ip(bd.size(), m);
    Validator validator{prob, cfg, fit, std::nullopt, {}, {}, Real(1)};

    // Orthonormal basis columns and their monomial coefficients.
    std::vector<std::vector<Complex>> q;
    std::vector<std::vector<Complex>> mono;
    q.emplace_back(m, Complex(1));
    mono.push_back({Complex(1)});

    std::vector<Complex> coeffs;
    Complex c, h;
    Real tmp;
    const Real target2 = [&] {
        const Real s = prob.tol * Real(cfg.safety);
        return s * s;
    }();
    std::optional<Real> last_validated;
    Real fit2;
    bool validated_current = false;

    auto validate = [&](long degree_used) {
        Poly p(coeffs);
        res.poly = p;
        res.degree_used = degree_used;
        res.achieved_error = validator.error(p);
        res.fit_error = sqrt(fit2);
        res.met = res.achieved_error <= prob.tol;
        res.validation_points = validator.points.size();
        validated_current = true;
    };

    const Real collapse = ldexp(max(Real(1), fit.d_max()), -(working_precision() - 16));
    for (long j = 0;; ++j) {
        // Project the residual on q_j.
        ip(c, q[j], r);
        for (std::size_t k = 0; k < m; ++k) kernel::sub_scaled(r[k], c, q[j][k], tmp);
        coeffs.resize(static_cast<std::size_t>(j) + 1);
        for (std::size_t i = 0; i <= static_cast<std::size_t>(j); ++i) kernel::mul_acc(coeffs[i], c, mono[j][i], tmp);
        fit2 = max_abs2(r);
        validated_current = false;

        if (cfg.early_stop && fit2 <= target2 && (!last_validated || fit2 <= ldexp(*last_validated, -2))) {
            last_validated = fit2;
            validate(j);
            if (res.met) return res;
        }
        if (j == cap) break;

        // Next basis vector: z q_j orthogonalized against q_0..q_j.
        std::vector<Complex> v(m);
        for (std::size_t k = 0; k < m; ++k) kernel::mul(v[k], z[k], q[j][k]);
        std::vector<Complex> hcol(static_cast<std::size_t>(j) + 1);
        for (long i = 0; i <= j; ++i) {
            ip(h, q[i], v);
            for (std::size_t k = 0; k < m; ++k) kernel::sub_scaled(v[k], h, q[i][k], tmp);
            hcol[i] = h;
        }
        const Real hn = ip.norm(v);
        if (!(hn > collapse)) {
            res.note += (res.note.empty() ? "" : "; ");
            res.note += "basis exhausted at degree " + std::to_string(j) + " (too few distinct samples)";
            break;
        }
        const Real inv = Real(1) / hn;
        for (auto& x : v) x *= inv;
        q.push_back(std::move(v));

        std::vector<Complex> next(static_cast<std::size_t>(j) + 2);
        for (std::size_t i = 0; i <= static_cast<std::size_t>(j); ++i) next[i + 1] = mono[j][i];
        for (long i = 0; i <= j; ++i) {
            for (std::size_t t = 0; t <= static_cast<std::size_t>(i); ++t)
                kernel::sub_scaled(next[t], hcol[i], mono[i][t], tmp);
        }
        for (auto& x : next) x *= inv;
        mono.push_back(std::move(next));
    }
    if (!validated_current) validate(static_cast<long>(coeffs.size()) - 1);
    if (validator.precision_limited) {
        res.note += (res.note.empty() ? "" : "; ");
        res.note += "roundoff-limited at " + std::to_string(working_precision()) + " bits";
    }
    return res;
}

}  // namespace

ApproxResult mergelyan_approximate(const ApproxProblem& prob, const ApproxConfig& cfg) {
    if (prob.degree < 0) throw PreconditionError("approximation degree must be non-negative");
    if (!(prob.tol > Real(0))) throw PreconditionError("approximation tolerance must be positive");
    if (!prob.target) throw PreconditionError("approximation target is empty");

    ApproxResult res;
    res.requested_tol = prob.tol;
    if (!prob.complement_waived) {
        const auto v = connected_complement_check({prob.set}, default_bounding_box({prob.set}), cfg.complement_grid);
        if (v == ComplementVerdict::fail) {
            throw PreconditionError("approximation set '" + prob.set.id() + "' does not have connected complement");
        }
        if (v == ComplementVerdict::inconclusive) res.note = "connected complement check inconclusive";
    }

    // Each part needs about oversample * (degree + 1) samples; the grid is
    // refined only when the degree reachable on it is exhausted.
    CompactSet fit = prob.set;
    for (;;) {
        const long cap = std::min<long>(prob.degree, std::max<long>(0, fit.density() / cfg.oversample - 1));
        ApproxResult r = fit_once(prob, cfg, fit, cap, res);
        if (r.met || cap >= prob.degree || r.note.find("basis exhausted") != std::string::npos) return r;
        fit = fit.with_density(fit.density() * 2);
    }
}

ApproxResult shifted_fit(const ApproxProblem& prob, long n, const ApproxConfig& cfg) {
    if (n < 0) throw PreconditionError("shift must be non-negative");
    const Real scale = pow(max(Real(1), prob.set.d_max()), n);
    ApproxResult res = mergelyan_approximate(prob, cfg);
    res.poly = res.poly.shifted(n);
    res.achieved_error *= scale;
    res.requested_tol *= scale;
    res.fit_error *= scale;
    res.degree_used = res.poly.degree();
    return res;
}

}  // namespace utaylor

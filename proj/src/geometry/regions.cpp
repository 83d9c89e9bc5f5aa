#include "utaylor/error.hpp"
#include "utaylor/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <memory>

namespace utaylor {

bool is_unimodular(const Complex& z) {
    const Real tol = ldexp(Real(1), -(working_precision() - 8));
    return abs(abs(z) - Real(1)) <= tol;
}

ApproachRegion::ApproachRegion(Complex zeta_, Real alpha_, Real t_)
    : zeta(std::move(zeta_)), alpha(std::move(alpha_)), t(std::move(t_)) {
    if (!is_unimodular(zeta)) throw PreconditionError("approach region vertex must lie on the unit circle");
    if (!(alpha > Real(1))) throw PreconditionError("approach region needs alpha > 1");
    if (!(t > Real(0) && t <= Real(1))) throw PreconditionError("approach region needs t in (0, 1]");
}

bool region_membership(const ApproachRegion& r, const Complex& z) {
    const Real depth = r.alpha * (Real(1) - abs(z));
    return abs(z - r.zeta) < depth && depth < r.alpha * r.t;
}

std::vector<Complex> region_samples(const ApproachRegion& r, int depth_levels, int per_level) {
    if (depth_levels < 1 || per_level < 1) throw PreconditionError("region sampling needs depth and per_level >= 1");
    std::vector<Complex> out;
    out.reserve(static_cast<std::size_t>(depth_levels) * static_cast<std::size_t>(per_level));
    const Real one(1);
    for (int m = 1; m <= depth_levels; ++m) {
        const Real s = ldexp(r.t, -m);
        const Real rho = one - s;
        // On |z| = rho the cone condition |z - zeta| < alpha s reads cos(phi) > c.
        const Real c = (rho * rho + one - r.alpha * r.alpha * s * s) / ldexp(rho, 1);
        Real phi_max = c <= -one ? Real::pi() : atan2(sqrt(one - c * c), c);
        for (int j = 0; j < per_level; ++j) {
            const Real frac = Real(2 * j + 1) / Real(per_level) - one;
            out.push_back(r.zeta * Complex::polar(rho, phi_max * frac));
        }
    }
    return out;
}

DomainDesc DomainDesc::unit_disc() {
    DomainDesc d;
    d.kind = DomainKind::unit_disc;
    d.inside = [](cd z) { return std::abs(z) < 1.0; };
    d.distance = [](cd z) { return 1.0 - std::abs(z); };
    d.nearest_boundary = [](cd z) {
        const double m = std::abs(z);
        return m == 0.0 ? cd(1.0, 0.0) : z / m;
    };
    d.box_lo = {-1.25, -1.25};
    d.box_hi = {1.25, 1.25};
    return d;
}

DomainDesc DomainDesc::strip() {
    DomainDesc d;
    d.kind = DomainKind::strip;
    d.inside = [](cd z) { return std::abs(z.real()) < 1.0; };
    d.distance = [](cd z) { return 1.0 - std::abs(z.real()); };
    d.nearest_boundary = [](cd z) { return cd(z.real() >= 0.0 ? 1.0 : -1.0, z.imag()); };
    d.box_lo = {-1.25, -4.0};
    d.box_hi = {1.25, 4.0};
    return d;
}

DomainDesc DomainDesc::open_disc(cd center, double radius) {
    if (!(radius > 0.0)) throw PreconditionError("disc radius must be positive");
    DomainDesc d;
    d.kind = DomainKind::disc;
    d.inside = [=](cd z) { return std::abs(z - center) < radius; };
    d.distance = [=](cd z) { return radius - std::abs(z - center); };
    d.nearest_boundary = [=](cd z) {
        const cd v = z - center;
        const double m = std::abs(v);
        return m == 0.0 ? center + radius : center + radius * v / m;
    };
    d.scale = radius;
    d.box_lo = center - cd(1.25 * radius, 1.25 * radius);
    d.box_hi = center + cd(1.25 * radius, 1.25 * radius);
    return d;
}

DomainDesc DomainDesc::tangent_disc(cd zeta, double c) {
    if (!(c > 0.0)) throw PreconditionError("tangent disc needs c > 0");
    if (std::abs(std::abs(zeta) - 1.0) > 1e-12) throw PreconditionError("tangent disc vertex must be unimodular");
    DomainDesc d = open_disc(zeta * (c / (c + 1.0)), 1.0 / (c + 1.0));
    d.kind = DomainKind::tangent_disc;
    return d;
}

DomainDesc DomainDesc::psi_region(std::function<double(double)> psi, int curve_samples) {
    if (curve_samples < 16) throw PreconditionError("psi region needs at least 16 curve samples");
    // The curve x = 1 - psi(|y|), |y| <= 1, as a polyline.
    auto curve = std::make_shared<std::vector<cd>>();
    for (int i = 0; i <= curve_samples; ++i) {
        const double y = -1.0 + 2.0 * i / curve_samples;
        curve->emplace_back(1.0 - psi(std::abs(y)), y);
    }
    auto inside = [psi](cd z) { return std::abs(z) < 1.0 && z.real() > 1.0 - psi(std::min(1.0, std::abs(z.imag()))); };
    auto nearest = [curve](cd z) {
        double best = std::abs(1.0 - std::abs(z));
        cd point = std::abs(z) == 0.0 ? cd(1.0, 0.0) : z / std::abs(z);
        const auto& v = *curve;
        for (std::size_t i = 0; i + 1 < v.size(); ++i) {
            const cd ab = v[i + 1] - v[i];
            const double len2 = std::norm(ab);
            double t = len2 == 0.0 ? 0.0 : ((z - v[i]) * std::conj(ab)).real() / len2;
            t = std::clamp(t, 0.0, 1.0);
            const cd p = v[i] + t * ab;
            const double dist = std::abs(z - p);
            if (dist < best) {
                best = dist;
                point = p;
            }
        }
        return std::pair{best, point};
    };
    DomainDesc d;
    d.kind = DomainKind::psi_region;
    d.inside = inside;
    d.distance = [inside, nearest](cd z) {
        const double dist = nearest(z).first;
        return inside(z) ? dist : -dist;
    };
    d.nearest_boundary = [nearest](cd z) { return nearest(z).second; };
    d.box_lo = {-0.25, -1.25};
    d.box_hi = {1.25, 1.25};
    return d;
}

DomainDesc DomainDesc::custom(std::function<bool(cd)> inside, std::function<double(cd)> distance,
                              std::function<cd(cd)> nearest, cd box_lo, cd box_hi) {
    DomainDesc d;
    d.kind = DomainKind::custom;
    d.inside = std::move(inside);
    d.distance = std::move(distance);
    d.nearest_boundary = std::move(nearest);
    d.box_lo = box_lo;
    d.box_hi = box_hi;
    d.scale = std::max(box_hi.real() - box_lo.real(), box_hi.imag() - box_lo.imag()) / 2.0;
    return d;
}

int domain_consistency_violations(const DomainDesc& d, int grid_n) {
    if (grid_n < 2) throw PreconditionError("validation grid needs grid_n >= 2");
    int bad = 0;
    for (int i = 0; i < grid_n; ++i) {
        for (int j = 0; j < grid_n; ++j) {
            const cd z(d.box_lo.real() + (d.box_hi.real() - d.box_lo.real()) * (i + 0.5) / grid_n,
                       d.box_lo.imag() + (d.box_hi.imag() - d.box_lo.imag()) * (j + 0.5) / grid_n);
            if ((d.distance(z) > 0.0) != d.inside(z)) ++bad;
        }
    }
    return bad;
}

const char* to_string(ComplementVerdict v) {
    switch (v) {
        case ComplementVerdict::pass: return "pass";
        case ComplementVerdict::fail: return "fail";
        case ComplementVerdict::inconclusive: return "inconclusive";
    }
    return "?";
}

BoxRegion default_bounding_box(const std::vector<CompactSet>& sets) {
    double d = 1.0;
    for (const auto& k : sets) d = std::max(d, k.d_max().to_double());
    return {cd(-2.0 * d, -2.0 * d), cd(2.0 * d, 2.0 * d)};
}

namespace {

// Returns true when every uncovered cell is reachable from the frame.
bool complement_connected_at(const std::vector<CompactSet>& sets, const BoxRegion& box, int n) {
    const double hx = (box.hi.real() - box.lo.real()) / n;
    const double hy = (box.hi.imag() - box.lo.imag()) / n;
    const double reach = 0.5 * std::hypot(hx, hy);

    struct Part {
        const Shape* shape;
        double xlo, xhi, ylo, yhi;
    };
    // Per-shape bounding boxes from the samples let most cells skip the
    // exact distance.
    std::vector<Part> parts;
    for (const auto& k : sets) {
        for (const auto& s : k.shapes()) {
            const CompactSet single = CompactSet::from_shapes("", {s}, 64);
            double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo, ylo = xlo, yhi = -xlo;
            for (const auto& z : single.boundary_samples()) {
                const cd c = z.to_std();
                xlo = std::min(xlo, c.real());
                xhi = std::max(xhi, c.real());
                ylo = std::min(ylo, c.imag());
                yhi = std::max(yhi, c.imag());
            }
            // 64 boundary samples can miss the extreme of a curved part by
            // up to 1 - cos(pi/64) of its radius; pad generously.
            const double pad = 0.05 * std::max(xhi - xlo, yhi - ylo) + reach;
            parts.push_back({&s, xlo - pad, xhi + pad, ylo - pad, yhi + pad});
        }
    }

    std::vector<char> covered(static_cast<std::size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const cd c(box.lo.real() + (i + 0.5) * hx, box.lo.imag() + (j + 0.5) * hy);
            for (const auto& p : parts) {
                if (c.real() < p.xlo || c.real() > p.xhi || c.imag() < p.ylo || c.imag() > p.yhi) continue;
                if (shape_distance(*p.shape, c) <= reach) {
                    covered[static_cast<std::size_t>(i) * n + j] = 1;
                    break;
                }
            }
        }
    }

    std::vector<char> seen(covered.size(), 0);
    std::deque<std::pair<int, int>> queue;
    auto push = [&](int i, int j) {
        if (i < 0 || j < 0 || i >= n || j >= n) return;
        const std::size_t idx = static_cast<std::size_t>(i) * n + j;
        if (covered[idx] || seen[idx]) return;
        seen[idx] = 1;
        queue.emplace_back(i, j);
    };
    for (int i = 0; i < n; ++i) {
        push(i, 0);
        push(i, n - 1);
        push(0, i);
        push(n - 1, i);
    }
    while (!queue.empty()) {
        auto [i, j] = queue.front();
        queue.pop_front();
        push(i + 1, j);
        push(i - 1, j);
        push(i, j + 1);
        push(i, j - 1);
    }
    for (std::size_t idx = 0; idx < covered.size(); ++idx) {
        if (!covered[idx] && !seen[idx]) return false;
    }
    return true;
}

}  // namespace

ComplementVerdict connected_complement_check(const std::vector<CompactSet>& sets, const BoxRegion& box_in,
                                             int grid_n) {
    if (grid_n < 64) throw PreconditionError("connected complement check needs grid_n >= 64");
    if (sets.empty()) return ComplementVerdict::pass;
    // Pad the box so every set is strictly interior.
    BoxRegion box = box_in;
    for (const auto& k : sets) {
        for (const auto* v : {&k.boundary_samples(), &k.interior_samples()}) {
            for (const auto& z : *v) {
                const cd c = z.to_std();
                box.lo = {std::min(box.lo.real(), c.real()), std::min(box.lo.imag(), c.imag())};
                box.hi = {std::max(box.hi.real(), c.real()), std::max(box.hi.imag(), c.imag())};
            }
        }
    }
    const double pad = 0.1 * std::max(box.hi.real() - box.lo.real(), box.hi.imag() - box.lo.imag());
    box.lo -= cd(pad, pad);
    box.hi += cd(pad, pad);

    const bool coarse = complement_connected_at(sets, box, grid_n);
    const bool fine = complement_connected_at(sets, box, 2 * grid_n);
    if (coarse != fine) return ComplementVerdict::inconclusive;
    return coarse ? ComplementVerdict::pass : ComplementVerdict::fail;
}

TangentDisc tangent_disc(const Complex& zeta, const Real& c) {
    if (!is_unimodular(zeta)) throw PreconditionError("tangent disc vertex must lie on the unit circle");
    if (!(c > Real(0))) throw PreconditionError("tangent disc needs c > 0");
    const Real denom = c + Real(1);
    return {zeta * (c / denom), Real(1) / denom};
}

}  // namespace utaylor

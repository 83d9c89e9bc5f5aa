#include "utaylor/error.hpp"
#include "utaylor/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace utaylor {

namespace {

cd to_cd(const Complex& z) { return z.to_std(); }

double seg_distance(cd z, cd a, cd b) {
    const cd ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(z - a);
    double t = ((z - a) * std::conj(ab)).real() / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(z - (a + t * ab));
}

bool point_in_polygon(cd z, const std::vector<cd>& v) {
    bool in = false;
    for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
        const bool crosses = (v[i].imag() > z.imag()) != (v[j].imag() > z.imag());
        if (crosses) {
            const double x =
                v[j].real() + (z.imag() - v[j].imag()) * (v[i].real() - v[j].real()) / (v[i].imag() - v[j].imag());
            if (z.real() < x) in = !in;
        }
    }
    return in;
}

std::vector<cd> vertices_cd(const PolylineShape& p) {
    std::vector<cd> v;
    v.reserve(p.vertices.size());
    for (const auto& z : p.vertices) v.push_back(to_cd(z));
    return v;
}

Real two_pi() { return ldexp(Real::pi(), 1); }

// Points a + (b - a) s for s = j/count, j = 0..count-1 (endpoint b excluded).
void push_edge(std::vector<Complex>& out, const Complex& a, const Complex& b, int count) {
    const Complex d = b - a;
    for (int j = 0; j < count; ++j) out.push_back(a + d * (Real(j) / Real(count)));
}

void sample_disc(const DiscShape& s, int n, std::vector<Complex>& bd, std::vector<Complex>& in) {
    const Real step = two_pi() / Real(n);
    for (int j = 0; j < n; ++j) bd.push_back(s.center + Complex::polar(s.radius, step * Real(j)));
    // Two interior rings and the centre.
    in.push_back(s.center);
    for (int ring = 1; ring <= 2; ++ring) {
        const int m = std::max(4, n * ring / 6);
        const Real r = s.radius * Real(ring) / Real(3);
        const Real st = two_pi() / Real(m);
        const Real offset = st / Real(2);
        for (int j = 0; j < m; ++j) in.push_back(s.center + Complex::polar(r, st * Real(j) + offset));
    }
}

void sample_rect(const RectShape& s, int n, std::vector<Complex>& bd, std::vector<Complex>& in) {
    const Real w = s.hi.re - s.lo.re;
    const Real h = s.hi.im - s.lo.im;
    const Complex c1 = s.lo;
    const Complex c2(s.hi.re, s.lo.im);
    const Complex c3 = s.hi;
    const Complex c4(s.lo.re, s.hi.im);
    const double wd = w.to_double(), hd = h.to_double();
    const double per = 2.0 * (wd + hd);
    auto count = [&](double len) { return std::max(1, static_cast<int>(std::lround(n * len / per))); };
    push_edge(bd, c1, c2, count(wd));
    push_edge(bd, c2, c3, count(hd));
    push_edge(bd, c3, c4, count(wd));
    push_edge(bd, c4, c1, count(hd));
    // Interior grid with about n/2 nodes.
    const double spacing = std::sqrt(wd * hd / std::max(1.0, n / 2.0));
    const int nx = std::max(1, static_cast<int>(wd / spacing));
    const int ny = std::max(1, static_cast<int>(hd / spacing));
    for (int i = 1; i < nx; ++i) {
        for (int j = 1; j < ny; ++j) {
            in.emplace_back(s.lo.re + w * Real(i) / Real(nx), s.lo.im + h * Real(j) / Real(ny));
        }
    }
}

void sample_arc(const ArcShape& s, int n, std::vector<Complex>& bd) {
    const int m = std::max(2, n);
    const Real span = s.theta_hi - s.theta_lo;
    for (int j = 0; j < m; ++j) bd.push_back(s.center + Complex::polar(s.radius, s.theta_lo + span * Real(j) / Real(m - 1)));
}

void sample_segment(const SegmentShape& s, int n, std::vector<Complex>& bd) {
    const int m = std::max(2, n);
    push_edge(bd, s.a, s.b, m - 1);
    bd.push_back(s.b);
}

void sample_polyline(const PolylineShape& s, int n, std::vector<Complex>& bd, std::vector<Complex>& in) {
    const auto& v = s.vertices;
    const std::size_t edges = s.closed ? v.size() : v.size() - 1;
    double total = 0.0;
    for (std::size_t i = 0; i < edges; ++i) total += std::abs(to_cd(v[(i + 1) % v.size()]) - to_cd(v[i]));
    for (std::size_t i = 0; i < edges; ++i) {
        const Complex& a = v[i];
        const Complex& b = v[(i + 1) % v.size()];
        const double len = std::abs(to_cd(b) - to_cd(a));
        const int count = std::max(1, static_cast<int>(std::lround(n * len / std::max(total, 1e-300))));
        push_edge(bd, a, b, count);
    }
    if (!s.closed) bd.push_back(v.back());
    if (!(s.closed && s.filled)) return;

    const auto poly = vertices_cd(s);
    double xlo = poly[0].real(), xhi = xlo, ylo = poly[0].imag(), yhi = ylo;
    double area = 0.0;
    for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
        xlo = std::min(xlo, poly[i].real());
        xhi = std::max(xhi, poly[i].real());
        ylo = std::min(ylo, poly[i].imag());
        yhi = std::max(yhi, poly[i].imag());
        area += poly[j].real() * poly[i].imag() - poly[i].real() * poly[j].imag();
    }
    area = std::abs(area) / 2.0;
    const double spacing = std::sqrt(area / std::max(1.0, n / 2.0));
    if (!(spacing > 0.0)) return;
    const Real x0(xlo), y0(ylo), sp(spacing);
    const int nx = static_cast<int>((xhi - xlo) / spacing);
    const int ny = static_cast<int>((yhi - ylo) / spacing);
    for (int i = 1; i <= nx; ++i) {
        for (int j = 1; j <= ny; ++j) {
            const cd z(xlo + i * spacing, ylo + j * spacing);
            if (!point_in_polygon(z, poly)) continue;
            // Keep interior samples off the boundary itself.
            double dmin = std::numeric_limits<double>::infinity();
            for (std::size_t a = 0, b = poly.size() - 1; a < poly.size(); b = a++)
                dmin = std::min(dmin, seg_distance(z, poly[b], poly[a]));
            if (dmin < 0.25 * spacing) continue;
            in.emplace_back(x0 + sp * Real(i), y0 + sp * Real(j));
        }
    }
}

void validate_shape(const Shape& s) {
    std::visit(
        [](const auto& sh) {
            using T = std::decay_t<decltype(sh)>;
            if constexpr (std::is_same_v<T, DiscShape>) {
                if (!(sh.radius.sign() > 0)) throw PreconditionError("disc radius must be positive");
            } else if constexpr (std::is_same_v<T, RectShape>) {
                if (!(sh.lo.re < sh.hi.re) || !(sh.lo.im < sh.hi.im))
                    throw PreconditionError("rectangle needs lo < hi in both coordinates");
            } else if constexpr (std::is_same_v<T, ArcShape>) {
                if (!(sh.radius.sign() > 0)) throw PreconditionError("arc radius must be positive");
                if (!(sh.theta_lo < sh.theta_hi)) throw PreconditionError("arc needs theta_lo < theta_hi");
            } else if constexpr (std::is_same_v<T, PolylineShape>) {
                if (sh.vertices.size() < 2) throw PreconditionError("polyline needs at least two vertices");
                if (sh.filled && (!sh.closed || sh.vertices.size() < 3))
                    throw PreconditionError("filled polyline must be closed with at least three vertices");
            }
        },
        s);
}

}  // namespace

const char* to_string(ShapeTag tag) {
    switch (tag) {
        case ShapeTag::disc: return "disc";
        case ShapeTag::rectangle: return "rectangle";
        case ShapeTag::arc: return "arc";
        case ShapeTag::segment: return "segment";
        case ShapeTag::polyline: return "polyline";
        case ShapeTag::union_: return "union";
    }
    return "?";
}

ShapeTag shape_tag_from_string(const std::string& s) {
    if (s == "disc") return ShapeTag::disc;
    if (s == "rectangle") return ShapeTag::rectangle;
    if (s == "arc") return ShapeTag::arc;
    if (s == "segment") return ShapeTag::segment;
    if (s == "polyline") return ShapeTag::polyline;
    if (s == "union") return ShapeTag::union_;
    throw PreconditionError("unknown shape tag '" + s + "'");
}

ShapeTag tag_of(const Shape& s) {
    return std::visit(
        [](const auto& sh) {
            using T = std::decay_t<decltype(sh)>;
            if constexpr (std::is_same_v<T, DiscShape>) return ShapeTag::disc;
            else if constexpr (std::is_same_v<T, RectShape>) return ShapeTag::rectangle;
            else if constexpr (std::is_same_v<T, ArcShape>) return ShapeTag::arc;
            else if constexpr (std::is_same_v<T, SegmentShape>) return ShapeTag::segment;
            else return ShapeTag::polyline;
        },
        s);
}

double shape_distance(const Shape& s, cd z) {
    return std::visit(
        [&](const auto& sh) -> double {
            using T = std::decay_t<decltype(sh)>;
            if constexpr (std::is_same_v<T, DiscShape>) {
                return std::max(0.0, std::abs(z - to_cd(sh.center)) - sh.radius.to_double());
            } else if constexpr (std::is_same_v<T, RectShape>) {
                const cd lo = to_cd(sh.lo), hi = to_cd(sh.hi);
                const double dx = std::max({lo.real() - z.real(), 0.0, z.real() - hi.real()});
                const double dy = std::max({lo.imag() - z.imag(), 0.0, z.imag() - hi.imag()});
                return std::hypot(dx, dy);
            } else if constexpr (std::is_same_v<T, ArcShape>) {
                const cd c = to_cd(sh.center);
                const double r = sh.radius.to_double();
                const double lo = sh.theta_lo.to_double(), hi = sh.theta_hi.to_double();
                const cd d = z - c;
                if (std::abs(d) > 0.0) {
                    double th = std::arg(d);
                    // Bring th into [lo, lo + 2 pi).
                    th = lo + std::fmod(std::fmod(th - lo, 2.0 * std::numbers::pi) + 2.0 * std::numbers::pi,
                                        2.0 * std::numbers::pi);
                    if (th <= hi) return std::abs(std::abs(d) - r);
                }
                const cd e1 = c + std::polar(r, lo), e2 = c + std::polar(r, hi);
                return std::min(std::abs(z - e1), std::abs(z - e2));
            } else if constexpr (std::is_same_v<T, SegmentShape>) {
                return seg_distance(z, to_cd(sh.a), to_cd(sh.b));
            } else {
                const auto v = vertices_cd(sh);
                if (sh.filled && point_in_polygon(z, v)) return 0.0;
                double d = std::numeric_limits<double>::infinity();
                const std::size_t edges = sh.closed ? v.size() : v.size() - 1;
                for (std::size_t i = 0; i < edges; ++i) d = std::min(d, seg_distance(z, v[i], v[(i + 1) % v.size()]));
                return d;
            }
        },
        s);
}

CompactSet CompactSet::from_shapes(std::string id, std::vector<Shape> shapes, int density) {
    if (shapes.empty()) throw PreconditionError("compact set needs at least one shape");
    if (density < 2) throw PreconditionError("compact set density must be at least 2");
    for (const auto& s : shapes) validate_shape(s);
    CompactSet k;
    k.id_ = std::move(id);
    k.tag_ = shapes.size() == 1 ? tag_of(shapes[0]) : ShapeTag::union_;
    k.shapes_ = std::move(shapes);
    k.density_ = density;
    k.generate();
    return k;
}

CompactSet CompactSet::disc(std::string id, Complex center, Real radius, int density) {
    return from_shapes(std::move(id), {DiscShape{std::move(center), std::move(radius)}}, density);
}

CompactSet CompactSet::rectangle(std::string id, Complex lo, Complex hi, int density) {
    return from_shapes(std::move(id), {RectShape{std::move(lo), std::move(hi)}}, density);
}

CompactSet CompactSet::arc(std::string id, Complex center, Real radius, Real theta_lo, Real theta_hi, int density) {
    return from_shapes(std::move(id),
                       {ArcShape{std::move(center), std::move(radius), std::move(theta_lo), std::move(theta_hi)}},
                       density);
}

CompactSet CompactSet::segment(std::string id, Complex a, Complex b, int density) {
    return from_shapes(std::move(id), {SegmentShape{std::move(a), std::move(b)}}, density);
}

CompactSet CompactSet::polyline(std::string id, std::vector<Complex> vertices, bool closed, bool filled,
                                int density) {
    return from_shapes(std::move(id), {PolylineShape{std::move(vertices), closed, filled}}, density);
}

CompactSet CompactSet::unite(std::string id, const std::vector<CompactSet>& parts) {
    if (parts.empty()) throw PreconditionError("union needs at least one part");
    std::vector<Shape> shapes;
    int density = 2;
    for (const auto& p : parts) {
        shapes.insert(shapes.end(), p.shapes_.begin(), p.shapes_.end());
        density = std::max(density, p.density_);
    }
    CompactSet k = from_shapes(std::move(id), std::move(shapes), density);
    k.tag_ = ShapeTag::union_;
    return k;
}

void CompactSet::generate() {
    boundary_.clear();
    interior_.clear();
    for (const auto& s : shapes_) {
        std::visit(
            [&](const auto& sh) {
                using T = std::decay_t<decltype(sh)>;
                if constexpr (std::is_same_v<T, DiscShape>) sample_disc(sh, density_, boundary_, interior_);
                else if constexpr (std::is_same_v<T, RectShape>) sample_rect(sh, density_, boundary_, interior_);
                else if constexpr (std::is_same_v<T, ArcShape>) sample_arc(sh, density_, boundary_);
                else if constexpr (std::is_same_v<T, SegmentShape>) sample_segment(sh, density_, boundary_);
                else sample_polyline(sh, density_, boundary_, interior_);
            },
            s);
    }
    d_max_ = Real(0);
    for (const auto* v : {&boundary_, &interior_}) {
        for (const auto& z : *v) {
            Real m = abs(z);
            if (m > d_max_) d_max_ = std::move(m);
        }
    }
}

std::vector<Complex> CompactSet::all_samples() const {
    std::vector<Complex> out = boundary_;
    out.insert(out.end(), interior_.begin(), interior_.end());
    return out;
}

CompactSet CompactSet::resampled(double factor) const {
    if (!(factor > 0.0)) throw PreconditionError("resampling factor must be positive");
    return with_density(std::max(2, static_cast<int>(std::lround(density_ * factor))));
}

CompactSet CompactSet::with_density(int density) const {
    CompactSet k = from_shapes(id_, shapes_, density);
    k.tag_ = tag_;
    return k;
}

double CompactSet::distance(cd z) const {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& s : shapes_) d = std::min(d, shape_distance(s, z));
    return d;
}

SupEstimate sup_with_densification(const CompactSet& set, const std::function<Real(const Complex&)>& g) {
    auto sup = [&](const CompactSet& k) {
        Real best(0);
        for (const auto* v : {&k.boundary_samples(), &k.interior_samples()}) {
            for (const auto& z : *v) {
                Real x = g(z);
                if (x > best) best = std::move(x);
            }
        }
        return best;
    };
    SupEstimate out;
    out.coarse_value = sup(set);
    const CompactSet fine = set.resampled(2.0);
    out.value = max(sup(fine), out.coarse_value);
    out.samples = fine.sample_count();
    out.stable = abs(out.value - out.coarse_value) <= abs(out.value) * Real(0.01);
    return out;
}

}  // namespace utaylor

#pragma once

#include "utaylor/complex.hpp"

#include <complex>
#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace utaylor {

using cd = std::complex<double>;

enum class ShapeTag { disc, rectangle, arc, segment, polyline, union_ };

const char* to_string(ShapeTag tag);
ShapeTag shape_tag_from_string(const std::string& s);

struct DiscShape {
    Complex center;
    Real radius;
};

// Axis-parallel closed rectangle [lo.re, hi.re] x [lo.im, hi.im].
struct RectShape {
    Complex lo;
    Complex hi;
};

// {center + radius e^{i theta} : theta in [theta_lo, theta_hi]}
struct ArcShape {
    Complex center;
    Real radius;
    Real theta_lo;
    Real theta_hi;
};

struct SegmentShape {
    Complex a;
    Complex b;
};

// A closed polyline with filled = true is the polygon it bounds.
struct PolylineShape {
    std::vector<Complex> vertices;
    bool closed = false;
    bool filled = false;
};

using Shape = std::variant<DiscShape, RectShape, ArcShape, SegmentShape, PolylineShape>;

ShapeTag tag_of(const Shape& s);
// Euclidean distance from z to the shape (0 inside filled shapes).
double shape_distance(const Shape& s, cd z);

/// Discretized compact set: exact shape parameters plus the samples generated
/// from them. `density` is the number of boundary samples per part.
class CompactSet {
public:
    static CompactSet disc(std::string id, Complex center, Real radius, int density = 256);
    static CompactSet rectangle(std::string id, Complex lo, Complex hi, int density = 256);
    static CompactSet arc(std::string id, Complex center, Real radius, Real theta_lo, Real theta_hi,
                          int density = 256);
    static CompactSet segment(std::string id, Complex a, Complex b, int density = 256);
    static CompactSet polyline(std::string id, std::vector<Complex> vertices, bool closed, bool filled,
                               int density = 256);
    static CompactSet unite(std::string id, const std::vector<CompactSet>& parts);
    // Builds from raw parts; a single part keeps its own tag.
    static CompactSet from_shapes(std::string id, std::vector<Shape> shapes, int density);

    const std::string& id() const noexcept { return id_; }
    ShapeTag shape_tag() const noexcept { return tag_; }
    const std::vector<Shape>& shapes() const noexcept { return shapes_; }
    int density() const noexcept { return density_; }
    const std::vector<Complex>& boundary_samples() const noexcept { return boundary_; }
    const std::vector<Complex>& interior_samples() const noexcept { return interior_; }
    std::vector<Complex> all_samples() const;
    std::size_t sample_count() const noexcept { return boundary_.size() + interior_.size(); }
    const Real& d_max() const noexcept { return d_max_; }

    // Same shapes regenerated with `factor` times the sample density.
    CompactSet resampled(double factor) const;
    // Same shapes regenerated with `density` boundary samples per part.
    CompactSet with_density(int density) const;

    double distance(cd z) const;

private:
    CompactSet() = default;
    void generate();

    std::string id_;
    ShapeTag tag_ = ShapeTag::disc;
    std::vector<Shape> shapes_;
    int density_ = 256;
    std::vector<Complex> boundary_;
    std::vector<Complex> interior_;
    Real d_max_;
};

// Sup of g over the set's samples, with one densification round.
struct SupEstimate {
    Real value;
    Real coarse_value;
    std::size_t samples = 0;
    bool stable = false;  // relative change < 1% after doubling
};
SupEstimate sup_with_densification(const CompactSet& set, const std::function<Real(const Complex&)>& g);

/// Stolz-type region {z : |z - zeta| < alpha (1 - |z|) < alpha t}.
struct ApproachRegion {
    Complex zeta;
    Real alpha;
    Real t;

    ApproachRegion(Complex zeta, Real alpha, Real t);
};

bool region_membership(const ApproachRegion& r, const Complex& z);

// Points with 1 - |z| = t 2^{-m} (m = 1..depth_levels), per_level in each
// stratum, spread symmetrically about the radius through zeta. Stratum m
// occupies entries [(m-1) per_level, m per_level).
std::vector<Complex> region_samples(const ApproachRegion& r, int depth_levels, int per_level);

enum class DomainKind { unit_disc, strip, tangent_disc, disc, psi_region, custom };

/// Planar domain exposed through an inside predicate, a boundary distance and
/// the nearest boundary point (double precision; used by walk-on-spheres).
struct DomainDesc {
    DomainKind kind = DomainKind::unit_disc;
    std::function<bool(cd)> inside;
    std::function<double(cd)> distance;
    std::function<cd(cd)> nearest_boundary;
    // Characteristic size, used to scale stopping shells.
    double scale = 1.0;
    // Bounding box used for validation grids.
    cd box_lo{-1.0, -1.0};
    cd box_hi{1.0, 1.0};

    static DomainDesc unit_disc();
    // {-1 < Re z < 1}, box truncated to |Im z| <= 4 for validation only.
    static DomainDesc strip();
    static DomainDesc open_disc(cd center, double radius);
    // {P(., zeta) > c}
    static DomainDesc tangent_disc(cd zeta, double c);
    // {z in D : Re z > 1 - psi(|Im z|)}; boundary distance from a dense
    // polyline of the curve.
    static DomainDesc psi_region(std::function<double(double)> psi, int curve_samples = 4000);
    static DomainDesc custom(std::function<bool(cd)> inside, std::function<double(cd)> distance,
                             std::function<cd(cd)> nearest, cd box_lo, cd box_hi);
};

// Checks (distance > 0) <=> inside on a grid_n x grid_n grid of the box;
// returns the number of disagreeing points.
int domain_consistency_violations(const DomainDesc& d, int grid_n);

enum class ComplementVerdict { pass, fail, inconclusive };
const char* to_string(ComplementVerdict v);

struct BoxRegion {
    cd lo;
    cd hi;
};

// Default box: square of side 4 max(1, d_max) centred at 0.
BoxRegion default_bounding_box(const std::vector<CompactSet>& sets);

ComplementVerdict connected_complement_check(const std::vector<CompactSet>& sets, const BoxRegion& box,
                                             int grid_n);

struct TangentDisc {
    Complex center;
    Real radius;
};

// The disc {z : P(z, zeta) > c}.
TangentDisc tangent_disc(const Complex& zeta, const Real& c);

// |z| = 1 up to a relative tolerance of 2^{-(precision - 8)}.
bool is_unimodular(const Complex& z);

}  // namespace utaylor

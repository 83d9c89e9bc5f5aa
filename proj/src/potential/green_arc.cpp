#include "utaylor/error.hpp"
#include "utaylor/potential.hpp"

#include <cmath>
#include <numbers>

namespace utaylor {

ArcOnCircle::ArcOnCircle(double lo, double hi) : theta_lo(lo), theta_hi(hi) {
    if (!(std::isfinite(lo) && std::isfinite(hi))) throw PreconditionError("arc angles must be finite");
    if (!(hi - lo > 0.0 && hi - lo < 2.0 * std::numbers::pi)) {
        throw PreconditionError("arc must be a proper closed subarc (0 < theta_hi - theta_lo < 2 pi)");
    }
}

double ArcOnCircle::distance(cd z) const {
    return shape_distance(ArcShape{Complex(0), Real(1), Real(theta_lo), Real(theta_hi)}, z);
}

double green_arc_complement(cd z, const ArcOnCircle& arc) {
    if (!(std::isfinite(z.real()) && std::isfinite(z.imag()))) throw DomainError("green_arc_complement: z not finite");
    if (arc.distance(z) <= kGreenMapTolerance) return 0.0;

    // Rotate so the arc is {e^{i theta} : |theta| <= beta}.
    const double beta = arc.half_angle();
    const cd zr = z * std::polar(1.0, -arc.mid_angle());
    const double t = std::tan(0.5 * beta);
    const cd i(0.0, 1.0);

    // Image of infinity after the Moebius map and the inverse Joukowski map.
    const cd a(0.0, -(1.0 + std::sqrt(1.0 + t * t)) / t);
    const cd b_conj = std::conj(1.0 / a);
    const double log_a = std::log(std::abs(a));

    const cd one_plus = 1.0 + zr;
    if (std::abs(one_plus) < 1e-150) return log_a;
    // T maps the arc onto [-1, 1]; T - T(infinity) is formed directly.
    const cd T = i * (1.0 - zr) / (one_plus * t);
    const cd dT = 2.0 * i / (t * one_plus);

    const cd s = std::sqrt(T - 1.0) * std::sqrt(T + 1.0);
    cd u = T + s;
    double mu = std::abs(u);
    if (mu < 1.0) {
        u = T - s;
        mu = std::abs(u);
    }
    if (std::abs(mu - 1.0) < 1e-30) throw PrecisionError("green_arc_complement: branch unresolved near the arc");

    // u - a from u + 1/u = 2T, avoiding the cancellation near the pole.
    const double u_minus_a = 2.0 * std::abs(dT) / std::abs(1.0 - 1.0 / (u * a));
    return log_a + std::log(std::abs(u - b_conj)) - std::log(u_minus_a);
}

double psi_j_barrier(cd z, int j, const ArcOnCircle& arc) {
    if (j < 2) throw PreconditionError("psi_j needs j >= 2");
    const double m = std::abs(z);
    if (!(m < 1.0)) throw DomainError("psi_j needs |z| < 1");
    if (m < 1.0 - 1.0 / j) return -0.5;
    return green_arc_complement(z, arc) / std::log(1.0 / m);
}

}  // namespace utaylor

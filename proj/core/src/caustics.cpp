#include "apollonius/caustics.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

#include "apollonius/normals2d.hpp"
#include "apollonius/roots.hpp"
#include "frame.hpp"

namespace apollonius {

namespace {

struct ZeroMask {
    bool m[3];
    int zeros() const { return (m[0] ? 1 : 0) + (m[1] ? 1 : 0) + (m[2] ? 1 : 0); }
};

ZeroMask zero_mask(const Ellipsoid3& e, Point3 A, const Tolerances& tol) {
    return {{std::abs(A.x) <= tol.eps_deg * e.a, std::abs(A.y) <= tol.eps_deg * e.b,
             std::abs(A.z) <= tol.eps_deg * e.c}};
}

double axis_of(const Ellipsoid3& e, int i) {
    return i == 0 ? e.a : (i == 1 ? e.b : e.c);
}

double coord_of(Point3 p, int i) { return i == 0 ? p.x : (i == 1 ? p.y : p.z); }

// caustic membership of a point inside a coordinate plane: the quartic of
// the plane section plus the crossing of the other sheet, detected by the
// collapse of the out-of-plane foot pair
std::optional<CausticHit> plane_hit(const Ellipsoid3& e, Point3 A, int zero,
                                    const Tolerances& tol) {
    const int u = zero == 0 ? 1 : 0;
    const int v = zero == 2 ? 1 : 2;
    const double p_axis = axis_of(e, u), q_axis = axis_of(e, v);
    const double z_axis = axis_of(e, zero);
    const double a2 = e.a * e.a;
    const double U = coord_of(A, u), V = coord_of(A, v);

    const Poly q = detail::normal_quartic_normalized(
        p_axis * p_axis / a2, q_axis * q_axis / a2, U / e.a, V / e.a);
    const auto events = detail::tangency_events(q, tol);

    double best_sep = std::numeric_limits<double>::infinity();
    double best_t = 0.0;
    for (const auto& ev : events) {
        if (ev.separation < best_sep) {
            best_sep = ev.separation;
            best_t = ev.t_hat * a2;
        }
    }

    const double ubar = p_axis * p_axis * U / (p_axis * p_axis - z_axis * z_axis);
    const double vbar = q_axis * q_axis * V / (q_axis * q_axis - z_axis * z_axis);
    const double s = 1.0 - (ubar / p_axis) * (ubar / p_axis) -
                     (vbar / q_axis) * (vbar / q_axis);
    if (std::abs(s) < best_sep) {
        best_sep = std::abs(s);
        best_t = -z_axis * z_axis;
    }

    if (best_sep > tol.eps_mult) return std::nullopt;
    CausticHit hit;
    hit.t_double = best_t;
    hit.margin = best_sep;
    hit.sheet = detail::sheet_for_double_root(e, A, best_t, tol);
    return hit;
}

// on an axis the sheets reach the axis in one point each, the sharpest
// vertex of the plane-section evolutes through that axis
std::optional<CausticHit> axis_hit(const Ellipsoid3& e, Point3 A, int axis,
                                   const Tolerances& tol) {
    const double aw = axis_of(e, axis);
    const double W = std::abs(coord_of(A, axis));
    const double a2 = e.a * e.a;

    const int others[2] = {axis == 0 ? 1 : 0, axis == 2 ? 1 : 2};
    std::optional<CausticHit> best;
    for (int freed : others) {
        const double af = axis_of(e, freed);
        const double vertex = std::abs(af * af - aw * aw) / aw;
        const double margin = std::abs(W - vertex) / a2;
        if (margin <= tol.eps_mult && (!best || margin < best->margin)) {
            CausticHit hit;
            hit.margin = margin;
            hit.t_double = -af * af;
            hit.sheet = af == std::max(axis_of(e, others[0]), axis_of(e, others[1]))
                            ? Sheet::MaxRadius
                            : Sheet::MinRadius;
            best = hit;
        }
    }
    return best;
}

}  // namespace

CurvatureData curvature(const Ellipsoid3& e, Point3 P, const Tolerances& tol) {
    tol.validate();
    if (std::abs(quadric_residual(e, P)) > tol.eps_on) {
        throw Error(Errc::OffSurface, "curvature needs a point on the surface");
    }
    const double a2 = e.a * e.a, b2 = e.b * e.b, c2 = e.c * e.c;
    const double Q = P.x * P.x / (a2 * a2) + P.y * P.y / (b2 * b2) +
                     P.z * P.z / (c2 * c2);
    const double abc = e.a * e.b * e.c;

    CurvatureData cd;
    cd.gaussian = 1.0 / (abc * Q * abc * Q);
    const double num = a2 + b2 + c2 - dot(P, P);
    assert(num > 0.0);
    cd.mean = num / (2.0 * abc * abc * Q * std::sqrt(Q));
    const double disc = std::max(0.0, cd.mean * cd.mean - cd.gaussian);
    const double root = std::sqrt(disc);
    cd.k_min = cd.mean - root;
    cd.k_max = cd.mean + root;
    cd.r_max = 1.0 / cd.k_min;
    cd.r_min = 1.0 / cd.k_max;
    const double qn = std::sqrt(Q);
    cd.unit_normal = {P.x / (a2 * qn), P.y / (b2 * qn), P.z / (c2 * qn)};
    return cd;
}

std::array<CausticPoint, 2> curvature_centers(const Ellipsoid3& e, Point3 P,
                                              const Tolerances& tol) {
    const CurvatureData cd = curvature(e, P, tol);
    const double gn = std::sqrt(P.x * P.x / (e.a * e.a * e.a * e.a) +
                                P.y * P.y / (e.b * e.b * e.b * e.b) +
                                P.z * P.z / (e.c * e.c * e.c * e.c));
    std::array<CausticPoint, 2> centers;
    centers[0].sheet = Sheet::MaxRadius;
    centers[0].source = P;
    centers[0].xi = -cd.r_max / gn;
    centers[0].point = P - cd.r_max * cd.unit_normal;
    centers[1].sheet = Sheet::MinRadius;
    centers[1].source = P;
    centers[1].xi = -cd.r_min / gn;
    centers[1].point = P - cd.r_min * cd.unit_normal;
    return centers;
}

std::optional<CausticHit> on_caustic(const Ellipsoid3& e, Point3 A,
                                     const Tolerances& tol) {
    tol.validate();
    if (e.shape_class != ShapeClass::Triaxial) {
        throw Error(Errc::NotTriaxial,
                    "membership test needs a genuinely two-sheeted caustic");
    }
    if (!(std::isfinite(A.x) && std::isfinite(A.y) && std::isfinite(A.z))) {
        throw Error(Errc::OutOfRange, "query point must be finite");
    }

    const ZeroMask zm = zero_mask(e, A, tol);
    switch (zm.zeros()) {
        case 0: break;
        case 1: return plane_hit(e, A, zm.m[0] ? 0 : (zm.m[1] ? 1 : 2), tol);
        case 2: return axis_hit(e, A, zm.m[0] ? (zm.m[1] ? 2 : 1) : 0, tol);
        default: return std::nullopt;  // the center is interior to both sheets
    }

    const detail::Frame f = detail::make_frame(e, A);
    const Poly p = detail::normal_sextic_normalized(f);
    const auto events = detail::membership_events(f, p, tol);
    double best_sep = std::numeric_limits<double>::infinity();
    double best_t = 0.0;
    for (const auto& ev : events) {
        if (ev.separation < best_sep) {
            best_sep = ev.separation;
            best_t = ev.t_hat * e.a * e.a;
        }
    }
    if (best_sep > tol.eps_mult) return std::nullopt;
    CausticHit hit;
    hit.t_double = best_t;
    hit.margin = best_sep;
    hit.sheet = detail::sheet_for_double_root(e, A, best_t, tol);
    return hit;
}

std::array<double, 3> caustic_squares(const Ellipsoid3& e, Sheet sheet,
                                      double xi, double eta) {
    if (e.shape_class != ShapeClass::Triaxial) {
        throw Error(Errc::NotTriaxial, "curvilinear chart needs distinct axes");
    }
    const double a2 = e.a * e.a, b2 = e.b * e.b, c2 = e.c * e.c;
    const double alpha = b2 - c2, beta = c2 - a2, gamma = a2 - b2;

    const double slack = 1e-12 * a2;
    const bool xi_max = sheet == Sheet::MaxRadius;
    const double xi_lo = xi_max ? -a2 : -b2, xi_hi = xi_max ? -b2 : -c2;
    const double eta_lo = xi_max ? -b2 : -a2, eta_hi = xi_max ? -c2 : -b2;
    if (xi < xi_lo - slack || xi > xi_hi + slack || eta < eta_lo - slack ||
        eta > eta_hi + slack) {
        throw Error(Errc::OutOfCoordinateRange,
                    "curvilinear parameters outside the sheet intervals");
    }

    auto cube = [](double w) { return w * w * w; };
    return {-(cube(a2 + xi) * (a2 + eta)) / (a2 * beta * gamma),
            -(cube(b2 + xi) * (b2 + eta)) / (b2 * alpha * gamma),
            -(cube(c2 + xi) * (c2 + eta)) / (c2 * alpha * beta)};
}

std::optional<Point3> caustic_point_curvilinear(const Ellipsoid3& e, Sheet sheet,
                                                double xi, double eta,
                                                std::array<int, 3> octant,
                                                const Tolerances& tol) {
    tol.validate();
    const std::array<double, 3> sq = caustic_squares(e, sheet, xi, eta);
    Point3 p;
    double* c[3] = {&p.x, &p.y, &p.z};
    for (int i = 0; i < 3; ++i) {
        if (sq[i] < -tol.eps_on * e.a * e.a) return std::nullopt;
        const double sign = octant[i] < 0 ? -1.0 : 1.0;
        *c[i] = sign * std::sqrt(std::max(0.0, sq[i]));
    }
    return p;
}

double caustic_eta(const Ellipsoid3& e, double xi) {
    if (e.shape_class != ShapeClass::Triaxial) {
        throw Error(Errc::NotTriaxial, "curvilinear chart needs distinct axes");
    }
    const double a2 = e.a * e.a, b2 = e.b * e.b, c2 = e.c * e.c;
    const double alpha = b2 - c2, beta = c2 - a2, gamma = a2 - b2;
    const double ax2[3] = {a2, b2, c2};
    const double pp[3] = {beta * gamma, alpha * gamma, alpha * beta};
    auto cube = [](double w) { return w * w * w; };
    double s1 = 0.0, s2 = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double t = cube(ax2[i] + xi) / pp[i];
        s1 += t / ax2[i];
        s2 += t / (ax2[i] * ax2[i]);
    }
    if (s2 == 0.0) {
        throw Error(Errc::PoleParameter, "no surface return for this xi");
    }
    return -(1.0 + s1) / s2;
}

double revolution_caustic_residual(const Ellipsoid3& e, Point3 C,
                                   const Tolerances& tol) {
    tol.validate();
    const bool prolate = e.shape_class == ShapeClass::ProlateLike;
    const bool oblate = e.shape_class == ShapeClass::OblateLike;
    if (!prolate && !oblate) {
        throw Error(Errc::NotRevolution, "shape has no rotated-evolute caustic");
    }
    const double minor = prolate ? e.b : e.c;
    const double axial = prolate ? C.x : C.z;
    const double radial = prolate ? std::hypot(C.y, C.z) : std::hypot(C.x, C.y);
    const Ellipse2 meridian{e.a, minor, false};
    const Point2 m = prolate ? Point2{axial, radial} : Point2{radial, axial};
    return astroida_residual(meridian, m);
}

namespace detail {

Sheet sheet_for_double_root(const Ellipsoid3& e, Point3 A, double t_star,
                            const Tolerances& tol) {
    const double ax2[3] = {e.a * e.a, e.b * e.b, e.c * e.c};
    const double co[3] = {A.x, A.y, A.z};
    double b[3];
    for (int i = 0; i < 3; ++i) {
        // a zero coordinate of A pins the collided foot coordinate to zero
        // even when t_star sits on the matching pole; a double root on the
        // pole itself is the collapsed mirror pair, whose freed coordinate
        // vanishes at the collision
        if (std::abs(co[i]) <= tol.eps_deg * e.a ||
            std::abs(ax2[i] + t_star) <= 1e-4 * ax2[i]) {
            b[i] = 0.0;
        } else {
            b[i] = ax2[i] * co[i] / (ax2[i] + t_star);
        }
    }
    Point3 B{b[0], b[1], b[2]};
    const double q = B.x * B.x / ax2[0] + B.y * B.y / ax2[1] + B.z * B.z / ax2[2];
    if (!(q > 0.0) || !std::isfinite(q)) return Sheet::MaxRadius;
    B = (1.0 / std::sqrt(q)) * B;

    Tolerances loose = tol;
    loose.eps_on = 1.0;  // B was projected, the surface check cannot fail
    const CurvatureData cd = curvature(e, B, loose);
    const double gn = std::sqrt(B.x * B.x / (ax2[0] * ax2[0]) +
                                B.y * B.y / (ax2[1] * ax2[1]) +
                                B.z * B.z / (ax2[2] * ax2[2]));
    const double t_max_sheet = -cd.r_max / gn;
    const double t_min_sheet = -cd.r_min / gn;
    return std::abs(t_star - t_max_sheet) <= std::abs(t_star - t_min_sheet)
               ? Sheet::MaxRadius
               : Sheet::MinRadius;
}

}  // namespace detail

}  // namespace apollonius

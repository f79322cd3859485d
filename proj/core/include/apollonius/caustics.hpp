#pragma once

#include <array>
#include <optional>

#include "apollonius/types.hpp"

namespace apollonius {

// Principal curvature data at a surface point, oriented so that curvatures
// are positive and the centers lie inside the ellipsoid.
struct CurvatureData {
    double gaussian = 0.0;
    double mean = 0.0;
    double k_min = 0.0;
    double k_max = 0.0;
    double r_max = 0.0;  // 1 / k_min
    double r_min = 0.0;  // 1 / k_max
    Vec3 unit_normal;    // outward
};

CurvatureData curvature(const Ellipsoid3& e, Point3 P, const Tolerances& tol = {});

// Center of principal curvature generated by a surface point.  xi is the
// confocal parameter of the center on the normal line through the source,
// point = source + xi * grad/2.
struct CausticPoint {
    Point3 point;
    Sheet sheet = Sheet::MaxRadius;
    Point3 source;
    double xi = 0.0;
};

// Both centers of a surface point, MaxRadius first.
std::array<CausticPoint, 2> curvature_centers(const Ellipsoid3& e, Point3 P,
                                              const Tolerances& tol = {});

struct CausticHit {
    Sheet sheet = Sheet::MaxRadius;
    double t_double = 0.0;  // parameter where two normal feet collide
    double margin = 0.0;    // collision margin, units of a^2
};

// Membership test against the two-sheeted surface swept by the curvature
// centers.  Engaged when a pair of normal feet of A collides within
// tol.eps_mult; the hit carries which sheet absorbed the collision.
std::optional<CausticHit> on_caustic(const Ellipsoid3& e, Point3 A,
                                     const Tolerances& tol = {});

// Squared coordinates of the caustic point with curvilinear parameters
// (xi, eta).  xi ranges over [-a^2, -b^2] on the MaxRadius sheet and
// [-b^2, -c^2] on MinRadius; eta over the other interval.
std::array<double, 3> caustic_squares(const Ellipsoid3& e, Sheet sheet,
                                      double xi, double eta);

// The caustic point with the requested coordinate signs.  Squared
// coordinates within -eps_on of zero are clamped; genuinely negative ones
// make the point absent.
std::optional<Point3> caustic_point_curvilinear(const Ellipsoid3& e, Sheet sheet,
                                                double xi, double eta,
                                                std::array<int, 3> octant = {1, 1, 1},
                                                const Tolerances& tol = {});

// For a fixed xi, the eta at which the caustic point returns to the
// ellipsoid surface.  Tracing it over the xi interval of a sheet yields the
// curve where that sheet pierces the surface.
double caustic_eta(const Ellipsoid3& e, double xi);

// For a surface of revolution the rotated evolute of the meridian ellipse
// carries one entire caustic sheet (the other collapses onto the symmetry
// axis).  Returns the astroida residual of the meridian projection of C.
double revolution_caustic_residual(const Ellipsoid3& e, Point3 C,
                                   const Tolerances& tol = {});

}  // namespace apollonius

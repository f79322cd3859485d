#pragma once

#include <vector>

#include "apollonius/roots.hpp"
#include "apollonius/types.hpp"

// Internal helpers shared by the 3d normal solver and the caustic module.
// Everything here works in the frame normalized by the major axis, where the
// confocal parameter is t_hat = t / a^2.

namespace apollonius::detail {

struct Frame {
    double a = 1.0;  // major axis of the original ellipsoid
    double b2 = 1.0, c2 = 1.0;
    Point3 A;  // normalized query point
};

Frame make_frame(const Ellipsoid3& e, Point3 A);

// Degree-6 polynomial in t_hat whose roots are normal parameters; assembled
// with double-double convolution so that coefficient rounding cannot split a
// double root beyond the clustering tolerance.
Poly normal_sextic_normalized(const Frame& f);

// Quartic analog for a plane section: ellipse with normalized squared axes
// (p2, q2), normalized in-plane point (U, V).
Poly normal_quartic_normalized(double p2, double q2, double U, double V);

// Unexpanded residual sum_i (axis_i A_i / (axis_i^2 + t_hat))^2 - 1 in the
// normalized frame.
double confocal_residual(const Frame& f, double t_hat);

struct TangencyEvent {
    double t_hat;
    double separation;  // estimated distance of the colliding root pair
    int crit_multiplicity = 1;  // multiplicity of the critical point itself
};

// Near-collision events read off the critical points of p through the local
// quadratic model p ~ p(s) + p''(s)/2 (t-s)^2.
std::vector<TangencyEvent> tangency_events(const Poly& p, const Tolerances& tol);

// Events re-scored for caustic membership: pole collisions caused by a
// near-zero coordinate of the query point are replaced by the distance of
// the freed mirror pair from its real/complex transition.
std::vector<TangencyEvent> membership_events(const Frame& f, const Poly& p,
                                             const Tolerances& tol);

// Min over real-root gaps and event separations; +inf when nothing competes.
double margin_from(const RootSet& rs, const std::vector<TangencyEvent>& events);

// Which caustic sheet a double root at raw parameter t_star belongs to,
// decided by matching t_star against -R_i/|grad| at the collided foot.
// Implemented in caustics.cpp.
Sheet sheet_for_double_root(const Ellipsoid3& e, Point3 A, double t_star,
                            const Tolerances& tol);

}  // namespace apollonius::detail

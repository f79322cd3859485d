#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "apollonius/types.hpp"

namespace apollonius {

enum class SolverPath2 {
    ApolloniusHyperbola,
    AxisDegenerateX0,
    AxisDegenerateY0,
    Center,
    CircleRadial,
};

const char* to_string(SolverPath2 p);

struct Foot2 {
    Point2 point;
    double angle = 0.0;  // ellipse parameter, point = (a cos, b sin)
    int multiplicity = 1;
};

struct NormalFan2 {
    std::vector<Foot2> feet;  // sorted by angle
    Count count;
    SolverPath2 solver_path = SolverPath2::ApolloniusHyperbola;
};

enum class Region2 {
    InsideAstroida,
    OutsideAstroida,
    OnAstroida,
    OnAstroidaVertex,
};

// Feet of all normals dropped from A onto the ellipse.
NormalFan2 normal_feet_2d(const Ellipse2& e, Point2 A, const Tolerances& tol = {});

// A plane ellipse seen from a spatial point: the feet depend only on the
// projection of A into the ellipse plane.
NormalFan2 normal_feet_2d(const Ellipse2& e, Point3 A, const Tolerances& tol = {});

// Evolute of the ellipse, the astroid-like curve separating the plane by
// normal count: ((a^2-b^2)/a cos^3 t, (a^2-b^2)/b sin^3 t).
Point2 astroida_point(const Ellipse2& e, double t);

// cbrt(a^2 x^2) + cbrt(b^2 y^2) - cbrt((a^2-b^2)^2); negative inside
double astroida_residual(const Ellipse2& e, Point2 A);

Region2 astroida_region(const Ellipse2& e, Point2 A, const Tolerances& tol = {});

Count count_normals_2d(const Ellipse2& e, Point2 A, const Tolerances& tol = {});

// The four points where the ellipse crosses its own evolute, present exactly
// when a^2 > 2 b^2.  Normals dropped from these points have a foot at the
// point itself in a borderline tangential configuration.
std::optional<std::array<Point2, 4>> ellipse_evolute_intersections(
    const Ellipse2& e, const Tolerances& tol = {});

// For an interior point with four normal feet, reflect the foot nearest A
// through the center; the classical concyclicity of that reflection with the
// other three feet gives a strong cross-check of the solver.  Returns the
// relative distance of the reflected point from the circle through the other
// three.
double joachimsthal_residual(const Ellipse2& e, Point2 A, const Tolerances& tol = {});

// Center of the osculating circle at a point of the ellipse.
Point2 evolute_center_2d(const Ellipse2& e, Point2 B, const Tolerances& tol = {});

// Tangency points of the two tangent lines from an exterior point.
std::pair<Point2, Point2> tangent_points_2d(const Ellipse2& e, Point2 A,
                                            const Tolerances& tol = {});

}  // namespace apollonius

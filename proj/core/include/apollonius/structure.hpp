#pragma once

#include <array>
#include <optional>
#include <vector>

#include "apollonius/roots.hpp"
#include "apollonius/types.hpp"

namespace apollonius {

// Pairwise gaps between the squared axes.  They add to zero; omega shows up
// as the slope of the nodal-curve denominators.
struct AxisGaps {
    double alpha = 0.0;  // b^2 - c^2
    double beta = 0.0;   // c^2 - a^2
    double gamma = 0.0;  // a^2 - b^2
    double omega = 0.0;  // alpha^2 - beta * gamma
};

AxisGaps axis_gaps(const Ellipsoid3& e);

// Signed margins of the inequalities that steer the classification.  A value
// crossing zero is exactly where the surface topology changes.
struct ClassifyPredicates {
    double a2_minus_2c2 = 0.0;
    double b2_minus_2c2 = 0.0;
    double a2_plus_c2_minus_2b2 = 0.0;
    double a2_minus_2b2 = 0.0;
    double curvature_balance = 0.0;  // 1/a^2 + 1/c^2 - 3/b^2
    double d_value = 0.0;            // 2b^4 + 2c^4 - a^2 b^2 - a^2 c^2 - 2 b^2 c^2
};

enum class CaseLabel { i, ii, iii, iv, v, vi, vii, viii, ix, x, xi, xii };

const char* to_string(CaseLabel label);

struct TopologyCase {
    // 1: caustic interior to the surface, 2: one plane pierced, 3: all three
    int existence_class = 0;
    CaseLabel label = CaseLabel::i;
    ClassifyPredicates predicates;
};

TopologyCase classify(const Ellipsoid3& e);

// The nine coordinate-plane curves: per plane the surface section ellipse
// (1..3), the evolute astroida of that section (4..6) and the focal ellipse
// where the other caustic sheet crosses the plane (7..9).  Planes in order
// z=0, y=0, x=0 within each group.
Point3 section_curve(const Ellipsoid3& e, int which, double t);

// One family of special points: an intersection of two of the nine plane
// curves, closed-form per family.  All four sign combinations are returned;
// squared coordinates are exposed raw so a non-real family (negative square)
// stays diagnosable.
struct FamilyResult {
    int family = 0;
    bool exists = false;
    double condition_value = 0.0;  // margin of the family's inequality
    std::array<double, 3> squared_coords{};
    std::vector<Point3> points;
    // family 8: the two curves meet tangentially; normalized cross product
    // of their tangent directions
    std::optional<double> tangency_parallel_error;
    // sign of the quadric residual: -1 inside the surface, 0 on, +1 outside
    std::optional<int> surface_side;
};

FamilyResult intersection_family(const Ellipsoid3& e, int family,
                                 const Tolerances& tol = {});

// Differences of squared coordinates between the two families sharing a
// coordinate plane.  The y=0 pair (families 2 and 5) keeps one fixed order;
// the x=0 pair (families 3 and 6) swaps exactly with the sign of d_value.
struct OrderPair {
    double du = 0.0;
    double dv = 0.0;
};

struct OrderChecks {
    std::optional<OrderPair> plane_y0;  // x1^2 - x3^2, z1^2 - z3^2
    std::optional<OrderPair> plane_x0;  // y2^2 - y4^2, z2^2 - z4^2
    double curvature_balance = 0.0;
    double d_value = 0.0;
};

OrderChecks family_order_checks(const Ellipsoid3& e, const Tolerances& tol = {});

// p, q, r of the rational identity
//   quadric_residual(nodal_curve(t)) = p(t) q(t)^2 / (a^4 b^4 c^4 (3t-2)^2 r(t));
// roots of p in the admissible range are surface crossings of the nodal
// curve, q's do not change the sign.
struct NodalPolys {
    Poly p;
    Poly q;
    Poly r;
};

NodalPolys nodal_polys(const Ellipsoid3& e);

// Upper end of the nodal-curve parameter range [0, t_max]; strictly below
// the 2/3 pole.
double nodal_t_max(const Ellipsoid3& e);

std::array<double, 3> nodal_curve_squares(const Ellipsoid3& e, double t);

// Point of the curve where the two caustic sheets cross each other.
std::optional<Point3> nodal_curve_point(const Ellipsoid3& e, double t,
                                        std::array<int, 3> octant = {1, 1, 1},
                                        const Tolerances& tol = {});

// Common point of the surface and both caustic sheets, one per octant when
// the conditions hold.
struct TriplePointResult {
    bool exists = false;
    double d_value = 0.0;
    double curvature_balance = 0.0;
    double t0 = 0.0;  // nodal-curve parameter of the point
    Point3 point;     // first octant
};

TriplePointResult triple_point(const Ellipsoid3& e, const Tolerances& tol = {});

// Curve where a caustic sheet pierces the surface, as squared coordinates
// over the rational parameter t.  MinRadius branch: t in [-a^2, -b^2],
// MaxRadius: [-b^2, -c^2]; real only on sub-ranges.
std::array<double, 3> intersection_curve_squares(const Ellipsoid3& e, Sheet branch,
                                                 double t);

std::optional<Point3> intersection_curve_point(const Ellipsoid3& e, Sheet branch,
                                               double t,
                                               std::array<int, 3> octant = {1, 1, 1},
                                               const Tolerances& tol = {});

// Which curves `mesh` and `curve` exports understand.
struct CurveId {
    enum class Kind { Section, Nodal, Intersection };
    Kind kind = Kind::Section;
    int section = 1;                  // 1..9 when kind is Section
    Sheet branch = Sheet::MinRadius;  // when kind is Intersection
};

}  // namespace apollonius

#pragma once

#include <optional>
#include <vector>

#include "apollonius/roots.hpp"
#include "apollonius/types.hpp"

namespace apollonius {

enum class SolverPath3 {
    GenericSextic,
    PlaneSplitX0,
    PlaneSplitY0,
    PlaneSplitZ0,
    AxisSplit,
    Center,
    RevolutionAxisSegment,
    RevolutionMeridian,
    SphereRadial,
};

const char* to_string(SolverPath3 p);

struct Foot3 {
    Point3 point;
    double t = 0.0;  // confocal parameter of the foot, A = B + t * grad/2
    int multiplicity = 1;
};

struct NormalFan3 {
    std::vector<Foot3> feet;  // sorted by t
    Count count;
    SolverPath3 solver_path = SolverPath3::GenericSextic;
    // smallest gap between normal parameters, in units of a^2; feet collide
    // (the point touches a caustic) when this reaches eps_mult
    double discriminant_margin = 0.0;
};

struct Region3 {
    enum class Kind {
        OutsideBoth,
        InsideExactlyOne,
        InsideBoth,
        OnCaustic,
        OnNodalSet,
    };
    Kind kind = Kind::OutsideBoth;
    std::optional<Sheet> sheet;  // InsideExactlyOne and OnCaustic
};

// One branch point of the confocal normal construction: the space curve
// r(t) = (a^2 X/(a^2+t), b^2 Y/(b^2+t), c^2 Z/(c^2+t)) through A and the
// normal feet.
Point3 cubic_hyperbola(const Ellipsoid3& e, Point3 A, double t,
                       const Tolerances& tol = {});

// Asymptote line of the curve at the pole t = -a^2 (which=1), -b^2 (2),
// -c^2 (3); the returned point has the free coordinate equal to t.
Point3 asymptote(const Ellipsoid3& e, Point3 A, int which, double t);

// Degree-6 polynomial in t whose real roots are the normal parameters.
Poly normal_sextic(const Ellipsoid3& e, Point3 A, const Tolerances& tol = {});

// sum_i axis_i^2 A_i^2 / (axis_i^2 + t)^3; vanishes where the confocal
// family is tangent to the curve, i.e. at double roots of the sextic.
double tangency_residual(const Ellipsoid3& e, Point3 A, double t);

NormalFan3 normal_feet_3d(const Ellipsoid3& e, Point3 A, const Tolerances& tol = {});

// Position of A relative to the two caustic sheets, decided by the number
// and collision pattern of real sextic roots.
Region3 region_3d(const Ellipsoid3& e, Point3 A, const Tolerances& tol = {});

}  // namespace apollonius

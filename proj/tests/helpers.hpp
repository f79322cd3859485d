#pragma once

#include <cmath>
#include <cstdlib>

#include "apollonius/structure.hpp"
#include "apollonius/types.hpp"

// Checks shared between the unit tests and the acceptance runner.
namespace apollonius::testing {

inline double rel_err(double got, double want) {
    const double scale = std::max({std::abs(got), std::abs(want), 1.0});
    return std::abs(got - want) / scale;
}

inline double point_dist(Point3 p, Point3 q) { return norm(p - q); }

// Normalized implicit residual of one of the nine coordinate-plane curves,
// evaluated directly from the closed forms so it can police the parametric
// code.  Curves 1..3 are the plane sections, 4..6 their evolutes, 7..9 the
// focal-style ellipses where the complementary caustic sheet meets the plane.
inline double plane_curve_residual(const Ellipsoid3& e, int which, Point3 p) {
    const double A = e.a * e.a;
    const double B = e.b * e.b;
    const double C = e.c * e.c;
    // cbrt(u) + cbrt(v) = cbrt(w) rationalized to (u + v - w)^3 + 27 u v w = 0,
    // which stays well conditioned at the cusps where the cbrt form does not
    const auto astro = [](double u, double v, double sa, double sb, double gap) {
        const double fu = u * u * sa;
        const double fv = v * v * sb;
        const double fw = gap * gap;
        const double s = fu + fv - fw;
        const double scale = fu + fv + fw;
        return (s * s * s + 27.0 * fu * fv * fw) / (scale * scale * scale);
    };
    switch (which) {
        case 1: return p.x * p.x / A + p.y * p.y / B - 1.0 + std::abs(p.z);
        case 2: return p.x * p.x / A + p.z * p.z / C - 1.0 + std::abs(p.y);
        case 3: return p.y * p.y / B + p.z * p.z / C - 1.0 + std::abs(p.x);
        case 4: return astro(p.x, p.y, A, B, A - B) + std::abs(p.z);
        case 5: return astro(p.x, p.z, A, C, A - C) + std::abs(p.y);
        case 6: return astro(p.y, p.z, B, C, B - C) + std::abs(p.x);
        case 7:
            return p.x * p.x * A / ((A - C) * (A - C)) +
                   p.y * p.y * B / ((B - C) * (B - C)) - 1.0 + std::abs(p.z);
        case 8:
            return p.x * p.x * A / ((A - B) * (A - B)) +
                   p.z * p.z * C / ((B - C) * (B - C)) - 1.0 + std::abs(p.y);
        default:
            return p.y * p.y * B / ((A - B) * (A - B)) +
                   p.z * p.z * C / ((A - C) * (A - C)) - 1.0 + std::abs(p.x);
    }
}

// The two plane curves an intersection family lies on.
inline std::array<int, 2> family_curve_pair(int family) {
    switch (family) {
        case 1: return {1, 4};
        case 2: return {2, 5};
        case 3: return {3, 6};
        case 4: return {1, 7};
        case 5: return {2, 8};
        case 6: return {3, 9};
        case 7: return {4, 7};
        case 8: return {5, 8};
        default: return {6, 9};
    }
}

}  // namespace apollonius::testing

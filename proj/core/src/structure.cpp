#include "apollonius/structure.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <string>

namespace apollonius {

namespace {

void require_triaxial(const Ellipsoid3& e) {
    if (e.shape_class != ShapeClass::Triaxial) {
        throw Error(Errc::NotTriaxial, "requires three distinct axes");
    }
}

struct Sq {
    double A;  // a^2
    double B;  // b^2
    double C;  // c^2
};

Sq squares_of(const Ellipsoid3& e) { return {e.a * e.a, e.b * e.b, e.c * e.c}; }

int side_of_surface(const Ellipsoid3& e, Point3 p, const Tolerances& tol) {
    const double res = quadric_residual(e, p);
    if (std::abs(res) <= tol.eps_on) return 0;
    return res > 0.0 ? 1 : -1;
}

// Plane index hosting a family: 0 for z=0 (families 1,4,7), 1 for y=0
// (2,5,8), 2 for x=0 (3,6,9).
int family_plane(int family) { return (family - 1) % 3; }

std::array<double, 3> plane_squares(int plane, double u2, double v2) {
    switch (plane) {
        case 0: return {u2, v2, 0.0};
        case 1: return {u2, 0.0, v2};
        default: return {0.0, u2, v2};
    }
}

Point3 plane_point(int plane, double u, double v) {
    switch (plane) {
        case 0: return {u, v, 0.0};
        case 1: return {u, 0.0, v};
        default: return {0.0, u, v};
    }
}

std::vector<Point3> sign_combinations(int plane, double u, double v) {
    std::vector<Point3> pts;
    for (int su : {1, -1}) {
        if (su < 0 && u == 0.0) continue;
        for (int sv : {1, -1}) {
            if (sv < 0 && v == 0.0) continue;
            pts.push_back(plane_point(plane, su * u, sv * v));
        }
    }
    return pts;
}

// In-plane squared coordinates (u^2, v^2) of one family together with its
// defining inequality margin.  Negative squares mean the family is not real
// for this shape; they are reported as-is.
struct FamilySquares {
    double u2 = 0.0;
    double v2 = 0.0;
    double condition = 0.0;
};

FamilySquares family_squares(const Ellipsoid3& e, int family) {
    const auto [A, B, C] = squares_of(e);
    switch (family) {
        case 1: {
            const double den = (A - B) * std::pow(A + B, 3);
            return {A * A * std::pow(A - 2 * B, 3) / den,
                    B * B * std::pow(2 * A - B, 3) / den, A - 2 * B};
        }
        case 2: {
            const double den = (A - C) * std::pow(A + C, 3);
            return {A * A * std::pow(A - 2 * C, 3) / den,
                    C * C * std::pow(2 * A - C, 3) / den, A - 2 * C};
        }
        case 3: {
            const double den = (B - C) * std::pow(B + C, 3);
            return {B * B * std::pow(B - 2 * C, 3) / den,
                    C * C * std::pow(2 * B - C, 3) / den, B - 2 * C};
        }
        case 4: {
            const double u2 =
                A * (A - C) * (A - C) * (2 * B - C) / ((A - B) * (2 * A * B - A * C - B * C));
            const double v2 =
                B * (B - C) * (B - C) * (2 * A - C) / ((B - A) * (2 * A * B - B * C - A * C));
            return {u2, v2, v2};
        }
        case 5: {
            const double den = (A - C) * (2 * A * C - A * B - B * C);
            return {A * (A - B) * (A - B) * (2 * C - B) / den,
                    -C * (C - B) * (C - B) * (2 * A - B) / den, B - 2 * C};
        }
        case 6: {
            const double den = (B - C) * (2 * B * C - A * B - A * C);
            return {B * (B - A) * (B - A) * (2 * C - A) / den,
                    -C * (C - A) * (C - A) * (2 * B - A) / den,
                    std::min(2 * B - A, A - 2 * C)};
        }
        case 7: {
            const double pole = std::pow(A + B - 2 * C, 3);
            return {std::pow(A - C, 3) * std::pow(2 * B - A - C, 3) / (A * (B - A) * pole),
                    std::pow(B - C, 3) * std::pow(2 * A - B - C, 3) / (B * (A - B) * pole),
                    A + C - 2 * B};
        }
        case 8:
            return {std::pow(A - B, 3) / (A * (A - C)),
                    std::pow(B - C, 3) / (C * (A - C)), std::min(A - B, B - C)};
        case 9: {
            const double pole = std::pow(B + C - 2 * A, 3);
            return {std::pow(B - A, 3) * std::pow(2 * C - B - A, 3) / (B * (C - B) * pole),
                    std::pow(C - A, 3) * std::pow(2 * B - C - A, 3) / (C * (B - C) * pole),
                    2 * B - A - C};
        }
        default:
            throw Error(Errc::OutOfRange, "family index must be 1..9");
    }
}

// Both curves through the family-8 point are tangent there; the error is the
// normalized cross product of their in-plane tangent directions.
double family8_tangency_error(const Ellipsoid3& e, double x, double z) {
    const auto [A, B, C] = squares_of(e);
    const double ast_a = (A - C) / e.a;
    const double ast_c = (A - C) / e.c;
    const double ell_a = (A - B) / e.a;
    const double ell_c = (B - C) / e.c;
    const double ct = std::cbrt(x / ast_a);
    const double st = std::cbrt(z / ast_c);
    const Vec2 t_ast{-ast_a * ct, ast_c * st};
    const Vec2 t_ell{-ell_a * (z / ell_c), ell_c * (x / ell_a)};
    return std::abs(cross(t_ast, t_ell)) / (norm(t_ast) * norm(t_ell));
}

}  // namespace

AxisGaps axis_gaps(const Ellipsoid3& e) {
    require_triaxial(e);
    const auto [A, B, C] = squares_of(e);
    AxisGaps g;
    g.alpha = B - C;
    g.beta = C - A;
    g.gamma = A - B;
    g.omega = g.alpha * g.alpha - g.beta * g.gamma;
    return g;
}

const char* to_string(CaseLabel label) {
    switch (label) {
        case CaseLabel::i: return "i";
        case CaseLabel::ii: return "ii";
        case CaseLabel::iii: return "iii";
        case CaseLabel::iv: return "iv";
        case CaseLabel::v: return "v";
        case CaseLabel::vi: return "vi";
        case CaseLabel::vii: return "vii";
        case CaseLabel::viii: return "viii";
        case CaseLabel::ix: return "ix";
        case CaseLabel::x: return "x";
        case CaseLabel::xi: return "xi";
        case CaseLabel::xii: return "xii";
    }
    return "?";
}

TopologyCase classify(const Ellipsoid3& e) {
    require_triaxial(e);
    const auto [A, B, C] = squares_of(e);

    ClassifyPredicates p;
    p.a2_minus_2c2 = A - 2 * C;
    p.b2_minus_2c2 = B - 2 * C;
    p.a2_plus_c2_minus_2b2 = A + C - 2 * B;
    p.a2_minus_2b2 = A - 2 * B;
    p.curvature_balance = 1 / A + 1 / C - 3 / B;
    p.d_value = 2 * B * B + 2 * C * C - A * B - A * C - 2 * B * C;

    // a nonnegative d_value forces the triple-point side conditions
    assert(!(p.d_value >= 0.0) || p.a2_plus_c2_minus_2b2 < 0.0);
    assert(!(p.b2_minus_2c2 >= 0.0 && p.d_value >= 0.0) || p.curvature_balance > 0.0);

    TopologyCase result;
    result.predicates = p;
    if (p.a2_minus_2c2 < 0.0) {
        result.existence_class = 1;
        result.label = p.a2_plus_c2_minus_2b2 < 0.0 ? CaseLabel::i : CaseLabel::ii;
    } else if (p.b2_minus_2c2 < 0.0) {
        result.existence_class = 2;
        if (p.a2_plus_c2_minus_2b2 < 0.0) {
            result.label = CaseLabel::iii;
        } else {
            result.label = p.a2_minus_2b2 < 0.0 ? CaseLabel::iv : CaseLabel::v;
        }
    } else {
        result.existence_class = 3;
        if (p.d_value > 0.0) {
            result.label = CaseLabel::ix;
        } else if (p.curvature_balance < 0.0) {
            if (p.a2_plus_c2_minus_2b2 < 0.0) {
                result.label = CaseLabel::vi;
            } else {
                result.label = p.a2_minus_2b2 < 0.0 ? CaseLabel::vii : CaseLabel::viii;
            }
        } else {
            if (p.a2_plus_c2_minus_2b2 < 0.0) {
                result.label = CaseLabel::x;
            } else {
                result.label = p.a2_minus_2b2 < 0.0 ? CaseLabel::xi : CaseLabel::xii;
            }
        }
    }
    return result;
}

Point3 section_curve(const Ellipsoid3& e, int which, double t) {
    if (which < 1 || which > 9) {
        throw Error(Errc::OutOfRange, "section curve index must be 1..9");
    }
    if (which >= 4) require_triaxial(e);
    const auto [A, B, C] = squares_of(e);
    const double ct = std::cos(t);
    const double st = std::sin(t);
    switch (which) {
        case 1: return {e.a * ct, e.b * st, 0.0};
        case 2: return {e.a * ct, 0.0, e.c * st};
        case 3: return {0.0, e.b * ct, e.c * st};
        case 4: return {(A - B) / e.a * ct * ct * ct, (A - B) / e.b * st * st * st, 0.0};
        case 5: return {(A - C) / e.a * ct * ct * ct, 0.0, (A - C) / e.c * st * st * st};
        case 6: return {0.0, (B - C) / e.b * ct * ct * ct, (B - C) / e.c * st * st * st};
        case 7: return {(A - C) / e.a * ct, (B - C) / e.b * st, 0.0};
        case 8: return {(A - B) / e.a * ct, 0.0, (B - C) / e.c * st};
        default: return {0.0, (A - B) / e.b * ct, (A - C) / e.c * st};
    }
}

FamilyResult intersection_family(const Ellipsoid3& e, int family, const Tolerances& tol) {
    require_triaxial(e);
    const FamilySquares fs = family_squares(e, family);
    const int plane = family_plane(family);

    FamilyResult r;
    r.family = family;
    r.condition_value = fs.condition;
    r.squared_coords = plane_squares(plane, fs.u2, fs.v2);

    // Near the existence boundary the squares scale like the cube of the
    // condition, so a clamp on the squares alone would admit shapes well past
    // it; the condition sign is the decisive test.
    const double slack = tol.eps_on * e.a * e.a;
    r.exists = std::isfinite(fs.u2) && std::isfinite(fs.v2) && fs.u2 >= -slack &&
               fs.v2 >= -slack && fs.condition >= -slack;
    if (!r.exists) return r;

    const double u = std::sqrt(std::max(fs.u2, 0.0));
    const double v = std::sqrt(std::max(fs.v2, 0.0));
    r.points = sign_combinations(plane, u, v);
    if (family >= 7) {
        r.surface_side = side_of_surface(e, r.points.front(), tol);
    }
    if (family == 8) {
        r.tangency_parallel_error = family8_tangency_error(e, u, v);
    }
    return r;
}

OrderChecks family_order_checks(const Ellipsoid3& e, const Tolerances& tol) {
    require_triaxial(e);
    const TopologyCase tc = classify(e);

    OrderChecks checks;
    checks.curvature_balance = tc.predicates.curvature_balance;
    checks.d_value = tc.predicates.d_value;

    const FamilyResult f2 = intersection_family(e, 2, tol);
    const FamilyResult f5 = intersection_family(e, 5, tol);
    if (f2.exists && f5.exists) {
        checks.plane_y0 = OrderPair{f2.squared_coords[0] - f5.squared_coords[0],
                                    f2.squared_coords[2] - f5.squared_coords[2]};
    }
    const FamilyResult f3 = intersection_family(e, 3, tol);
    const FamilyResult f6 = intersection_family(e, 6, tol);
    if (f3.exists && f6.exists) {
        checks.plane_x0 = OrderPair{f3.squared_coords[1] - f6.squared_coords[1],
                                    f3.squared_coords[2] - f6.squared_coords[2]};
    }
    if (!checks.plane_y0 && !checks.plane_x0) {
        throw Error(Errc::FamiliesAbsent, "no comparable family pair for this shape");
    }
    return checks;
}

NodalPolys nodal_polys(const Ellipsoid3& e) {
    require_triaxial(e);
    const auto [A, B, C] = squares_of(e);

    const double p2 = (A * A * B + A * A * C + A * B * B + A * C * C + B * B * C +
                       B * C * C - 6 * A * B * C) *
                      (A - 2 * B + C);
    const double p1 = 11 * A * A * B * C + 11 * A * B * C * C + 3 * A * B * B * B +
                      3 * B * B * B * C - A * A * A * B - A * A * A * C - A * C * C * C -
                      B * C * C * C - A * A * B * B - 5 * A * A * C * C - B * B * C * C -
                      17 * A * B * B * C;
    const double p0 = (A - B) * (B - C) * (A * B + B * C - 3 * A * C);

    NodalPolys np;
    np.p = Poly({p0, p1, p2});
    np.q = Poly({-2 * B * B, 4 * B * B + A * B + B * C - 3 * A * C,
                 (A + B + C) * (A - 2 * B + C)});
    np.r = Poly({(A - B) * (B - C),
                 A * A + B * B + C * C - A * B - B * C - A * C});
    assert(np.r.c[0] > 0.0 && np.r.c[1] > 0.0);
    return np;
}

double nodal_t_max(const Ellipsoid3& e) {
    const AxisGaps g = axis_gaps(e);
    return std::min(g.alpha / (g.alpha - g.beta), -g.gamma / (g.beta - g.gamma));
}

std::array<double, 3> nodal_curve_squares(const Ellipsoid3& e, double t) {
    const AxisGaps g = axis_gaps(e);
    const double t_max = nodal_t_max(e);
    if (t < -1e-9 || t > t_max + 1e-9) {
        throw Error(Errc::OutOfRange, "nodal parameter outside [0, t_max]");
    }
    const auto [A, B, C] = squares_of(e);
    const double al = g.alpha, be = g.beta, ga = g.gamma, om = g.omega;
    const double pole = (al * ga + om * t) * (3 * t - 2) * (3 * t - 2);

    const double x2 = ((ga - al) * t + al) * std::pow((ga - al) * t - 2 * ga, 2) *
                      std::pow((be - ga) * t + ga, 3) / (-be * ga * A * pole);
    const double y2 = t * t * (t - 1) * std::pow((ga - al) * (ga - al) * t + 3 * al * ga, 3) /
                      (-al * ga * B * pole);
    const double z2 = ((ga - al) * t - ga) * std::pow((ga - al) * t + 2 * al, 2) *
                      std::pow((al - be) * t - al, 3) / (-al * be * C * pole);
    return {x2, y2, z2};
}

std::optional<Point3> nodal_curve_point(const Ellipsoid3& e, double t,
                                        std::array<int, 3> octant,
                                        const Tolerances& tol) {
    const std::array<double, 3> sq = nodal_curve_squares(e, t);
    const double slack = tol.eps_on * e.a * e.a;
    Point3 p;
    double* coords[3] = {&p.x, &p.y, &p.z};
    for (int i = 0; i < 3; ++i) {
        if (sq[i] < -slack) return std::nullopt;
        const double v = std::sqrt(std::max(sq[i], 0.0));
        *coords[i] = (octant[i] < 0 ? -1.0 : 1.0) * v;
    }
    return p;
}

TriplePointResult triple_point(const Ellipsoid3& e, const Tolerances& tol) {
    const TopologyCase tc = classify(e);
    const NodalPolys np = nodal_polys(e);
    const double t_max = nodal_t_max(e);

    TriplePointResult r;
    r.d_value = tc.predicates.d_value;
    r.curvature_balance = tc.predicates.curvature_balance;

    const RootSet rs = real_roots(np.p, Interval{0.0, t_max}, tol);
    if (rs.entries.empty()) return r;
    r.t0 = rs.entries.front().root;
    const auto point = nodal_curve_point(e, std::clamp(r.t0, 0.0, t_max), {1, 1, 1}, tol);
    if (!point) return r;
    r.exists = true;
    r.point = *point;
    return r;
}

std::array<double, 3> intersection_curve_squares(const Ellipsoid3& e, Sheet branch,
                                                 double t) {
    require_triaxial(e);
    const auto [A, B, C] = squares_of(e);
    const double lo = branch == Sheet::MinRadius ? -A : -B;
    const double hi = branch == Sheet::MinRadius ? -B : -C;
    const double slack = 1e-9 * A;
    if (t < lo - slack || t > hi + slack) {
        throw Error(Errc::OutOfRange, "parameter outside the branch interval");
    }
    const double den = (A * B + A * C + B * C) * t + 3 * A * B * C;
    if (std::abs(den) <= 1e-12 * (A * B + A * C + B * C) * A) {
        throw Error(Errc::PoleParameter, "parameter at the pole of the curve");
    }
    const double x2 =
        A * std::pow(A + t, 3) * ((B + C) * t + 3 * B * C) / ((A - C) * (A - B) * den);
    const double y2 =
        B * std::pow(B + t, 3) * ((A + C) * t + 3 * A * C) / ((B - A) * (B - C) * den);
    const double z2 =
        C * std::pow(C + t, 3) * ((A + B) * t + 3 * A * B) / ((C - A) * (C - B) * den);
    return {x2, y2, z2};
}

std::optional<Point3> intersection_curve_point(const Ellipsoid3& e, Sheet branch,
                                               double t, std::array<int, 3> octant,
                                               const Tolerances& tol) {
    const std::array<double, 3> sq = intersection_curve_squares(e, branch, t);
    const double slack = tol.eps_on * e.a * e.a;
    Point3 p;
    double* coords[3] = {&p.x, &p.y, &p.z};
    for (int i = 0; i < 3; ++i) {
        if (sq[i] < -slack) return std::nullopt;
        const double v = std::sqrt(std::max(sq[i], 0.0));
        *coords[i] = (octant[i] < 0 ? -1.0 : 1.0) * v;
    }
    return p;
}

}  // namespace apollonius

#include "apollonius/normals3d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "apollonius/normals2d.hpp"
#include "dd.hpp"
#include "frame.hpp"

namespace apollonius {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void validate_point(Point3 A) {
    if (!(std::isfinite(A.x) && std::isfinite(A.y) && std::isfinite(A.z))) {
        throw Error(Errc::OutOfRange, "query point must be finite");
    }
}

void require_triaxial(const Ellipsoid3& e, Errc code) {
    if (e.shape_class != ShapeClass::Triaxial) {
        throw Error(code, "operation requires three distinct axes");
    }
}

struct ZeroPattern {
    bool x, y, z;
    int zeros() const { return (x ? 1 : 0) + (y ? 1 : 0) + (z ? 1 : 0); }
};

ZeroPattern zero_pattern(const Ellipsoid3& e, Point3 A, const Tolerances& tol) {
    return {std::abs(A.x) <= tol.eps_deg * e.a,
            std::abs(A.y) <= tol.eps_deg * e.b,
            std::abs(A.z) <= tol.eps_deg * e.c};
}

bool solve4(double m[4][4], double rhs[4], double out[4]) {
    int perm[4] = {0, 1, 2, 3};
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r) {
            if (std::abs(m[perm[r]][col]) > std::abs(m[perm[piv]][col])) piv = r;
        }
        std::swap(perm[col], perm[piv]);
        const double diag = m[perm[col]][col];
        if (diag == 0.0) return false;
        for (int r = col + 1; r < 4; ++r) {
            const double f = m[perm[r]][col] / diag;
            for (int c2 = col; c2 < 4; ++c2) m[perm[r]][c2] -= f * m[perm[col]][c2];
            rhs[perm[r]] -= f * rhs[perm[col]];
        }
    }
    for (int col = 3; col >= 0; --col) {
        double s = rhs[perm[col]];
        for (int c2 = col + 1; c2 < 4; ++c2) s -= m[perm[col]][c2] * out[c2];
        out[col] = s / m[perm[col]][col];
    }
    return true;
}

// Newton on the stationarity system F = (B_i (1 + t/ai2) - A_i, |B|_e^2 - 1);
// keeps the best iterate by residual so a singular configuration cannot make
// the seed worse.
void lagrange_polish(const Ellipsoid3& e, Point3 A, Point3& B, double& t,
                     const Tolerances& tol) {
    const double ai2[3] = {e.a * e.a, e.b * e.b, e.c * e.c};
    double x[4] = {B.x, B.y, B.z, t};
    auto residual = [&](const double* u) {
        const double f0 = u[0] * (1.0 + u[3] / ai2[0]) - A.x;
        const double f1 = u[1] * (1.0 + u[3] / ai2[1]) - A.y;
        const double f2 = u[2] * (1.0 + u[3] / ai2[2]) - A.z;
        const double f3 = u[0] * u[0] / ai2[0] + u[1] * u[1] / ai2[1] +
                          u[2] * u[2] / ai2[2] - 1.0;
        return std::max({std::abs(f0), std::abs(f1), std::abs(f2), std::abs(f3)});
    };
    double best[4] = {x[0], x[1], x[2], x[3]};
    double best_res = residual(x);
    for (int it = 0; it < 8; ++it) {
        double f[4] = {
            x[0] * (1.0 + x[3] / ai2[0]) - A.x,
            x[1] * (1.0 + x[3] / ai2[1]) - A.y,
            x[2] * (1.0 + x[3] / ai2[2]) - A.z,
            x[0] * x[0] / ai2[0] + x[1] * x[1] / ai2[1] + x[2] * x[2] / ai2[2] - 1.0,
        };
        double m[4][4] = {
            {1.0 + x[3] / ai2[0], 0, 0, x[0] / ai2[0]},
            {0, 1.0 + x[3] / ai2[1], 0, x[1] / ai2[1]},
            {0, 0, 1.0 + x[3] / ai2[2], x[2] / ai2[2]},
            {2 * x[0] / ai2[0], 2 * x[1] / ai2[1], 2 * x[2] / ai2[2], 0},
        };
        double rhs[4] = {-f[0], -f[1], -f[2], -f[3]};
        double step[4];
        if (!solve4(m, rhs, step)) break;
        for (int i = 0; i < 4; ++i) x[i] += step[i];
        const double res = residual(x);
        if (res < best_res) {
            best_res = res;
            for (int i = 0; i < 4; ++i) best[i] = x[i];
        }
        if (res <= 1e-15 * std::max(1.0, std::abs(x[3]) / (e.a * e.a))) break;
    }
    (void)tol;
    B = {best[0], best[1], best[2]};
    t = best[3];
}

void sort_feet(std::vector<Foot3>& feet) {
    std::sort(feet.begin(), feet.end(), [](const Foot3& u, const Foot3& v) {
        if (u.t != v.t) return u.t < v.t;
        if (u.point.x != v.point.x) return u.point.x < v.point.x;
        if (u.point.y != v.point.y) return u.point.y < v.point.y;
        return u.point.z < v.point.z;
    });
}

NormalFan3 generic_sextic_feet(const Ellipsoid3& e, Point3 A, const Tolerances& tol) {
    NormalFan3 fan;
    fan.solver_path = SolverPath3::GenericSextic;
    const detail::Frame f = detail::make_frame(e, A);
    const Poly p = detail::normal_sextic_normalized(f);
    const RootSet rs = real_roots(p, {}, tol);
    const auto events = detail::tangency_events(p, tol);
    fan.discriminant_margin = detail::margin_from(rs, events);

    const double a2 = e.a * e.a;
    const double ax2[3] = {1.0, f.b2, f.c2};
    const double co[3] = {f.A.x, f.A.y, f.A.z};
    for (const RootEntry& entry : rs.entries) {
        const double th = entry.root;
        int strip = -1;
        bool spurious = false;
        for (int j = 0; j < 3; ++j) {
            if (std::abs(th + ax2[j]) > 1e-4 * ax2[j]) continue;
            if (std::abs(co[j]) <= 1e-3 * std::sqrt(ax2[j])) {
                strip = j;
            } else if (std::abs(detail::confocal_residual(f, th)) > 1e-6) {
                spurious = true;  // root created by the cleared denominators
            }
        }
        if (spurious) continue;
        double w[3];
        for (int k = 0; k < 3; ++k) w[k] = ax2[k] * co[k] / (ax2[k] + th);
        if (strip >= 0) {
            // the pair with the strip coordinate freed sits within rounding
            // of the pole, where the quotient above is 0/0; take that
            // coordinate's magnitude from the surface and its sign from the
            // side of the pole, with a merged even root carrying both signs
            double s = 1.0;
            for (int k = 0; k < 3; ++k) {
                if (k != strip) s -= w[k] * w[k] / ax2[k];
            }
            const double band = tol.eps_deg * tol.eps_deg;
            if (s > band) {
                const double lead =
                    std::copysign(std::sqrt(s * ax2[strip]),
                                  co[strip] * (ax2[strip] + th));
                const int copies = entry.multiplicity % 2 == 0 ? 2 : 1;
                for (int dup = 0; dup < copies; ++dup) {
                    w[strip] = dup == 0 ? lead : -lead;
                    Point3 B{e.a * w[0], e.a * w[1], e.a * w[2]};
                    double t = th * a2;
                    lagrange_polish(e, A, B, t, tol);
                    fan.feet.push_back(
                        {B, t, copies == 2 ? entry.multiplicity / 2 : entry.multiplicity});
                }
            } else if (s >= -band) {
                w[strip] = 0.0;
                Point3 B{e.a * w[0], e.a * w[1], e.a * w[2]};
                double t = th * a2;
                lagrange_polish(e, A, B, t, tol);
                fan.feet.push_back({B, t, entry.multiplicity});
            }
            continue;
        }
        Point3 B{e.a * w[0], e.a * w[1], e.a * w[2]};
        double t = th * a2;
        lagrange_polish(e, A, B, t, tol);
        fan.feet.push_back({B, t, entry.multiplicity});
    }
    sort_feet(fan.feet);
    fan.count = Count::finite(static_cast<int>(fan.feet.size()));
    return fan;
}

// axis index helpers for the plane-split: plane coordinate `zero` vanishes,
// the in-plane axes keep their relative order
struct PlaneIdx {
    int zero, u, v;
    SolverPath3 path;
};

double axis_of(const Ellipsoid3& e, int i) {
    return i == 0 ? e.a : (i == 1 ? e.b : e.c);
}

double coord_of(Point3 p, int i) { return i == 0 ? p.x : (i == 1 ? p.y : p.z); }

Point3 assemble(int zero, double w0, int u, double wu, int v, double wv) {
    Point3 p{0, 0, 0};
    double* c[3] = {&p.x, &p.y, &p.z};
    *c[zero] = w0;
    *c[u] = wu;
    *c[v] = wv;
    return p;
}

// A lies in a coordinate plane: the feet split into the in-plane 2d problem
// and a pair on the line branch with the plane coordinate freed.
NormalFan3 plane_split_feet(const Ellipsoid3& e, Point3 A, const PlaneIdx& idx,
                            const Tolerances& tol) {
    NormalFan3 fan;
    fan.solver_path = idx.path;

    const double p_axis = axis_of(e, idx.u), q_axis = axis_of(e, idx.v);
    const double p2 = p_axis * p_axis, q2 = q_axis * q_axis;
    const double z2 = axis_of(e, idx.zero) * axis_of(e, idx.zero);
    const double U = coord_of(A, idx.u), V = coord_of(A, idx.v);

    const Ellipse2 section{p_axis, q_axis, false};
    const NormalFan2 fan2 = normal_feet_2d(section, Point2{U, V}, tol);

    for (const Foot2& g : fan2.feet) {
        const double u = g.point.x, v = g.point.y;
        double t;
        if (std::abs(u) / p_axis >= std::abs(v) / q_axis) {
            t = p2 * (U - u) / u;
        } else {
            t = q2 * (V - v) / v;
        }
        fan.feet.push_back({assemble(idx.zero, 0.0, idx.u, u, idx.v, v), t,
                            g.multiplicity});
    }

    // line branch: the freed coordinate of the asymptote at t = -z2
    const double ubar = p2 * U / (p2 - z2);
    const double vbar = q2 * V / (q2 - z2);
    const double s = 1.0 - (ubar / p_axis) * (ubar / p_axis) -
                     (vbar / q_axis) * (vbar / q_axis);
    const double merge_band = tol.eps_deg * tol.eps_deg;
    if (s > merge_band) {
        const double w = std::sqrt(s) * axis_of(e, idx.zero);
        fan.feet.push_back({assemble(idx.zero, w, idx.u, ubar, idx.v, vbar), -z2, 1});
        fan.feet.push_back({assemble(idx.zero, -w, idx.u, ubar, idx.v, vbar), -z2, 1});
    } else if (s >= -merge_band) {
        // the line pair collapses onto an in-plane foot
        const Point3 merged = assemble(idx.zero, 0.0, idx.u, ubar, idx.v, vbar);
        bool fused = false;
        for (Foot3& g : fan.feet) {
            if (norm(g.point - merged) <= tol.eps_on * e.a) {
                g.multiplicity += 2;
                fused = true;
                break;
            }
        }
        if (!fused) fan.feet.push_back({merged, -z2, 2});
    }

    sort_feet(fan.feet);
    fan.count = Count::finite(static_cast<int>(fan.feet.size()));

    const Poly q = detail::normal_quartic_normalized(
        p2 / (e.a * e.a), q2 / (e.a * e.a), U / e.a, V / e.a);
    const RootSet rs = real_roots(q, {}, tol);
    fan.discriminant_margin =
        std::min(detail::margin_from(rs, detail::tangency_events(q, tol)),
                 std::abs(s));
    return fan;
}

// A on a coordinate axis: union of the two coordinate-plane problems through
// that axis, with the shared pole feet deduplicated.
NormalFan3 axis_split_feet(const Ellipsoid3& e, Point3 A, int axis,
                           const Tolerances& tol) {
    NormalFan3 fan;
    fan.solver_path = SolverPath3::AxisSplit;
    const double w2 = axis_of(e, axis) * axis_of(e, axis);
    const double W = coord_of(A, axis);

    const int others[2] = {axis == 0 ? 1 : 0, axis == 2 ? 1 : 2};
    for (int freed : others) {
        // plane spanned by `axis` and `freed` has the third coordinate zero
        const int in_u = std::min(axis, freed), in_v = std::max(axis, freed);
        const double pu = axis_of(e, in_u), pv = axis_of(e, in_v);
        const Ellipse2 section{pu, pv, false};
        const Point2 A2{in_u == axis ? W : 0.0, in_v == axis ? W : 0.0};
        const NormalFan2 fan2 = normal_feet_2d(section, A2, tol);
        const int third = 3 - axis - freed;
        for (const Foot2& g : fan2.feet) {
            const Point3 B = assemble(third, 0.0, in_u, g.point.x, in_v, g.point.y);
            const double wb = coord_of(B, axis);
            if (wb == 0.0) continue;  // cannot see A from the orthogonal axis
            const double t = w2 * (W - wb) / wb;
            bool dup = false;
            for (Foot3& h : fan.feet) {
                if (norm(h.point - B) <= tol.eps_on * e.a) dup = true;
            }
            if (!dup) fan.feet.push_back({B, t, g.multiplicity});
        }
    }
    sort_feet(fan.feet);
    fan.count = Count::finite(static_cast<int>(fan.feet.size()));

    // collision margin against the two evolute vertices seen from this axis
    const double aw = axis_of(e, axis);
    double margin = kInf;
    for (int freed : others) {
        const double af = axis_of(e, freed);
        const double vertex = std::abs(af * af - aw * aw) / aw;
        margin = std::min(margin, std::abs(std::abs(W) - vertex) / (e.a * e.a));
    }
    fan.discriminant_margin = margin;
    return fan;
}

NormalFan3 center_feet(const Ellipsoid3& e) {
    NormalFan3 fan;
    fan.solver_path = SolverPath3::Center;
    fan.feet = {
        {{-e.a, 0, 0}, -e.a * e.a, 1}, {{e.a, 0, 0}, -e.a * e.a, 1},
        {{0, -e.b, 0}, -e.b * e.b, 1}, {{0, e.b, 0}, -e.b * e.b, 1},
        {{0, 0, -e.c}, -e.c * e.c, 1}, {{0, 0, e.c}, -e.c * e.c, 1},
    };
    sort_feet(fan.feet);
    fan.count = Count::finite(6);
    fan.discriminant_margin =
        std::min(e.a * e.a - e.b * e.b, e.b * e.b - e.c * e.c) / (e.a * e.a);
    return fan;
}

NormalFan3 revolution_feet(const Ellipsoid3& e, Point3 A, const Tolerances& tol) {
    NormalFan3 fan;
    const bool prolate = e.shape_class == ShapeClass::ProlateLike;
    // prolate: symmetry axis x, meridian ellipse (a, b)
    // oblate: symmetry axis z, meridian ellipse (a, c)
    const double major = e.a;
    const double minor = prolate ? e.b : e.c;
    const Ellipse2 meridian{major, minor, false};
    const double axial = prolate ? A.x : A.z;
    const double rho = prolate ? std::hypot(A.y, A.z) : std::hypot(A.x, A.y);

    auto to_space = [&](double u, double v) -> Point3 {
        // u along the symmetry axis, v the radial offset
        if (prolate) {
            if (rho <= 0) return {u, v, 0};
            return {u, v * A.y / rho, v * A.z / rho};
        }
        if (rho <= 0) return {v, 0, u};
        return {v * A.x / rho, v * A.y / rho, u};
    };
    const double axis_axial = prolate ? major : minor;
    const double axis_radial = prolate ? minor : major;
    auto param_t = [&](double u, double v) {
        // u axial, v radial; read t off the larger relative coordinate
        if (std::abs(u) / axis_axial >= std::abs(v) / axis_radial) {
            return axis_axial * axis_axial * (axial - u) / u;
        }
        return axis_radial * axis_radial * (rho - v) / v;
    };

    if (rho <= tol.eps_deg * e.a) {
        fan.solver_path = SolverPath3::RevolutionAxisSegment;
        const NormalFan2 fan2 = prolate
            ? normal_feet_2d(meridian, Point2{axial, 0.0}, tol)
            : normal_feet_2d(meridian, Point2{0.0, axial}, tol);
        bool ring = false;
        for (const Foot2& g : fan2.feet) {
            const double on_axis = prolate ? g.point.y : g.point.x;
            if (std::abs(on_axis) > tol.eps_deg * e.a) {
                ring = true;  // a full circle of feet by symmetry
                continue;
            }
            const double u = prolate ? g.point.x : g.point.y;
            fan.feet.push_back({to_space(u, 0.0),
                                axis_axial * axis_axial * (axial - u) / u,
                                g.multiplicity});
        }
        sort_feet(fan.feet);
        fan.count = ring ? Count::infinite()
                         : Count::finite(static_cast<int>(fan.feet.size()));
        fan.discriminant_margin = kInf;
        return fan;
    }

    fan.solver_path = SolverPath3::RevolutionMeridian;
    const NormalFan2 fan2 = prolate
        ? normal_feet_2d(meridian, Point2{axial, rho}, tol)
        : normal_feet_2d(meridian, Point2{rho, axial}, tol);
    for (const Foot2& g : fan2.feet) {
        const double u = prolate ? g.point.x : g.point.y;
        const double v = prolate ? g.point.y : g.point.x;
        fan.feet.push_back({to_space(u, v), param_t(u, v), g.multiplicity});
    }
    sort_feet(fan.feet);
    fan.count = Count::finite(static_cast<int>(fan.feet.size()));
    fan.discriminant_margin = kInf;
    return fan;
}

NormalFan3 sphere_feet(const Ellipsoid3& e, Point3 A, const Tolerances& tol) {
    NormalFan3 fan;
    fan.solver_path = SolverPath3::SphereRadial;
    fan.discriminant_margin = kInf;
    const double r = e.a;
    const double n = norm(A);
    if (n <= tol.eps_deg * r) {
        fan.count = Count::infinite();
        return fan;
    }
    const Point3 u = (1.0 / n) * A;
    fan.feet.push_back({r * u, r * (n - r), 1});
    fan.feet.push_back({(-r) * u, -r * (n + r), 1});
    sort_feet(fan.feet);
    fan.count = Count::finite(2);
    return fan;
}

}  // namespace

const char* to_string(SolverPath3 p) {
    switch (p) {
        case SolverPath3::GenericSextic: return "GenericSextic";
        case SolverPath3::PlaneSplitX0: return "PlaneSplitX0";
        case SolverPath3::PlaneSplitY0: return "PlaneSplitY0";
        case SolverPath3::PlaneSplitZ0: return "PlaneSplitZ0";
        case SolverPath3::AxisSplit: return "AxisSplit";
        case SolverPath3::Center: return "Center";
        case SolverPath3::RevolutionAxisSegment: return "RevolutionAxisSegment";
        case SolverPath3::RevolutionMeridian: return "RevolutionMeridian";
        case SolverPath3::SphereRadial: return "SphereRadial";
    }
    return "?";
}

Point3 cubic_hyperbola(const Ellipsoid3& e, Point3 A, double t, const Tolerances& tol) {
    tol.validate();
    validate_point(A);
    if (std::isnan(t)) {
        throw Error(Errc::OutOfRange, "curve parameter must not be NaN");
    }
    const double ai2[3] = {e.a * e.a, e.b * e.b, e.c * e.c};
    if (std::isfinite(t)) {
        for (double w : ai2) {
            if (std::abs(t + w) <= tol.eps_deg * e.a * e.a) {
                throw Error(Errc::PoleParameter, "parameter hits a curve pole");
            }
        }
    }
    return {ai2[0] * A.x / (ai2[0] + t), ai2[1] * A.y / (ai2[1] + t),
            ai2[2] * A.z / (ai2[2] + t)};
}

Point3 asymptote(const Ellipsoid3& e, Point3 A, int which, double t) {
    validate_point(A);
    require_triaxial(e, Errc::AxisEqualityDegenerate);
    if (which < 1 || which > 3) {
        throw Error(Errc::OutOfRange, "asymptote index must be 1, 2 or 3");
    }
    const double a2 = e.a * e.a, b2 = e.b * e.b, c2 = e.c * e.c;
    switch (which) {
        case 1: return {t, b2 * A.y / (b2 - a2), c2 * A.z / (c2 - a2)};
        case 2: return {a2 * A.x / (a2 - b2), t, c2 * A.z / (c2 - b2)};
        default: return {a2 * A.x / (a2 - c2), b2 * A.y / (b2 - c2), t};
    }
}

Poly normal_sextic(const Ellipsoid3& e, Point3 A, const Tolerances& tol) {
    tol.validate();
    validate_point(A);
    require_triaxial(e, Errc::AxisEqualityDegenerate);
    const ZeroPattern zp = zero_pattern(e, A, tol);
    if (zp.zeros() > 0) {
        throw Error(Errc::DegenerateCoordinate,
                    "the full-degree polynomial needs all coordinates nonzero");
    }

    // assemble in the raw frame with double-double convolution
    using detail::dd;
    using detail::dd_poly;
    const auto shifted_square = [](dd w) -> dd_poly {
        return {detail::dd_mul(w, w), detail::dd_add(w, w), dd{1.0, 0.0}};
    };
    const dd a2 = detail::two_prod(e.a, e.a);
    const dd b2 = detail::two_prod(e.b, e.b);
    const dd c2 = detail::two_prod(e.c, e.c);
    const dd_poly qa = shifted_square(a2);
    const dd_poly qb = shifted_square(b2);
    const dd_poly qc = shifted_square(c2);

    dd_poly s = detail::dd_scale(detail::dd_conv(qb, qc),
                                 detail::dd_mul(a2, detail::two_prod(A.x, A.x)));
    s = detail::dd_axpy(std::move(s),
                        detail::dd_scale(detail::dd_conv(qa, qc),
                                         detail::dd_mul(b2, detail::two_prod(A.y, A.y))));
    s = detail::dd_axpy(std::move(s),
                        detail::dd_scale(detail::dd_conv(qa, qb),
                                         detail::dd_mul(c2, detail::two_prod(A.z, A.z))));
    s = detail::dd_axpy(std::move(s),
                        detail::dd_scale(detail::dd_conv(detail::dd_conv(qa, qb), qc),
                                         dd{-1.0, 0.0}));
    std::vector<double> coeffs(s.size());
    for (size_t i = 0; i < s.size(); ++i) coeffs[i] = detail::dd_value(s[i]);
    return Poly(std::move(coeffs));
}

double tangency_residual(const Ellipsoid3& e, Point3 A, double t) {
    validate_point(A);
    const double ai2[3] = {e.a * e.a, e.b * e.b, e.c * e.c};
    const double co[3] = {A.x, A.y, A.z};
    Tolerances tol;
    double s = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double den = ai2[i] + t;
        if (std::abs(den) <= tol.eps_deg * e.a * e.a) {
            throw Error(Errc::PoleParameter, "tangency residual has a pole here");
        }
        s += ai2[i] * co[i] * co[i] / (den * den * den);
    }
    return s;
}

NormalFan3 normal_feet_3d(const Ellipsoid3& e, Point3 A, const Tolerances& tol) {
    tol.validate();
    validate_point(A);

    switch (e.shape_class) {
        case ShapeClass::Sphere: return sphere_feet(e, A, tol);
        case ShapeClass::ProlateLike:
        case ShapeClass::OblateLike: return revolution_feet(e, A, tol);
        case ShapeClass::Triaxial: break;
    }

    const ZeroPattern zp = zero_pattern(e, A, tol);
    switch (zp.zeros()) {
        case 0: return generic_sextic_feet(e, A, tol);
        case 1: {
            PlaneIdx idx;
            if (zp.x) idx = {0, 1, 2, SolverPath3::PlaneSplitX0};
            else if (zp.y) idx = {1, 0, 2, SolverPath3::PlaneSplitY0};
            else idx = {2, 0, 1, SolverPath3::PlaneSplitZ0};
            return plane_split_feet(e, A, idx, tol);
        }
        case 2: {
            const int axis = zp.x ? (zp.y ? 2 : 1) : 0;
            return axis_split_feet(e, A, axis, tol);
        }
        default: return center_feet(e);
    }
}

Region3 region_3d(const Ellipsoid3& e, Point3 A, const Tolerances& tol) {
    tol.validate();
    validate_point(A);
    require_triaxial(e, Errc::NotTriaxial);
    if (zero_pattern(e, A, tol).zeros() > 0) {
        throw Error(Errc::DegenerateCoordinate,
                    "region classification needs generic coordinates");
    }

    const detail::Frame f = detail::make_frame(e, A);
    const Poly p = detail::normal_sextic_normalized(f);
    const RootSet rs = real_roots(p, {}, tol);
    const auto events = detail::membership_events(f, p, tol);

    std::vector<detail::TangencyEvent> close;
    for (const auto& ev : events) {
        if (ev.separation <= tol.eps_mult) close.push_back(ev);
    }

    Region3 region;
    if (close.size() >= 2) {
        region.kind = Region3::Kind::OnNodalSet;
        return region;
    }
    if (close.size() == 1) {
        region.kind = Region3::Kind::OnCaustic;
        region.sheet = detail::sheet_for_double_root(e, A, close[0].t_hat * e.a * e.a, tol);
        return region;
    }

    int in_max = 0, in_min = 0;
    for (const RootEntry& entry : rs.entries) {
        const double r = entry.root;
        if (r > -1.0 && r < -f.b2) in_max += entry.multiplicity;
        if (r > -f.b2 && r < -f.c2) in_min += entry.multiplicity;
    }
    if (in_max >= 2 && in_min >= 2) {
        region.kind = Region3::Kind::InsideBoth;
    } else if (in_max >= 2) {
        region.kind = Region3::Kind::InsideExactlyOne;
        region.sheet = Sheet::MaxRadius;
    } else if (in_min >= 2) {
        region.kind = Region3::Kind::InsideExactlyOne;
        region.sheet = Sheet::MinRadius;
    } else {
        region.kind = Region3::Kind::OutsideBoth;
    }
    return region;
}

}  // namespace apollonius

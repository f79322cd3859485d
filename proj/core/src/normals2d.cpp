#include "apollonius/normals2d.hpp"

#include <algorithm>
#include <cmath>

#include "apollonius/roots.hpp"

namespace apollonius {

namespace {

constexpr double kPi = 3.14159265358979323846264;
constexpr double kTwoPi = 2.0 * kPi;

void validate_ellipse(const Ellipse2& e) {
    if (!(std::isfinite(e.a) && std::isfinite(e.b)) || e.a <= 0 || e.b <= 0 ||
        e.a < e.b) {
        throw Error(Errc::InvalidEllipse, "ellipse must satisfy a >= b > 0");
    }
}

void validate_point(Point2 A) {
    if (!(std::isfinite(A.x) && std::isfinite(A.y))) {
        throw Error(Errc::OutOfRange, "query point must be finite");
    }
}

bool is_circle(const Ellipse2& e, const Tolerances& tol) {
    return e.a - e.b <= tol.eps_axis * e.a;
}

Point2 param_point(const Ellipse2& e, double theta) {
    return {e.a * std::cos(theta), e.b * std::sin(theta)};
}

double wrap_angle(double t) {
    t = std::fmod(t, kTwoPi);
    if (t < 0) t += kTwoPi;
    return t;
}

double angle_of(const Ellipse2& e, Point2 B) {
    return wrap_angle(std::atan2(B.y / e.b, B.x / e.a));
}

// Newton refinement of the stationarity condition (P(theta)-A) . P'(theta) = 0
double polish_theta(const Ellipse2& e, Point2 A, double theta) {
    for (int it = 0; it < 4; ++it) {
        const double ct = std::cos(theta), st = std::sin(theta);
        const Point2 P{e.a * ct, e.b * st};
        const Vec2 d1{-e.a * st, e.b * ct};
        const Vec2 d2{-e.a * ct, -e.b * st};
        const Vec2 r = P - A;
        const double h = dot(r, d1);
        const double dh = dot(d1, d1) + dot(r, d2);
        if (dh == 0.0) break;
        const double step = h / dh;
        theta -= step;
        if (std::abs(step) < 1e-15) break;
    }
    return theta;
}

Foot2 foot_at(const Ellipse2& e, double theta, int mult) {
    const double t = wrap_angle(theta);
    return {param_point(e, t), t, mult};
}

Foot2 foot_from_point(const Ellipse2& e, Point2 B, int mult) {
    const double t = angle_of(e, B);
    return {param_point(e, t), t, mult};
}

void sort_feet(std::vector<Foot2>& feet) {
    std::sort(feet.begin(), feet.end(),
              [](const Foot2& u, const Foot2& v) { return u.angle < v.angle; });
}

// A on the major axis: feet at (+-a, 0) plus an off-axis pair strictly inside
// the evolute vertex; the pair merges into the near vertex foot (root
// multiplicity 3) exactly at the vertex.
NormalFan2 axis_feet_major(const Ellipse2& e, double X, const Tolerances& tol) {
    NormalFan2 fan;
    fan.solver_path = SolverPath2::AxisDegenerateY0;
    const double a2 = e.a * e.a, b2 = e.b * e.b;
    const double xv = (a2 - b2) / e.a;
    const double band = tol.eps_deg * e.a;
    const double d = std::abs(X) - xv;
    int mult_pos = 1, mult_neg = 1;
    if (std::abs(d) <= band) {
        (X >= 0 ? mult_pos : mult_neg) = 3;
    }
    fan.feet.push_back(foot_at(e, 0.0, mult_pos));
    fan.feet.push_back(foot_at(e, kPi, mult_neg));
    if (d < -band) {
        const double xbar = a2 * X / (a2 - b2);
        const double s = std::max(0.0, 1.0 - (xbar / e.a) * (xbar / e.a));
        const double ybar = e.b * std::sqrt(s);
        fan.feet.push_back(foot_from_point(e, {xbar, ybar}, 1));
        fan.feet.push_back(foot_from_point(e, {xbar, -ybar}, 1));
    }
    sort_feet(fan.feet);
    fan.count = Count::finite(static_cast<int>(fan.feet.size()));
    return fan;
}

// A on the minor axis; the off-axis pair sits on the opposite side of the
// center and merges at the far pole when |Y| reaches (a^2-b^2)/b.
NormalFan2 axis_feet_minor(const Ellipse2& e, double Y, const Tolerances& tol) {
    NormalFan2 fan;
    fan.solver_path = SolverPath2::AxisDegenerateX0;
    const double a2 = e.a * e.a, b2 = e.b * e.b;
    const double yv = (a2 - b2) / e.b;
    const double band = tol.eps_deg * e.a;
    const double d = std::abs(Y) - yv;
    int mult_top = 1, mult_bot = 1;
    if (std::abs(d) <= band) {
        (Y >= 0 ? mult_bot : mult_top) = 3;
    }
    fan.feet.push_back(foot_at(e, 0.5 * kPi, mult_top));
    fan.feet.push_back(foot_at(e, 1.5 * kPi, mult_bot));
    if (d < -band) {
        const double ybar = b2 * Y / (b2 - a2);
        const double s = std::max(0.0, 1.0 - (ybar / e.b) * (ybar / e.b));
        const double xbar = e.a * std::sqrt(s);
        fan.feet.push_back(foot_from_point(e, {xbar, ybar}, 1));
        fan.feet.push_back(foot_from_point(e, {-xbar, ybar}, 1));
    }
    sort_feet(fan.feet);
    fan.count = Count::finite(static_cast<int>(fan.feet.size()));
    return fan;
}

// Generic position: the Apollonius hyperbola y = x Y / (eps X - (eps-1) x),
// eps = a^2/b^2, cuts the ellipse where the induced quartic in x vanishes.
NormalFan2 generic_feet(const Ellipse2& e, Point2 A, const Tolerances& tol) {
    NormalFan2 fan;
    fan.solver_path = SolverPath2::ApolloniusHyperbola;
    const double a2 = e.a * e.a, b2 = e.b * e.b;
    const double eps = a2 / b2;
    const double em1 = eps - 1.0;
    const double X = A.x, Y = A.y;

    Poly quartic(std::vector<double>{
        -a2 * eps * eps * X * X,
        2.0 * a2 * eps * X * em1,
        eps * eps * X * X + eps * Y * Y - a2 * em1 * em1,
        -2.0 * eps * X * em1,
        em1 * em1,
    });

    const double slack = 1e-9 * e.a;
    const RootSet rs = real_roots(quartic, Interval{-e.a - slack, e.a + slack}, tol);

    for (const RootEntry& entry : rs.entries) {
        const double x = std::clamp(entry.root, -e.a, e.a);
        const double u = eps * X - em1 * x;
        if (entry.multiplicity % 2 == 0 &&
            std::abs(u) <= 1e-6 * eps * std::max(e.a, std::abs(X))) {
            // The quartic equals (em1 x - eps X)^2 (x^2-a^2) + eps Y^2 x^2, so
            // an even root at the hyperbola pole is the footprint of two real
            // feet straddling it whose ordinates tend to the ellipse ones; the
            // y = x Y / u form is 0/0 there.  Happens for A near an axis.
            const double s = 1.0 - (x / e.a) * (x / e.a);
            if (s > 0.0) {
                const double ybar = e.b * std::sqrt(s);
                for (double yy : {ybar, -ybar}) {
                    const double seed = std::atan2(yy / e.b, x / e.a);
                    fan.feet.push_back(foot_at(e, polish_theta(e, A, seed), 1));
                }
            }
            continue;
        }
        // The quartic is u^2 (x^2 - a^2) + eps Y^2 x^2, so every real root in
        // (-a, a) is a genuine foot.  Taking the ordinate from the ellipse and
        // only its sign from the hyperbola relation y u = x Y stays accurate
        // when the root sits close to the pole.
        const double s = 1.0 - (x / e.a) * (x / e.a);
        const double y = std::copysign(e.b * std::sqrt(std::max(s, 0.0)), x * Y * u);
        double theta = std::atan2(y / e.b, x / e.a);
        if (entry.multiplicity == 1) theta = polish_theta(e, A, theta);
        fan.feet.push_back(foot_at(e, theta, entry.multiplicity));
    }

    sort_feet(fan.feet);
    fan.count = Count::finite(static_cast<int>(fan.feet.size()));
    return fan;
}

}  // namespace

const char* to_string(SolverPath2 p) {
    switch (p) {
        case SolverPath2::ApolloniusHyperbola: return "ApolloniusHyperbola";
        case SolverPath2::AxisDegenerateX0: return "AxisDegenerateX0";
        case SolverPath2::AxisDegenerateY0: return "AxisDegenerateY0";
        case SolverPath2::Center: return "Center";
        case SolverPath2::CircleRadial: return "CircleRadial";
    }
    return "?";
}

NormalFan2 normal_feet_2d(const Ellipse2& e, Point2 A, const Tolerances& tol) {
    tol.validate();
    validate_ellipse(e);
    validate_point(A);

    if (is_circle(e, tol)) {
        NormalFan2 fan;
        fan.solver_path = SolverPath2::CircleRadial;
        const double r = e.a;
        const double n = norm(A);
        if (n <= tol.eps_deg * r) {
            fan.count = Count::infinite();
            return fan;
        }
        const Point2 u{A.x / n, A.y / n};
        fan.feet.push_back(foot_from_point(e, {r * u.x, r * u.y}, 1));
        fan.feet.push_back(foot_from_point(e, {-r * u.x, -r * u.y}, 1));
        sort_feet(fan.feet);
        fan.count = Count::finite(2);
        return fan;
    }

    const bool x_zero = std::abs(A.x) <= tol.eps_deg * e.a;
    const bool y_zero = std::abs(A.y) <= tol.eps_deg * e.b;

    if (x_zero && y_zero) {
        NormalFan2 fan;
        fan.solver_path = SolverPath2::Center;
        for (double t : {0.0, 0.5 * kPi, kPi, 1.5 * kPi}) {
            fan.feet.push_back(foot_at(e, t, 1));
        }
        fan.count = Count::finite(4);
        return fan;
    }
    if (y_zero) return axis_feet_major(e, A.x, tol);
    if (x_zero) return axis_feet_minor(e, A.y, tol);
    return generic_feet(e, A, tol);
}

NormalFan2 normal_feet_2d(const Ellipse2& e, Point3 A, const Tolerances& tol) {
    // dropping the out-of-plane coordinate preserves perpendicularity onto
    // the plane curve (three perpendiculars)
    return normal_feet_2d(e, Point2{A.x, A.y}, tol);
}

Point2 astroida_point(const Ellipse2& e, double t) {
    validate_ellipse(e);
    Tolerances tol;
    if (is_circle(e, tol)) {
        throw Error(Errc::CircleDegenerate, "a circle has a point evolute");
    }
    const double f = e.a * e.a - e.b * e.b;
    const double ct = std::cos(t), st = std::sin(t);
    return {f / e.a * ct * ct * ct, f / e.b * st * st * st};
}

double astroida_residual(const Ellipse2& e, Point2 A) {
    validate_ellipse(e);
    Tolerances tol;
    if (is_circle(e, tol)) {
        throw Error(Errc::CircleDegenerate, "a circle has a point evolute");
    }
    const double f = e.a * e.a - e.b * e.b;
    return std::cbrt(e.a * e.a * A.x * A.x) + std::cbrt(e.b * e.b * A.y * A.y) -
           std::cbrt(f * f);
}

Region2 astroida_region(const Ellipse2& e, Point2 A, const Tolerances& tol) {
    tol.validate();
    validate_ellipse(e);
    validate_point(A);
    if (is_circle(e, tol)) {
        throw Error(Errc::CircleDegenerate, "a circle has a point evolute");
    }
    const double f = e.a * e.a - e.b * e.b;
    const double r = astroida_residual(e, A);
    const double band = tol.eps_on * std::cbrt(f * f);
    if (r > band) return Region2::OutsideAstroida;
    if (r < -band) return Region2::InsideAstroida;
    // the evolute meets the axes only at its four cusp vertices
    if (std::abs(A.x) <= tol.eps_deg * e.a || std::abs(A.y) <= tol.eps_deg * e.b) {
        return Region2::OnAstroidaVertex;
    }
    return Region2::OnAstroida;
}

Count count_normals_2d(const Ellipse2& e, Point2 A, const Tolerances& tol) {
    tol.validate();
    validate_ellipse(e);
    validate_point(A);
    if (is_circle(e, tol)) {
        if (norm(A) <= tol.eps_deg * e.a) return Count::infinite();
        return Count::finite(2);
    }
    switch (astroida_region(e, A, tol)) {
        case Region2::InsideAstroida: return Count::finite(4);
        case Region2::OutsideAstroida: return Count::finite(2);
        case Region2::OnAstroida: return Count::finite(3);
        case Region2::OnAstroidaVertex: return Count::finite(2);
    }
    return Count::finite(2);
}

std::optional<std::array<Point2, 4>> ellipse_evolute_intersections(
    const Ellipse2& e, const Tolerances& tol) {
    tol.validate();
    validate_ellipse(e);
    const double a2 = e.a * e.a, b2 = e.b * e.b;
    const double margin = a2 - 2.0 * b2;
    if (margin <= tol.eps_axis * a2) return std::nullopt;
    const double den = (a2 - b2) * std::pow(a2 + b2, 3);
    const double x0 = std::sqrt(a2 * a2 * std::pow(margin, 3) / den);
    const double y0 = std::sqrt(b2 * b2 * std::pow(2.0 * a2 - b2, 3) / den);
    return std::array<Point2, 4>{Point2{x0, y0}, Point2{x0, -y0},
                                 Point2{-x0, y0}, Point2{-x0, -y0}};
}

double joachimsthal_residual(const Ellipse2& e, Point2 A, const Tolerances& tol) {
    const NormalFan2 fan = normal_feet_2d(e, A, tol);
    if (fan.count.is_infinite() || fan.count.value() != 4) {
        throw Error(Errc::NotFourNormals,
                    "concyclicity check needs four distinct normal feet");
    }

    // nearest foot, ties broken by smallest angle (feet are angle-sorted)
    size_t nearest = 0;
    double best = norm(fan.feet[0].point - A);
    for (size_t i = 1; i < 4; ++i) {
        const double d = norm(fan.feet[i].point - A);
        if (d < best - tol.eps_on * e.a) {
            best = d;
            nearest = i;
        }
    }

    Point2 tri[3];
    size_t k = 0;
    for (size_t i = 0; i < 4; ++i) {
        if (i != nearest) tri[k++] = fan.feet[i].point;
    }
    const Point2 reflected{-fan.feet[nearest].point.x, -fan.feet[nearest].point.y};

    // circumcircle of the remaining three feet
    const double ax = tri[1].x - tri[0].x, ay = tri[1].y - tri[0].y;
    const double bx = tri[2].x - tri[0].x, by = tri[2].y - tri[0].y;
    const double det = 2.0 * (ax * by - ay * bx);
    if (det == 0.0) {
        throw Error(Errc::NotFourNormals, "normal feet are degenerate");
    }
    const double ra = dot(tri[1], tri[1]) - dot(tri[0], tri[0]);
    const double rb = dot(tri[2], tri[2]) - dot(tri[0], tri[0]);
    const Point2 center{(by * ra - ay * rb) / det, (ax * rb - bx * ra) / det};
    const double radius = norm(tri[0] - center);
    return std::abs(norm(reflected - center) - radius) / radius;
}

Point2 evolute_center_2d(const Ellipse2& e, Point2 B, const Tolerances& tol) {
    tol.validate();
    validate_ellipse(e);
    if (std::abs(quadric_residual(e, B)) > tol.eps_on) {
        throw Error(Errc::OffSurface, "point is not on the ellipse");
    }
    const double theta = angle_of(e, B);
    const double f = e.a * e.a - e.b * e.b;
    const double ct = std::cos(theta), st = std::sin(theta);
    return {f / e.a * ct * ct * ct, -f / e.b * st * st * st};
}

std::pair<Point2, Point2> tangent_points_2d(const Ellipse2& e, Point2 A,
                                            const Tolerances& tol) {
    tol.validate();
    validate_ellipse(e);
    validate_point(A);
    const double u = A.x / e.a, v = A.y / e.b;
    const double m = u * u + v * v;
    if (std::abs(m - 1.0) <= tol.eps_on) {
        throw Error(Errc::PointOnEllipse, "tangent lines degenerate on the ellipse");
    }
    if (m < 1.0) {
        throw Error(Errc::PointNotExterior, "no tangent lines from an interior point");
    }
    const double s = std::sqrt(m - 1.0);
    const Point2 first{e.a * (u - v * s) / m, e.b * (v + u * s) / m};
    const Point2 second{e.a * (u + v * s) / m, e.b * (v - u * s) / m};
    return {first, second};
}

}  // namespace apollonius

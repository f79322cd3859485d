#include "apollonius/types.hpp"

#include <algorithm>
#include <cmath>

namespace apollonius {

void Tolerances::validate() const {
    const bool positive = eps_root > 0 && eps_mult > 0 && eps_deg > 0 &&
                          eps_on > 0 && eps_axis > 0 && max_iter > 0;
    if (!positive) {
        throw Error(Errc::OutOfRange, "tolerances must be strictly positive");
    }
    if (eps_mult <= eps_root) {
        throw Error(Errc::OutOfRange, "eps_mult must exceed eps_root");
    }
}

Count Count::finite(int k) {
    if (k < 0) {
        throw Error(Errc::OutOfRange, "finite count must be nonnegative");
    }
    Count c;
    c.k_ = k;
    return c;
}

Count Count::infinite() {
    Count c;
    c.infinite_ = true;
    return c;
}

int Count::value() const {
    if (infinite_) {
        throw Error(Errc::OutOfRange, "count is infinite");
    }
    return k_;
}

const char* to_string(ShapeClass s) {
    switch (s) {
        case ShapeClass::Triaxial: return "Triaxial";
        case ShapeClass::ProlateLike: return "ProlateLike";
        case ShapeClass::OblateLike: return "OblateLike";
        case ShapeClass::Sphere: return "Sphere";
    }
    return "?";
}

const char* to_string(Sheet s) {
    return s == Sheet::MaxRadius ? "MaxRadius" : "MinRadius";
}

Ellipse2 make_ellipse(double a, double b, const Tolerances& tol) {
    tol.validate();
    if (!(std::isfinite(a) && std::isfinite(b)) || a <= 0 || b <= 0) {
        throw Error(Errc::NonPositiveAxis, "ellipse axes must be finite and positive");
    }
    Ellipse2 e;
    e.axes_swapped = b > a;
    e.a = std::max(a, b);
    e.b = std::min(a, b);
    return e;
}

Ellipsoid3 make_ellipsoid(double a, double b, double c, const Tolerances& tol) {
    tol.validate();
    if (!(std::isfinite(a) && std::isfinite(b) && std::isfinite(c)) ||
        a <= 0 || b <= 0 || c <= 0) {
        throw Error(Errc::NonPositiveAxis, "ellipsoid axes must be finite and positive");
    }

    std::array<double, 3> v{a, b, c};
    std::array<int, 3> perm{0, 1, 2};
    // stable descending sort of three entries, tracking source indices
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2 - i; ++j) {
            if (v[j] < v[j + 1]) {
                std::swap(v[j], v[j + 1]);
                std::swap(perm[j], perm[j + 1]);
            }
        }
    }

    Ellipsoid3 e;
    e.a = v[0];
    e.b = v[1];
    e.c = v[2];
    e.axis_permutation = perm;

    const double band = tol.eps_axis * e.a;
    const bool ab = (e.a - e.b) <= band;
    const bool bc = (e.b - e.c) <= band;
    const bool ac = (e.a - e.c) <= band;
    if (ac) {
        e.shape_class = ShapeClass::Sphere;
    } else if (ab) {
        e.shape_class = ShapeClass::OblateLike;
    } else if (bc) {
        e.shape_class = ShapeClass::ProlateLike;
    } else {
        e.shape_class = ShapeClass::Triaxial;
    }
    return e;
}

double quadric_residual(const Ellipse2& e, Point2 p) {
    const double u = p.x / e.a;
    const double v = p.y / e.b;
    return u * u + v * v - 1.0;
}

double quadric_residual(const Ellipsoid3& e, Point3 p) {
    const double u = p.x / e.a;
    const double v = p.y / e.b;
    const double w = p.z / e.c;
    return u * u + v * v + w * w - 1.0;
}

Vec2 outward_normal(const Ellipse2& e, Point2 p, const Tolerances& tol) {
    if (std::abs(quadric_residual(e, p)) > tol.eps_on) {
        throw Error(Errc::OffSurface, "point is not on the ellipse");
    }
    return {p.x / (e.a * e.a), p.y / (e.b * e.b)};
}

Vec3 outward_normal(const Ellipsoid3& e, Point3 p, const Tolerances& tol) {
    if (std::abs(quadric_residual(e, p)) > tol.eps_on) {
        throw Error(Errc::OffSurface, "point is not on the ellipsoid");
    }
    return {p.x / (e.a * e.a), p.y / (e.b * e.b), p.z / (e.c * e.c)};
}

}  // namespace apollonius

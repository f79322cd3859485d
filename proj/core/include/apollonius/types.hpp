#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace apollonius {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

using Point2 = Vec2;
using Point3 = Vec3;

inline Vec2 operator+(Vec2 u, Vec2 v) { return {u.x + v.x, u.y + v.y}; }
inline Vec2 operator-(Vec2 u, Vec2 v) { return {u.x - v.x, u.y - v.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
inline double dot(Vec2 u, Vec2 v) { return u.x * v.x + u.y * v.y; }
inline double cross(Vec2 u, Vec2 v) { return u.x * v.y - u.y * v.x; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }

inline Vec3 operator+(Vec3 u, Vec3 v) { return {u.x + v.x, u.y + v.y, u.z + v.z}; }
inline Vec3 operator-(Vec3 u, Vec3 v) { return {u.x - v.x, u.y - v.y, u.z - v.z}; }
inline Vec3 operator*(double s, Vec3 v) { return {s * v.x, s * v.y, s * v.z}; }
inline double dot(Vec3 u, Vec3 v) { return u.x * v.x + u.y * v.y + u.z * v.z; }
inline Vec3 cross(Vec3 u, Vec3 v) {
    return {u.y * v.z - u.z * v.y, u.z * v.x - u.x * v.z, u.x * v.y - u.y * v.x};
}
inline double norm(Vec3 v) { return std::sqrt(dot(v, v)); }

enum class Errc {
    NonPositiveAxis,
    InvalidEllipse,
    OffSurface,
    CircleDegenerate,
    NotFourNormals,
    PointNotExterior,
    PointOnEllipse,
    PoleParameter,
    AxisEqualityDegenerate,
    DegenerateCoordinate,
    DegenerateZeroPolynomial,
    NotRevolution,
    NotTriaxial,
    FamiliesAbsent,
    OutOfRange,
    OutOfCoordinateRange,
    CurveAbsentForShape,
    IoFailure,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

// Relative tolerances used across the library.  eps_mult governs when two
// nearly coincident polynomial roots are treated as one double root; it must
// stay well above eps_root so that refinement noise never looks like a
// genuine root collision.
struct Tolerances {
    double eps_root = 1e-12;
    double eps_mult = 1e-7;
    double eps_deg = 1e-10;
    double eps_on = 1e-9;
    double eps_axis = 1e-9;
    int max_iter = 64;

    void validate() const;
};

// Number of concurrent normals: a small finite value or infinity (rings of
// normal feet on surfaces of revolution).
class Count {
public:
    Count() = default;

    static Count finite(int k);
    static Count infinite();

    bool is_infinite() const noexcept { return infinite_; }
    int value() const;

    friend bool operator==(const Count& a, const Count& b) = default;

private:
    int k_ = 0;
    bool infinite_ = false;
};

enum class ShapeClass { Triaxial, ProlateLike, OblateLike, Sphere };

// Caustic sheet selector.  MaxRadius is the sheet swept by centers of the
// larger principal curvature radius, MinRadius by the smaller.
enum class Sheet { MaxRadius, MinRadius };

const char* to_string(ShapeClass s);
const char* to_string(Sheet s);

struct Ellipse2 {
    double a = 1.0;
    double b = 1.0;
    bool axes_swapped = false;
};

struct Ellipsoid3 {
    double a = 1.0;
    double b = 1.0;
    double c = 1.0;
    ShapeClass shape_class = ShapeClass::Sphere;
    // canonical axis i was input axis axis_permutation[i]
    std::array<int, 3> axis_permutation{0, 1, 2};
};

Ellipse2 make_ellipse(double a, double b, const Tolerances& tol = {});
Ellipsoid3 make_ellipsoid(double a, double b, double c, const Tolerances& tol = {});

double quadric_residual(const Ellipse2& e, Point2 p);
double quadric_residual(const Ellipsoid3& e, Point3 p);

Vec2 outward_normal(const Ellipse2& e, Point2 p, const Tolerances& tol = {});
Vec3 outward_normal(const Ellipsoid3& e, Point3 p, const Tolerances& tol = {});

}  // namespace apollonius

#include <doctest.h>

#include <cmath>
#include <random>

#include "apollonius/normals2d.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace apollonius;

namespace {

// stationarity of the squared distance at every reported foot
void check_feet_are_normal(const Ellipse2& e, Point2 A, const NormalFan2& fan) {
    for (const Foot2& f : fan.feet) {
        CHECK(std::abs(quadric_residual(e, f.point)) <= 1e-9);
        const Vec2 n = outward_normal(e, f.point);
        const Vec2 d = A - f.point;
        CHECK(std::abs(cross(d, n)) <= 1e-8 * (norm(d) + 1.0) * norm(n));
    }
}

}  // namespace

TEST_CASE("four normals from a generic interior point") {
    const Ellipse2 e = make_ellipse(2.0, 1.0);
    const Point2 A{0.5, 0.2};
    const NormalFan2 fan = normal_feet_2d(e, A);
    CHECK(fan.count == Count::finite(4));
    CHECK(fan.solver_path == SolverPath2::ApolloniusHyperbola);
    check_feet_are_normal(e, A, fan);
}

TEST_CASE("two normals from a far exterior point") {
    const Ellipse2 e = make_ellipse(2.0, 1.0);
    const Point2 A{4.0, 3.0};
    const NormalFan2 fan = normal_feet_2d(e, A);
    CHECK(fan.count == Count::finite(2));
    check_feet_are_normal(e, A, fan);
}

TEST_CASE("major-axis point inside the evolute splits into vertex and mirror feet") {
    const Ellipse2 e = make_ellipse(2.0, 1.0);
    const NormalFan2 fan = normal_feet_2d(e, Point2{1.4, 0.0});
    CHECK(fan.count == Count::finite(4));
    CHECK(fan.solver_path == SolverPath2::AxisDegenerateY0);
    // off-axis pair at x = a^2 X / (a^2 - b^2)
    const double xbar = 4.0 * 1.4 / 3.0;
    int off_axis = 0;
    for (const Foot2& f : fan.feet) {
        if (std::abs(f.point.y) > 0.1) {
            ++off_axis;
            CHECK(f.point.x == doctest::Approx(xbar).epsilon(1e-12));
            CHECK(std::abs(f.point.y) ==
                  doctest::Approx(std::sqrt(1.0 - xbar * xbar / 4.0)).epsilon(1e-10));
        }
    }
    CHECK(off_axis == 2);
}

TEST_CASE("center sees the four vertices") {
    const Ellipse2 e = make_ellipse(2.0, 1.0);
    const NormalFan2 fan = normal_feet_2d(e, Point2{0.0, 0.0});
    CHECK(fan.count == Count::finite(4));
    CHECK(fan.solver_path == SolverPath2::Center);
    check_feet_are_normal(e, Point2{0.0, 0.0}, fan);
}

TEST_CASE("circle queries take the radial path") {
    const Ellipse2 c = make_ellipse(1.5, 1.5);
    const NormalFan2 off = normal_feet_2d(c, Point2{0.4, 0.3});
    CHECK(off.count == Count::finite(2));
    CHECK(off.solver_path == SolverPath2::CircleRadial);
    const NormalFan2 center = normal_feet_2d(c, Point2{0.0, 0.0});
    CHECK(center.count.is_infinite());
}

TEST_CASE("evolute cusp merges three normals into one foot") {
    const Ellipse2 e = make_ellipse(2.0, 1.0);
    const NormalFan2 fan = normal_feet_2d(e, Point2{1.5, 0.0});
    REQUIRE(fan.feet.size() == 2);
    CHECK(fan.feet[0].multiplicity + fan.feet[1].multiplicity == 4);
    const Foot2& merged = fan.feet[0].multiplicity == 3 ? fan.feet[0] : fan.feet[1];
    CHECK(merged.multiplicity == 3);
    CHECK(merged.point.x == doctest::Approx(2.0));
    CHECK(astroida_region(e, Point2{1.5, 0.0}) == Region2::OnAstroidaVertex);
}

TEST_CASE("point on a generic evolute arm has one tangential double foot") {
    const Ellipse2 e = make_ellipse(2.0, 1.0);
    const Point2 A = astroida_point(e, 0.7);
    CHECK(astroida_region(e, A) == Region2::OnAstroida);
    CHECK(std::abs(astroida_residual(e, A)) <= 1e-12);
    const NormalFan2 fan = normal_feet_2d(e, A);
    CHECK(fan.count == Count::finite(3));
    int doubled = 0;
    for (const Foot2& f : fan.feet) doubled += f.multiplicity == 2;
    CHECK(doubled == 1);
}

TEST_CASE("evolute region decides the normal count") {
    const Ellipse2 e = make_ellipse(2.0, 1.0);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ux(-3.0, 3.0);
    std::uniform_real_distribution<double> uy(-2.0, 2.0);
    int inside = 0;
    int outside = 0;
    for (int i = 0; i < 200; ++i) {
        const Point2 A{ux(rng), uy(rng)};
        if (std::abs(oracle::astroida_margin(e, A)) < 1e-2) continue;
        const Region2 r = astroida_region(e, A);
        const Count n = count_normals_2d(e, A);
        if (r == Region2::InsideAstroida) {
            CHECK(n == Count::finite(4));
            ++inside;
        } else if (r == Region2::OutsideAstroida) {
            CHECK(n == Count::finite(2));
            ++outside;
        }
    }
    CHECK(inside > 10);
    CHECK(outside > 10);
}

TEST_CASE("feet survive a query point hugging the minor axis") {
    // roots of the induced quartic sit within rounding of its pole; the feet
    // used to lose their ordinates there
    const Ellipse2 e = make_ellipse(3.1024942783880771, 1.6108403800071696);
    const Point2 A{-1.355825173760969, 1.8976665537233176e-05};
    const NormalFan2 fan = normal_feet_2d(e, A);
    CHECK(fan.count == Count::finite(4));
    check_feet_are_normal(e, A, fan);
    int mirrored = 0;
    for (const Foot2& f : fan.feet) mirrored += std::abs(f.point.y) > 1.0;
    CHECK(mirrored == 2);
}

TEST_CASE("normal counts match a dense scan oracle") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 60; ++i) {
        const Ellipse2 e = oracle::random_ellipse(rng);
        const Point2 A = oracle::random_point_2d(rng, e);
        if (std::abs(oracle::astroida_margin(e, A)) < 1e-5) continue;
        const Count got = count_normals_2d(e, A);
        REQUIRE(!got.is_infinite());
        CHECK(got.value() == oracle::count_normals_scan(e, A));
    }
}

TEST_CASE("ellipse and evolute cross at the classical points") {
    const auto pts = ellipse_evolute_intersections(make_ellipse(2.0, 1.0));
    REQUIRE(pts.has_value());
    const double x0 = std::sqrt(128.0 / 375.0);
    const double y0 = std::sqrt(343.0 / 375.0);
    for (const Point2& p : *pts) {
        CHECK(std::abs(p.x) == doctest::Approx(x0).epsilon(1e-12));
        CHECK(std::abs(p.y) == doctest::Approx(y0).epsilon(1e-12));
        CHECK(std::abs(quadric_residual(make_ellipse(2.0, 1.0), p)) <= 1e-10);
        CHECK(std::abs(astroida_residual(make_ellipse(2.0, 1.0), p)) <= 1e-10);
    }
    CHECK(!ellipse_evolute_intersections(make_ellipse(1.3, 1.0)).has_value());
}

TEST_CASE("reflected nearest foot is concyclic with the other three") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 40; ++i) {
        const Ellipse2 e = oracle::random_ellipse(rng);
        const Point2 A = oracle::random_inside_astroida(rng, e);
        CHECK(joachimsthal_residual(e, A) <= 1e-9);
    }
}

TEST_CASE("tangent points from an exterior point lie on the polar line") {
    const Ellipse2 e = make_ellipse(2.0, 1.0);
    const Point2 A{3.0, 2.0};
    const auto [t1, t2] = tangent_points_2d(e, A);
    for (const Point2& t : {t1, t2}) {
        CHECK(std::abs(quadric_residual(e, t)) <= 1e-12);
        // polar line of A
        CHECK(t.x * A.x / 4.0 + t.y * A.y / 1.0 == doctest::Approx(1.0).epsilon(1e-12));
        const Vec2 n = outward_normal(e, t);
        CHECK(std::abs(dot(A - t, n)) <= 1e-9 * norm(A - t) * norm(n));
    }
    CHECK_THROWS_AS((void)tangent_points_2d(e, Point2{0.5, 0.1}), Error);
}

TEST_CASE("osculating centers trace the evolute") {
    const Ellipse2 e = make_ellipse(2.0, 1.0);
    for (double th : {0.3, 0.6, 1.1, 2.4, 4.0}) {
        const Point2 B{2.0 * std::cos(th), std::sin(th)};
        const Point2 C = evolute_center_2d(e, B);
        CHECK(std::abs(astroida_residual(e, C)) <= 1e-12);
        const NormalFan2 fan = normal_feet_2d(e, C);
        // B itself is the tangential foot of its own center
        bool found = false;
        for (const Foot2& f : fan.feet) {
            found = found || (norm(f.point - B) <= 1e-5 && f.multiplicity >= 2);
        }
        CHECK(found);
    }
}

TEST_CASE("planar query accepts a spatial point through its projection") {
    const Ellipse2 e = make_ellipse(2.0, 1.0);
    const NormalFan2 flat = normal_feet_2d(e, Point2{0.5, 0.2});
    const NormalFan2 lifted = normal_feet_2d(e, Point3{0.5, 0.2, 3.0});
    REQUIRE(flat.feet.size() == lifted.feet.size());
    for (size_t i = 0; i < flat.feet.size(); ++i) {
        CHECK(norm(flat.feet[i].point - lifted.feet[i].point) <= 1e-12);
    }
}

TEST_CASE("invalid ellipse axes are rejected") {
    CHECK_THROWS_AS((void)make_ellipse(0.0, 1.0), Error);
    CHECK_THROWS_AS((void)make_ellipse(2.0, -1.0), Error);
}

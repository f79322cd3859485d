#include <doctest.h>

#include <cmath>
#include <random>

#include "apollonius/caustics.hpp"
#include "apollonius/normals3d.hpp"
#include "apollonius/structure.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace apollonius;

TEST_CASE("axis gaps add to zero with the triaxial sign pattern") {
    const Ellipsoid3 e = make_ellipsoid(4.0, 3.0, 2.0);
    const AxisGaps g = axis_gaps(e);
    CHECK(g.alpha == doctest::Approx(5.0));
    CHECK(g.beta == doctest::Approx(-12.0));
    CHECK(g.gamma == doctest::Approx(7.0));
    CHECK(g.alpha + g.beta + g.gamma == doctest::Approx(0.0));
    CHECK(g.omega == doctest::Approx(25.0 + 84.0));
    CHECK_THROWS_AS((void)axis_gaps(make_ellipsoid(4.0, 3.0, 3.0)), Error);
}

TEST_CASE("classification predicates for the reference shape") {
    const TopologyCase tc = classify(make_ellipsoid(4.0, 3.0, 2.0));
    CHECK(tc.predicates.a2_minus_2c2 == doctest::Approx(8.0));
    CHECK(tc.predicates.b2_minus_2c2 == doctest::Approx(1.0));
    CHECK(tc.predicates.a2_plus_c2_minus_2b2 == doctest::Approx(2.0));
    CHECK(tc.predicates.a2_minus_2b2 == doctest::Approx(-2.0));
    CHECK(tc.predicates.curvature_balance == doctest::Approx(-1.0 / 48.0));
    CHECK(tc.predicates.d_value == doctest::Approx(-86.0));
    CHECK(tc.existence_class == 3);
    CHECK(tc.label == CaseLabel::vii);
}

TEST_CASE("labels follow the predicate tree on a spread of shapes") {
    struct Row {
        double a, b, c;
        CaseLabel want;
        int existence;
    };
    const Row rows[] = {
        {4.7, 4.4, 4.0, CaseLabel::i, 1},    {4.9, 4.4, 4.0, CaseLabel::ii, 1},
        {4.7, 4.0, 3.0, CaseLabel::iii, 2},  {5.0, 4.0, 3.0, CaseLabel::iv, 2},
        {5.0, 3.3, 2.5, CaseLabel::v, 2},    {5.0, 3.7, 2.5, CaseLabel::vii, 3},
        {5.0, 2.8, 1.8, CaseLabel::viii, 3}, {5.0, 4.4, 1.6, CaseLabel::ix, 3},
        {4.5, 3.5, 1.4, CaseLabel::x, 3},    {5.0, 3.7, 2.0, CaseLabel::xi, 3},
        {5.0, 3.0, 1.0, CaseLabel::xii, 3},
    };
    for (const Row& r : rows) {
        const TopologyCase tc = classify(make_ellipsoid(r.a, r.b, r.c));
        CHECK(tc.label == r.want);
        CHECK(tc.existence_class == r.existence);
    }
}

TEST_CASE("the nine plane curves satisfy their implicit equations") {
    const Ellipsoid3 e = make_ellipsoid(4.0, 3.0, 2.0);
    for (int which = 1; which <= 9; ++which) {
        for (int k = 0; k < 16; ++k) {
            const double t = 2.0 * M_PI * k / 16.0;
            const Point3 p = section_curve(e, which, t);
            CHECK(std::abs(testing::plane_curve_residual(e, which, p)) <= 1e-9);
        }
    }
    CHECK_THROWS_AS((void)section_curve(e, 10, 0.0), Error);
    CHECK_THROWS_AS((void)section_curve(make_ellipsoid(4.0, 3.0, 3.0), 4, 0.0), Error);
}

TEST_CASE("family points solve both of their defining plane curves") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 12; ++trial) {
        const Ellipsoid3 e = oracle::random_triaxial(rng);
        for (int family = 1; family <= 9; ++family) {
            const FamilyResult r = intersection_family(e, family);
            if (!r.exists) continue;
            const auto [c1, c2] = testing::family_curve_pair(family);
            REQUIRE(!r.points.empty());
            for (const Point3& p : r.points) {
                CHECK(std::abs(testing::plane_curve_residual(e, c1, p)) <= 1e-9);
                CHECK(std::abs(testing::plane_curve_residual(e, c2, p)) <= 1e-9);
            }
        }
    }
}

TEST_CASE("family coordinates of the reference shape") {
    const Ellipsoid3 e = make_ellipsoid(4.0, 3.0, 2.0);

    const FamilyResult f1 = intersection_family(e, 1);
    CHECK(!f1.exists);
    CHECK(f1.condition_value == doctest::Approx(-2.0));
    CHECK(f1.squared_coords[0] < 0.0);

    const FamilyResult f2 = intersection_family(e, 2);
    CHECK(f2.exists);
    CHECK(f2.squared_coords[0] == doctest::Approx(1.3653333333333333).epsilon(1e-14));
    CHECK(f2.squared_coords[2] == doctest::Approx(3.6586666666666665).epsilon(1e-14));

    const FamilyResult f5 = intersection_family(e, 5);
    CHECK(f5.exists);
    CHECK(f5.squared_coords[0] == doctest::Approx(1.2564102564102564).epsilon(1e-14));
    CHECK(f5.squared_coords[2] == doctest::Approx(3.6858974358974357).epsilon(1e-14));

    const FamilyResult f6 = intersection_family(e, 6);
    CHECK(f6.exists);
    CHECK(f6.squared_coords[1] == doctest::Approx(5.1882352941176473).epsilon(1e-14));
    CHECK(f6.squared_coords[2] == doctest::Approx(1.6941176470588235).epsilon(1e-14));

    // families living on cross sections of the surface stay on the surface
    for (const FamilyResult* fr : {&f5, &f6}) {
        for (const Point3& p : fr->points) {
            CHECK(std::abs(quadric_residual(e, p)) <= 1e-12);
        }
    }

    const FamilyResult f8 = intersection_family(e, 8);
    CHECK(f8.exists);
    CHECK(f8.squared_coords[0] == doctest::Approx(343.0 / 192.0).epsilon(1e-14));
    CHECK(f8.squared_coords[2] == doctest::Approx(125.0 / 48.0).epsilon(1e-14));

    CHECK(!intersection_family(e, 9).exists);
    CHECK_THROWS_AS((void)intersection_family(e, 10), Error);
}

TEST_CASE("the focal-section family never turns real") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 30; ++trial) {
        const FamilyResult f4 = intersection_family(oracle::random_triaxial(rng), 4);
        CHECK(!f4.exists);
        CHECK(std::min(f4.squared_coords[0], f4.squared_coords[1]) < 0.0);
    }
}

TEST_CASE("tangential family flips sides exactly at the curvature balance") {
    const FamilyResult inside = intersection_family(make_ellipsoid(4.0, std::sqrt(9.59), 2.0), 8);
    const FamilyResult on = intersection_family(make_ellipsoid(4.0, std::sqrt(9.6), 2.0), 8);
    const FamilyResult outside = intersection_family(make_ellipsoid(4.0, std::sqrt(9.61), 2.0), 8);
    REQUIRE(inside.surface_side.has_value());
    REQUIRE(on.surface_side.has_value());
    REQUIRE(outside.surface_side.has_value());
    CHECK(*inside.surface_side == -1);
    CHECK(*on.surface_side == 0);
    CHECK(*outside.surface_side == 1);

    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 20; ++trial) {
        const Ellipsoid3 e = oracle::random_triaxial(rng);
        const FamilyResult f8 = intersection_family(e, 8);
        REQUIRE(f8.tangency_parallel_error.has_value());
        CHECK(*f8.tangency_parallel_error <= 1e-6);
        const double cb = classify(e).predicates.curvature_balance;
        if (std::abs(cb) < 1e-6) continue;
        REQUIRE(f8.surface_side.has_value());
        CHECK(*f8.surface_side == (cb > 0.0 ? 1 : -1));
    }
}

TEST_CASE("order of the paired families across their shared plane") {
    const OrderChecks ref = family_order_checks(make_ellipsoid(4.0, 3.0, 2.0));
    REQUIRE(ref.plane_y0.has_value());
    REQUIRE(ref.plane_x0.has_value());
    CHECK(ref.plane_y0->du == doctest::Approx(0.1089230769230769).epsilon(1e-12));
    CHECK(ref.plane_y0->dv == doctest::Approx(-0.02723076923076917).epsilon(1e-10));
    CHECK(ref.plane_x0->du == doctest::Approx(-5.1808616027202872).epsilon(1e-12));
    CHECK(ref.plane_x0->dv == doctest::Approx(2.3026051567645718).epsilon(1e-12));

    std::mt19937_64 rng(47);
    int y_pairs = 0;
    int x_pairs = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const Ellipsoid3 e = oracle::random_triaxial(rng);
        OrderChecks oc;
        try {
            oc = family_order_checks(e);
        } catch (const Error&) {
            continue;
        }
        if (oc.plane_y0) {
            ++y_pairs;
            CHECK(oc.plane_y0->du > 0.0);
            CHECK(oc.plane_y0->dv < 0.0);
        }
        if (oc.plane_x0 && std::abs(oc.d_value) > 1e-6) {
            ++x_pairs;
            CHECK((oc.plane_x0->du > 0.0) == (oc.d_value > 0.0));
            CHECK((oc.plane_x0->dv < 0.0) == (oc.d_value > 0.0));
        }
    }
    CHECK(y_pairs > 10);
    CHECK(x_pairs > 10);
    CHECK_THROWS_AS((void)family_order_checks(make_ellipsoid(4.7, 4.4, 4.0)), Error);
}

TEST_CASE("nodal curve spans the sheet crossing from one family to another") {
    const Ellipsoid3 e = make_ellipsoid(4.0, 3.0, 2.0);
    CHECK(nodal_t_max(e) == doctest::Approx(5.0 / 17.0).epsilon(1e-14));

    // the parameter ends touch the tangential and astroida-focal families
    const auto sq0 = nodal_curve_squares(e, 0.0);
    const FamilyResult f8 = intersection_family(e, 8);
    CHECK(sq0[0] == doctest::Approx(f8.squared_coords[0]).epsilon(1e-12));
    CHECK(sq0[2] == doctest::Approx(f8.squared_coords[2]).epsilon(1e-12));

    const auto sq1 = nodal_curve_squares(e, nodal_t_max(e));
    const FamilyResult f7 = intersection_family(e, 7);
    CHECK(std::abs(sq1[2]) <= 1e-12);
    CHECK(sq1[0] == doctest::Approx(f7.squared_coords[0]).epsilon(1e-9));
    CHECK(sq1[1] == doctest::Approx(f7.squared_coords[1]).epsilon(1e-9));

    // with the z-gap dominating instead, the far end lands in the x=0 plane
    const Ellipsoid3 x = make_ellipsoid(4.5, 3.5, 1.4);
    const auto sqx = nodal_curve_squares(x, nodal_t_max(x));
    const FamilyResult f9 = intersection_family(x, 9);
    CHECK(std::abs(sqx[0]) <= 1e-12);
    CHECK(sqx[1] == doctest::Approx(f9.squared_coords[1]).epsilon(1e-9));
    CHECK(sqx[2] == doctest::Approx(f9.squared_coords[2]).epsilon(1e-9));
}

TEST_CASE("nodal curve points lie on both caustic sheets") {
    const Ellipsoid3 e = make_ellipsoid(4.0, 3.0, 2.0);
    for (double t : {0.05, 0.1, 0.2, 0.27}) {
        const auto p = nodal_curve_point(e, t);
        REQUIRE(p.has_value());
        CHECK(region_3d(e, *p).kind == Region3::Kind::OnNodalSet);
        const auto hit = on_caustic(e, *p);
        REQUIRE(hit.has_value());
        CHECK(hit->margin <= 1e-7);
    }
    CHECK_THROWS_AS((void)nodal_curve_squares(e, -0.05), Error);
    CHECK_THROWS_AS((void)nodal_curve_squares(e, 0.7), Error);
}

TEST_CASE("surface crossing polynomial of the nodal curve") {
    const NodalPolys np = nodal_polys(make_ellipsoid(4.0, 3.0, 2.0));
    REQUIRE(np.p.c.size() == 3);
    CHECK(np.p.c[0] == doctest::Approx(-420.0).epsilon(1e-12));
    CHECK(np.p.c[1] == doctest::Approx(-15028.0).epsilon(1e-12));
    CHECK(np.p.c[2] == doctest::Approx(3784.0).epsilon(1e-12));

    // rational identity between the curve and its crossing polynomial
    for (const auto axes : {std::array<double, 3>{4.0, 3.0, 2.0},
                            std::array<double, 3>{4.5, 3.5, 1.4}}) {
        const Ellipsoid3 e = make_ellipsoid(axes[0], axes[1], axes[2]);
        const NodalPolys polys = nodal_polys(e);
        const double denom_axes =
            std::pow(e.a, 4.0) * std::pow(e.b, 4.0) * std::pow(e.c, 4.0);
        const double tmax = nodal_t_max(e);
        for (int k = 1; k < 16; ++k) {
            const double t = tmax * k / 16.0;
            const auto pt = nodal_curve_point(e, t);
            if (!pt) continue;
            const double lhs = quadric_residual(e, *pt);
            const double q = polys.q.eval(t);
            const double rhs = polys.p.eval(t) * q * q /
                               (denom_axes * (3.0 * t - 2.0) * (3.0 * t - 2.0) *
                                polys.r.eval(t));
            CHECK(testing::rel_err(lhs, rhs) <= 1e-9);
        }
    }
}

TEST_CASE("triple point exists exactly when the crossing root is admissible") {
    const TriplePointResult none = triple_point(make_ellipsoid(4.0, 3.0, 2.0));
    CHECK(!none.exists);
    CHECK(none.curvature_balance == doctest::Approx(-1.0 / 48.0));

    const Ellipsoid3 x = make_ellipsoid(4.5, 3.5, 1.4);
    const TriplePointResult tp = triple_point(x);
    REQUIRE(tp.exists);
    CHECK(tp.t0 == doctest::Approx(0.2433319320754895).epsilon(1e-10));
    CHECK(tp.point.x == doctest::Approx(0.12648662027670221).epsilon(1e-8));
    CHECK(tp.point.y == doctest::Approx(1.7124227519743793).epsilon(1e-8));
    CHECK(tp.point.z == doctest::Approx(1.2203560131511677).epsilon(1e-8));
    CHECK(std::abs(quadric_residual(x, tp.point)) <= 1e-8);
    CHECK(region_3d(x, tp.point).kind == Region3::Kind::OnNodalSet);

    // exactly one crossing root inside the parameter range
    const RootSet rs = real_roots(nodal_polys(x).p, Interval{0.0, nodal_t_max(x)});
    CHECK(rs.entries.size() == 1);
}

TEST_CASE("surface piercing curve of the reference shape") {
    const Ellipsoid3 e = make_ellipsoid(4.0, 3.0, 2.0);
    const Tolerances tol;

    const auto p = intersection_curve_point(e, Sheet::MinRadius, -12.0);
    REQUIRE(p.has_value());
    CHECK(p->x == doctest::Approx(0.69829724875517563).epsilon(1e-12));
    CHECK(p->y == doctest::Approx(0.52698603939220789).epsilon(1e-12));
    CHECK(p->z == doctest::Approx(1.9376962266223947).epsilon(1e-12));
    CHECK(std::abs(quadric_residual(e, *p)) <= 1e-9);
    const auto hit = on_caustic(e, *p, tol);
    REQUIRE(hit.has_value());
    CHECK(hit->margin <= tol.eps_mult);

    // real sub-ranges: the min branch closes at -9.6, the max branch at -108/13
    CHECK(intersection_curve_point(e, Sheet::MaxRadius, -8.5).has_value());
    CHECK(!intersection_curve_point(e, Sheet::MaxRadius, -6.0).has_value());
    CHECK(!intersection_curve_point(e, Sheet::MinRadius, -9.3).has_value());
    CHECK_THROWS_AS(
        (void)intersection_curve_squares(e, Sheet::MaxRadius, -1728.0 / 244.0), Error);

    // the window ends reproduce the plane families
    const auto end_b = intersection_curve_squares(e, Sheet::MaxRadius, -9.0);
    const FamilyResult f5 = intersection_family(e, 5);
    CHECK(end_b[0] == doctest::Approx(f5.squared_coords[0]).epsilon(1e-12));
    CHECK(end_b[2] == doctest::Approx(f5.squared_coords[2]).epsilon(1e-12));

    const auto end_min = intersection_curve_squares(e, Sheet::MinRadius, -9.6);
    const FamilyResult f2 = intersection_family(e, 2);
    CHECK(end_min[0] == doctest::Approx(f2.squared_coords[0]).epsilon(1e-12));
    CHECK(end_min[2] == doctest::Approx(f2.squared_coords[2]).epsilon(1e-10));

    const auto end_a = intersection_curve_squares(e, Sheet::MinRadius, -16.0);
    const FamilyResult f6 = intersection_family(e, 6);
    CHECK(end_a[1] == doctest::Approx(f6.squared_coords[1]).epsilon(1e-12));
    CHECK(end_a[2] == doctest::Approx(f6.squared_coords[2]).epsilon(1e-12));
}

TEST_CASE("piercing curve points stay on the surface across both branches") {
    const Ellipsoid3 e = make_ellipsoid(4.0, 3.0, 2.0);
    int real_points = 0;
    for (int k = 0; k <= 24; ++k) {
        const double t = -16.0 + 12.0 * k / 24.0;
        for (Sheet s : {Sheet::MinRadius, Sheet::MaxRadius}) {
            std::optional<Point3> p;
            try {
                p = intersection_curve_point(e, s, t);
            } catch (const Error&) {
                continue;
            }
            if (!p) continue;
            ++real_points;
            CHECK(std::abs(quadric_residual(e, *p)) <= 1e-8);
        }
    }
    CHECK(real_points >= 10);
}

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "apollonius/roots.hpp"

using namespace apollonius;

TEST_CASE("real_roots finds the simple roots of low-degree polynomials") {
    const RootSet quad = real_roots(Poly({-1.0, 0.0, 1.0}));
    REQUIRE(quad.entries.size() == 2);
    CHECK(quad.entries[0].root == doctest::Approx(-1.0));
    CHECK(quad.entries[1].root == doctest::Approx(1.0));
    CHECK(quad.entries[0].multiplicity == 1);
    CHECK(quad.entries[1].multiplicity == 1);

    const RootSet none = real_roots(Poly({1.0, 0.0, 1.0}));
    CHECK(none.entries.empty());
}

TEST_CASE("real_roots reports a constructed double root with multiplicity 2") {
    // (t - 2)^2 (t + 1)
    const Poly p = Poly::from_roots({2.0, 2.0, -1.0});
    const RootSet rs = real_roots(p);
    REQUIRE(rs.entries.size() == 2);
    CHECK(rs.entries[0].root == doctest::Approx(-1.0));
    CHECK(rs.entries[0].multiplicity == 1);
    CHECK(rs.entries[1].root == doctest::Approx(2.0));
    CHECK(rs.entries[1].multiplicity == 2);
}

TEST_CASE("real_roots separates close pairs and merges sub-tolerance ones") {
    const double mid = 1.0;
    for (double delta : {1e-4, 1e-5}) {
        const Poly p = Poly::from_roots({mid - delta, mid + delta, -3.0});
        const RootSet rs = real_roots(p);
        REQUIRE(rs.entries.size() == 3);
        CHECK(rs.entries[1].multiplicity == 1);
        CHECK(rs.entries[2].multiplicity == 1);
        CHECK(rs.entries[1].root == doctest::Approx(mid - delta).epsilon(1e-7));
        CHECK(rs.entries[2].root == doctest::Approx(mid + delta).epsilon(1e-7));
    }
    for (double delta : {1e-9, 1e-11}) {
        const Poly p = Poly::from_roots({mid - delta, mid + delta, -3.0});
        const RootSet rs = real_roots(p);
        REQUIRE(rs.entries.size() == 2);
        CHECK(rs.entries[1].root == doctest::Approx(mid).epsilon(1e-7));
        CHECK(rs.entries[1].multiplicity == 2);
    }
}

TEST_CASE("real_roots respects the requested interval") {
    const Poly p = Poly::from_roots({-2.0, 0.5, 3.0});
    const RootSet rs = real_roots(p, Interval{0.0, 2.0});
    REQUIRE(rs.entries.size() == 1);
    CHECK(rs.entries[0].root == doctest::Approx(0.5));
}

TEST_CASE("real_roots entries are sorted with disjoint brackets") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> roots;
        for (int k = 0; k < 6; ++k) roots.push_back(u(rng));
        const RootSet rs = real_roots(Poly::from_roots(roots));
        CHECK(rs.total_multiplicity() <= 6);
        for (size_t i = 0; i + 1 < rs.entries.size(); ++i) {
            CHECK(rs.entries[i].root < rs.entries[i + 1].root);
            CHECK(rs.entries[i].hi <= rs.entries[i + 1].lo);
        }
        for (const RootEntry& en : rs.entries) {
            CHECK(en.lo <= en.root);
            CHECK(en.root <= en.hi);
        }
    }
}

TEST_CASE("real_roots recovers six well-separated sextic roots") {
    const std::vector<double> want = {-4.1, -2.0, -0.3, 0.7, 2.2, 3.9};
    const RootSet rs = real_roots(Poly::from_roots(want));
    REQUIRE(rs.entries.size() == 6);
    for (size_t i = 0; i < 6; ++i) {
        CHECK(rs.entries[i].root == doctest::Approx(want[i]).epsilon(1e-10));
    }
}

TEST_CASE("real_roots handles a triple root") {
    // (t - 1)^3 (t + 2)
    const Poly p = Poly::from_roots({1.0, 1.0, 1.0, -2.0});
    const RootSet rs = real_roots(p);
    REQUIRE(rs.entries.size() == 2);
    CHECK(rs.entries[1].root == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(rs.entries[1].multiplicity == 3);
}

TEST_CASE("real_roots rejects the zero polynomial") {
    CHECK_THROWS_AS((void)real_roots(Poly({0.0, 0.0})), Error);
}

TEST_CASE("square_free_multiplicity reads off the factor structure") {
    // (t - 2)^2 (t + 1)
    const auto sig = square_free_multiplicity(Poly::from_roots({2.0, 2.0, -1.0}));
    REQUIRE(sig.size() == 2);
    CHECK(sig[0].first == 1);
    CHECK(sig[0].second == 1);
    CHECK(sig[1].first == 1);
    CHECK(sig[1].second == 2);
}

TEST_CASE("poly derivative and accurate evaluation agree with closed forms") {
    const Poly p({1.0, -2.0, 0.0, 4.0});  // 1 - 2t + 4t^3
    CHECK(p.degree() == 3);
    CHECK(p.eval(2.0) == doctest::Approx(29.0));
    CHECK(p.eval_accurate(2.0) == doctest::Approx(29.0));
    const Poly d = p.derivative();
    CHECK(d.degree() == 2);
    CHECK(d.eval(2.0) == doctest::Approx(46.0));
}

TEST_CASE("trimming drops noise-level leading coefficients") {
    const Poly p({1.0, 2.0, 1e-18});
    CHECK(p.trimmed(1e-12).degree() == 1);
    CHECK(p.max_abs_coeff() == doctest::Approx(2.0));
}

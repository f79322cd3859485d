#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "apollonius/caustics.hpp"
#include "apollonius/mesh.hpp"
#include "apollonius/normals3d.hpp"
#include "apollonius/roots.hpp"

namespace {

using namespace apollonius;

std::vector<Point3> query_points(int n) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> span(-6.0, 6.0);
    std::vector<Point3> pts;
    pts.reserve(n);
    for (int i = 0; i < n; ++i) pts.push_back({span(rng), span(rng), span(rng)});
    return pts;
}

void bm_sextic_roots(benchmark::State& state) {
    const Tolerances tol;
    const Ellipsoid3 e = make_ellipsoid(4.0, 3.0, 2.0, tol);
    const auto pts = query_points(256);
    size_t i = 0;
    for (auto _ : state) {
        const Poly p = normal_sextic(e, pts[i++ % pts.size()], tol);
        benchmark::DoNotOptimize(real_roots(p, {}, tol));
    }
}
BENCHMARK(bm_sextic_roots);

void bm_normal_feet_3d(benchmark::State& state) {
    const Tolerances tol;
    const Ellipsoid3 e = make_ellipsoid(4.0, 3.0, 2.0, tol);
    const auto pts = query_points(256);
    size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(normal_feet_3d(e, pts[i++ % pts.size()], tol));
    }
}
BENCHMARK(bm_normal_feet_3d);

void bm_on_caustic(benchmark::State& state) {
    const Tolerances tol;
    const Ellipsoid3 e = make_ellipsoid(4.0, 3.0, 2.0, tol);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 6.283185307179586);
    std::uniform_real_distribution<double> v(-1.0, 1.0);
    std::vector<Point3> centers;
    for (int k = 0; k < 256; ++k) {
        const double theta = u(rng);
        const double cu = std::cos(theta), su = std::sin(theta);
        const double sv = v(rng), cv = std::sqrt(1.0 - sv * sv);
        const Point3 P{e.a * cv * cu, e.b * cv * su, e.c * sv};
        centers.push_back(curvature_centers(e, P, tol)[0].point);
    }
    size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(on_caustic(e, centers[i++ % centers.size()], tol));
    }
}
BENCHMARK(bm_on_caustic);

void bm_caustic_mesh(benchmark::State& state) {
    const Tolerances tol;
    const Ellipsoid3 e = make_ellipsoid(4.0, 3.0, 2.0, tol);
    const int res = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(caustic_mesh(e, Sheet::MaxRadius, res, res / 2, tol));
    }
}
BENCHMARK(bm_caustic_mesh)->Arg(32)->Arg(64);

}  // namespace

BENCHMARK_MAIN();

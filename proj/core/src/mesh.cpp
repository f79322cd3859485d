#include "apollonius/mesh.hpp"

#include <cmath>

#include "apollonius/caustics.hpp"

namespace apollonius {

namespace {

constexpr double kPi = 3.14159265358979323846;

double tri_area(Point3 p, Point3 q, Point3 r) {
    return 0.5 * norm(cross(q - p, r - p));
}

double longest_edge_sq(Point3 p, Point3 q, Point3 r) {
    const double e0 = dot(q - p, q - p);
    const double e1 = dot(r - q, r - q);
    const double e2 = dot(p - r, p - r);
    return std::max(e0, std::max(e1, e2));
}

// Cells touching the cusp edges of the sheet produce slivers whose aspect
// blows up even though their area is not yet zero; both gates are needed.
bool keep_triangle(const TriMesh& m, int i, int j, int k, double area_floor) {
    const double area = tri_area(m.vertices[i], m.vertices[j], m.vertices[k]);
    if (area < area_floor) return false;
    return longest_edge_sq(m.vertices[i], m.vertices[j], m.vertices[k]) / (2.0 * area) <=
           1e4;
}

}  // namespace

TriMesh caustic_mesh(const Ellipsoid3& e, Sheet sheet, int res_u, int res_v,
                     const Tolerances& tol) {
    if (e.shape_class != ShapeClass::Triaxial) {
        throw Error(Errc::NotTriaxial, "caustic sheets degenerate without three axes");
    }
    if (res_u < 8 || res_v < 8) {
        throw Error(Errc::OutOfRange, "mesh resolution must be at least 8x8");
    }

    TriMesh mesh;
    mesh.sheet = sheet;
    mesh.vertices.reserve(static_cast<size_t>(res_u) * (res_v + 1));
    for (int i = 0; i <= res_v; ++i) {
        const double v = -kPi / 2 + kPi * i / res_v;
        for (int j = 0; j < res_u; ++j) {
            const double u = 2 * kPi * j / res_u;
            const Point3 P{e.a * std::cos(v) * std::cos(u),
                           e.b * std::cos(v) * std::sin(u), e.c * std::sin(v)};
            const auto centers = curvature_centers(e, P, tol);
            mesh.vertices.push_back(sheet == Sheet::MaxRadius ? centers[0].point
                                                              : centers[1].point);
        }
    }

    const double area_floor = 1e-12 * e.a * e.a;
    for (int i = 0; i < res_v; ++i) {
        for (int j = 0; j < res_u; ++j) {
            const int jn = (j + 1) % res_u;
            const int v00 = i * res_u + j;
            const int v01 = i * res_u + jn;
            const int v10 = (i + 1) * res_u + j;
            const int v11 = (i + 1) * res_u + jn;
            if (keep_triangle(mesh, v00, v01, v11, area_floor)) {
                mesh.triangles.push_back({v00, v01, v11});
            }
            if (keep_triangle(mesh, v00, v11, v10, area_floor)) {
                mesh.triangles.push_back({v00, v11, v10});
            }
        }
    }
    return mesh;
}

Polyline sample_curve(const Ellipsoid3& e, CurveId id, int n, const Tolerances& tol) {
    if (n < 2) {
        throw Error(Errc::OutOfRange, "need at least two samples");
    }

    if (id.kind != CurveId::Kind::Section || id.section >= 4) {
        if (e.shape_class != ShapeClass::Triaxial) {
            throw Error(Errc::CurveAbsentForShape,
                        "curve collapses when axes coincide");
        }
    }

    Polyline line;
    line.id = id;
    line.params.reserve(n);
    line.points.reserve(n);

    switch (id.kind) {
        case CurveId::Kind::Section:
            for (int k = 0; k < n; ++k) {
                const double t = 2 * kPi * k / n;
                line.params.push_back(t);
                line.points.push_back(section_curve(e, id.section, t));
            }
            return line;
        case CurveId::Kind::Nodal: {
            const double t_max = nodal_t_max(e);
            for (int k = 0; k < n; ++k) {
                const double t = t_max * k / (n - 1);
                if (auto p = nodal_curve_point(e, t, {1, 1, 1}, tol)) {
                    line.params.push_back(t);
                    line.points.push_back(*p);
                }
            }
            break;
        }
        case CurveId::Kind::Intersection: {
            const double A = e.a * e.a, B = e.b * e.b, C = e.c * e.c;
            const double lo = id.branch == Sheet::MinRadius ? -A : -B;
            const double hi = id.branch == Sheet::MinRadius ? -B : -C;

            // The curve is real only on a sub-window of the branch domain.
            // Scan for the widest real run and sharpen its ends by bisection
            // so the n samples land on the curve instead of the gaps.
            const auto real_at = [&](double t) {
                const auto sq = intersection_curve_squares(e, id.branch, t);
                const double floor =
                    -tol.eps_on * std::max({std::abs(sq[0]), std::abs(sq[1]),
                                            std::abs(sq[2]), 1.0});
                return std::isfinite(sq[0]) && std::isfinite(sq[1]) &&
                       std::isfinite(sq[2]) &&
                       std::min({sq[0], sq[1], sq[2]}) >= floor;
            };
            const int scan = 2048;
            int best_lo = -1, best_len = 0;
            for (int k = 0; k <= scan;) {
                if (!real_at(lo + (hi - lo) * k / scan)) {
                    ++k;
                    continue;
                }
                const int run_lo = k;
                while (k <= scan && real_at(lo + (hi - lo) * k / scan)) ++k;
                if (k - run_lo > best_len) {
                    best_len = k - run_lo;
                    best_lo = run_lo;
                }
            }
            if (best_len == 0) {
                break;
            }
            const auto sharpen = [&](int inside, int outside) {
                double u = lo + (hi - lo) * inside / scan;
                double v = lo + (hi - lo) * outside / scan;
                for (int it = 0; it < 64; ++it) {
                    const double m = 0.5 * (u + v);
                    (real_at(m) ? u : v) = m;
                }
                return u;
            };
            const int best_hi = best_lo + best_len - 1;
            const double w_lo = best_lo == 0 ? lo : sharpen(best_lo, best_lo - 1);
            const double w_hi = best_hi == scan ? hi : sharpen(best_hi, best_hi + 1);
            for (int k = 0; k < n; ++k) {
                const double t = w_lo + (w_hi - w_lo) * k / (n - 1);
                try {
                    if (auto p = intersection_curve_point(e, id.branch, t, {1, 1, 1}, tol)) {
                        line.params.push_back(t);
                        line.points.push_back(*p);
                    }
                } catch (const Error& err) {
                    if (err.code() != Errc::PoleParameter) throw;
                }
            }
            break;
        }
    }
    if (line.points.empty()) {
        throw Error(Errc::CurveAbsentForShape, "curve has no real point for this shape");
    }
    return line;
}

}  // namespace apollonius

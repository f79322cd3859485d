#pragma once

#include <array>
#include <vector>

#include "apollonius/structure.hpp"
#include "apollonius/types.hpp"

namespace apollonius {

struct TriMesh {
    std::vector<Point3> vertices;
    std::vector<std::array<int, 3>> triangles;  // 0-based into vertices
    Sheet sheet = Sheet::MaxRadius;
};

// Triangulated caustic sheet, built by pushing a latitude-longitude grid of
// the surface through the curvature-center map.  res_u counts longitudes
// (wrapped), res_v latitude bands; both at least 8.  Degenerate and
// needle-shaped triangles near the cusp edges are dropped, vertices are all
// kept.
TriMesh caustic_mesh(const Ellipsoid3& e, Sheet sheet, int res_u, int res_v,
                     const Tolerances& tol = {});

struct Polyline {
    CurveId id;
    std::vector<double> params;
    std::vector<Point3> points;
};

// Samples a named curve with n parameters: section curves over a full period
// (endpoint not repeated), nodal and intersection curves over their closed
// parameter interval.  Samples where the curve is not real are skipped;
// a curve with no real sample throws CurveAbsentForShape.
Polyline sample_curve(const Ellipsoid3& e, CurveId id, int n,
                      const Tolerances& tol = {});

}  // namespace apollonius

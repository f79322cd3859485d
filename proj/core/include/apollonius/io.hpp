#pragma once

#include <string>

#include "apollonius/mesh.hpp"
#include "apollonius/normals2d.hpp"
#include "apollonius/normals3d.hpp"

namespace apollonius {

// Wavefront OBJ with one "v" line per vertex (17 significant digits) and
// 1-based "f" triangles, LF line endings.  Output is a pure function of the
// mesh, byte for byte.
std::string to_obj(const TriMesh& mesh);

// "t,x,y,z" header plus one row per sample, 17 significant digits.
std::string to_csv(const Polyline& line);

// {"count": k or "inf", "solver_path": ..., "feet": [{t, x, y, z,
// multiplicity}, ...]} with feet sorted by t.
std::string fan_to_json(const NormalFan3& fan);

// Planar variant; feet carry the ellipse angle as t.
std::string fan_to_json(const NormalFan2& fan);

void write_file(const std::string& path, const std::string& content);

// "section:N" (N in 1..9), "nodal", "intersection:min", "intersection:max".
CurveId parse_curve_id(const std::string& text);

}  // namespace apollonius

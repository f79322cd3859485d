#include "apollonius/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include <json.hpp>

namespace apollonius {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string to_obj(const TriMesh& mesh) {
    std::string out;
    out.reserve(mesh.vertices.size() * 64 + mesh.triangles.size() * 24);
    for (const Point3& v : mesh.vertices) {
        out += "v ";
        out += fmt17(v.x);
        out += ' ';
        out += fmt17(v.y);
        out += ' ';
        out += fmt17(v.z);
        out += '\n';
    }
    char buf[64];
    for (const auto& t : mesh.triangles) {
        std::snprintf(buf, sizeof(buf), "f %d %d %d\n", t[0] + 1, t[1] + 1, t[2] + 1);
        out += buf;
    }
    return out;
}

std::string to_csv(const Polyline& line) {
    std::string out = "t,x,y,z\n";
    for (size_t i = 0; i < line.points.size(); ++i) {
        out += fmt17(line.params[i]);
        out += ',';
        out += fmt17(line.points[i].x);
        out += ',';
        out += fmt17(line.points[i].y);
        out += ',';
        out += fmt17(line.points[i].z);
        out += '\n';
    }
    return out;
}

std::string fan_to_json(const NormalFan3& fan) {
    ordered_json j;
    if (fan.count.is_infinite()) {
        j["count"] = "inf";
    } else {
        j["count"] = fan.count.value();
    }
    j["solver_path"] = to_string(fan.solver_path);
    auto feet = fan.feet;
    std::sort(feet.begin(), feet.end(),
              [](const Foot3& a, const Foot3& b) { return a.t < b.t; });
    j["feet"] = ordered_json::array();
    for (const Foot3& f : feet) {
        j["feet"].push_back({{"t", f.t},
                             {"x", f.point.x},
                             {"y", f.point.y},
                             {"z", f.point.z},
                             {"multiplicity", f.multiplicity}});
    }
    return j.dump(2) + "\n";
}

std::string fan_to_json(const NormalFan2& fan) {
    ordered_json j;
    if (fan.count.is_infinite()) {
        j["count"] = "inf";
    } else {
        j["count"] = fan.count.value();
    }
    j["solver_path"] = to_string(fan.solver_path);
    auto feet = fan.feet;
    std::sort(feet.begin(), feet.end(),
              [](const Foot2& a, const Foot2& b) { return a.angle < b.angle; });
    j["feet"] = ordered_json::array();
    for (const Foot2& f : feet) {
        j["feet"].push_back({{"t", f.angle},
                             {"x", f.point.x},
                             {"y", f.point.y},
                             {"multiplicity", f.multiplicity}});
    }
    return j.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(Errc::IoFailure, "cannot open " + path + " for writing");
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
        throw Error(Errc::IoFailure, "short write to " + path);
    }
}

CurveId parse_curve_id(const std::string& text) {
    CurveId id;
    auto section_of = [&](const std::string& num) {
        size_t pos = 0;
        int n = 0;
        try {
            n = std::stoi(num, &pos);
        } catch (const std::exception&) {
            throw Error(Errc::OutOfRange, "bad curve id: " + text);
        }
        if (pos != num.size() || n < 1 || n > 9) {
            throw Error(Errc::OutOfRange, "bad curve id: " + text);
        }
        return n;
    };
    if (text == "nodal") {
        id.kind = CurveId::Kind::Nodal;
    } else if (text == "intersection:min" || text == "intersection:max") {
        id.kind = CurveId::Kind::Intersection;
        id.branch = text.back() == 'n' ? Sheet::MinRadius : Sheet::MaxRadius;
    } else if (text.rfind("section:", 0) == 0) {
        id.kind = CurveId::Kind::Section;
        id.section = section_of(text.substr(8));
    } else if (text.rfind("lemma2:", 0) == 0) {
        id.kind = CurveId::Kind::Section;
        id.section = section_of(text.substr(7));
    } else {
        throw Error(Errc::OutOfRange, "bad curve id: " + text);
    }
    return id;
}

}  // namespace apollonius

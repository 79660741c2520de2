#include "cpoly/render.hpp"

#include <Eigen/Geometry>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

#include "cpoly/errors.hpp"
#include "cpoly/properness.hpp"

namespace cpoly {

namespace {

struct PlaneCircle {
    bool is_line = false;
    Eigen::Vector2d center{0, 0};  // circle
    double radius = 0;
    Eigen::Vector2d point{0, 0};  // line: point + s * dir
    Eigen::Vector2d dir{0, 0};
};

// Image of the circle bounding cap (u, h) under stereographic projection
// from the rotated pole: (c - h) r^2 + 2 a X + 2 b Y - (c + h) = 0 with
// (a, b, c) the rotated center direction.
PlaneCircle project_cap(const Cap& cap, const Eigen::Matrix3d& rot) {
    const Eigen::Vector3d u = rot * cap.u;
    const double a = u[0], b = u[1], c = u[2], h = cap.h;
    PlaneCircle out;
    if (std::abs(c - h) < 1e-9) {
        out.is_line = true;
        const Eigen::Vector2d n(2 * a, 2 * b);
        const double n2 = n.squaredNorm();
        out.point = n * ((c + h) / n2);
        out.dir = Eigen::Vector2d(-n[1], n[0]).normalized();
        return out;
    }
    out.center = Eigen::Vector2d(-a / (c - h), -b / (c - h));
    out.radius = std::sqrt(std::max(1.0 - h * h, 0.0)) / std::abs(c - h);
    return out;
}

Eigen::Vector2d project_point(const Eigen::Vector3d& x, const Eigen::Matrix3d& rot) {
    const Eigen::Vector3d y = rot * x;
    return {y[0] / (1.0 - y[2]), y[1] / (1.0 - y[2])};
}

std::string num(double x) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.8f", x);
    return buf;
}

}  // namespace

std::string render(const CPolyhedron& P, const RenderSpec& spec) {
    // Collect every cap that will be drawn, nudging the pole off of them.
    std::vector<Cap> vertex_caps;
    for (const auto& d : P.disks) vertex_caps.push_back(disk_to_cap(d));

    std::vector<Cap> ortho_caps;
    std::vector<std::pair<int, Cap>> link_caps;
    if (spec.draw_orthocircles) {
        const HyperbolicityReport hyp = is_hyperbolic(P);
        for (const auto& od : hyp.orthodisks)
            if (od) ortho_caps.push_back(disk_to_cap(*od));
    }
    if (spec.link_vertex >= 0) {
        const VertexPolygon vp = vertex_polygon(P, spec.link_vertex);
        for (size_t i = 0; i < vp.half_planes.size(); ++i)
            link_caps.emplace_back(static_cast<int>(i), disk_to_cap(vp.half_planes[i]));
    }

    std::vector<Eigen::Vector3d> dots;
    if (spec.draw_tangency_points) {
        for (int e : unitary_edges(P)) {
            const auto& edge = P.tri.edges[static_cast<size_t>(e)];
            dots.push_back(pencil_point(P.disk(edge.i), P.disk(edge.j)).unit3());
        }
    }

    Eigen::Vector3d pole = spec.pole.normalized();
    for (int nudge = 0; spec.auto_nudge && nudge < 32; ++nudge) {
        bool clear = true;
        auto too_close = [&](const Cap& c) {
            return std::abs(c.u.dot(pole) - c.h) < 1e-6;
        };
        for (const auto& c : vertex_caps) clear &= !too_close(c);
        for (const auto& c : ortho_caps) clear &= !too_close(c);
        for (const auto& [i, c] : link_caps) clear &= !too_close(c);
        for (const auto& d : dots) clear &= (d - pole).norm() > 1e-6;
        if (clear) break;
        pole = (pole + Eigen::Vector3d(1e-3, 1.3e-3, 0.7e-3) * (nudge + 1)).normalized();
    }
    const Eigen::Quaterniond q =
        Eigen::Quaterniond::FromTwoVectors(pole, Eigen::Vector3d(0, 0, 1));
    const Eigen::Matrix3d rot = q.toRotationMatrix();

    // Layout: bounding box over circle extents and dots.
    double lo = -2, hi = 2;
    std::vector<PlaneCircle> vertex_pc, ortho_pc, link_pc;
    for (const auto& c : vertex_caps) vertex_pc.push_back(project_cap(c, rot));
    for (const auto& c : ortho_caps) ortho_pc.push_back(project_cap(c, rot));
    for (const auto& [i, c] : link_caps) link_pc.push_back(project_cap(c, rot));
    for (const auto* group : {&vertex_pc, &ortho_pc, &link_pc})
        for (const auto& pc : *group)
            if (!pc.is_line) {
                lo = std::min({lo, pc.center[0] - pc.radius, pc.center[1] - pc.radius});
                hi = std::max({hi, pc.center[0] + pc.radius, pc.center[1] + pc.radius});
            }
    lo = std::max(lo, -40.0);
    hi = std::min(hi, 40.0);
    const double pad = (hi - lo) * spec.pad_fraction;
    lo -= pad;
    hi += pad;
    const double span = hi - lo;

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" "
           "height=\"800\" viewBox=\""
        << num(lo) << " " << num(lo) << " " << num(span) << " " << num(span) << "\">\n";

    const AnalysisReport rep = analyze(P);
    svg << "  <metadata id=\"cpoly-analysis\">{"
        << "\"strictly_convex\":" << (rep.strictly_convex ? "true" : "false")
        << ",\"convex\":" << (rep.convex ? "true" : "false")
        << ",\"hyperbolic\":" << (rep.hyperbolic ? "true" : "false")
        << ",\"shallowness\":\"" << to_string(rep.shallowness) << "\""
        << ",\"proper\":" << (rep.proper ? "true" : "false") << ",\"unitary_edges\":[";
    for (size_t i = 0; i < rep.unitary.size(); ++i)
        svg << (i ? "," : "") << rep.unitary[i];
    svg << "],\"witness_count\":" << rep.witnesses.size() << "}</metadata>\n";

    const double stroke = span / 400.0;
    auto emit_group = [&](const std::vector<PlaneCircle>& group, const char* color,
                          const char* dash) {
        for (const auto& pc : group) {
            if (pc.is_line) {
                const Eigen::Vector2d a = pc.point - pc.dir * (2 * span);
                const Eigen::Vector2d b = pc.point + pc.dir * (2 * span);
                svg << "  <line x1=\"" << num(a[0]) << "\" y1=\"" << num(a[1]) << "\" x2=\""
                    << num(b[0]) << "\" y2=\"" << num(b[1]) << "\" stroke=\"" << color
                    << "\" stroke-width=\"" << num(stroke) << "\"" << dash
                    << " fill=\"none\"/>\n";
            } else {
                svg << "  <circle cx=\"" << num(pc.center[0]) << "\" cy=\""
                    << num(pc.center[1]) << "\" r=\"" << num(pc.radius) << "\" stroke=\""
                    << color << "\" stroke-width=\"" << num(stroke) << "\"" << dash
                    << " fill=\"none\"/>\n";
            }
        }
    };

    if (spec.draw_vertex_disks) emit_group(vertex_pc, "#1f4e8c", "");
    if (spec.draw_orthocircles)
        emit_group(ortho_pc, "#9467bd", " stroke-dasharray=\"0.06 0.04\"");
    if (spec.link_vertex >= 0)
        emit_group(link_pc, "#2c8c57", " stroke-dasharray=\"0.03 0.03\"");

    if (spec.draw_tangency_points)
        for (const auto& d : dots) {
            const Eigen::Vector2d p = project_point(d, rot);
            svg << "  <circle cx=\"" << num(p[0]) << "\" cy=\"" << num(p[1]) << "\" r=\""
                << num(span / 250.0) << "\" fill=\"#c03028\"/>\n";
        }

    svg << "</svg>\n";
    return svg.str();
}

}  // namespace cpoly

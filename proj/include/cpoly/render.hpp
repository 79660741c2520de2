#ifndef CPOLY_RENDER_HPP
#define CPOLY_RENDER_HPP

#include <Eigen/Core>
#include <string>

#include "cpoly/cpolyhedron.hpp"

namespace cpoly {

/**
 * Stereographic rendering setup. The sphere is projected from `pole`; a
 * circle passing within 1e-6 of the pole nudges it deterministically.
 * Circles away from the pole render as circles, through it as lines.
 */
struct RenderSpec {
    Eigen::Vector3d pole{0, 0, 1};
    bool auto_nudge = true;  // off: circles through the pole become lines
    bool draw_vertex_disks = true;
    bool draw_tangency_points = true;
    bool draw_orthocircles = false;
    int link_vertex = -1;  // >= 0: draw the vertex polygon of that vertex
    double pad_fraction = 0.1;
};

/// Deterministic SVG 1.1 document; the discrete analysis verdict is embedded
/// in a <metadata> block.
std::string render(const CPolyhedron& P, const RenderSpec& spec = {});

}  // namespace cpoly

#endif

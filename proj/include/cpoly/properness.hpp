#ifndef CPOLY_PROPERNESS_HPP
#define CPOLY_PROPERNESS_HPP

#include <limits>
#include <string>
#include <vector>

#include "cpoly/cpolyhedron.hpp"

namespace cpoly {

/**
 * The pencil gadget of an ordered adjacent pair (v, w): a sphere point when
 * the disks meet in at most one point (Inv >= 1), the half-plane disk
 * orthogonal to D_v when they overlap (|Inv| < 1).
 */
struct PairGadget {
    int v = 0, w = 0;
    enum class Kind { Point, HalfPlaneDisk } kind = Kind::Point;
    SpherePoint point;
    Disk disk;
};

PairGadget pair_gadget(const CPolyhedron& P, int v, int w, double eps = 1e-9);

struct ProperWitness {
    int v = 0;        // the vertex whose polygon fails
    int w_point = 0;  // neighbor supplying the point gadget
    int w_disk = 0;   // neighbor supplying the half-plane disk gadget
    double margin = 0;  // <point, disk>, positive when improper
};

struct ProperReport {
    bool proper = true;
    std::vector<ProperWitness> witnesses;
};

/**
 * Pencil characterization of properness: at every vertex v, each point
 * gadget pairs non-positively (up to eps_prop) with each half-plane disk
 * gadget collected over v's neighbors.
 */
ProperReport is_proper(const CPolyhedron& P, double eps_prop = 1e-9);

struct VertexPolygon {
    std::vector<Disk> half_planes;  // polygon-oriented (negated orthodisks), ccw
    std::vector<int> face_indices;  // face of half_planes[i]
    std::vector<int> neighbors;     // ccw neighbor cycle; vertex i sits between
                                    // half-planes i-1 and i at neighbor[i]
    std::vector<int> redundant;     // positions whose boundary arc is degenerate
};

/// The hyperbolic polygon at v: the face orthodisks around v re-oriented so
/// the polygon lies inside each of them, in ccw order.
VertexPolygon vertex_polygon(const CPolyhedron& P, int v);

struct LinkVertex {
    int position = 0;  // between half-planes position-1 and position
    enum class Kind { Visible, Ideal, Hyperideal } kind = Kind::Visible;
    SpherePoint point;  // Visible (inside D_v) or Ideal (on its boundary)
    Disk perp;          // Hyperideal: disk of the common perpendicular
};

/// Classifies every corner of the polygon at v from the consecutive
/// half-plane pairs; cases correspond to the neighbor disk being disjoint
/// from, tangent to, or overlapping D_v.
std::vector<LinkVertex> classify_link(const CPolyhedron& P, int v);

inline constexpr double kInfiniteLength = std::numeric_limits<double>::infinity();

struct LinkPolygon {
    struct Edge {
        enum class Color { Black, Green } color = Color::Black;
        double length = 0;  // kInfiniteLength for black edges at ideal corners
    };
    struct Angle {
        enum class Kind { Real, Zero, Imaginary } kind = Kind::Real;
        double value = 0;  // interior angle, or the green length for Imaginary
    };
    std::vector<Edge> edges;    // cyclic traversal order
    std::vector<Angle> angles;  // one per link vertex position
    int hyperideal_count = 0;
};

/// Truncated link polygon of a proper vertex: black edge lengths along each
/// polygon geodesic, green edges across hyperideal corners, and the angle
/// data. Throws ImproperVertex (carrying witnesses) when v is improper.
LinkPolygon truncation(const CPolyhedron& P, int v);

/// Angle at A of a proper triangle with visible vertices A, B and one
/// hyperideal vertex, from the black edge lengths a, b, c opposite to
/// A, B and the hyperideal vertex.
double law_of_cosines(double a, double b, double c);

struct AnalysisReport {
    bool strictly_convex = false;
    bool convex = false;
    int edge_determinant_sign = 0;
    double min_abs_psi = 0;
    bool hyperbolic = false;
    std::vector<int> unitary;  // edge indices
    Shallowness shallowness = Shallowness::NotShallow;
    bool proper = false;
    std::vector<ProperWitness> witnesses;
};

/// Full predicate suite over one polyhedron.
AnalysisReport analyze(const CPolyhedron& P);

}  // namespace cpoly

#endif

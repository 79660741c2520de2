#ifndef CPOLY_CPOLYHEDRON_HPP
#define CPOLY_CPOLYHEDRON_HPP

#include <optional>
#include <string>
#include <vector>

#include "cpoly/disk.hpp"
#include "cpoly/triangulation.hpp"

namespace cpoly {

/**
 * A triangulated circle polyhedron: a validated triangulation together with
 * one oriented disk per vertex. Adjacent vertex-disks may be disjoint,
 * tangent or overlapping but never nested (Inv > -1 on edges).
 */
struct CPolyhedron {
    Triangulation tri;
    std::vector<Disk> disks;

    CPolyhedron() = default;
    CPolyhedron(Triangulation t, std::vector<Disk> d);

    int n() const { return tri.n; }
    const Disk& disk(int v) const { return disks[static_cast<size_t>(v)]; }
};

/// Psi(ij) = det4(v_i, v_j, v_k, v_l) with (i,j,k,l) the oriented edge
/// quadruple: left face (i,j,k), right face (j,i,l).
double edge_determinant(const CPolyhedron& P, int edge_index);

struct ConvexityReport {
    bool strictly_convex = false;
    bool convex = false;          // one sign allowing zeros
    int sign = 0;                 // common sign of the edge determinants
    double min_abs_psi = 0;
    std::vector<double> psi;      // per edge, frozen edge order
};

/// Strict convexity: all edge determinants share one sign and stay above
/// eps * (max vertex euclidean norm)^4 in magnitude.
ConvexityReport is_strictly_convex(const CPolyhedron& P, double eps = 1e-9);

/**
 * The unit de Sitter vector orthogonal to the three vertex-disks of a face,
 * sign-fixed so it pairs positively with every off-face vertex-disk. Its
 * boundary circle is the face's orthocircle. Throws NormalNotSpacelike when
 * the face support plane misses the light-cone interior and SignAmbiguous
 * when the off-face pairings do not share a strict sign.
 */
Disk face_orthodisk(const CPolyhedron& P, int face_index, double eps = 1e-9);

struct HyperbolicityReport {
    bool hyperbolic = false;
    std::vector<std::optional<Disk>> orthodisks;  // per face; empty on failure
    std::vector<std::string> failures;            // one message per failed face
};

/// True iff face_orthodisk succeeds on every face; failures are recorded
/// per face instead of thrown.
HyperbolicityReport is_hyperbolic(const CPolyhedron& P);

/// Edges with |Inv(D_i, D_j) - 1| < eps, in the frozen edge order.
std::vector<int> unitary_edges(const CPolyhedron& P, double eps = 1e-9);

enum class Shallowness { Hyperideal, Koebe, GloballyShallow, LocallyShallowOnly, NotShallow };

std::string to_string(Shallowness s);

/// Strongest applicable label; orthogonal pairs (Inv = 0) count as shallow.
Shallowness classify_shallowness(const CPolyhedron& P, double eps = 1e-9);

}  // namespace cpoly

#endif

#ifndef CPOLY_TRIANGULATION_HPP
#define CPOLY_TRIANGULATION_HPP

#include <array>
#include <cstdint>
#include <vector>

namespace cpoly {

/**
 * An oriented triangulation of the sphere: a 3-connected planar graph whose
 * faces are consistently counterclockwise triangles. Vertices are dense
 * 0-based indices; `ids` keeps the external labels in ascending order.
 *
 * Construction goes through validate(), which certifies Euler's relation,
 * edge manifoldness, orientation consistency, single-cycle vertex links and
 * 3-connectedness, and freezes the lexicographic edge order used everywhere
 * downstream (measure vectors, file formats).
 */
struct Triangulation {
    /// Oriented edge record: key (i, j) with i < j; left face (i, j, k),
    /// right face (j, i, l).
    struct Edge {
        int i = 0, j = 0;
        int k = 0, l = 0;
    };

    int n = 0;
    std::vector<std::int64_t> ids;           // external vertex ids, ascending
    std::vector<std::array<int, 3>> faces;   // ccw index triples
    std::vector<Edge> edges;                 // lexicographic by (i, j)
    std::vector<std::vector<int>> neighbors; // per vertex, ccw cyclic order
    std::vector<std::vector<int>> vertex_faces;  // face index of (v, a_i, a_{i+1})

    int edge_count() const { return static_cast<int>(edges.size()); }
    int face_count() const { return static_cast<int>(faces.size()); }

    /// Index of edge {a, b} in the frozen order; -1 if absent.
    int edge_index(int a, int b) const;
    bool adjacent(int a, int b) const { return edge_index(a, b) >= 0; }
};

/**
 * Validates a raw face list over vertices 0..n-1 and builds the derived
 * structures. Throws TooFewVertices, EulerViolation, NonManifoldEdge,
 * InconsistentOrientation or NotThreeConnected.
 */
Triangulation validate(int n, const std::vector<std::array<int, 3>>& raw_faces,
                       const std::vector<std::int64_t>* ids = nullptr);

/// Vertex connectivity by unit-capacity max-flow over split nodes.
int vertex_connectivity(int n, const std::vector<std::array<int, 2>>& undirected_edges);

/// Faces of the k-gonal bipyramid (n = k + 2), poles last: indices k and k+1.
std::vector<std::array<int, 3>> bipyramid_faces(int k);

/// The 4-face tetrahedron triangulation.
std::vector<std::array<int, 3>> tetrahedron_faces();

/// The standard octahedron (bipyramid over a square).
std::vector<std::array<int, 3>> octahedron_faces();

}  // namespace cpoly

#endif

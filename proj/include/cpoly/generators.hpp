#ifndef CPOLY_GENERATORS_HPP
#define CPOLY_GENERATORS_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "cpoly/cpolyhedron.hpp"
#include "cpoly/moebius.hpp"

namespace cpoly {

/// Regular tetrahedron caps at offset 1/sqrt(3): every edge has Inv = 1.
CPolyhedron generate_tetra_koebe();

/// Caps at +-e1, +-e2, +-e3 with offset 1/sqrt(2): adjacent Inv = 1,
/// antipodal Inv = 3.
CPolyhedron generate_octa_koebe();

/// Regular tetrahedron caps at offset h in (1/sqrt(3), 1): all vertex-disks
/// pairwise disjoint with Inv = (h^2 + 1/3) / (1 - h^2).
CPolyhedron generate_tetra_hyperideal(double h);

/// k-gonal bipyramid (n = k + 2) with equatorial caps at offset cos(pi/k)
/// and polar caps at offset sin(pi/k); a Koebe polyhedron for every k >= 3.
CPolyhedron generate_bipyramid_koebe(int k);

/// Perturbs a closed-form Koebe start on n vertices (tetrahedron for n = 4,
/// bipyramid otherwise) with shrinking de Sitter noise until the result
/// certifies globally shallow + strictly convex + hyperbolic.
CPolyhedron generate_random_shallow(int n, std::uint64_t seed, int budget = 10000);

/// base transported by random_moebius(seed, scale).
CPolyhedron generate_transported(const CPolyhedron& base, std::uint64_t seed, double scale);

/// A deliberately improper instance: a vertex whose tangency point with one
/// neighbor lies inside the half-plane disk of a deeply overlapping neighbor.
CPolyhedron generate_improper_star();

/// Dispatch by kind name: tetra-koebe | octa-koebe | tetra-hyperideal |
/// bipyramid-koebe | random-shallow | transported | improper-star.
struct GenerateParams {
    std::optional<double> h;          // tetra-hyperideal
    std::optional<int> k;             // bipyramid-koebe
    std::optional<int> n;             // random-shallow
    std::optional<std::uint64_t> seed;
    std::optional<double> scale;      // transported
    std::optional<std::string> base_kind;  // transported
};
CPolyhedron generate(const std::string& kind, const GenerateParams& params);

/// Applies a Moebius map to every vertex-disk.
CPolyhedron transport(const CPolyhedron& P, const MoebiusMap& phi);

}  // namespace cpoly

#endif

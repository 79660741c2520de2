#ifndef CPOLY_RIGIDITY_HPP
#define CPOLY_RIGIDITY_HPP

#include <Eigen/Core>
#include <array>
#include <vector>

#include "cpoly/cpolyhedron.hpp"

namespace cpoly {

/**
 * A point of the configuration space R^{4n}: one 4-block per vertex in
 * vertex order. Blocks need not be unit de Sitter; `normalized` records
 * whether they are (to 1e-10).
 */
struct ConfigurationState {
    Triangulation tri;
    Eigen::VectorXd coords;  // length 4n
    bool normalized = false;

    int n() const { return tri.n; }
    LVec4 block(int v) const {
        return {coords[4 * v], coords[4 * v + 1], coords[4 * v + 2], coords[4 * v + 3]};
    }
    void set_block(int v, const LVec4& u) {
        coords[4 * v] = u.x;
        coords[4 * v + 1] = u.y;
        coords[4 * v + 2] = u.z;
        coords[4 * v + 3] = u.t;
    }
};

ConfigurationState to_configuration(const CPolyhedron& P);
CPolyhedron to_cpolyhedron(const ConfigurationState& s);

/**
 * The measure vector of a configuration, length 4n-6: first the Lorentz
 * products <p_i, p_j> per edge in the frozen edge order, then <p_i, p_i>
 * per vertex. Edge entries are the negated inversive distances.
 */
Eigen::VectorXd measure(const ConfigurationState& s);

/// Analytic Jacobian of measure: (4n-6) x 4n, edge rows carry the
/// eta-paired partner blocks, vertex rows twice the eta-paired own block.
Eigen::MatrixXd jacobian(const ConfigurationState& s);

struct RankResult {
    int rank = 0;
    Eigen::VectorXd singular_values;
    double gap = 0;  // sigma_r / sigma_{r+1}, +inf past the spectrum end
};

/// Rank at relative threshold tau (count of sigma > tau * sigma_max), with
/// the full spectrum and the gap across the cut for auditability.
RankResult numerical_rank(const Eigen::MatrixXd& J, double tau = 1e-8);

/// Six kernel directions induced by the Lorentz Lie algebra: the k-th flex
/// assigns A_k p_i to block i.
std::array<Eigen::VectorXd, 6> trivial_flex_basis(const ConfigurationState& s);

struct RigidityReport {
    bool rigid = false;
    int rank = 0;
    int expected_rank = 0;  // 4n-6
    double gap = 0;
    bool strictly_convex_certified = false;  // theorem hypothesis check
    Eigen::VectorXd singular_values;
};

/// rank == 4n-6 certification. When the configuration fails the strict
/// convexity hypothesis the rank is still reported with the certificate
/// flag cleared; the theorem then makes no claim.
RigidityReport is_infinitesimally_rigid(const ConfigurationState& s, double tau = 1e-8);

}  // namespace cpoly

#endif

#include "cpoly/rigidity.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <limits>

#include "cpoly/errors.hpp"
#include "cpoly/moebius.hpp"

namespace cpoly {

ConfigurationState to_configuration(const CPolyhedron& P) {
    ConfigurationState s;
    s.tri = P.tri;
    s.coords.resize(4 * P.n());
    for (int v = 0; v < P.n(); ++v) s.set_block(v, P.disk(v).v);
    s.normalized = true;
    return s;
}

CPolyhedron to_cpolyhedron(const ConfigurationState& s) {
    std::vector<Disk> disks;
    disks.reserve(static_cast<size_t>(s.n()));
    for (int v = 0; v < s.n(); ++v) disks.push_back(Disk(s.block(v), 1e-8));
    return CPolyhedron(s.tri, std::move(disks));
}

Eigen::VectorXd measure(const ConfigurationState& s) {
    const int m = s.tri.edge_count();
    Eigen::VectorXd f(m + s.n());
    for (int e = 0; e < m; ++e) {
        const auto& edge = s.tri.edges[static_cast<size_t>(e)];
        f[e] = lorentz_ip(s.block(edge.i), s.block(edge.j));
    }
    for (int v = 0; v < s.n(); ++v) f[m + v] = lorentz_norm2(s.block(v));
    return f;
}

Eigen::MatrixXd jacobian(const ConfigurationState& s) {
    const int m = s.tri.edge_count();
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(m + s.n(), 4 * s.n());
    auto put = [&](int row, int v, const LVec4& g, double scale) {
        const LVec4 p = eta_pair(g);
        J(row, 4 * v) = scale * p.x;
        J(row, 4 * v + 1) = scale * p.y;
        J(row, 4 * v + 2) = scale * p.z;
        J(row, 4 * v + 3) = scale * p.t;
    };
    for (int e = 0; e < m; ++e) {
        const auto& edge = s.tri.edges[static_cast<size_t>(e)];
        put(e, edge.i, s.block(edge.j), 1.0);
        put(e, edge.j, s.block(edge.i), 1.0);
    }
    for (int v = 0; v < s.n(); ++v) put(m + v, v, s.block(v), 2.0);
    return J;
}

RankResult numerical_rank(const Eigen::MatrixXd& J, double tau) {
    RankResult r;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(J);
    r.singular_values = svd.singularValues();
    const double smax = r.singular_values.size() ? r.singular_values[0] : 0.0;
    for (int i = 0; i < r.singular_values.size(); ++i)
        if (r.singular_values[i] > tau * smax) r.rank = i + 1;
    if (r.rank == 0) {
        r.gap = 0.0;
    } else if (r.rank < r.singular_values.size()) {
        r.gap = r.singular_values[r.rank - 1] / r.singular_values[r.rank];
    } else {
        r.gap = std::numeric_limits<double>::infinity();
    }
    return r;
}

std::array<Eigen::VectorXd, 6> trivial_flex_basis(const ConfigurationState& s) {
    std::array<Eigen::VectorXd, 6> flexes;
    const auto& gens = lie_generators();
    for (int k = 0; k < 6; ++k) {
        flexes[k].resize(4 * s.n());
        for (int v = 0; v < s.n(); ++v) {
            const Eigen::Vector4d moved = gens[k] * s.block(v).to_eigen();
            flexes[k].segment<4>(4 * v) = moved;
        }
    }
    return flexes;
}

RigidityReport is_infinitesimally_rigid(const ConfigurationState& s, double tau) {
    RigidityReport rep;
    rep.expected_rank = 4 * s.n() - 6;
    try {
        const CPolyhedron P = to_cpolyhedron(s);
        rep.strictly_convex_certified = is_strictly_convex(P).strictly_convex;
    } catch (const Error&) {
        rep.strictly_convex_certified = false;
    }
    const RankResult rr = numerical_rank(jacobian(s), tau);
    rep.rank = rr.rank;
    rep.gap = rr.gap;
    rep.singular_values = rr.singular_values;
    rep.rigid = rep.rank == rep.expected_rank;
    return rep;
}

}  // namespace cpoly

#include "cpoly/moebius.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <string>

#include "cpoly/errors.hpp"

namespace cpoly {

Eigen::Matrix4d minkowski_eta() {
    Eigen::Matrix4d eta = Eigen::Matrix4d::Identity();
    eta(3, 3) = -1.0;
    return eta;
}

MoebiusMap::MoebiusMap(const Eigen::Matrix4d& m, double eps) : m_(m) {
    const Eigen::Matrix4d eta = minkowski_eta();
    const double res = (m.transpose() * eta * m - eta).cwiseAbs().maxCoeff();
    if (res > eps)
        throw NotRestricted("matrix is not Lorentz-orthogonal, residual " + std::to_string(res));
    if (!(m.determinant() > 0.0))
        throw NotRestricted("matrix reverses orientation (det <= 0)");
    if (!(m(3, 3) > 0.0))
        throw NotRestricted("matrix reverses the time direction");
}

MoebiusMap MoebiusMap::compose(const MoebiusMap& other) const {
    // Products of two valid maps stay within 2x the construction tolerance.
    return MoebiusMap(m_ * other.m_, 2.0 * kLorentzEps);
}

MoebiusMap MoebiusMap::inverse() const {
    const Eigen::Matrix4d eta = minkowski_eta();
    return MoebiusMap(eta * m_.transpose() * eta, 2.0 * kLorentzEps);
}

double MoebiusMap::lorentz_residual() const {
    const Eigen::Matrix4d eta = minkowski_eta();
    return (m_.transpose() * eta * m_ - eta).cwiseAbs().maxCoeff();
}

const std::array<Eigen::Matrix4d, 6>& lie_generators() {
    static const std::array<Eigen::Matrix4d, 6> gens = [] {
        std::array<Eigen::Matrix4d, 6> g;
        for (auto& m : g) m.setZero();
        // rotations: xy, yz, zx
        g[0](0, 1) = -1; g[0](1, 0) = 1;
        g[1](1, 2) = -1; g[1](2, 1) = 1;
        g[2](2, 0) = -1; g[2](0, 2) = 1;
        // boosts: x, y, z
        g[3](0, 3) = 1; g[3](3, 0) = 1;
        g[4](1, 3) = 1; g[4](3, 1) = 1;
        g[5](2, 3) = 1; g[5](3, 2) = 1;
        return g;
    }();
    return gens;
}

Eigen::Matrix4d matrix_exp4(const Eigen::Matrix4d& a) {
    const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();  // inf-norm
    int squarings = 0;
    double scale = 1.0;
    while (norm * scale > 0.5) {
        scale *= 0.5;
        ++squarings;
    }
    const Eigen::Matrix4d b = a * scale;
    Eigen::Matrix4d term = Eigen::Matrix4d::Identity();
    Eigen::Matrix4d sum = Eigen::Matrix4d::Identity();
    for (int k = 1; k <= 24; ++k) {
        term = (term * b) / static_cast<double>(k);
        sum += term;
        if (term.cwiseAbs().maxCoeff() < 1e-20) break;
    }
    for (int i = 0; i < squarings; ++i) sum = sum * sum;
    return sum;
}

MoebiusMap from_matched_bases(const std::array<LVec4, 4>& p, const std::array<LVec4, 4>& q,
                              double eps) {
    Eigen::Matrix4d P, Q;
    for (int i = 0; i < 4; ++i) {
        P.col(i) = p[i].to_eigen();
        Q.col(i) = q[i].to_eigen();
    }
    if (std::abs(P.determinant()) <= eps)
        throw DegenerateBasis("source frame is not a basis, det = " +
                              std::to_string(P.determinant()));
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
            const double gp = lorentz_ip(p[i], p[j]);
            const double gq = lorentz_ip(q[i], q[j]);
            if (std::abs(gp - gq) >= eps)
                throw GramMismatch("Gram entries (" + std::to_string(i) + "," +
                                   std::to_string(j) + ") differ: " + std::to_string(gp) +
                                   " vs " + std::to_string(gq));
        }

    Eigen::Matrix4d m = Q * P.inverse();
    const Eigen::Matrix4d eta = minkowski_eta();
    double res = (m.transpose() * eta * m - eta).cwiseAbs().maxCoeff();
    if (res > 1e-9 && res <= 1e-6) {
        // one form-polar step pulls a near-Lorentz matrix back onto the group
        m = 0.5 * (m + eta * m.inverse().transpose() * eta);
        res = (m.transpose() * eta * m - eta).cwiseAbs().maxCoeff();
    }
    if (res > 1e-9)
        throw GramMismatch("fitted map fails Lorentz orthogonality, residual " +
                           std::to_string(res));
    if (!(m.determinant() > 0.0) || !(m(3, 3) > 0.0))
        throw NotRestricted("configurations are related only by an improper Lorentz map");
    return MoebiusMap(m);
}

LVec4 complete_with_normal(const LVec4& p1, const LVec4& p2, const LVec4& p3) {
    LVec4 n = hyperplane_normal(p1, p2, p3);
    const double q = lorentz_norm2(n);
    if (q <= 0.0)
        throw NormalNotSpacelike("face support hyperplane misses the light-cone interior");
    n = n / std::sqrt(q);
    if (n.t > 0.0) return n;
    if (n.t < 0.0) return -n;
    // time coordinate exactly zero: tie-break on the first nonzero coordinate
    for (double c : {n.x, n.y, n.z}) {
        if (c > 0.0) return n;
        if (c < 0.0) return -n;
    }
    return n;
}

MoebiusMap random_moebius(std::uint64_t seed, double scale) {
    if (scale < 0.0) throw ParamOutOfRange("random_moebius scale must be >= 0");
    std::mt19937_64 rng(seed);
    Eigen::Matrix4d a = Eigen::Matrix4d::Zero();
    const auto& gens = lie_generators();
    for (int k = 0; k < 6; ++k) {
        // uniform in [-scale, scale] derived straight from the integer stream
        // so the output is bitwise stable across standard libraries
        const double u01 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        a += ((2.0 * u01 - 1.0) * scale) * gens[k];
    }
    return MoebiusMap(matrix_exp4(a), 1e-10);
}

}  // namespace cpoly

#ifndef CPOLY_MOEBIUS_HPP
#define CPOLY_MOEBIUS_HPP

#include <Eigen/Core>
#include <array>
#include <cstdint>

#include "cpoly/disk.hpp"
#include "cpoly/lorentz.hpp"

namespace cpoly {

/// Entrywise tolerance for the defining relation m^T eta m = eta.
inline constexpr double kLorentzEps = 1e-9;

/**
 * A restricted Lorentz transformation (det > 0, time-direction preserving),
 * i.e. a Moebius transformation of S^2 acting simultaneously on disks and
 * sphere points by the 4x4 matrix-vector product.
 */
class MoebiusMap {
public:
    MoebiusMap() : m_(Eigen::Matrix4d::Identity()) {}
    /// Wraps a matrix, validating the group invariants at tolerance eps.
    explicit MoebiusMap(const Eigen::Matrix4d& m, double eps = kLorentzEps);

    static MoebiusMap identity() { return MoebiusMap(); }

    const Eigen::Matrix4d& matrix() const { return m_; }

    LVec4 operator()(const LVec4& u) const { return LVec4::from_eigen(m_ * u.to_eigen()); }
    Disk operator()(const Disk& d) const { return Disk((*this)(d.v), 1e-8); }
    SpherePoint operator()(const SpherePoint& x) const {
        LVec4 img = (*this)(x.p);
        return SpherePoint(img / img.t, 1e-8);
    }

    MoebiusMap compose(const MoebiusMap& other) const;  // this after other
    MoebiusMap inverse() const;                         // eta m^T eta

    /// max |m^T eta m - eta| entrywise.
    double lorentz_residual() const;

private:
    Eigen::Matrix4d m_;
};

/// eta = diag(1, 1, 1, -1).
Eigen::Matrix4d minkowski_eta();

/// The six generators of the Lorentz Lie algebra: three spatial rotations
/// (xy, yz, zx) then three boosts (x, y, z); integer entries, A^T eta + eta A = 0.
const std::array<Eigen::Matrix4d, 6>& lie_generators();

/// apply(phi, u) = phi(u); free-function form of the action.
inline LVec4 apply(const MoebiusMap& phi, const LVec4& u) { return phi(u); }

/**
 * The unique Moebius map with phi(p_i) = q_i for i = 0..3, built as
 * Q P^{-1} from the column frames. Requires |det(p0..p3)| > eps and
 * matching Gram matrices (|<p_i,p_j> - <q_i,q_j>| < eps).
 *
 * A result whose Lorentz residual lies in (1e-9, 1e-6] is re-orthogonalized
 * onto the group by one step of the form-polar iteration; a larger residual
 * raises GramMismatch rather than silently projecting.
 */
MoebiusMap from_matched_bases(const std::array<LVec4, 4>& p, const std::array<LVec4, 4>& q,
                              double eps = 1e-6);

/**
 * The unit Lorentz normal to span{p1, p2, p3} with positive time coordinate;
 * when the time coordinate vanishes, the representative with positive first
 * nonzero coordinate. Throws NormalNotSpacelike when the spanned hyperplane
 * does not cut the light-cone interior.
 */
LVec4 complete_with_normal(const LVec4& p1, const LVec4& p2, const LVec4& p3);

/// exp(sum c_k A_k) with c_k uniform in [-scale, scale] from the seeded
/// generator; deterministic per seed, identity at scale 0.
MoebiusMap random_moebius(std::uint64_t seed, double scale);

/// exp of a 4x4 matrix by scaling-and-squaring with a Taylor core.
Eigen::Matrix4d matrix_exp4(const Eigen::Matrix4d& a);

}  // namespace cpoly

#endif

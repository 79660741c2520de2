#ifndef CPOLY_LORENTZ_HPP
#define CPOLY_LORENTZ_HPP

#include <Eigen/Core>
#include <array>
#include <cmath>

namespace cpoly {

/**
 * A point of Minkowski 4-space with the bilinear form
 * <u,v> = ux vx + uy vy + uz vz - ut vt, i.e. signature (+,+,+,-).
 *
 * Spacelike unit vectors parameterize oriented disks on the unit sphere,
 * lightlike rays parameterize sphere points.
 */
struct LVec4 {
    double x = 0, y = 0, z = 0, t = 0;

    LVec4() = default;
    LVec4(double x_, double y_, double z_, double t_) : x(x_), y(y_), z(z_), t(t_) {}

    static LVec4 from_eigen(const Eigen::Vector4d& v) { return {v[0], v[1], v[2], v[3]}; }
    Eigen::Vector4d to_eigen() const { return {x, y, z, t}; }

    LVec4 operator+(const LVec4& o) const { return {x + o.x, y + o.y, z + o.z, t + o.t}; }
    LVec4 operator-(const LVec4& o) const { return {x - o.x, y - o.y, z - o.z, t - o.t}; }
    LVec4 operator-() const { return {-x, -y, -z, -t}; }
    LVec4 operator*(double s) const { return {x * s, y * s, z * s, t * s}; }
    LVec4 operator/(double s) const { return {x / s, y / s, z / s, t / s}; }

    double euclidean_norm() const { return std::sqrt(x * x + y * y + z * z + t * t); }
    bool finite() const {
        return std::isfinite(x) && std::isfinite(y) && std::isfinite(z) && std::isfinite(t);
    }
};

inline LVec4 operator*(double s, const LVec4& v) { return v * s; }

enum class CausalClass { Spacelike, Lightlike, Timelike };

/// Default relative tolerance for causal classification.
inline constexpr double kClassEps = 1e-10;

/// The Lorentzian inner product <u,v> = ux vx + uy vy + uz vz - ut vt.
double lorentz_ip(const LVec4& u, const LVec4& v);

/// <u,u>.
inline double lorentz_norm2(const LVec4& u) { return lorentz_ip(u, u); }

/// The form-paired partner eta*u = (x, y, z, -t); <u,v> = (eta u) . v euclidean.
inline LVec4 eta_pair(const LVec4& u) { return {u.x, u.y, u.z, -u.t}; }

/// Causal class of u relative to its Euclidean size; the zero vector is Lightlike.
CausalClass classify(const LVec4& u, double eps_class = kClassEps);

/// u / sqrt(<u,u>) for spacelike u. Throws NotSpacelike otherwise.
LVec4 normalize_to_de_sitter(const LVec4& u);

/**
 * A nonzero n with <n,u_i> = 0 for i = 1..3, unique up to scale.
 *
 * Computed by cofactor expansion of the 3x4 row stack (the Euclidean
 * nullspace direction) and then form-twisted with eta so the Lorentz
 * pairing vanishes. Throws DegenerateSpan when the smallest singular
 * value of the stack is below 1e-12 times the largest.
 */
LVec4 hyperplane_normal(const LVec4& u1, const LVec4& u2, const LVec4& u3);

/// Determinant of the 4x4 matrix with rows u1..u4.
double det4(const LVec4& u1, const LVec4& u2, const LVec4& u3, const LVec4& u4);

}  // namespace cpoly

#endif

#ifndef CPOLY_DISK_HPP
#define CPOLY_DISK_HPP

#include <Eigen/Core>

#include "cpoly/lorentz.hpp"

namespace cpoly {

/**
 * An oriented round disk on the unit sphere, stored as its unit de Sitter
 * vector v: the disk is { x in S^2 : <v, lift(x)> > 0 } where lift(x) = (x, 1).
 * Negating v yields the complementary disk.
 */
struct Disk {
    LVec4 v;

    Disk() = default;
    /// Wraps a vector that must already be unit de Sitter (|<v,v>-1| < tol).
    explicit Disk(const LVec4& vec, double tol = 1e-10);

    /// Normalizes an arbitrary spacelike vector onto the de Sitter sphere.
    static Disk from_spacelike(const LVec4& vec);

    /// Negation preserves the de Sitter invariant exactly; no re-validation.
    Disk complement() const {
        Disk d;
        d.v = -v;
        return d;
    }
};

/// A spherical cap { x in S^2 : u . x > h }, the human-readable disk form.
struct Cap {
    Eigen::Vector3d u;  // unit center direction
    double h = 0;       // offset in (-1, 1)
};

/// A point of S^2 as a lightlike vector scaled to time coordinate 1.
struct SpherePoint {
    LVec4 p;  // p = (x, y, z, 1) with x^2+y^2+z^2 = 1

    SpherePoint() = default;
    explicit SpherePoint(const LVec4& lift, double tol = 1e-10);
    static SpherePoint from_unit3(const Eigen::Vector3d& x);
    Eigen::Vector3d unit3() const { return {p.x, p.y, p.z}; }
};

enum class PairKind { Disjoint, ExternallyTangent, Overlapping, InternallyTangent, Nested };

/// Relation of two disks, decided from the inversive distance at tolerance eps.
struct PairClass {
    PairKind kind = PairKind::Disjoint;
    double inv = 0;        // inversive distance
    double angle = 0;      // arccos(inv), set when Overlapping
    bool deep_overlap = false;  // Overlapping with inv < 0 (angle beyond pi/2)
};

Disk cap_to_disk(const Cap& c);
Cap disk_to_cap(const Disk& d);

/// Inv(d1, d2) = -<v1, v2> for unit de Sitter vectors: 1 at external
/// tangency, > 1 when disjoint, in (-1,1) when overlapping, < -1 nested.
double inversive_distance(const Disk& d1, const Disk& d2);

PairClass classify_pair(const Disk& d1, const Disk& d2, double eps = 1e-9);

struct ContainsResult {
    bool inside = false;
    double margin = 0;  // <d.v, x.p>, positive inside
};
ContainsResult contains_point(const Disk& d, const SpherePoint& x);

/**
 * The unique common point of two disks meeting in at most one point,
 * as the lightlike element of their pencil.
 *
 * With t = <d_w, d_v>, solves (2-2t) L^2 - (2-2t) L + 1 = 0 for the root
 * whose vector m = (L-1) d_w - L d_v has <m, d_v> >= 0, then scales m to
 * time coordinate 1. At tangency (t = -1) the double root L = 1/2 gives
 * m proportional to -(d_v + d_w).
 */
SpherePoint pencil_point(const Disk& d_v, const Disk& d_w, double eps = 1e-9);

/**
 * The unique disk in the pencil of two overlapping disks that is
 * orthogonal to d_v: the de Sitter normalization of (mu-1) d_w - mu d_v
 * with mu = t/(t-1), whose raw squared norm is (1-t^2)/(t-1)^2.
 */
Disk pencil_orthodisk(const Disk& d_v, const Disk& d_w, double eps = 1e-9);

/// arccosh(Inv) for disjoint disks; the hyperbolic distance between the
/// corresponding half-spaces. Throws NotDisjoint when Inv <= 1.
double disjoint_hyperbolic_distance(const Disk& d1, const Disk& d2);

}  // namespace cpoly

#endif

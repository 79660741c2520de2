#include "cpoly/disk.hpp"

#include <cmath>
#include <string>

#include "cpoly/errors.hpp"

namespace cpoly {

Disk::Disk(const LVec4& vec, double tol) : v(vec) {
    if (!vec.finite()) throw NonFinite("disk vector has non-finite coordinates");
    const double q = lorentz_norm2(vec);
    if (std::abs(q - 1.0) > tol)
        throw NotUnitDeSitter("disk vector has <v,v> = " + std::to_string(q));
}

Disk Disk::from_spacelike(const LVec4& vec) {
    Disk d;
    d.v = normalize_to_de_sitter(vec);
    return d;
}

SpherePoint::SpherePoint(const LVec4& lift, double tol) : p(lift) {
    if (!lift.finite()) throw NonFinite("sphere point has non-finite coordinates");
    const double r2 = lift.x * lift.x + lift.y * lift.y + lift.z * lift.z;
    if (lift.t != 1.0 || std::abs(r2 - 1.0) > tol)
        throw NotUnitDeSitter("sphere point lift is not (x,1) with |x| = 1");
}

SpherePoint SpherePoint::from_unit3(const Eigen::Vector3d& x) {
    return SpherePoint(LVec4{x[0], x[1], x[2], 1.0});
}

Disk cap_to_disk(const Cap& c) {
    if (!(std::abs(c.h) < 1.0))
        throw OffsetOutOfRange("cap offset " + std::to_string(c.h) + " not in (-1,1)");
    const double s = std::sqrt(1.0 - c.h * c.h);
    return Disk(LVec4{c.u[0] / s, c.u[1] / s, c.u[2] / s, c.h / s}, 1e-9);
}

Cap disk_to_cap(const Disk& d) {
    const double s = std::sqrt(d.v.x * d.v.x + d.v.y * d.v.y + d.v.z * d.v.z);
    if (s < 1e-12)
        throw PolarDegenerate("disk vector has vanishing space part");
    Cap c;
    c.u = Eigen::Vector3d(d.v.x, d.v.y, d.v.z) / s;
    c.h = d.v.t / s;
    return c;
}

double inversive_distance(const Disk& d1, const Disk& d2) {
    return -lorentz_ip(d1.v, d2.v);
}

PairClass classify_pair(const Disk& d1, const Disk& d2, double eps) {
    PairClass pc;
    pc.inv = inversive_distance(d1, d2);
    if (pc.inv > 1.0 + eps) {
        pc.kind = PairKind::Disjoint;
    } else if (std::abs(pc.inv - 1.0) <= eps) {
        pc.kind = PairKind::ExternallyTangent;
    } else if (pc.inv > -1.0 + eps) {
        pc.kind = PairKind::Overlapping;
        pc.angle = std::acos(std::clamp(pc.inv, -1.0, 1.0));
        pc.deep_overlap = pc.inv < 0.0;
    } else if (std::abs(pc.inv + 1.0) <= eps) {
        pc.kind = PairKind::InternallyTangent;
    } else {
        pc.kind = PairKind::Nested;
    }
    return pc;
}

ContainsResult contains_point(const Disk& d, const SpherePoint& x) {
    ContainsResult r;
    r.margin = lorentz_ip(d.v, x.p);
    r.inside = r.margin > 0.0;
    return r;
}

SpherePoint pencil_point(const Disk& d_v, const Disk& d_w, double eps) {
    const double t = lorentz_ip(d_w.v, d_v.v);
    if (std::abs(t) < 1.0 - eps)
        throw PencilHasNoRealPoint("disks overlap (Inv = " + std::to_string(-t) +
                                   "), the pencil has no real point");
    // (2-2t) L^2 - (2-2t) L + 1 = 0; discriminant 4(t^2-1).
    LVec4 m;
    if (std::abs(t + 1.0) <= eps) {
        // external tangency: double root L = 1/2
        m = -0.5 * (d_v.v + d_w.v);
    } else if (std::abs(t - 1.0) <= eps) {
        // internal tangency: the root escapes to L -> inf along d_w - d_v
        m = d_w.v - d_v.v;
    } else {
        const double a = 2.0 - 2.0 * t;
        const double delta = std::sqrt(t * t - 1.0) / a;  // roots are 1/2 +- delta
        auto root_vec = [&](double lambda) {
            return (lambda - 1.0) * d_w.v - lambda * d_v.v;
        };
        const LVec4 m_plus = root_vec(0.5 + delta);
        const LVec4 m_minus = root_vec(0.5 - delta);
        m = (lorentz_ip(m_plus, d_v.v) >= lorentz_ip(m_minus, d_v.v)) ? m_plus : m_minus;
    }
    if (std::abs(m.t) < 1e-13)
        throw NonPositiveTime("pencil point cannot be scaled to time coordinate 1");
    m = m / m.t;
    return SpherePoint(m, 1e-7);
}

Disk pencil_orthodisk(const Disk& d_v, const Disk& d_w, double eps) {
    const double t = lorentz_ip(d_w.v, d_v.v);
    if (std::abs(t) >= 1.0 - eps)
        throw PencilOrthodiskDegenerate(
            "disks meet in at most one point (Inv = " + std::to_string(-t) +
            "), the orthogonal pencil disk collapses to the light cone");
    const double mu = t / (t - 1.0);
    const LVec4 m = (mu - 1.0) * d_w.v - mu * d_v.v;
    return Disk::from_spacelike(m);
}

double disjoint_hyperbolic_distance(const Disk& d1, const Disk& d2) {
    const double inv = inversive_distance(d1, d2);
    if (inv <= 1.0)
        throw NotDisjoint("Inv = " + std::to_string(inv) + " <= 1");
    return std::acosh(inv);
}

}  // namespace cpoly

#include "cpoly/cpolyhedron.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cpoly/errors.hpp"

namespace cpoly {

CPolyhedron::CPolyhedron(Triangulation t, std::vector<Disk> d)
    : tri(std::move(t)), disks(std::move(d)) {
    if (static_cast<int>(disks.size()) != tri.n)
        throw SchemaError("disk count does not match vertex count");
    for (const auto& e : tri.edges) {
        const double inv = inversive_distance(disks[e.i], disks[e.j]);
        if (!(inv > -1.0 + 1e-9))
            throw NestedPair("adjacent disks " + std::to_string(e.i) + "," +
                             std::to_string(e.j) + " are nested (Inv = " +
                             std::to_string(inv) + ")");
    }
}

double edge_determinant(const CPolyhedron& P, int edge_index) {
    const auto& e = P.tri.edges[static_cast<size_t>(edge_index)];
    return det4(P.disk(e.i).v, P.disk(e.j).v, P.disk(e.k).v, P.disk(e.l).v);
}

ConvexityReport is_strictly_convex(const CPolyhedron& P, double eps) {
    ConvexityReport rep;
    double max_norm = 0;
    for (const auto& d : P.disks) max_norm = std::max(max_norm, d.v.euclidean_norm());
    const double floor = eps * max_norm * max_norm * max_norm * max_norm;

    rep.psi.resize(P.tri.edges.size());
    int pos = 0, neg = 0, zero = 0;
    rep.min_abs_psi = std::numeric_limits<double>::infinity();
    for (int ei = 0; ei < P.tri.edge_count(); ++ei) {
        const double psi = edge_determinant(P, ei);
        rep.psi[static_cast<size_t>(ei)] = psi;
        rep.min_abs_psi = std::min(rep.min_abs_psi, std::abs(psi));
        if (psi > floor)
            ++pos;
        else if (psi < -floor)
            ++neg;
        else
            ++zero;
    }
    rep.sign = (pos && !neg) ? 1 : (neg && !pos) ? -1 : 0;
    rep.convex = (pos == 0) || (neg == 0);
    rep.strictly_convex = rep.convex && zero == 0 && rep.min_abs_psi > floor;
    return rep;
}

Disk face_orthodisk(const CPolyhedron& P, int face_index, double eps) {
    const auto& f = P.tri.faces[static_cast<size_t>(face_index)];
    LVec4 n = hyperplane_normal(P.disk(f[0]).v, P.disk(f[1]).v, P.disk(f[2]).v);
    const double q = lorentz_norm2(n);
    if (q <= 0.0)
        throw NormalNotSpacelike("face " + std::to_string(face_index) +
                                 " support plane misses the light-cone interior");
    n = n / std::sqrt(q);

    int pos = 0, neg = 0;
    for (int v = 0; v < P.n(); ++v) {
        if (v == f[0] || v == f[1] || v == f[2]) continue;
        const double ip = lorentz_ip(n, P.disk(v).v);
        if (ip > eps)
            ++pos;
        else if (ip < -eps)
            ++neg;
    }
    const int off_face = P.n() - 3;
    if (pos == off_face) return Disk(n, 1e-9);
    if (neg == off_face) return Disk(-n, 1e-9);
    throw SignAmbiguous("face " + std::to_string(face_index) +
                        " orthodisk pairings do not share a strict sign");
}

HyperbolicityReport is_hyperbolic(const CPolyhedron& P) {
    HyperbolicityReport rep;
    rep.hyperbolic = true;
    rep.orthodisks.resize(P.tri.faces.size());
    for (int fi = 0; fi < P.tri.face_count(); ++fi) {
        try {
            rep.orthodisks[static_cast<size_t>(fi)] = face_orthodisk(P, fi);
        } catch (const Error& e) {
            rep.hyperbolic = false;
            rep.failures.push_back("face " + std::to_string(fi) + ": " + e.what());
        }
    }
    return rep;
}

std::vector<int> unitary_edges(const CPolyhedron& P, double eps) {
    std::vector<int> out;
    for (int ei = 0; ei < P.tri.edge_count(); ++ei) {
        const auto& e = P.tri.edges[static_cast<size_t>(ei)];
        if (std::abs(inversive_distance(P.disk(e.i), P.disk(e.j)) - 1.0) < eps)
            out.push_back(ei);
    }
    return out;
}

std::string to_string(Shallowness s) {
    switch (s) {
        case Shallowness::Hyperideal: return "Hyperideal";
        case Shallowness::Koebe: return "Koebe";
        case Shallowness::GloballyShallow: return "GloballyShallow";
        case Shallowness::LocallyShallowOnly: return "LocallyShallowOnly";
        case Shallowness::NotShallow: return "NotShallow";
    }
    return "?";
}

Shallowness classify_shallowness(const CPolyhedron& P, double eps) {
    bool all_disjoint = true;       // hyperideal
    bool koebe = true;              // adjacent tangent, others disjoint
    bool globally_shallow = true;   // Inv > 0 for all pairs (0 counts shallow)
    bool locally_shallow = true;    // same, edges only

    for (int a = 0; a < P.n(); ++a)
        for (int b = a + 1; b < P.n(); ++b) {
            const PairClass pc = classify_pair(P.disk(a), P.disk(b), eps);
            const bool adj = P.tri.adjacent(a, b);
            const bool shallow_pair = pc.inv > -eps;
            if (pc.kind != PairKind::Disjoint) all_disjoint = false;
            if (adj ? pc.kind != PairKind::ExternallyTangent
                    : pc.kind != PairKind::Disjoint)
                koebe = false;
            if (!shallow_pair) {
                globally_shallow = false;
                if (adj) locally_shallow = false;
            }
        }

    if (all_disjoint) return Shallowness::Hyperideal;
    if (koebe) return Shallowness::Koebe;
    if (globally_shallow) return Shallowness::GloballyShallow;
    if (locally_shallow) return Shallowness::LocallyShallowOnly;
    return Shallowness::NotShallow;
}

}  // namespace cpoly

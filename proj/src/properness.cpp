#include "cpoly/properness.hpp"

#include <algorithm>
#include <cmath>

#include "cpoly/errors.hpp"

namespace cpoly {

namespace {

// Hyperboloid model of the hyperbolic plane carried by D_v: vectors h in the
// Lorentz orthocomplement of D_v with <h,h> = -1, on the sheet holding the
// lifts of the disk's interior points.

// Model center: the interior point of maximal margin.
LVec4 base_point(const Disk& dv) {
    const LVec4 w = LVec4{0, 0, 0, 1} + dv.v.t * dv.v;
    return w / std::sqrt(1.0 + dv.v.t * dv.v.t);
}

// Interior sphere point (t = 1 lift) -> hyperboloid point.
LVec4 model_point(const SpherePoint& x, const Disk& dv) {
    const double a = lorentz_ip(x.p, dv.v);
    if (a <= 1e-12)
        throw NotHyperbolicAtVertex("link point does not lie inside the vertex disk");
    return x.p / a - dv.v;
}

// Foot of the perpendicular geodesic `perp` on the geodesic `line`, both
// given by their poles orthogonal to dv.
LVec4 foot_point(const Disk& dv, const Disk& line, const Disk& perp, const LVec4& sheet_ref) {
    LVec4 n = hyperplane_normal(dv.v, line.v, perp.v);
    const double q = lorentz_norm2(n);
    if (q >= -1e-14 * n.euclidean_norm() * n.euclidean_norm())
        throw AmbiguousClassification("perpendicular foot is not a hyperbolic point");
    n = n / std::sqrt(-q);
    if (lorentz_ip(n, sheet_ref) > 0) n = -n;
    return n;
}

struct LinkGeometry {
    VertexPolygon poly;
    std::vector<LinkVertex> corners;
    // start/end hyperboloid points of the black edge on each geodesic;
    // finite flag false at ideal corners (infinite edge)
    std::vector<LVec4> edge_start, edge_end;
    std::vector<bool> start_finite, end_finite;
    std::vector<double> corner_pairing;  // g_i = Inv of the flanking half-planes
};

LinkGeometry build_link(const CPolyhedron& P, int v) {
    LinkGeometry G;
    const Disk& dv = P.disk(v);
    const auto& nbrs = P.tri.neighbors[static_cast<size_t>(v)];
    const auto& vfaces = P.tri.vertex_faces[static_cast<size_t>(v)];
    const int d = static_cast<int>(nbrs.size());

    G.poly.neighbors = nbrs;
    for (int i = 0; i < d; ++i) {
        const int fi = vfaces[static_cast<size_t>(i)];
        try {
            G.poly.half_planes.push_back(face_orthodisk(P, fi).complement());
        } catch (const Error& e) {
            throw NotHyperbolicAtVertex("vertex " + std::to_string(v) + ": " + e.what());
        }
        G.poly.face_indices.push_back(fi);
    }

    const LVec4 h0 = base_point(dv);
    G.corners.resize(static_cast<size_t>(d));
    G.corner_pairing.resize(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) {
        const Disk& A = G.poly.half_planes[static_cast<size_t>((i + d - 1) % d)];
        const Disk& B = G.poly.half_planes[static_cast<size_t>(i)];
        G.corner_pairing[static_cast<size_t>(i)] = inversive_distance(A, B);

        LinkVertex corner;
        corner.position = i;
        const int w = nbrs[static_cast<size_t>(i)];
        const double t = lorentz_ip(P.disk(w).v, dv.v);
        const double disc = std::abs(t) - 1.0;

        LVec4 n = hyperplane_normal(A.v, B.v, dv.v);
        const double q = lorentz_norm2(n);
        const double qrel = q / (n.euclidean_norm() * n.euclidean_norm());

        if (std::abs(disc) <= 1e-9) {
            if (std::abs(qrel) > 1e-6)
                throw AmbiguousClassification(
                    "corner at neighbor " + std::to_string(w) +
                    " sits on the tangency boundary but its half-planes do not");
            corner.kind = LinkVertex::Kind::Ideal;
            if (std::abs(n.t) < 1e-13)
                throw AmbiguousClassification("degenerate ideal corner");
            corner.point = SpherePoint(n / n.t, 1e-6);
        } else if (disc > 0) {
            corner.kind = LinkVertex::Kind::Visible;
            if (q >= 0)
                throw AmbiguousClassification("disjoint neighbor but crossing half-planes");
            const LVec4 nh = n / std::sqrt(-q);
            LVec4 lift = dv.v + nh;
            if (lift.t <= 0) lift = dv.v - nh;
            if (lift.t <= 1e-13)
                throw AmbiguousClassification("crossing point has no forward lift");
            corner.point = SpherePoint(lift / lift.t, 1e-7);
        } else {
            corner.kind = LinkVertex::Kind::Hyperideal;
            if (q <= 0)
                throw AmbiguousClassification("overlapping neighbor but crossing half-planes");
            LVec4 nh = n / std::sqrt(q);
            // orient like the pencil disk of the pair, which holds the
            // polygon side of the perpendicular
            const Disk pencil = pencil_orthodisk(dv, P.disk(w));
            if (lorentz_ip(nh, pencil.v) < 0) nh = -nh;
            corner.perp = Disk(nh, 1e-8);
        }
        G.corners[static_cast<size_t>(i)] = corner;
    }

    // Cut points of the black edge carried by each geodesic.
    G.edge_start.resize(static_cast<size_t>(d));
    G.edge_end.resize(static_cast<size_t>(d));
    G.start_finite.assign(static_cast<size_t>(d), false);
    G.end_finite.assign(static_cast<size_t>(d), false);
    for (int i = 0; i < d; ++i) {
        const Disk& line = G.poly.half_planes[static_cast<size_t>(i)];
        const LinkVertex& cs = G.corners[static_cast<size_t>(i)];
        const LinkVertex& ce = G.corners[static_cast<size_t>((i + 1) % d)];
        if (cs.kind == LinkVertex::Kind::Visible) {
            G.edge_start[static_cast<size_t>(i)] = model_point(cs.point, dv);
            G.start_finite[static_cast<size_t>(i)] = true;
        } else if (cs.kind == LinkVertex::Kind::Hyperideal) {
            G.edge_start[static_cast<size_t>(i)] = foot_point(dv, line, cs.perp, h0);
            G.start_finite[static_cast<size_t>(i)] = true;
        }
        if (ce.kind == LinkVertex::Kind::Visible) {
            G.edge_end[static_cast<size_t>(i)] = model_point(ce.point, dv);
            G.end_finite[static_cast<size_t>(i)] = true;
        } else if (ce.kind == LinkVertex::Kind::Hyperideal) {
            G.edge_end[static_cast<size_t>(i)] = foot_point(dv, line, ce.perp, h0);
            G.end_finite[static_cast<size_t>(i)] = true;
        }
    }

    // Redundancy: a half-plane whose cut points traverse its geodesic against
    // the common orientation (or coincide) contributes no boundary arc.
    std::vector<double> side(static_cast<size_t>(d), 0.0);
    for (int i = 0; i < d; ++i) {
        if (!G.start_finite[static_cast<size_t>(i)] || !G.end_finite[static_cast<size_t>(i)])
            continue;  // edges reaching the ideal boundary have positive length
        const Disk& line = G.poly.half_planes[static_cast<size_t>(i)];
        const LVec4& hs = G.edge_start[static_cast<size_t>(i)];
        const LVec4& he = G.edge_end[static_cast<size_t>(i)];
        LVec4 tau = hyperplane_normal(P.disk(v).v, line.v, hs);
        tau = tau / std::sqrt(std::max(lorentz_norm2(tau), 1e-300));
        if (det4(P.disk(v).v, line.v, hs, tau) < 0) tau = -tau;
        side[static_cast<size_t>(i)] = lorentz_ip(he, tau);
    }
    double pos = 0, neg = 0;
    for (double s : side) (s > 0 ? pos : neg) += std::abs(s);
    const double orient = pos >= neg ? 1.0 : -1.0;
    for (int i = 0; i < d; ++i) {
        if (!G.start_finite[static_cast<size_t>(i)] || !G.end_finite[static_cast<size_t>(i)])
            continue;
        if (orient * side[static_cast<size_t>(i)] < 1e-12)
            G.poly.redundant.push_back(i);
    }
    return G;
}

}  // namespace

PairGadget pair_gadget(const CPolyhedron& P, int v, int w, double eps) {
    if (!P.tri.adjacent(v, w))
        throw SchemaError("pair_gadget: vertices " + std::to_string(v) + "," +
                          std::to_string(w) + " are not adjacent");
    PairGadget g;
    g.v = v;
    g.w = w;
    const double inv = inversive_distance(P.disk(v), P.disk(w));
    if (inv <= -1.0 + eps)
        throw NestedPair("adjacent disks " + std::to_string(v) + "," + std::to_string(w) +
                         " are nested");
    if (inv >= 1.0 - eps) {
        g.kind = PairGadget::Kind::Point;
        g.point = pencil_point(P.disk(v), P.disk(w), eps);
    } else {
        g.kind = PairGadget::Kind::HalfPlaneDisk;
        g.disk = pencil_orthodisk(P.disk(v), P.disk(w), eps);
        // Orient the half-plane so the overlapping neighbor's boundary arc in
        // the model disk stays outside it; the raw pencil vector has that
        // orientation only for deep overlaps and flips on the shallow side.
        if (inv > 0.0) g.disk = g.disk.complement();
    }
    return g;
}

ProperReport is_proper(const CPolyhedron& P, double eps_prop) {
    ProperReport rep;
    for (int v = 0; v < P.n(); ++v) {
        std::vector<PairGadget> points, disks;
        for (int w : P.tri.neighbors[static_cast<size_t>(v)]) {
            const PairGadget g = pair_gadget(P, v, w);
            (g.kind == PairGadget::Kind::Point ? points : disks).push_back(g);
        }
        for (const auto& pg : points)
            for (const auto& dg : disks) {
                const double margin = lorentz_ip(pg.point.p, dg.disk.v);
                if (margin > eps_prop) {
                    rep.proper = false;
                    rep.witnesses.push_back({v, pg.w, dg.w, margin});
                }
            }
    }
    return rep;
}

VertexPolygon vertex_polygon(const CPolyhedron& P, int v) {
    return build_link(P, v).poly;
}

std::vector<LinkVertex> classify_link(const CPolyhedron& P, int v) {
    return build_link(P, v).corners;
}

LinkPolygon truncation(const CPolyhedron& P, int v) {
    const ProperReport prop = is_proper(P);
    bool proper_here = true;
    for (const auto& w : prop.witnesses) proper_here &= (w.v != v);
    if (!proper_here) {
        std::string msg = "vertex " + std::to_string(v) + " is improper:";
        for (const auto& w : prop.witnesses)
            if (w.v == v)
                msg += " (point " + std::to_string(w.w_point) + " inside disk " +
                       std::to_string(w.w_disk) + ", margin " + std::to_string(w.margin) + ")";
        throw ImproperVertex(msg);
    }

    const LinkGeometry G = build_link(P, v);
    const int d = static_cast<int>(G.corners.size());
    LinkPolygon L;
    for (int i = 0; i < d; ++i) {
        const LinkVertex& c = G.corners[static_cast<size_t>(i)];
        const double g = G.corner_pairing[static_cast<size_t>(i)];
        LinkPolygon::Angle ang;
        if (c.kind == LinkVertex::Kind::Visible) {
            if (!(std::abs(g) < 1.0 + 1e-12))
                throw NotRealizable("visible corner with |pairing| >= 1");
            ang.kind = LinkPolygon::Angle::Kind::Real;
            ang.value = std::acos(std::clamp(g, -1.0, 1.0));
        } else if (c.kind == LinkVertex::Kind::Ideal) {
            ang.kind = LinkPolygon::Angle::Kind::Zero;
            ang.value = 0.0;
        } else {
            if (!(g >= 1.0 - 1e-12))
                throw NotRealizable("hyperideal corner with pairing < 1");
            ang.kind = LinkPolygon::Angle::Kind::Imaginary;
            ang.value = std::acosh(std::max(g, 1.0));
            ++L.hyperideal_count;
            L.edges.push_back({LinkPolygon::Edge::Color::Green, ang.value});
        }
        L.angles.push_back(ang);

        // black edge carried by geodesic i, from corner i to corner i+1
        LinkPolygon::Edge black;
        black.color = LinkPolygon::Edge::Color::Black;
        if (!G.start_finite[static_cast<size_t>(i)] || !G.end_finite[static_cast<size_t>(i)]) {
            black.length = kInfiniteLength;
        } else {
            const double c01 =
                -lorentz_ip(G.edge_start[static_cast<size_t>(i)],
                            G.edge_end[static_cast<size_t>(i)]);
            black.length = std::acosh(std::max(c01, 1.0));
        }
        L.edges.push_back(black);
    }
    return L;
}

double law_of_cosines(double a, double b, double c) {
    if (!(a > 0 && b > 0 && c > 0))
        throw NotRealizable("law_of_cosines requires positive edge lengths");
    const double arg = (std::sinh(b) * std::cosh(c) - std::sinh(a)) / (std::cosh(b) * std::sinh(c));
    if (std::abs(arg) > 1.0 + 1e-12)
        throw NotRealizable("triangle data is not realizable, cos = " + std::to_string(arg));
    return std::acos(std::clamp(arg, -1.0, 1.0));
}

AnalysisReport analyze(const CPolyhedron& P) {
    AnalysisReport rep;
    const ConvexityReport conv = is_strictly_convex(P);
    rep.strictly_convex = conv.strictly_convex;
    rep.convex = conv.convex;
    rep.edge_determinant_sign = conv.sign;
    rep.min_abs_psi = conv.min_abs_psi;
    rep.hyperbolic = is_hyperbolic(P).hyperbolic;
    rep.unitary = unitary_edges(P);
    rep.shallowness = classify_shallowness(P);
    const ProperReport prop = is_proper(P);
    rep.proper = prop.proper;
    rep.witnesses = prop.witnesses;
    return rep;
}

}  // namespace cpoly

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <Eigen/Geometry>
#include <complex>

#include "cpoly/errors.hpp"
#include "cpoly/generators.hpp"
#include "cpoly/moebius.hpp"
#include "cpoly/properness.hpp"
#include "test_support.hpp"

using namespace cpoly;

namespace {

// --- independent 2D oracle -------------------------------------------------
// Moebius-normalize D_v to the equatorial (north-hemisphere) disk, project
// stereographically from the south pole, and use textbook Poincare-disk
// formulas. Fully independent of the Lorentz-pairing implementation.

MoebiusMap normalize_to_equator(const Disk& dv) {
    const Eigen::Vector3d s(dv.v.x, dv.v.y, dv.v.z);
    const Eigen::Quaterniond q =
        Eigen::Quaterniond::FromTwoVectors(s.normalized(), Eigen::Vector3d(0, 0, 1));
    Eigen::Matrix4d R = Eigen::Matrix4d::Identity();
    R.topLeftCorner<3, 3>() = q.toRotationMatrix();
    const Eigen::Vector4d rot = R * dv.v.to_eigen();  // (0, 0, sigma, tau)
    const double rap = std::atanh(rot[3] / rot[2]);
    Eigen::Matrix4d B = Eigen::Matrix4d::Identity();
    B(2, 2) = std::cosh(rap);
    B(2, 3) = -std::sinh(rap);
    B(3, 2) = -std::sinh(rap);
    B(3, 3) = std::cosh(rap);
    return MoebiusMap(B * R, 1e-9);
}

std::complex<double> poincare_coord(const SpherePoint& x, const MoebiusMap& norm) {
    const LVec4 img = norm(x.p);
    const Eigen::Vector3d u = Eigen::Vector3d(img.x, img.y, img.z) / img.t;
    return {u[0] / (1.0 + u[2]), u[1] / (1.0 + u[2])};
}

double poincare_distance(std::complex<double> z, std::complex<double> w) {
    return 2.0 * std::atanh(std::abs((z - w) / (1.0 - std::conj(z) * w)));
}

// ---------------------------------------------------------------------------

/// A degree-3 star around vertex 0 on the tetrahedron: D_v the southern
/// hemisphere, neighbors given as caps.
CPolyhedron star(const Cap& c1, const Cap& c2, const Cap& c3) {
    std::vector<Disk> disks = {cap_to_disk({{0, 0, -1}, 0.0}), cap_to_disk(c1),
                               cap_to_disk(c2), cap_to_disk(c3)};
    return CPolyhedron(validate(4, tetrahedron_faces()), std::move(disks));
}

Eigen::Vector3d tilt(double polar, double azimuth) {
    return {std::sin(polar) * std::cos(azimuth), std::sin(polar) * std::sin(azimuth),
            -std::cos(polar)};
}

}  // namespace

TEST_CASE("pair_gadget cases") {
    const CPolyhedron K = generate_tetra_koebe();
    const PairGadget g = pair_gadget(K, 0, 1);
    CHECK(g.kind == PairGadget::Kind::Point);
    CHECK(g.point.p.x == doctest::Approx(1.0).epsilon(1e-12));

    const CPolyhedron H = generate_tetra_hyperideal(0.7);
    const PairGadget gh = pair_gadget(H, 0, 1);
    CHECK(gh.kind == PairGadget::Kind::Point);
    CHECK(std::abs(lorentz_norm2(gh.point.p)) < 1e-10);

    std::mt19937_64 rng(127);
    auto [dv, dw] = test::disk_pair_with_inv(rng, 0.5);  // t = -1/2, mu = 1/3
    std::vector<Disk> disks = {dv, dw, cap_to_disk({{0, 1, 0}, 0.9}),
                               cap_to_disk({{0, -1, 0}, 0.9})};
    // gadget payloads only depend on the two disks; check via pencil directly
    const Disk half = pencil_orthodisk(dv, dw);
    CHECK(std::abs(lorentz_ip(half.v, dv.v)) < 1e-10);
}

TEST_CASE("case consistency: gadget kind matches the pair classification") {
    std::mt19937_64 rng(131);
    for (int i = 0; i < 30; ++i) {
        const CPolyhedron P = generate_random_shallow(4 + static_cast<int>(rng() % 9), rng());
        for (const auto& e : P.tri.edges) {
            const PairGadget g = pair_gadget(P, e.i, e.j);
            const PairClass pc = classify_pair(P.disk(e.i), P.disk(e.j));
            if (pc.kind == PairKind::Overlapping)
                CHECK(g.kind == PairGadget::Kind::HalfPlaneDisk);
            else
                CHECK(g.kind == PairGadget::Kind::Point);
        }
    }
}

TEST_CASE("Koebe tetrahedron is vacuously proper") {
    const ProperReport rep = is_proper(generate_tetra_koebe());
    CHECK(rep.proper);
    CHECK(rep.witnesses.empty());
}

TEST_CASE("globally shallow instances are proper") {
    std::mt19937_64 rng(137);
    for (int i = 0; i < 40; ++i) {
        const int n = 4 + static_cast<int>(rng() % 9);
        const CPolyhedron P = generate_random_shallow(n, rng());
        const ProperReport rep = is_proper(P);
        CHECK(rep.proper);
    }
}

TEST_CASE("hand-built deep-overlap star is improper with the computed margin") {
    // Brute-force oracle, straight from the cap data: D_v the southern
    // hemisphere, D_u tangent at (1,0,0), D_w overlapping deeply, tilted so
    // the pencil disk of (v,w) swallows the tangency point.
    const LVec4 nv{0, 0, -1, 0};
    const double psi = -M_PI / 3.0, g = 0.2;
    const double s = std::sqrt(1.0 - g * g);
    const LVec4 nw{std::sin(psi) / s, 0.0, -std::cos(psi) / s, g / s};
    const double t = lorentz_ip(nw, nv);
    CHECK(t == doctest::Approx(0.51031036307982877).epsilon(1e-13));
    const double mu = t / (t - 1.0);
    LVec4 m = (mu - 1.0) * nw - mu * nv;
    m = m / std::sqrt(lorentz_norm2(m));
    const double margin = lorentz_ip(LVec4{1, 0, 0, 1}, m);
    CHECK(margin == doctest::Approx(1.2651393963800681).epsilon(1e-12));

    // the library agrees end to end
    const CPolyhedron star = generate_improper_star();
    const ProperReport rep = is_proper(star);
    CHECK_FALSE(rep.proper);
    bool found = false;
    for (const auto& w : rep.witnesses)
        if (w.v == 0 && w.w_point == 1 && w.w_disk == 2) {
            found = true;
            CHECK(w.margin == doctest::Approx(1.2651393963800681).epsilon(1e-9));
        }
    CHECK(found);
}

TEST_CASE("inversion-pair property: the discarded root gives the same verdict") {
    // the half-plane disks are orthogonal to D_v, hence invariant under
    // inversion in its boundary, which swaps the two pencil roots
    std::mt19937_64 rng(139);
    auto reflect = [](const SpherePoint& p, const Disk& dv) {
        LVec4 r = p.p - 2.0 * lorentz_ip(p.p, dv.v) * dv.v;
        return SpherePoint(r / r.t, 1e-7);
    };
    int checked = 0;
    for (int i = 0; i < 40 && checked < 20; ++i) {
        const CPolyhedron P = generate_random_shallow(6, rng());
        for (int v = 0; v < P.n(); ++v) {
            std::vector<PairGadget> points, disks;
            for (int w : P.tri.neighbors[static_cast<size_t>(v)]) {
                const PairGadget gd = pair_gadget(P, v, w);
                (gd.kind == PairGadget::Kind::Point ? points : disks).push_back(gd);
            }
            for (const auto& pg : points)
                for (const auto& dg : disks) {
                    const SpherePoint other = reflect(pg.point, P.disk(v));
                    const double m1 = lorentz_ip(pg.point.p, dg.disk.v);
                    const double m2 = lorentz_ip(other.p, dg.disk.v);
                    CHECK((m1 > 1e-9) == (m2 > 1e-9));
                    ++checked;
                }
        }
    }
    CHECK(checked > 0);
}

TEST_CASE("properness is Moebius invariant and open") {
    std::mt19937_64 rng(149);
    const CPolyhedron P = generate_random_shallow(7, 555);
    REQUIRE(is_proper(P).proper);
    for (int i = 0; i < 10; ++i)
        CHECK(is_proper(generate_transported(P, rng(), 1.0)).proper);

    // verdict and witness identities are invariant; the margin magnitudes are
    // not (the time-1 point normalization rescales under boosts)
    const CPolyhedron star = generate_improper_star();
    for (int i = 0; i < 10; ++i) {
        const CPolyhedron T = generate_transported(star, rng(), 0.7);
        const ProperReport a = is_proper(star), b = is_proper(T);
        CHECK(a.proper == b.proper);
        REQUIRE(a.witnesses.size() == b.witnesses.size());
        for (size_t k = 0; k < a.witnesses.size(); ++k) {
            CHECK(a.witnesses[k].v == b.witnesses[k].v);
            CHECK(a.witnesses[k].w_point == b.witnesses[k].w_point);
            CHECK(a.witnesses[k].w_disk == b.witnesses[k].w_disk);
            CHECK(b.witnesses[k].margin > 0.0);
        }
    }

    // openness: small perturbations preserve the verdict
    for (int trial = 0; trial < 100; ++trial) {
        auto disks = P.disks;
        for (auto& d : disks) {
            LVec4 u = d.v;
            u.x += test::uniform(rng, -1e-5, 1e-5);
            u.y += test::uniform(rng, -1e-5, 1e-5);
            u.z += test::uniform(rng, -1e-5, 1e-5);
            u.t += test::uniform(rng, -1e-5, 1e-5);
            d = Disk::from_spacelike(u);
        }
        CHECK(is_proper(CPolyhedron(P.tri, disks)).proper);
    }
}

TEST_CASE("vertex polygon of canonical instances") {
    const CPolyhedron K = generate_tetra_koebe();
    const VertexPolygon vp = vertex_polygon(K, 0);
    CHECK(vp.half_planes.size() == 3);
    CHECK(vp.redundant.empty());
    // polygon disks are orthogonal to the central disk
    for (const Disk& hp : vp.half_planes)
        CHECK(std::abs(lorentz_ip(hp.v, K.disk(0).v)) < 1e-10);

    CHECK(vertex_polygon(generate_octa_koebe(), 0).half_planes.size() == 4);

    // equivariance
    std::mt19937_64 rng(151);
    const MoebiusMap phi = random_moebius(rng(), 1.0);
    const CPolyhedron T = transport(K, phi);
    const VertexPolygon tp = vertex_polygon(T, 0);
    for (size_t i = 0; i < 3; ++i) {
        const LVec4 mapped = normalize_to_de_sitter(phi(vp.half_planes[i].v));
        CHECK((tp.half_planes[i].v - mapped).euclidean_norm() < 1e-9);
    }
}

TEST_CASE("link classification matches the neighbor relation") {
    const auto koebe_link = classify_link(generate_tetra_koebe(), 0);
    REQUIRE(koebe_link.size() == 3);
    for (const auto& c : koebe_link) CHECK(c.kind == LinkVertex::Kind::Ideal);

    const auto hyper_link = classify_link(generate_tetra_hyperideal(0.7), 0);
    for (const auto& c : hyper_link) CHECK(c.kind == LinkVertex::Kind::Visible);

    const auto star_link = classify_link(generate_improper_star(), 0);
    int hyperideal = 0;
    for (const auto& c : star_link)
        hyperideal += c.kind == LinkVertex::Kind::Hyperideal;
    CHECK(hyperideal >= 1);
}

TEST_CASE("visible link points are the pencil points up to inversion in D_v") {
    const CPolyhedron H = generate_tetra_hyperideal(0.7);
    const auto link = classify_link(H, 0);
    const Disk& dv = H.disk(0);
    for (const auto& c : link) {
        REQUIRE(c.kind == LinkVertex::Kind::Visible);
        CHECK(contains_point(dv, c.point).inside);
        const int w = H.tri.neighbors[0][static_cast<size_t>(c.position)];
        const SpherePoint p = pencil_point(dv, H.disk(w));
        LVec4 r = p.p - 2.0 * lorentz_ip(p.p, dv.v) * dv.v;
        r = r / r.t;
        const double direct = (p.p - c.point.p).euclidean_norm();
        const double inverted = (r - c.point.p).euclidean_norm();
        CHECK(std::min(direct, inverted) < 1e-9);
    }
}

TEST_CASE("hyperideal link corners carry the pencil disk of the pair") {
    const CPolyhedron star = generate_improper_star();
    const auto link = classify_link(star, 0);
    for (const auto& c : link) {
        if (c.kind != LinkVertex::Kind::Hyperideal) continue;
        const int w = star.tri.neighbors[0][static_cast<size_t>(c.position)];
        const Disk pencil = pencil_orthodisk(star.disk(0), star.disk(w));
        CHECK(std::abs(std::abs(lorentz_ip(c.perp.v, pencil.v)) - 1.0) < 1e-9);
        // orthogonal to the central disk and both flanking half-planes
        const VertexPolygon vp = vertex_polygon(star, 0);
        const int i = c.position, d = static_cast<int>(vp.half_planes.size());
        CHECK(std::abs(lorentz_ip(c.perp.v, star.disk(0).v)) < 1e-9);
        CHECK(std::abs(lorentz_ip(c.perp.v,
                                  vp.half_planes[static_cast<size_t>((i + d - 1) % d)].v)) <
              1e-9);
        CHECK(std::abs(lorentz_ip(c.perp.v, vp.half_planes[static_cast<size_t>(i)].v)) < 1e-9);
    }
}

TEST_CASE("truncation of the Koebe tetrahedron link is an ideal triangle") {
    const LinkPolygon L = truncation(generate_tetra_koebe(), 0);
    CHECK(L.hyperideal_count == 0);
    REQUIRE(L.angles.size() == 3);
    REQUIRE(L.edges.size() == 3);
    double angle_sum = 0;
    for (const auto& a : L.angles) {
        CHECK(a.kind == LinkPolygon::Angle::Kind::Zero);
        angle_sum += a.value;
    }
    // Gauss-Bonnet: area = (3-2)*pi - angle sum = pi
    CHECK(M_PI - angle_sum == doctest::Approx(M_PI));
    for (const auto& e : L.edges) {
        CHECK(e.color == LinkPolygon::Edge::Color::Black);
        CHECK(std::isinf(e.length));
    }
}

TEST_CASE("compact link triangle: lengths match the Poincare oracle, angles close") {
    const CPolyhedron H = generate_tetra_hyperideal(0.75);
    const LinkPolygon L = truncation(H, 0);
    const auto link = classify_link(H, 0);
    REQUIRE(L.edges.size() == 3);
    const MoebiusMap norm = normalize_to_equator(H.disk(0));
    std::array<std::complex<double>, 3> z;
    for (int i = 0; i < 3; ++i) {
        REQUIRE(link[static_cast<size_t>(i)].kind == LinkVertex::Kind::Visible);
        z[static_cast<size_t>(i)] = poincare_coord(link[static_cast<size_t>(i)].point, norm);
        CHECK(std::abs(z[static_cast<size_t>(i)]) < 1.0);
    }
    // black edge i joins corners i and i+1
    for (int i = 0; i < 3; ++i) {
        const double oracle = poincare_distance(z[static_cast<size_t>(i)],
                                                z[static_cast<size_t>((i + 1) % 3)]);
        CHECK(L.edges[static_cast<size_t>(i)].length ==
              doctest::Approx(oracle).epsilon(1e-9));
    }
    // classical angle-side relation closes the triangle:
    // cos A = -cos B cos C + sin B sin C cosh a, a opposite A
    for (int i = 0; i < 3; ++i) {
        const double A = L.angles[static_cast<size_t>(i)].value;
        const double B = L.angles[static_cast<size_t>((i + 1) % 3)].value;
        const double C = L.angles[static_cast<size_t>((i + 2) % 3)].value;
        const double a = L.edges[static_cast<size_t>((i + 1) % 3)].length;
        CHECK(std::cos(A) ==
              doctest::Approx(-std::cos(B) * std::cos(C) +
                              std::sin(B) * std::sin(C) * std::cosh(a))
                  .epsilon(1e-9));
    }
}

TEST_CASE("law_of_cosines value and error paths") {
    const double arg = (std::cosh(1.0) - 1.0) / std::cosh(1.0);
    CHECK(arg == doctest::Approx(0.35194572633611460).epsilon(1e-14));
    CHECK(law_of_cosines(1, 1, 1) == doctest::Approx(1.2111473112614116).epsilon(1e-12));
    CHECK_THROWS_AS(law_of_cosines(50.0, 1.0, 1.0), NotRealizable);
}

TEST_CASE("shallow-pair distance chain stays positive") {
    std::mt19937_64 rng(157);
    for (int i = 0; i < 200; ++i) {
        const double ru = test::uniform(rng, 0.01, 3.0);
        const double rw = test::uniform(rng, 0.01, 3.0);
        const double alpha = test::uniform(rng, 1e-6, M_PI / 2 - 1e-6);
        const double sinh_d = std::sinh(rw) * std::cosh(ru) +
                              std::cos(alpha) * std::cosh(rw) * std::sinh(ru);
        CHECK(sinh_d > std::sinh(rw) * std::cosh(ru));
        CHECK(std::sinh(rw) * std::cosh(ru) > 0.0);
    }
}

TEST_CASE("one-hyperideal link triangles satisfy the generalized law of cosines") {
    std::mt19937_64 rng(163);
    int built = 0;
    int attempts = 0;
    while (built < 50 && attempts < 20000) {
        ++attempts;
        // two disjoint neighbors up north, one shallow-overlap neighbor
        // reaching just across the equator
        const double h1 = test::uniform(rng, 0.55, 0.85);
        const double h2 = test::uniform(rng, 0.55, 0.85);
        const double g = test::uniform(rng, 0.05, 0.35);
        const double p1 = test::uniform(rng, 0.25, 0.6);
        const double p2 = test::uniform(rng, 0.25, 0.6);
        const double p3 = test::uniform(rng, 1.05, 1.5);
        const double a2 = test::uniform(rng, 1.7, 2.6);
        const double a3 = test::uniform(rng, 4.0, 5.4);
        CPolyhedron P = star({tilt(M_PI - p1, 0.0), h1}, {tilt(M_PI - p2, a2), h2},
                             {tilt(M_PI - p3, a3), g});
        const ProperReport pr = is_proper(P);
        bool proper_at_0 = true;
        for (const auto& w : pr.witnesses) proper_at_0 &= (w.v != 0);
        if (!proper_at_0) continue;
        std::vector<LinkVertex> link;
        try {
            link = classify_link(P, 0);
        } catch (const Error&) {
            continue;
        }
        int hyper_pos = -1, visibles = 0;
        for (const auto& c : link) {
            if (c.kind == LinkVertex::Kind::Hyperideal) hyper_pos = c.position;
            if (c.kind == LinkVertex::Kind::Visible) ++visibles;
        }
        if (hyper_pos < 0 || visibles != 2) continue;

        const LinkPolygon L = truncation(P, 0);
        REQUIRE(L.edges.size() == 4);  // 3 black + 1 green
        ++built;

        const int iC = hyper_pos;
        const int iA = (iC + 1) % 3, iB = (iC + 2) % 3;
        // black edge on geodesic i joins corners i and i+1; opposite of a
        // corner is the edge on the next geodesic
        auto black_length = [&](int geodesic) {
            int idx = 0;
            for (int i = 0; i < 3; ++i) {
                if (i == iC)
                    ++idx;  // green edge precedes the black one at the corner
                if (i == geodesic) break;
                ++idx;
            }
            return L.edges[static_cast<size_t>(idx)].length;
        };
        const double a = black_length((iA + 1) % 3);
        const double b = black_length((iB + 1) % 3);
        const double c = black_length((iC + 1) % 3);
        const double alphaA = L.angles[static_cast<size_t>(iA)].value;
        const double alphaB = L.angles[static_cast<size_t>(iB)].value;
        CHECK(L.angles[static_cast<size_t>(iC)].kind ==
              LinkPolygon::Angle::Kind::Imaginary);
        CHECK(alphaA == doctest::Approx(law_of_cosines(a, b, c)).epsilon(1e-9));
        CHECK(alphaB == doctest::Approx(law_of_cosines(b, a, c)).epsilon(1e-9));
    }
    CHECK(built == 50);
}

TEST_CASE("truncation data is Moebius invariant") {
    std::mt19937_64 rng(167);
    const CPolyhedron H = generate_tetra_hyperideal(0.8);
    const LinkPolygon L0 = truncation(H, 1);
    for (int i = 0; i < 5; ++i) {
        const LinkPolygon L1 = truncation(generate_transported(H, rng(), 1.0), 1);
        REQUIRE(L1.edges.size() == L0.edges.size());
        for (size_t e = 0; e < L0.edges.size(); ++e)
            CHECK(L1.edges[e].length == doctest::Approx(L0.edges[e].length).epsilon(1e-8));
        for (size_t a = 0; a < L0.angles.size(); ++a)
            CHECK(L1.angles[a].value == doctest::Approx(L0.angles[a].value).epsilon(1e-8));
    }
}

TEST_CASE("analyze composes the verdicts") {
    const AnalysisReport rep = analyze(generate_tetra_koebe());
    CHECK(rep.strictly_convex);
    CHECK(rep.convex);
    CHECK(rep.hyperbolic);
    CHECK(rep.unitary.size() == 6);
    CHECK(rep.shallowness == Shallowness::Koebe);
    CHECK(rep.proper);
    CHECK(rep.min_abs_psi == doctest::Approx(4.0).epsilon(1e-12));

    const AnalysisReport star = analyze(generate_improper_star());
    CHECK_FALSE(star.proper);
    CHECK(star.witnesses.size() >= 1);

    // implication chain on generated instances
    std::mt19937_64 rng(173);
    for (int i = 0; i < 20; ++i) {
        const AnalysisReport r = analyze(generate_random_shallow(5 + (i % 6), rng()));
        CHECK(r.shallowness <= Shallowness::GloballyShallow);  // generator contract
        CHECK(r.proper);
    }
}

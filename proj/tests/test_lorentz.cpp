#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include "cpoly/errors.hpp"
#include "cpoly/generators.hpp"
#include "cpoly/lorentz.hpp"
#include "test_support.hpp"

using namespace cpoly;
using cpoly::test::random_vec;

TEST_CASE("lorentz_ip on axis vectors and the defining formula") {
    CHECK(lorentz_ip({1, 0, 0, 0}, {1, 0, 0, 0}) == doctest::Approx(1.0));
    CHECK(lorentz_ip({0, 0, 0, 1}, {0, 0, 0, 1}) == doctest::Approx(-1.0));
    CHECK(lorentz_ip({1, 2, 3, 4}, {4, 3, 2, 1}) == doctest::Approx(12.0));
}

TEST_CASE("lorentz_ip is symmetric and bilinear") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        const LVec4 u = random_vec(rng), v = random_vec(rng), w = random_vec(rng);
        const double a = test::uniform(rng, -3, 3), b = test::uniform(rng, -3, 3);
        CHECK(lorentz_ip(u, v) == doctest::Approx(lorentz_ip(v, u)).epsilon(1e-12));
        const double lhs = lorentz_ip(a * u + b * v, w);
        const double rhs = a * lorentz_ip(u, w) + b * lorentz_ip(v, w);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("classify") {
    CHECK(classify({1, 0, 0, 0}) == CausalClass::Spacelike);
    CHECK(classify({1, 0, 0, 1}) == CausalClass::Lightlike);
    CHECK(classify({0, 0, 0, 1}) == CausalClass::Timelike);
    CHECK(classify({0, 0, 0, 0}) == CausalClass::Lightlike);
}

TEST_CASE("normalize_to_de_sitter") {
    const LVec4 a = normalize_to_de_sitter({2, 0, 0, 0});
    CHECK(a.x == doctest::Approx(1.0));

    const LVec4 b = normalize_to_de_sitter({2, 0, 0, 1});
    CHECK(b.x == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(b.t == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));

    CHECK_THROWS_AS(normalize_to_de_sitter({1, 0, 0, 1}), NotSpacelike);

    // idempotent, unit norm, positive multiple
    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
        LVec4 u = random_vec(rng);
        if (lorentz_norm2(u) <= 1e-6) continue;
        const LVec4 v = normalize_to_de_sitter(u);
        CHECK(std::abs(lorentz_norm2(v) - 1.0) < 1e-14);
        const LVec4 vv = normalize_to_de_sitter(v);
        CHECK((vv - v).euclidean_norm() < 1e-14);
        CHECK(lorentz_ip(u, v) > 0.0);
    }
}

TEST_CASE("hyperplane_normal on coordinate planes") {
    const LVec4 n1 = hyperplane_normal({1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0});
    CHECK(std::abs(n1.x) + std::abs(n1.y) + std::abs(n1.z) < 1e-14);
    CHECK(std::abs(n1.t) > 0.1);

    const LVec4 n2 = hyperplane_normal({1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1});
    CHECK(std::abs(n2.x) + std::abs(n2.y) + std::abs(n2.t) < 1e-14);
    CHECK(std::abs(n2.z) > 0.1);

    CHECK_THROWS_AS(hyperplane_normal({1, 0, 0, 0}, {0, 1, 0, 0}, {1, 1, 0, 0}),
                    DegenerateSpan);
}

TEST_CASE("hyperplane_normal pairs to zero with its inputs") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 200; ++i) {
        const LVec4 u1 = random_vec(rng), u2 = random_vec(rng), u3 = random_vec(rng);
        LVec4 n;
        try {
            n = hyperplane_normal(u1, u2, u3);
        } catch (const DegenerateSpan&) {
            continue;
        }
        const double scale = n.euclidean_norm();
        for (const LVec4* u : {&u1, &u2, &u3})
            CHECK(std::abs(lorentz_ip(n, *u)) <= 1e-10 * scale * u->euclidean_norm());
    }
}

TEST_CASE("hyperplane_normal of a Koebe face is the orthodisk direction") {
    const CPolyhedron P = generate_tetra_koebe();
    // face {0,1,2}: normal proportional to (sqrt(3/2) u4, -1/sqrt(2)), and
    // after normalization and sign fixing pairs to 2 with the fourth disk
    LVec4 n = hyperplane_normal(P.disk(0).v, P.disk(1).v, P.disk(2).v);
    n = normalize_to_de_sitter(n);
    double ip4 = lorentz_ip(n, P.disk(3).v);
    if (ip4 < 0) {
        n = -n;
        ip4 = -ip4;
    }
    CHECK(ip4 == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(classify(n) == CausalClass::Spacelike);
}

TEST_CASE("det4") {
    CHECK(det4({1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}) ==
          doctest::Approx(1.0));
    CHECK(det4({1, 2, 3, 4}, {1, 2, 3, 4}, {0, 1, 0, 0}, {0, 0, 1, 0}) ==
          doctest::Approx(0.0));

    const CPolyhedron P = generate_tetra_koebe();
    const double d = det4(P.disk(0).v, P.disk(1).v, P.disk(2).v, P.disk(3).v);
    CHECK(std::abs(d) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("non-degeneracy: pairings against a basis determine the vector") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 100; ++i) {
        const LVec4 b0 = random_vec(rng), b1 = random_vec(rng), b2 = random_vec(rng),
                    b3 = random_vec(rng);
        if (std::abs(det4(b0, b1, b2, b3)) <= 1e-9) continue;
        const LVec4 u = random_vec(rng);

        Eigen::Matrix4d gram;
        Eigen::Vector4d rhs;
        const LVec4 basis[4] = {b0, b1, b2, b3};
        for (int r = 0; r < 4; ++r) {
            rhs(r) = lorentz_ip(u, basis[r]);
            for (int c = 0; c < 4; ++c) gram(r, c) = lorentz_ip(basis[r], basis[c]);
        }
        const Eigen::Vector4d coef = gram.fullPivLu().solve(rhs);
        LVec4 rec{0, 0, 0, 0};
        for (int r = 0; r < 4; ++r) rec = rec + coef(r) * basis[r];
        CHECK((rec - u).euclidean_norm() <= 1e-9 * (1.0 + u.euclidean_norm()));
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include "cpoly/continuation.hpp"
#include "cpoly/errors.hpp"
#include "cpoly/generators.hpp"
#include "cpoly/properness.hpp"
#include "test_support.hpp"

using namespace cpoly;

namespace {

/// The symmetric tetrahedron family solving all-edge Inv = target in closed
/// form; the deformation oracle.
CPolyhedron symmetric_tetra_for_inv(double inv) {
    return generate_tetra_hyperideal(std::sqrt((inv - 1.0 / 3.0) / (inv + 1.0)));
}

PathSpec all_unitary_path(const CPolyhedron& P, double mu, int steps) {
    PathSpec spec;
    spec.unitary_edge_set = unitary_edges(P);
    spec.mu = mu;
    spec.steps = steps;
    return spec;
}

}  // namespace

TEST_CASE("target_measure") {
    const ConfigurationState K = to_configuration(generate_tetra_koebe());
    const PathSpec spec = all_unitary_path(generate_tetra_koebe(), 0.1, 10);

    const Eigen::VectorXd t0 = target_measure(K, spec, 0.0);
    CHECK((t0 - measure(K)).cwiseAbs().maxCoeff() == 0.0);  // bitwise copy

    const Eigen::VectorXd t1 = target_measure(K, spec, 1.0);
    for (int e = 0; e < 6; ++e) CHECK(t1[e] == doctest::Approx(-1.1).epsilon(1e-15));
    for (int v = 0; v < 4; ++v) CHECK(t1[6 + v] == doctest::Approx(1.0).epsilon(1e-12));

    // a partial unitary set leaves non-listed entries untouched bitwise
    PathSpec partial = spec;
    partial.unitary_edge_set = {0, 2};
    const Eigen::VectorXd tp = target_measure(K, partial, 0.7);
    const Eigen::VectorXd f = measure(K);
    for (int e = 0; e < 6; ++e) {
        if (e == 0 || e == 2)
            CHECK(tp[e] == doctest::Approx(-(1.0 + 0.07)).epsilon(1e-15));
        else
            CHECK(tp[e] == f[e]);
    }

    // naming a non-unitary edge is an error
    const ConfigurationState H = to_configuration(generate_tetra_hyperideal(0.7));
    CHECK_THROWS_AS(target_measure(H, spec, 0.5), NotUnitaryEdge);
}

TEST_CASE("newton_correct: fixed point and closed-form oracle") {
    const ConfigurationState K = to_configuration(generate_tetra_koebe());
    const ConfigurationState fixed = newton_correct(K, measure(K));
    CHECK((fixed.coords - K.coords).cwiseAbs().maxCoeff() == 0.0);

    // all-edge Inv = 1.01 target: converge and compare against the
    // closed-form symmetric instance up to a Moebius motion
    const PathSpec spec = all_unitary_path(generate_tetra_koebe(), 0.01, 1);
    const Eigen::VectorXd target = target_measure(K, spec, 1.0);
    const ConfigurationState corrected = newton_correct(K, target, 1e-11, 50, true);
    CHECK((measure(corrected) - target).cwiseAbs().maxCoeff() < 1e-11);

    const ConfigurationState oracle = to_configuration(symmetric_tetra_for_inv(1.01));
    CHECK((measure(oracle) - target).cwiseAbs().maxCoeff() < 1e-12);
    const CongruenceResult fit = fit_congruence(corrected, oracle);
    CHECK(fit.congruent);
    CHECK(fit.residual < 1e-7);
}

TEST_CASE("newton_correct: unreachable jump fails loudly") {
    // an inversive-distance jump of 10 into the overlap direction leaves the
    // certified region (adjacent disks would have to nest)
    const ConfigurationState K = to_configuration(generate_tetra_koebe());
    PathSpec spec = all_unitary_path(generate_tetra_koebe(), 10.0, 1);
    spec.direction = -1;
    const Eigen::VectorXd target = target_measure(K, spec, 1.0);
    bool failed_as_specified = false;
    try {
        newton_correct(K, target, 1e-11, 50, true);
    } catch (const NoConvergence&) {
        failed_as_specified = true;
    } catch (const LeftCertifiedRegion&) {
        failed_as_specified = true;
    } catch (const RankDeficient&) {
        failed_as_specified = true;
    }
    CHECK(failed_as_specified);
}

TEST_CASE("deform: Koebe tetrahedron to Inv = 1.1 matches the cap oracle") {
    const ConfigurationState K = to_configuration(generate_tetra_koebe());
    const PathSpec spec = all_unitary_path(generate_tetra_koebe(), 0.1, 10);
    const DeformationResult d = deform(K, spec);

    CHECK(d.max_residual < 1e-10);
    CHECK(d.steps.size() >= 11);

    const Eigen::VectorXd want = target_measure(K, spec, 1.0);
    CHECK((measure(d.final_state()) - want).cwiseAbs().maxCoeff() < 1e-10);

    const ConfigurationState oracle = to_configuration(symmetric_tetra_for_inv(1.1));
    const CongruenceResult fit = fit_congruence(d.final_state(), oracle);
    CHECK(fit.congruent);
    CHECK(fit.residual < 1e-7);

    // no deformed edge stays unitary at positive t
    for (const auto& step : d.steps) {
        if (step.t == 0.0) continue;
        CHECK(unitary_edges(to_cpolyhedron(step.state), 1e-6).empty());
    }
}

TEST_CASE("deform: octahedron on all 12 unitary edges") {
    const ConfigurationState O = to_configuration(generate_octa_koebe());
    const PathSpec spec = all_unitary_path(generate_octa_koebe(), 0.05, 10);
    REQUIRE(spec.unitary_edge_set.size() == 12);
    const DeformationResult d = deform(O, spec);
    CHECK(d.max_residual < 1e-10);

    // deformed edges sit at Inv = 1.05; vertex entries at 1
    const Eigen::VectorXd f = measure(d.final_state());
    for (int e : spec.unitary_edge_set) CHECK(f[e] == doctest::Approx(-1.05).epsilon(1e-10));
}

TEST_CASE("deform: empty path is a no-op") {
    const ConfigurationState H = to_configuration(generate_tetra_hyperideal(0.7));
    PathSpec spec;
    spec.mu = 0.1;
    spec.steps = 5;
    const DeformationResult d = deform(H, spec);
    for (const auto& step : d.steps)
        CHECK((step.state.coords - H.coords).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("deform: overlap direction also leaves the unitary locus") {
    const ConfigurationState K = to_configuration(generate_tetra_koebe());
    PathSpec spec = all_unitary_path(generate_tetra_koebe(), 0.05, 5);
    spec.direction = -1;
    const DeformationResult d = deform(K, spec);
    const Eigen::VectorXd f = measure(d.final_state());
    for (int e = 0; e < 6; ++e) CHECK(f[e] == doctest::Approx(-0.95).epsilon(1e-10));
}

TEST_CASE("fit_congruence: transport round-trip") {
    std::mt19937_64 rng(179);
    const ConfigurationState K = to_configuration(generate_tetra_koebe());
    for (int i = 0; i < 20; ++i) {
        const MoebiusMap phi = random_moebius(rng(), 1.0);
        const ConfigurationState Q =
            to_configuration(transport(generate_tetra_koebe(), phi));
        const CongruenceResult fit = fit_congruence(K, Q);
        CHECK(fit.congruent);
        CHECK(fit.residual < 1e-9);
        CHECK((fit.map.matrix() - phi.matrix()).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("fit_congruence: error paths and identities") {
    const ConfigurationState K = to_configuration(generate_tetra_koebe());
    const ConfigurationState H = to_configuration(generate_tetra_hyperideal(0.7));
    CHECK_THROWS_AS(fit_congruence(K, H), NotLocallyCongruent);

    const CongruenceResult self = fit_congruence(K, K);
    CHECK(self.congruent);
    CHECK(self.residual < 1e-12);
    CHECK((self.map.matrix() - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff() < 1e-12);

    // symmetry: the reverse fit is the inverse map
    std::mt19937_64 rng(181);
    const ConfigurationState Q =
        to_configuration(generate_transported(generate_tetra_koebe(), rng(), 1.0));
    const CongruenceResult ab = fit_congruence(K, Q), ba = fit_congruence(Q, K);
    CHECK(ab.congruent);
    CHECK(ba.congruent);
    CHECK((ab.map.compose(ba.map).matrix() - Eigen::Matrix4d::Identity())
              .cwiseAbs()
              .maxCoeff() < 1e-8);

    // anchor independence
    for (int face = 0; face < 4; ++face) {
        const CongruenceResult f = fit_congruence(K, Q, face);
        CHECK(f.congruent);
        CHECK((f.map.matrix() - ab.map.matrix()).cwiseAbs().maxCoeff() < 1e-7);
    }
}

TEST_CASE("fit_congruence: independently transported Koebe tetrahedra agree") {
    const ConfigurationState A =
        to_configuration(generate_transported(generate_tetra_koebe(), 11, 0.8));
    const ConfigurationState B =
        to_configuration(generate_transported(generate_tetra_koebe(), 77, 0.8));
    const CongruenceResult fit = fit_congruence(A, B);
    CHECK(fit.congruent);
    CHECK(fit.residual < 1e-7);
}

TEST_CASE("congruent_via_deformation: transport oracle with Cauchy trail") {
    std::mt19937_64 rng(191);
    const ConfigurationState K = to_configuration(generate_tetra_koebe());
    for (int i = 0; i < 3; ++i) {
        const MoebiusMap phi = random_moebius(rng(), 0.8);
        const ConfigurationState Q =
            to_configuration(transport(generate_tetra_koebe(), phi));
        const DeformationCongruence out = congruent_via_deformation(K, Q, 0.1, 10);
        CHECK(out.deformed);
        CHECK(out.direct.congruent);
        CHECK(out.congruent_at_positive_t);
        CHECK(out.cauchy);
        CHECK(out.final_diff < 1e-7);
        CHECK(out.direct.residual < 1e-7);
        CHECK((out.direct.map.matrix() - phi.matrix()).cwiseAbs().maxCoeff() < 1e-7);
        // the trail parameters descend toward zero
        for (size_t k = 1; k < out.trail_t.size(); ++k)
            CHECK(out.trail_t[k] < out.trail_t[k - 1]);
    }
}

TEST_CASE("congruent_via_deformation: octahedra and the non-unitary dispatch") {
    const ConfigurationState A =
        to_configuration(generate_transported(generate_octa_koebe(), 5, 0.6));
    const ConfigurationState B =
        to_configuration(generate_transported(generate_octa_koebe(), 9, 0.6));
    const DeformationCongruence out = congruent_via_deformation(A, B, 0.1, 10);
    CHECK(out.deformed);
    CHECK(out.direct.congruent);
    CHECK(out.congruent_at_positive_t);
    CHECK(out.cauchy);

    // hyperideal pair has no unitary edges: direct fit without deformation
    const ConfigurationState H = to_configuration(generate_tetra_hyperideal(0.7));
    const ConfigurationState HT =
        to_configuration(generate_transported(generate_tetra_hyperideal(0.7), 3, 0.9));
    const DeformationCongruence direct = congruent_via_deformation(H, HT);
    CHECK_FALSE(direct.deformed);
    CHECK(direct.direct.congruent);
}

TEST_CASE("deformation states stay certified") {
    const ConfigurationState K = to_configuration(generate_tetra_koebe());
    const PathSpec spec = all_unitary_path(generate_tetra_koebe(), 0.1, 5);
    const DeformationResult d = deform(K, spec);
    for (const auto& step : d.steps) {
        const CPolyhedron P = to_cpolyhedron(step.state);
        CHECK(is_strictly_convex(P).strictly_convex);
        CHECK(is_hyperbolic(P).hyperbolic);
        CHECK(is_proper(P).proper);
    }
}

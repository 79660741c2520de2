#include "cpoly/continuation.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>

#include "cpoly/errors.hpp"
#include "cpoly/properness.hpp"

namespace cpoly {

Eigen::VectorXd target_measure(const ConfigurationState& P, const PathSpec& spec, double t) {
    Eigen::VectorXd f = measure(P);
    for (int e : spec.unitary_edge_set) {
        if (e < 0 || e >= P.tri.edge_count())
            throw NotUnitaryEdge("edge index " + std::to_string(e) + " out of range");
        if (std::abs(f[e] + 1.0) > 1e-9)
            throw NotUnitaryEdge("edge " + std::to_string(e) + " has measure " +
                                 std::to_string(f[e]) + ", not unitary");
        if (t != 0.0) f[e] = -(1.0 + spec.direction * spec.mu * t);
    }
    return f;
}

namespace {

void certify_state(const ConfigurationState& s, const char* when) {
    try {
        const CPolyhedron P = to_cpolyhedron(s);
        if (!is_strictly_convex(P).strictly_convex)
            throw LeftCertifiedRegion(std::string(when) + ": state is not strictly convex");
        if (!is_hyperbolic(P).hyperbolic)
            throw LeftCertifiedRegion(std::string(when) + ": state is not hyperbolic");
        if (!is_proper(P).proper)
            throw LeftCertifiedRegion(std::string(when) + ": state is not proper");
    } catch (const LeftCertifiedRegion&) {
        throw;
    } catch (const Error& e) {
        throw LeftCertifiedRegion(std::string(when) + ": " + e.what());
    }
}

}  // namespace

ConfigurationState newton_correct(const ConfigurationState& guess,
                                  const Eigen::VectorXd& target, double tol, int max_iter,
                                  bool certify) {
    const int expected = 4 * guess.n() - 6;
    if (target.size() != expected)
        throw SchemaError("target measure has wrong length");

    ConfigurationState x = guess;
    bool converged = false;
    for (int iter = 0; iter <= max_iter; ++iter) {
        const Eigen::VectorXd r = measure(x) - target;
        if (r.cwiseAbs().maxCoeff() < tol) {
            converged = true;
            break;
        }
        if (iter == max_iter) break;

        Eigen::JacobiSVD<Eigen::MatrixXd> svd(jacobian(x),
                                              Eigen::ComputeThinU | Eigen::ComputeThinV);
        const auto& sv = svd.singularValues();
        int rank = 0;
        for (int i = 0; i < sv.size(); ++i)
            if (sv[i] > 1e-8 * sv[0]) rank = i + 1;
        if (rank < expected)
            throw RankDeficient("Gauss-Newton left the regular region (rank " +
                                std::to_string(rank) + " < " + std::to_string(expected) + ")");
        Eigen::VectorXd inv_sv = Eigen::VectorXd::Zero(sv.size());
        for (int i = 0; i < rank; ++i) inv_sv[i] = 1.0 / sv[i];
        const Eigen::VectorXd delta =
            -(svd.matrixV() * inv_sv.asDiagonal() * (svd.matrixU().transpose() * r));
        x.coords += delta;
    }
    if (!converged)
        throw NoConvergence("Gauss-Newton did not reach " + std::to_string(tol) + " in " +
                            std::to_string(max_iter) + " iterations");

    const int m = x.tri.edge_count();
    bool unit = true;
    for (int v = 0; v < x.n(); ++v) unit &= std::abs(target[m + v] - 1.0) < 1e-9;
    x.normalized = unit;
    if (certify) certify_state(x, "newton_correct");
    return x;
}

const ConfigurationState& DeformationResult::at(double t) const {
    for (const auto& s : steps)
        if (s.t == t) return s.state;
    throw SchemaError("no deformation state recorded at t = " + std::to_string(t));
}

DeformationResult deform(const ConfigurationState& P, const PathSpec& spec, double tol) {
    if (spec.steps < 1) throw ParamOutOfRange("deform needs steps >= 1");
    if (!(spec.mu > 0)) throw ParamOutOfRange("deform needs mu > 0");
    {
        const CPolyhedron poly = to_cpolyhedron(P);
        if (!is_strictly_convex(poly).strictly_convex)
            throw NotStrictlyConvex("deform requires a strictly convex start");
        if (!is_hyperbolic(poly).hyperbolic)
            throw NotHyperbolicAtVertex("deform requires a hyperbolic start");
        if (!is_proper(poly).proper)
            throw ImproperVertex("deform requires a proper start");
    }

    DeformationResult result;
    result.steps.push_back({0.0, P, 0.0});

    double t = 0.0;
    ConfigurationState current = P;
    int next_grid = 1;
    while (next_grid <= spec.steps) {
        const double t_goal = static_cast<double>(next_grid) / spec.steps;
        double t_try = t_goal;
        while (true) {
            try {
                const Eigen::VectorXd target = target_measure(P, spec, t_try);
                ConfigurationState corrected = newton_correct(current, target, tol, 50, true);
                const double res = (measure(corrected) - target).cwiseAbs().maxCoeff();
                result.steps.push_back({t_try, corrected, res});
                result.max_residual = std::max(result.max_residual, res);
                current = std::move(corrected);
                t = t_try;
                break;
            } catch (const NoConvergence&) {
            } catch (const RankDeficient&) {
            } catch (const LeftCertifiedRegion&) {
            }
            // corrector failed: halve toward the last accepted parameter
            const double dt = (t_try - t) / 2.0;
            if (dt < 1e-4)
                throw StepUnderflow("deformation step fell below 1e-4 near t = " +
                                    std::to_string(t_try));
            t_try = t + dt;
        }
        if (t == t_goal) ++next_grid;
    }
    return result;
}

CongruenceResult fit_congruence(const ConfigurationState& P, const ConfigurationState& Q,
                                int anchor_face, double tol) {
    if (P.tri.faces != Q.tri.faces || P.n() != Q.n())
        throw SchemaError("fit_congruence requires identical triangulations");
    const Eigen::VectorXd fP = measure(P), fQ = measure(Q);
    const double meas_gap = (fP - fQ).cwiseAbs().maxCoeff();
    if (meas_gap > 1e-8)
        throw NotLocallyCongruent("measures differ by " + std::to_string(meas_gap));

    const int fcount = P.tri.face_count();
    const int first = anchor_face >= 0 ? anchor_face : 0;
    std::string last_error;
    for (int attempt = 0; attempt < std::min(4, fcount); ++attempt) {
        const int face = (first + attempt) % fcount;
        const auto& f = P.tri.faces[static_cast<size_t>(face)];
        try {
            std::array<LVec4, 4> p, q;
            for (int k = 0; k < 3; ++k) {
                p[static_cast<size_t>(k + 1)] = P.block(f[static_cast<size_t>(k)]);
                q[static_cast<size_t>(k + 1)] = Q.block(f[static_cast<size_t>(k)]);
            }
            p[0] = complete_with_normal(p[1], p[2], p[3]);
            q[0] = complete_with_normal(q[1], q[2], q[3]);
            // exactly one sign of the target normal extends the face map to a
            // restricted transformation (spacelike normals may flip their
            // time coordinate under the fitted map)
            MoebiusMap phi;
            try {
                phi = from_matched_bases(p, q, 1e-6);
            } catch (const NotRestricted&) {
                q[0] = -q[0];
                phi = from_matched_bases(p, q, 1e-6);
            }

            CongruenceResult res;
            res.map = phi;
            res.anchor_face = face;
            for (int v = 0; v < P.n(); ++v) {
                const LVec4 img = phi(P.block(v));
                const LVec4 dif = img - Q.block(v);
                res.residual = std::max(
                    res.residual, std::max(std::max(std::abs(dif.x), std::abs(dif.y)),
                                           std::max(std::abs(dif.z), std::abs(dif.t))));
                for (int i = 0; i < 4; ++i) {
                    const double got = lorentz_ip(q[static_cast<size_t>(i)], img);
                    const double want = lorentz_ip(q[static_cast<size_t>(i)], Q.block(v));
                    res.pairing_residual =
                        std::max(res.pairing_residual, std::abs(got - want));
                }
            }
            res.congruent = res.residual < tol;
            return res;
        } catch (const DegenerateBasis& e) {
            last_error = e.what();
        } catch (const DegenerateSpan& e) {
            last_error = e.what();
        } catch (const NormalNotSpacelike& e) {
            last_error = e.what();
        } catch (const GramMismatch& e) {
            last_error = e.what();
        }
    }
    throw FaceDegenerate("no usable anchor face: " + last_error);
}

DeformationCongruence congruent_via_deformation(const ConfigurationState& P,
                                                const ConfigurationState& Q, double mu,
                                                int steps, double tol, double cauchy_tol) {
    DeformationCongruence out;

    const CPolyhedron polyP = to_cpolyhedron(P);
    const std::vector<int> unitP = unitary_edges(polyP);
    const std::vector<int> unitQ = unitary_edges(to_cpolyhedron(Q));
    if (unitP != unitQ)
        throw NotLocallyCongruent("unitary edge sets differ between the two polyhedra");

    if (unitP.empty()) {
        // no tangencies: the non-unitary theorem applies directly
        out.direct = fit_congruence(P, Q, -1, tol);
        out.deformed = false;
        out.cauchy = true;
        return out;
    }

    PathSpec spec;
    spec.unitary_edge_set = unitP;
    spec.mu = mu;
    spec.steps = steps;

    const DeformationResult dP = deform(P, spec);
    const DeformationResult dQ = deform(Q, spec);
    out.deformed = true;

    // fits along the uniform grid, recorded with t descending toward 0
    Eigen::Matrix4d prev;
    bool have_prev = false;
    for (int k = steps; k >= 1; --k) {
        const double t = static_cast<double>(k) / steps;
        const CongruenceResult fit = fit_congruence(dP.at(t), dQ.at(t), -1, tol);
        out.congruent_at_positive_t &= fit.congruent;
        out.trail_t.push_back(t);
        if (have_prev)
            out.trail_diff.push_back((fit.map.matrix() - prev).cwiseAbs().maxCoeff());
        prev = fit.map.matrix();
        have_prev = true;
    }

    // geometric refinement of t -> 0+: the numerical limit of phi_t
    ConfigurationState sP = dP.at(1.0 / steps);
    ConfigurationState sQ = dQ.at(1.0 / steps);
    double t = 1.0 / steps;
    for (int halving = 0; halving < 48; ++halving) {
        t /= 2.0;
        sP = newton_correct(sP, target_measure(P, spec, t));
        sQ = newton_correct(sQ, target_measure(Q, spec, t));
        const CongruenceResult fit = fit_congruence(sP, sQ, -1, tol);
        out.congruent_at_positive_t &= fit.congruent;
        out.trail_t.push_back(t);
        out.trail_diff.push_back((fit.map.matrix() - prev).cwiseAbs().maxCoeff());
        prev = fit.map.matrix();
        if (out.trail_diff.back() < cauchy_tol) break;
    }
    out.final_diff = out.trail_diff.empty() ? 0.0 : out.trail_diff.back();
    out.cauchy = out.final_diff < cauchy_tol;

    out.direct = fit_congruence(P, Q, -1, tol);
    if (!out.cauchy && out.congruent_at_positive_t)
        throw DivergentTransformSequence(
            "fitted maps are congruent along the path but fail to converge as t -> 0 "
            "(final successive difference " +
            std::to_string(out.final_diff) + ")");
    return out;
}

}  // namespace cpoly

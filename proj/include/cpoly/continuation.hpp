#ifndef CPOLY_CONTINUATION_HPP
#define CPOLY_CONTINUATION_HPP

#include <vector>

#include "cpoly/moebius.hpp"
#include "cpoly/rigidity.hpp"

namespace cpoly {

/**
 * Deformation path in measure space: only the listed unitary edges move,
 * their inversive distance going to 1 + direction * mu * t while every
 * other measure entry stays frozen.
 */
struct PathSpec {
    std::vector<int> unitary_edge_set;  // edge indices, frozen order
    double mu = 0.1;
    int steps = 10;
    int direction = +1;  // +1 toward disjoint, -1 into overlap
};

/// Target measure at path parameter t in [0, 1].
Eigen::VectorXd target_measure(const ConfigurationState& P, const PathSpec& spec, double t);

/**
 * Gauss-Newton correction with minimal-norm steps (SVD pseudoinverse; the
 * six Moebius kernel directions are never excited). Requires full row rank
 * 4n-6 along the way. With certify set, the converged state must be
 * strictly convex, hyperbolic and proper.
 */
ConfigurationState newton_correct(const ConfigurationState& guess,
                                  const Eigen::VectorXd& target, double tol = 1e-11,
                                  int max_iter = 50, bool certify = false);

struct DeformationStep {
    double t = 0;
    ConfigurationState state;
    double residual = 0;  // sup-norm measure error against l(t)
};

struct DeformationResult {
    std::vector<DeformationStep> steps;  // t ascending, starts at t = 0
    double max_residual = 0;
    bool certified = true;

    const ConfigurationState& final_state() const { return steps.back().state; }
    /// State at a requested grid value (exact match on t).
    const ConfigurationState& at(double t) const;
};

/**
 * Predictor-corrector march along the path: uniform grid with step halving
 * on corrector failure (minimum step 1e-4), every accepted state certified
 * strictly convex + hyperbolic + proper and measure-faithful to l(t).
 */
DeformationResult deform(const ConfigurationState& P, const PathSpec& spec,
                         double tol = 1e-11);

struct CongruenceResult {
    bool congruent = false;
    MoebiusMap map;
    double residual = 0;          // max vertex sup-norm of phi(p) - q
    double pairing_residual = 0;  // max basis-pairing defect
    int anchor_face = 0;
};

/**
 * Fits the Moebius map on an anchor face (three disks plus the positive-time
 * unit normal) and certifies it carries every vertex of P to Q. Requires the
 * same triangulation and equal measures to 1e-8. anchor_face < 0 starts at
 * face 0; on degenerate faces up to 3 alternatives are tried.
 */
CongruenceResult fit_congruence(const ConfigurationState& P, const ConfigurationState& Q,
                                int anchor_face = -1, double tol = 1e-8);

struct DeformationCongruence {
    CongruenceResult direct;              // the fit at t = 0, the verdict
    bool congruent_at_positive_t = true;  // every grid fit succeeded
    std::vector<double> trail_t;          // descending toward 0
    std::vector<double> trail_diff;       // entrywise successive map changes
    double final_diff = 0;
    bool cauchy = false;
    bool deformed = false;  // false when no unitary edges exist
};

/**
 * The deformation-and-limit congruence decision: deform P and Q along the
 * same path away from their shared unitary edges, fit the map at every
 * positive grid value, then follow the fitted maps down a geometric
 * refinement t -> 0 until they are Cauchy below cauchy_tol. Overall verdict
 * is the direct fit at t = 0. Without unitary edges the pipeline reduces to
 * the direct fit.
 */
DeformationCongruence congruent_via_deformation(const ConfigurationState& P,
                                                const ConfigurationState& Q, double mu = 0.1,
                                                int steps = 10, double tol = 1e-8,
                                                double cauchy_tol = 1e-7);

}  // namespace cpoly

#endif

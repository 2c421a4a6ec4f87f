#pragma once

#include <Eigen/Dense>
#include <tuple>
#include <vector>

#include "prodtop/simplicial_complex.hpp"

namespace prodtop {

/// Partially observed spatiotemporal edge flow: entries (t, edge, value)
/// with t in [0, T) and edge indexing the complex's canonical edge order.
struct FlowObservation {
    int time_steps = 0;
    Eigen::Index edge_count = 0;
    std::vector<std::tuple<int, Eigen::Index, double>> entries;

    void validate() const;  // ranges and duplicate (t, edge) pairs
};

/// T x |E| flow; row t is the spatial snapshot at time t, column e the
/// temporal trace of edge e. Signs follow the complex's ascending-vertex
/// edge orientations.
struct SpatiotemporalFlow {
    Eigen::MatrixXd values;

    int timeSteps() const { return static_cast<int>(values.rows()); }
    Eigen::Index edgeCount() const { return values.cols(); }
};

struct InterpolationParams {
    double alpha_s = 1.0;
    double alpha_t = 1.0;
    double lambda = 1e-6;  // strictly positive; forces a unique solution
};

struct InterpolationResult {
    SpatiotemporalFlow flow;
    bool underdetermined_warning = false;
    double solve_residual = 0.0;  // ||A f - b|| / max(||b||, 1)
};

/// Minimizes MSE(f|_Omega, fhat|_Omega) + alpha_s sum_t f_t^T L_s f_t
/// + alpha_t sum_e f^eT L_t f^e + lambda f^T f, with L_s the edge-space
/// Hodge Laplacian of X and L_t the graph Laplacian of the path P_T.
/// The normal equations are SPD for lambda > 0; solved densely below
/// dimension 2000, by conjugate gradients above.
InterpolationResult interpolateFlow(const SimplicialComplex& x,
                                    const FlowObservation& obs,
                                    const InterpolationParams& params);

/// Objective of the program above, evaluated term by term.
double interpolationObjective(const SimplicialComplex& x,
                              const FlowObservation& obs,
                              const InterpolationParams& params,
                              const SpatiotemporalFlow& f);

/// f^T (alpha_s Delta_X (x) I + alpha_t I (x) Delta_Y) f for Y = P_T.
/// Equals the double-sum smoothness penalty of the interpolation program.
double productSpaceQuadraticForm(const SimplicialComplex& x,
                                 const SpatiotemporalFlow& f,
                                 double alpha_s, double alpha_t);

/// (1/|Omega|) sum over the mask of squared differences; 0 on an empty mask.
double maskedMse(const SpatiotemporalFlow& a, const SpatiotemporalFlow& b,
                 const FlowObservation& mask);

}  // namespace prodtop

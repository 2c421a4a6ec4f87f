#pragma once

#include <vector>

#include "prodtop/interpolate.hpp"

namespace prodtop {

/// Small interpolation demo: a 10-edge complex with one filled triangle, a
/// smooth flow over T = 3 snapshots, and 5 observations (2 at t=0, 1 at t=1,
/// 2 at t=2). Joint space/time smoothing recovers the flow where either pure
/// setting fails.
struct Fig1Scene {
    SimplicialComplex complex;
    SpatiotemporalFlow truth;
    FlowObservation observations;
    double lambda = 1e-6;
};

Fig1Scene makeFig1Scene();

struct Fig1Row {
    double alpha_t;
    double alpha_s;
    double rel_error;  // ||f* - f|| / ||f||
};

/// Ablation over (alpha_t, alpha_s) in {(0, 1), (0.01, 1), (1, 0)}.
std::vector<Fig1Row> runFig1Ablation();

double relativeError(const SpatiotemporalFlow& estimate, const SpatiotemporalFlow& truth);

}  // namespace prodtop

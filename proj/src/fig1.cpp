#include "prodtop/fig1.hpp"

#include <stdexcept>

#include "prodtop/spectral.hpp"

namespace prodtop {

double relativeError(const SpatiotemporalFlow& estimate, const SpatiotemporalFlow& truth) {
    const double denom = truth.values.norm();
    if (denom == 0.0) throw std::invalid_argument("relative error against a zero flow");
    return (estimate.values - truth.values).norm() / denom;
}

Fig1Scene makeFig1Scene() {
    Fig1Scene scene;
    // One filled triangle plus a web of unfilled cycles: 6 vertices, 10 edges.
    // Edge order (lexicographic): 12 13 23 24 25 34 35 45 46 56.
    scene.complex = SimplicialComplex::fromTopSimplices(
        {{1, 2, 3}, {2, 4}, {2, 5}, {3, 4}, {3, 5}, {4, 5}, {4, 6}, {5, 6}});

    const Eigen::Index edges = scene.complex.count(1);
    const int time_steps = 3;

    // Smooth ground truth: a fixed mix of harmonic cycles plus a small
    // gradient component, drifting gently over the three snapshots.
    HodgeDecomposition dec = hodgeDecompose(scene.complex, 1);
    Eigen::VectorXd base = Eigen::VectorXd::Zero(edges);
    Eigen::VectorXd mix(dec.basis_harmonic.cols());
    for (Eigen::Index c = 0; c < mix.size(); ++c) mix(c) = 1.0 / (1.0 + 0.7 * c);
    if (dec.basis_harmonic.cols() > 0) base = dec.basis_harmonic * mix;
    if (dec.basis_gradient.cols() > 0) base += 0.05 * dec.basis_gradient.col(0);
    base.normalize();

    scene.truth.values.resize(time_steps, edges);
    for (int t = 0; t < time_steps; ++t)
        scene.truth.values.row(t) = (1.0 + 0.06 * t) * base.transpose();

    // 2 observed edges at t=0, 1 at t=1, 2 at t=2; five distinct edges, the
    // other five never observed.
    scene.observations.time_steps = time_steps;
    scene.observations.edge_count = edges;
    const std::vector<std::pair<int, Eigen::Index>> where = {
        {0, 0}, {0, 7}, {1, 3}, {2, 5}, {2, 9}};
    for (const auto& [t, e] : where)
        scene.observations.entries.emplace_back(t, e, scene.truth.values(t, e));
    scene.lambda = 1e-6;
    return scene;
}

std::vector<Fig1Row> runFig1Ablation() {
    const Fig1Scene scene = makeFig1Scene();
    const std::vector<std::pair<double, double>> settings = {
        {0.0, 1.0}, {0.01, 1.0}, {1.0, 0.0}};  // (alpha_t, alpha_s)

    std::vector<Fig1Row> rows;
    for (const auto& [alpha_t, alpha_s] : settings) {
        InterpolationParams params{alpha_s, alpha_t, scene.lambda};
        InterpolationResult res = interpolateFlow(scene.complex, scene.observations, params);
        rows.push_back({alpha_t, alpha_s, relativeError(res.flow, scene.truth)});
    }
    return rows;
}

}  // namespace prodtop

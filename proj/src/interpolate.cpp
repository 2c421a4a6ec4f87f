#include "prodtop/interpolate.hpp"

#include <Eigen/Dense>
#include <Eigen/IterativeLinearSolvers>
#include <unsupported/Eigen/KroneckerProduct>

#include <set>
#include <stdexcept>

#include "prodtop/product_complex.hpp"
#include "prodtop/spectral.hpp"

namespace prodtop {

namespace {

// Flat index of (t, e): edges outer, time inner, matching the bigraded
// flattening of grade (1,0) with X the spatial complex and Y = P_T.
inline Eigen::Index flatIndex(int t, Eigen::Index e, int time_steps) {
    return e * time_steps + t;
}

Eigen::VectorXd flattenFlow(const SpatiotemporalFlow& f) {
    // values is T x E; the flat layout is its transpose, row-major.
    return flattenSignal(f.values.transpose());
}

SpatiotemporalFlow unflattenFlow(const Eigen::VectorXd& flat, int time_steps, Eigen::Index edges) {
    SpatiotemporalFlow f;
    f.values = unflattenSignal(flat, edges, time_steps).transpose();
    return f;
}

Eigen::SparseMatrix<double> systemLaplacian(const SimplicialComplex& x, int time_steps,
                                            double alpha_s, double alpha_t) {
    const Eigen::Index edges = x.count(1);
    Eigen::SparseMatrix<double> ls = hodgeLaplacian(x, 1).matrix();
    Eigen::SparseMatrix<double> lt =
        hodgeLaplacian(SimplicialComplex::pathGraph(time_steps), 0).matrix();
    Eigen::SparseMatrix<double> it(time_steps, time_steps);
    it.setIdentity();
    Eigen::SparseMatrix<double> ie(edges, edges);
    ie.setIdentity();
    return alpha_s * Eigen::kroneckerProduct(ls, it) + alpha_t * Eigen::kroneckerProduct(ie, lt);
}

}  // namespace

void FlowObservation::validate() const {
    std::set<std::pair<int, Eigen::Index>> seen;
    for (const auto& [t, e, v] : entries) {
        (void)v;
        if (t < 0 || t >= time_steps) throw std::invalid_argument("observation time out of range");
        if (e < 0 || e >= edge_count) throw std::invalid_argument("observation edge out of range");
        if (!seen.emplace(t, e).second)
            throw std::invalid_argument("duplicate (t, edge) observation");
    }
}

InterpolationResult interpolateFlow(const SimplicialComplex& x, const FlowObservation& obs,
                                    const InterpolationParams& params) {
    if (params.lambda <= 0.0) throw std::invalid_argument("lambda must be strictly positive");
    if (params.alpha_s < 0.0 || params.alpha_t < 0.0)
        throw std::invalid_argument("alpha weights must be nonnegative");
    if (obs.time_steps < 1) throw std::invalid_argument("need at least one time step");
    const Eigen::Index edges = x.count(1);
    if (edges == 0) throw std::invalid_argument("complex has no edges");
    if (obs.edge_count != edges) throw std::invalid_argument("observation edge count mismatch");
    obs.validate();

    const Eigen::Index dim = edges * obs.time_steps;
    const Eigen::Index n_obs = static_cast<Eigen::Index>(obs.entries.size());

    InterpolationResult result;
    if (n_obs == 0 && params.alpha_s == 0.0 && params.alpha_t == 0.0) {
        // only the ridge term remains; the zero flow is the unique minimizer
        result.underdetermined_warning = true;
        result.flow.values = Eigen::MatrixXd::Zero(obs.time_steps, edges);
        return result;
    }
    if (n_obs == 0) result.underdetermined_warning = true;

    // (M/|O| + a_s Dx (x) I + a_t I (x) Dy + lambda I) f = m / |O|
    Eigen::SparseMatrix<double> sys =
        systemLaplacian(x, obs.time_steps, params.alpha_s, params.alpha_t);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(dim);
    std::vector<Eigen::Triplet<double>> mask_trips;
    for (const auto& [t, e, v] : obs.entries) {
        const Eigen::Index idx = flatIndex(t, e, obs.time_steps);
        mask_trips.emplace_back(idx, idx, 1.0 / static_cast<double>(n_obs));
        rhs(idx) += v / static_cast<double>(n_obs);
    }
    Eigen::SparseMatrix<double> mask(dim, dim);
    if (n_obs > 0) mask.setFromTriplets(mask_trips.begin(), mask_trips.end());
    Eigen::SparseMatrix<double> ident(dim, dim);
    ident.setIdentity();
    sys += mask;
    sys += Eigen::SparseMatrix<double>(params.lambda * ident);

    Eigen::VectorXd solution;
    if (dim < 2000) {
        Eigen::MatrixXd dense(sys);
        solution = Eigen::LDLT<Eigen::MatrixXd>(dense).solve(rhs);
    } else {
        Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper> cg;
        cg.setTolerance(1e-10);
        cg.setMaxIterations(10 * dim);
        cg.compute(sys);
        solution = cg.solve(rhs);
    }
    result.solve_residual = (sys * solution - rhs).norm() / std::max(rhs.norm(), 1.0);
    result.flow = unflattenFlow(solution, obs.time_steps, edges);
    return result;
}

double maskedMse(const SpatiotemporalFlow& a, const SpatiotemporalFlow& b,
                 const FlowObservation& mask) {
    if (a.values.rows() != b.values.rows() || a.values.cols() != b.values.cols())
        throw std::invalid_argument("mse: shape mismatch");
    if (mask.entries.empty()) return 0.0;  // empty mask convention
    double acc = 0.0;
    for (const auto& [t, e, v] : mask.entries) {
        (void)v;
        const double d = a.values(t, e) - b.values(t, e);
        acc += d * d;
    }
    return acc / static_cast<double>(mask.entries.size());
}

double productSpaceQuadraticForm(const SimplicialComplex& x, const SpatiotemporalFlow& f,
                                 double alpha_s, double alpha_t) {
    if (f.values.cols() != x.count(1))
        throw std::invalid_argument("quadratic form: flow/complex shape mismatch");
    const int time_steps = f.timeSteps();
    Eigen::VectorXd flat = flattenFlow(f);
    Eigen::SparseMatrix<double> lap = systemLaplacian(x, time_steps, alpha_s, alpha_t);
    return flat.dot(lap * flat);
}

double interpolationObjective(const SimplicialComplex& x, const FlowObservation& obs,
                              const InterpolationParams& params, const SpatiotemporalFlow& f) {
    double data = 0.0;
    if (!obs.entries.empty()) {
        for (const auto& [t, e, v] : obs.entries) {
            const double d = f.values(t, e) - v;
            data += d * d;
        }
        data /= static_cast<double>(obs.entries.size());
    }
    const double smooth = productSpaceQuadraticForm(x, f, params.alpha_s, params.alpha_t);
    const double ridge = params.lambda * flattenFlow(f).squaredNorm();
    return data + smooth + ridge;
}

}  // namespace prodtop

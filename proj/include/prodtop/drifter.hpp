#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "prodtop/simplicial_complex.hpp"

namespace prodtop {

/// Axial hex coordinate (flat-top layout on an equirectangular lat/lon
/// plane). Serialized as "q,r".
struct HexCoord {
    int q = 0;
    int r = 0;
    bool operator<(const HexCoord& o) const { return q < o.q || (q == o.q && r < o.r); }
    bool operator==(const HexCoord& o) const { return q == o.q && r == o.r; }
    std::string str() const { return std::to_string(q) + "," + std::to_string(r); }
};

struct BoundingBox {
    double lat_top = 0.0;
    double lon_left = 0.0;
    double lat_bottom = 0.0;
    double lon_right = 0.0;

    bool contains(double lat, double lon) const {
        return lat <= lat_top && lat >= lat_bottom && lon >= lon_left && lon <= lon_right;
    }
};

/// Hexagonal tiling of a lat/lon rectangle, with a vertex per ocean hexagon,
/// an edge per shared side and a filled triangle per triple point. "size" is
/// the center-to-center latitude spacing of vertically adjacent hexagons.
class HexGridComplex {
public:
    static HexGridComplex build(const BoundingBox& bbox, double hex_size_deg,
                                const std::set<HexCoord>& land_mask = {});

    const SimplicialComplex& complex() const { return sc_; }
    const BoundingBox& bbox() const { return bbox_; }
    double hexSize() const { return hex_size_deg_; }

    Eigen::Index hexCount() const { return static_cast<Eigen::Index>(hexes_.size()); }
    const std::vector<HexCoord>& hexes() const { return hexes_; }
    std::pair<double, double> center(const HexCoord& h) const;  // (lat, lon)

    /// Hex containing a point, or nullopt if outside the bbox / masked out.
    std::optional<HexCoord> locate(double lat, double lon) const;

    /// Vertex index of a hexagon in the simplicial complex (1-based vertex
    /// ids are index+1).
    Eigen::Index vertexIndex(const HexCoord& h) const;
    bool isLand(const HexCoord& h) const { return land_.count(h) > 0; }

    /// Edge index for the edge between two adjacent hexes, with the sign of
    /// traversal a -> b against the ascending-id reference orientation.
    std::pair<Eigen::Index, int> edgeBetween(const HexCoord& a, const HexCoord& b) const;

    /// BFS shortest path through ocean hexes, ties broken toward smaller hex
    /// ids; empty when disconnected. Endpoints included.
    std::vector<HexCoord> shortestPath(const HexCoord& from, const HexCoord& to) const;

    std::vector<HexCoord> neighbors(const HexCoord& h) const;

private:
    BoundingBox bbox_;
    double hex_size_deg_ = 0.3;
    std::vector<HexCoord> hexes_;  // sorted, ocean only
    std::map<HexCoord, Eigen::Index> index_;
    std::set<HexCoord> land_;
    SimplicialComplex sc_;
};

/// Calendar year (UTC) of an epoch-seconds timestamp.
int yearOfTimestamp(std::int64_t epoch_seconds);

struct Ping {
    std::int64_t timestamp = 0;  // epoch seconds
    double lat = 0.0;
    double lon = 0.0;
};

struct Trajectory {
    std::string buoy_id;
    std::vector<Ping> pings;  // strictly increasing timestamps
};

/// T x |E| yearly flow matrix plus the year each row covers.
struct YearlyFlows {
    Eigen::MatrixXd flows;
    std::vector<int> years;

    int timeSteps() const { return static_cast<int>(flows.rows()); }
};

struct DiscretizationStats {
    Eigen::Index dropped_outside = 0;
    Eigen::Index dropped_land = 0;
    Eigen::Index bridged_hops = 0;
};

/// Signed edge-traversal counts per year for one trajectory. Consecutive
/// pings in the same hexagon collapse; non-adjacent hops are bridged by a
/// shortest hex path; a hop is charged to the year of its earlier ping.
std::map<int, Eigen::VectorXd> discretizeTrajectory(const HexGridComplex& grid,
                                                    const Trajectory& traj,
                                                    DiscretizationStats* stats = nullptr);

/// Sum of trajectory vectors per year over the given years (rows in order).
YearlyFlows accumulateFlows(const HexGridComplex& grid,
                            const std::vector<Trajectory>& trajectories,
                            const std::vector<int>& years,
                            DiscretizationStats* stats = nullptr);

/// (1/2)(1 - <f, fhat> / (||f restricted to supp(fhat)|| * ||fhat||)),
/// 0 = perfect alignment, 1 = opposite. 0.5 when f vanishes on the support.
double cosineLoss(const YearlyFlows& f, const YearlyFlows& fhat);

struct InferenceOptions {
    int max_iterations = 5000;
    double gradient_tolerance = 1e-6;
    double objective_change_tolerance = 1e-10;
    double armijo_constant = 1e-4;
};

struct InferenceResult {
    YearlyFlows currents;
    double objective = 0.0;
    double gradient_norm = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Minimizes cosineLoss(f, f_train) + <f, D(a_s,a_t) f> / ||f||^2 with
/// D(a_s,a_t) = a_s Delta_X / T + a_t Delta_Y / |E|. Both terms are
/// 0-homogeneous, so the descent runs on the unit sphere: projected
/// gradient steps with Armijo backtracking, initialized at the normalized
/// training flow. Throws if a full backtracking sweep cannot decrease the
/// objective before convergence.
InferenceResult inferCurrents(const HexGridComplex& grid, const YearlyFlows& train,
                              double alpha_s, double alpha_t,
                              const InferenceOptions& opts = {});

/// Deterministic whole-buoy split via a seeded shuffle.
std::pair<std::vector<Trajectory>, std::vector<Trajectory>>
splitTrainTest(const std::vector<Trajectory>& trajectories, double fraction, unsigned seed);

struct IngestStats {
    Eigen::Index skipped_rows = 0;
    Eigen::Index dropped_rows = 0;  // outside bbox or before min_year
};

/// CSV with header id,timestamp,lat,lon; timestamps ISO-8601 or epoch
/// seconds. Rows outside the bbox or before min_year are dropped; rows that
/// fail to parse are skipped and counted. Throws on a malformed header.
std::vector<Trajectory> ingestGdpCsv(const std::string& path, const BoundingBox& bbox,
                                     int min_year = 1992, IngestStats* stats = nullptr);

/// Desk-scale synthetic benchmark: smooth year-varying currents on a
/// ~100-hexagon grid, trajectories sampled by walking along the currents.
struct SyntheticScene {
    HexGridComplex grid;
    std::vector<Trajectory> trajectories;
    std::vector<int> years;
    YearlyFlows true_currents;
};

SyntheticScene makeSyntheticScene(unsigned seed, int n_trajectories = 60, int n_years = 5);

}  // namespace prodtop

#include "prodtop/drifter.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <deque>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "prodtop/product_complex.hpp"
#include "prodtop/spectral.hpp"

namespace prodtop {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;

// Howard Hinnant's civil-date algorithms (public domain).
std::int64_t daysFromCivil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2u) / 5u + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

int yearOfEpoch(std::int64_t epoch_seconds) {
    std::int64_t z = epoch_seconds / 86400;
    if (epoch_seconds % 86400 < 0) --z;
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    return static_cast<int>(y + (mp >= 10 ? 1 : 0));
}

const std::array<HexCoord, 6> kAxialDirections = {
    HexCoord{1, 0}, HexCoord{1, -1}, HexCoord{0, -1},
    HexCoord{-1, 0}, HexCoord{-1, 1}, HexCoord{0, 1}};

HexCoord axialRound(double qf, double rf) {
    const double sf = -qf - rf;
    double q = std::round(qf), r = std::round(rf), s = std::round(sf);
    const double dq = std::abs(q - qf), dr = std::abs(r - rf), ds = std::abs(s - sf);
    if (dq > dr && dq > ds)
        q = -r - s;
    else if (dr > ds)
        r = -q - s;
    return HexCoord{static_cast<int>(q), static_cast<int>(r)};
}

}  // namespace

int yearOfTimestamp(std::int64_t epoch_seconds) { return yearOfEpoch(epoch_seconds); }

HexGridComplex HexGridComplex::build(const BoundingBox& bbox, double hex_size_deg,
                                     const std::set<HexCoord>& land_mask) {
    if (hex_size_deg <= 0.0) throw std::invalid_argument("hex size must be positive");
    if (bbox.lat_top <= bbox.lat_bottom || bbox.lon_right <= bbox.lon_left)
        throw std::invalid_argument("degenerate bounding box");

    HexGridComplex grid;
    grid.bbox_ = bbox;
    grid.hex_size_deg_ = hex_size_deg;
    grid.land_ = land_mask;

    // flat-top layout: vertical neighbor spacing = hex_size_deg, so the
    // circumradius in degrees is hex_size_deg / sqrt(3)
    const double radius = hex_size_deg / kSqrt3;
    const double width = bbox.lon_right - bbox.lon_left;
    const double height = bbox.lat_top - bbox.lat_bottom;

    const int q_max = static_cast<int>(std::floor(width / (1.5 * radius)));
    for (int q = 0; q <= q_max; ++q) {
        // y_center = sqrt(3) * radius * (r + q/2) must land inside [0, height]
        const double base = static_cast<double>(q) / 2.0;
        const int r_min = static_cast<int>(std::ceil(-base - 1e-9));
        const int r_max = static_cast<int>(std::floor(height / (kSqrt3 * radius) - base + 1e-9));
        for (int r = r_min; r <= r_max; ++r) {
            const HexCoord h{q, r};
            if (land_mask.count(h)) continue;
            grid.hexes_.push_back(h);
        }
    }
    std::sort(grid.hexes_.begin(), grid.hexes_.end());
    if (grid.hexes_.empty()) throw std::invalid_argument("empty hex grid after masking");
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(grid.hexes_.size()); ++i)
        grid.index_[grid.hexes_[i]] = i;

    // vertices for all hexes, an edge per shared side, a filled triangle per
    // triple point
    std::vector<SimplicialComplex::Simplex> top;
    for (const auto& h : grid.hexes_) top.push_back({static_cast<int>(grid.index_.at(h)) + 1});
    for (const auto& h : grid.hexes_) {
        const int vh = static_cast<int>(grid.index_.at(h)) + 1;
        for (std::size_t d = 0; d < kAxialDirections.size(); ++d) {
            const HexCoord n{h.q + kAxialDirections[d].q, h.r + kAxialDirections[d].r};
            auto it = grid.index_.find(n);
            if (it == grid.index_.end()) continue;
            const int vn = static_cast<int>(it->second) + 1;
            if (vh < vn) top.push_back({vh, vn});
            // triple point with the next direction around the hexagon
            const auto& d2 = kAxialDirections[(d + 1) % 6];
            const HexCoord n2{h.q + d2.q, h.r + d2.r};
            auto it2 = grid.index_.find(n2);
            if (it2 == grid.index_.end()) continue;
            const int vn2 = static_cast<int>(it2->second) + 1;
            if (vh < vn && vh < vn2) {
                std::vector<int> tri{vh, vn, vn2};
                std::sort(tri.begin(), tri.end());
                top.push_back(tri);
            }
        }
    }
    grid.sc_ = SimplicialComplex::fromTopSimplices(top);
    return grid;
}

std::pair<double, double> HexGridComplex::center(const HexCoord& h) const {
    const double radius = hex_size_deg_ / kSqrt3;
    const double x = 1.5 * radius * h.q;
    const double y = kSqrt3 * radius * (h.r + h.q / 2.0);
    return {bbox_.lat_bottom + y, bbox_.lon_left + x};
}

std::optional<HexCoord> HexGridComplex::locate(double lat, double lon) const {
    if (!bbox_.contains(lat, lon)) return std::nullopt;
    const double radius = hex_size_deg_ / kSqrt3;
    const double x = lon - bbox_.lon_left;
    const double y = lat - bbox_.lat_bottom;
    const double qf = (2.0 / 3.0) * x / radius;
    const double rf = (-x / 3.0 + kSqrt3 / 3.0 * y) / radius;
    const HexCoord h = axialRound(qf, rf);
    if (index_.count(h) == 0) return std::nullopt;
    return h;
}

Eigen::Index HexGridComplex::vertexIndex(const HexCoord& h) const {
    auto it = index_.find(h);
    if (it == index_.end()) throw std::invalid_argument("hex not in grid: " + h.str());
    return it->second;
}

std::pair<Eigen::Index, int> HexGridComplex::edgeBetween(const HexCoord& a,
                                                         const HexCoord& b) const {
    const int va = static_cast<int>(vertexIndex(a)) + 1;
    const int vb = static_cast<int>(vertexIndex(b)) + 1;
    const Eigen::Index e = sc_.indexOf({std::min(va, vb), std::max(va, vb)});
    if (e < 0) throw std::invalid_argument("hexes are not adjacent: " + a.str() + " / " + b.str());
    return {e, va < vb ? +1 : -1};
}

std::vector<HexCoord> HexGridComplex::neighbors(const HexCoord& h) const {
    std::vector<HexCoord> out;
    for (const auto& d : kAxialDirections) {
        const HexCoord n{h.q + d.q, h.r + d.r};
        if (index_.count(n)) out.push_back(n);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<HexCoord> HexGridComplex::shortestPath(const HexCoord& from, const HexCoord& to) const {
    if (from == to) return {from};
    std::map<HexCoord, HexCoord> parent;
    std::deque<HexCoord> queue{from};
    parent[from] = from;
    while (!queue.empty()) {
        const HexCoord cur = queue.front();
        queue.pop_front();
        for (const auto& n : neighbors(cur)) {  // sorted: ties go to smaller ids
            if (parent.count(n)) continue;
            parent[n] = cur;
            if (n == to) {
                std::vector<HexCoord> path{to};
                HexCoord walk = to;
                while (!(walk == from)) {
                    walk = parent.at(walk);
                    path.push_back(walk);
                }
                std::reverse(path.begin(), path.end());
                return path;
            }
            queue.push_back(n);
        }
    }
    return {};
}

std::map<int, Eigen::VectorXd> discretizeTrajectory(const HexGridComplex& grid,
                                                    const Trajectory& traj,
                                                    DiscretizationStats* stats) {
    for (std::size_t i = 1; i < traj.pings.size(); ++i)
        if (traj.pings[i].timestamp <= traj.pings[i - 1].timestamp)
            throw std::invalid_argument("trajectory timestamps must be strictly increasing");

    // hex sequence with entry timestamps, consecutive repeats collapsed
    std::vector<std::pair<HexCoord, std::int64_t>> hops;
    for (const auto& ping : traj.pings) {
        auto hex = grid.locate(ping.lat, ping.lon);
        if (!hex) {
            if (stats) {
                if (grid.bbox().contains(ping.lat, ping.lon))
                    ++stats->dropped_land;
                else
                    ++stats->dropped_outside;
            }
            continue;
        }
        if (!hops.empty() && hops.back().first == *hex) continue;
        hops.emplace_back(*hex, ping.timestamp);
    }

    const Eigen::Index edges = grid.complex().count(1);
    std::map<int, Eigen::VectorXd> per_year;
    auto flowOf = [&](int year) -> Eigen::VectorXd& {
        auto it = per_year.find(year);
        if (it == per_year.end())
            it = per_year.emplace(year, Eigen::VectorXd::Zero(edges)).first;
        return it->second;
    };

    for (std::size_t i = 1; i < hops.size(); ++i) {
        const int year = yearOfEpoch(hops[i - 1].second);  // year of the earlier ping
        std::vector<HexCoord> path{hops[i - 1].first, hops[i].first};
        bool direct = false;
        for (const auto& n : grid.neighbors(hops[i - 1].first))
            if (n == hops[i].first) direct = true;
        if (!direct) {
            path = grid.shortestPath(hops[i - 1].first, hops[i].first);
            if (path.empty()) continue;  // disconnected: skip the hop
            if (stats) ++stats->bridged_hops;
        }
        Eigen::VectorXd& flow = flowOf(year);
        for (std::size_t p = 1; p < path.size(); ++p) {
            const auto [e, sign] = grid.edgeBetween(path[p - 1], path[p]);
            flow(e) += sign;
        }
    }
    return per_year;
}

YearlyFlows accumulateFlows(const HexGridComplex& grid,
                            const std::vector<Trajectory>& trajectories,
                            const std::vector<int>& years, DiscretizationStats* stats) {
    YearlyFlows out;
    out.years = years;
    out.flows = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(years.size()),
                                      grid.complex().count(1));
    for (const auto& traj : trajectories) {
        auto per_year = discretizeTrajectory(grid, traj, stats);
        for (std::size_t t = 0; t < years.size(); ++t) {
            auto it = per_year.find(years[t]);
            if (it != per_year.end()) out.flows.row(static_cast<Eigen::Index>(t)) += it->second;
        }
    }
    return out;
}

double cosineLoss(const YearlyFlows& f, const YearlyFlows& fhat) {
    if (f.flows.rows() != fhat.flows.rows() || f.flows.cols() != fhat.flows.cols())
        throw std::invalid_argument("cosine loss: shape mismatch");
    const double hat_norm = fhat.flows.norm();
    if (hat_norm == 0.0) throw std::invalid_argument("cosine loss: reference flow is zero");

    double inner = 0.0, restricted_sq = 0.0;
    for (Eigen::Index t = 0; t < f.flows.rows(); ++t) {
        for (Eigen::Index e = 0; e < f.flows.cols(); ++e) {
            if (fhat.flows(t, e) == 0.0) continue;
            inner += f.flows(t, e) * fhat.flows(t, e);
            restricted_sq += f.flows(t, e) * f.flows(t, e);
        }
    }
    if (restricted_sq == 0.0) return 0.5;  // orthogonal convention
    return 0.5 * (1.0 - inner / (std::sqrt(restricted_sq) * hat_norm));
}

namespace {

struct CosineLossGrad {
    double loss;
    Eigen::VectorXd grad;
};

// Loss and gradient in the flat (edge-outer, time-inner) layout.
CosineLossGrad cosineLossGrad(const Eigen::VectorXd& f, const Eigen::VectorXd& fhat) {
    const double c = fhat.norm();
    double s = 0.0, r_sq = 0.0;
    for (Eigen::Index i = 0; i < f.size(); ++i) {
        if (fhat(i) == 0.0) continue;
        s += f(i) * fhat(i);
        r_sq += f(i) * f(i);
    }
    CosineLossGrad out;
    if (r_sq == 0.0) {
        out.loss = 0.5;
        out.grad = Eigen::VectorXd::Zero(f.size());
        return out;
    }
    const double r = std::sqrt(r_sq);
    out.loss = 0.5 * (1.0 - s / (r * c));
    out.grad = Eigen::VectorXd::Zero(f.size());
    for (Eigen::Index i = 0; i < f.size(); ++i) {
        if (fhat(i) == 0.0) continue;
        out.grad(i) = -0.5 * (fhat(i) / (r * c) - s / (r_sq * r * c) * f(i));
    }
    return out;
}

Eigen::VectorXd flattenYearly(const Eigen::MatrixXd& values) {
    return flattenSignal(values.transpose());
}

Eigen::MatrixXd unflattenYearly(const Eigen::VectorXd& flat, int time_steps, Eigen::Index edges) {
    return unflattenSignal(flat, edges, time_steps).transpose();
}

}  // namespace

InferenceResult inferCurrents(const HexGridComplex& grid, const YearlyFlows& train,
                              double alpha_s, double alpha_t, const InferenceOptions& opts) {
    if (alpha_s < 0.0 || alpha_t < 0.0)
        throw std::invalid_argument("alpha weights must be nonnegative");
    if (train.flows.norm() == 0.0)
        throw std::invalid_argument("training flows are identically zero");

    const int time_steps = train.timeSteps();
    const Eigen::Index edges = grid.complex().count(1);
    if (train.flows.cols() != edges)
        throw std::invalid_argument("training flow width disagrees with the grid");

    // D(a_s, a_t) = a_s Delta_X / T + a_t Delta_Y / |E| on the flat layout
    Eigen::SparseMatrix<double> lx = hodgeLaplacian(grid.complex(), 1).matrix();
    Eigen::SparseMatrix<double> lt =
        hodgeLaplacian(SimplicialComplex::pathGraph(time_steps), 0).matrix();
    Eigen::SparseMatrix<double> it(time_steps, time_steps);
    it.setIdentity();
    Eigen::SparseMatrix<double> ie(edges, edges);
    ie.setIdentity();
    Eigen::SparseMatrix<double> penalty =
        (alpha_s / time_steps) * Eigen::kroneckerProduct(lx, it) +
        (alpha_t / static_cast<double>(edges)) * Eigen::kroneckerProduct(ie, lt);

    const Eigen::VectorXd fhat = flattenYearly(train.flows);

    // both terms are 0-homogeneous: descend on the unit sphere
    Eigen::VectorXd f = fhat.normalized();

    auto evaluate = [&](const Eigen::VectorXd& point) {
        CosineLossGrad cl = cosineLossGrad(point, fhat);
        const Eigen::VectorXd pf = penalty * point;
        const double quad = point.dot(pf);
        // d/df of f^T D f / f^T f at ||f|| = 1
        Eigen::VectorXd grad = cl.grad + 2.0 * (pf - quad * point);
        return std::make_pair(cl.loss + quad, std::move(grad));
    };

    auto [objective, grad] = evaluate(f);
    InferenceResult result;
    int iter = 0;
    for (; iter < opts.max_iterations; ++iter) {
        Eigen::VectorXd tangent = grad - grad.dot(f) * f;
        const double gnorm = tangent.norm();
        if (gnorm <= opts.gradient_tolerance) {
            result.converged = true;
            break;
        }
        double step = 1.0;
        bool accepted = false;
        double best_trial = objective;
        for (int half = 0; half < 60; ++half) {
            Eigen::VectorXd candidate = (f - step * tangent).normalized();
            auto [obj_c, grad_c] = evaluate(candidate);
            best_trial = std::min(best_trial, obj_c);
            if (obj_c <= objective - opts.armijo_constant * step * gnorm * gnorm) {
                const double change = objective - obj_c;
                f = std::move(candidate);
                objective = obj_c;
                grad = std::move(grad_c);
                accepted = true;
                if (change <= opts.objective_change_tolerance * std::max(std::abs(objective), 1.0)) {
                    result.converged = true;
                    iter = opts.max_iterations;  // settled
                }
                break;
            }
            step *= 0.5;
        }
        if (result.converged) break;
        if (!accepted) {
            if (best_trial > objective + 1e-9)
                throw std::runtime_error(
                    "current inference diverged: objective rose across a full backtracking sweep "
                    "(objective=" + std::to_string(objective) +
                    ", gradient norm=" + std::to_string(gnorm) + ", iteration=" +
                    std::to_string(iter) + ")");
            // numerical floor: no representable decrease left
            result.converged = gnorm <= 10.0 * opts.gradient_tolerance;
            break;
        }
    }

    Eigen::VectorXd final_tangent = grad - grad.dot(f) * f;
    result.objective = objective;
    result.gradient_norm = final_tangent.norm();
    result.iterations = std::min(iter, opts.max_iterations);
    result.currents.flows = unflattenYearly(f, time_steps, edges);
    result.currents.years = train.years;
    return result;
}

std::pair<std::vector<Trajectory>, std::vector<Trajectory>>
splitTrainTest(const std::vector<Trajectory>& trajectories, double fraction, unsigned seed) {
    if (fraction <= 0.0 || fraction >= 1.0)
        throw std::invalid_argument("split fraction must lie strictly between 0 and 1");
    if (trajectories.size() < 2)
        throw std::invalid_argument("need at least two trajectories to split");

    std::vector<std::size_t> order(trajectories.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::mt19937 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);

    std::size_t n_train = static_cast<std::size_t>(
        std::llround(fraction * static_cast<double>(trajectories.size())));
    n_train = std::clamp<std::size_t>(n_train, 1, trajectories.size() - 1);

    std::pair<std::vector<Trajectory>, std::vector<Trajectory>> out;
    for (std::size_t i = 0; i < order.size(); ++i)
        (i < n_train ? out.first : out.second).push_back(trajectories[order[i]]);
    return out;
}

namespace {

bool parseTimestamp(const std::string& field, std::int64_t& out) {
    std::string s = field;
    s.erase(0, s.find_first_not_of(" \t"));
    s.erase(s.find_last_not_of(" \t") + 1);
    if (s.empty()) return false;

    const bool numeric = std::all_of(s.begin(), s.end(), [](char c) {
        return std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+';
    });
    if (numeric) {
        try {
            out = std::stoll(s);
            return true;
        } catch (...) {
            return false;
        }
    }
    // ISO-8601: YYYY-MM-DD[T ]HH:MM:SS with optional trailing Z
    int y, mo, d, h = 0, mi = 0;
    double sec = 0.0;
    char sep;
    std::istringstream is(s);
    char dash1, dash2, colon1, colon2;
    if (!(is >> y >> dash1 >> mo >> dash2 >> d) || dash1 != '-' || dash2 != '-') return false;
    if (is >> sep) {
        if (sep != 'T' && sep != ' ') return false;
        if (!(is >> h >> colon1 >> mi >> colon2 >> sec) || colon1 != ':' || colon2 != ':')
            return false;
    }
    if (mo < 1 || mo > 12 || d < 1 || d > 31 || h < 0 || h > 23 || mi < 0 || mi > 59) return false;
    out = daysFromCivil(y, mo, d) * 86400 + h * 3600 + mi * 60 + static_cast<std::int64_t>(sec);
    return true;
}

std::vector<std::string> splitCsvLine(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream is(line);
    while (std::getline(is, field, ',')) out.push_back(field);
    return out;
}

std::string trimmedLower(std::string s) {
    s.erase(0, s.find_first_not_of(" \t\r"));
    s.erase(s.find_last_not_of(" \t\r") + 1);
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

}  // namespace

std::vector<Trajectory> ingestGdpCsv(const std::string& path, const BoundingBox& bbox,
                                     int min_year, IngestStats* stats) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "'");

    std::string line;
    if (!std::getline(f, line)) throw std::runtime_error("'" + path + "': empty file");
    auto header = splitCsvLine(line);
    if (header.size() < 4 || trimmedLower(header[0]) != "id" ||
        trimmedLower(header[1]) != "timestamp" || trimmedLower(header[2]) != "lat" ||
        trimmedLower(header[3]) != "lon")
        throw std::runtime_error("'" + path + "': malformed header, expected id,timestamp,lat,lon");

    std::map<std::string, std::vector<Ping>> by_id;
    while (std::getline(f, line)) {
        if (line.empty() || line == "\r") continue;
        auto fields = splitCsvLine(line);
        std::int64_t ts;
        double lat, lon;
        if (fields.size() < 4 || !parseTimestamp(fields[1], ts)) {
            if (stats) ++stats->skipped_rows;
            continue;
        }
        try {
            lat = std::stod(fields[2]);
            lon = std::stod(fields[3]);
        } catch (...) {
            if (stats) ++stats->skipped_rows;
            continue;
        }
        if (yearOfEpoch(ts) < min_year || !bbox.contains(lat, lon)) {
            if (stats) ++stats->dropped_rows;
            continue;
        }
        by_id[fields[0]].push_back({ts, lat, lon});
    }

    std::vector<Trajectory> out;
    out.reserve(by_id.size());
    for (auto& [id, pings] : by_id) {
        std::sort(pings.begin(), pings.end(),
                  [](const Ping& a, const Ping& b) { return a.timestamp < b.timestamp; });
        // drop exact-duplicate timestamps to keep the strict ordering invariant
        pings.erase(std::unique(pings.begin(), pings.end(),
                                [](const Ping& a, const Ping& b) {
                                    return a.timestamp == b.timestamp;
                                }),
                    pings.end());
        out.push_back({id, std::move(pings)});
    }
    return out;
}

SyntheticScene makeSyntheticScene(unsigned seed, int n_trajectories, int n_years) {
    SyntheticScene scene{
        HexGridComplex::build(BoundingBox{13.0, -60.0, 10.0, -57.0}, 0.3), {}, {}, {}};
    const auto& sc = scene.grid.complex();
    const Eigen::Index edges = sc.count(1);

    for (int y = 0; y < n_years; ++y) scene.years.push_back(2000 + y);

    // smooth year-varying currents: a drifting mix of the lowest edge-space
    // Laplacian eigenmodes
    auto modes = eigenmodes(hodgeLaplacian(sc, 1), std::min<int>(8, static_cast<int>(edges)));
    scene.true_currents.years = scene.years;
    scene.true_currents.flows = Eigen::MatrixXd::Zero(n_years, edges);
    for (int t = 0; t < n_years; ++t) {
        Eigen::VectorXd field = Eigen::VectorXd::Zero(edges);
        for (std::size_t m = 0; m < modes.size(); ++m) {
            const double weight = 1.0 / (1.0 + static_cast<double>(m));
            const double drift = 1.0 + 0.15 * t * std::cos(0.9 * static_cast<double>(m + 1));
            field += weight * drift * modes[m].vector;
        }
        field.normalize();
        scene.true_currents.flows.row(t) = field.transpose();
    }

    // trajectories walk along the current field of their year, with noise
    std::mt19937 rng(seed);
    std::uniform_int_distribution<Eigen::Index> start_dist(0, scene.grid.hexCount() - 1);
    const int hops_per_traj = 500;
    const double beta = 30.0;  // alignment sharpness; lower = noisier walks

    for (int k = 0; k < n_trajectories; ++k) {
        const int year_idx = k % n_years;
        const std::int64_t year_start = daysFromCivil(scene.years[year_idx], 1, 1) * 86400;
        const Eigen::VectorXd field = scene.true_currents.flows.row(year_idx).transpose();

        Trajectory traj;
        traj.buoy_id = "synth-" + std::to_string(k);
        HexCoord cur = scene.grid.hexes()[start_dist(rng)];
        std::int64_t ts = year_start + (k / n_years) * 86400 * 5;
        auto push = [&](const HexCoord& h) {
            auto [lat, lon] = scene.grid.center(h);
            traj.pings.push_back({ts, lat, lon});
            ts += 21600;  // 6-hour fixes
        };
        push(cur);
        for (int hop = 0; hop < hops_per_traj; ++hop) {
            auto nbrs = scene.grid.neighbors(cur);
            if (nbrs.empty()) break;
            std::vector<double> weights(nbrs.size());
            for (std::size_t n = 0; n < nbrs.size(); ++n) {
                const auto [e, sign] = scene.grid.edgeBetween(cur, nbrs[n]);
                weights[n] = std::exp(beta * sign * field(e));
            }
            std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
            cur = nbrs[pick(rng)];
            push(cur);
        }
        scene.trajectories.push_back(std::move(traj));
    }
    return scene;
}

}  // namespace prodtop

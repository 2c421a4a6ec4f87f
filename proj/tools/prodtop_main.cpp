#include <CLI11.hpp>

#include <array>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#include "prodtop/cell_complex.hpp"
#include "prodtop/drifter.hpp"
#include "prodtop/fig1.hpp"
#include "prodtop/interpolate.hpp"
#include "prodtop/io.hpp"
#include "prodtop/matrix_market.hpp"
#include "prodtop/product_complex.hpp"
#include "prodtop/spectral.hpp"

namespace {

constexpr const char* kVersion = "prodtop 0.1.0";

struct ReproHeader {
    std::string command;
    std::vector<std::pair<std::string, std::string>> params;

    void write(std::ostream& out) const {
        out << "# " << kVersion << " " << command;
        for (const auto& [k, v] : params) out << " " << k << "=" << v;
        out << "\n";
    }
};

void requireReadable(const std::string& path) {
    if (!std::filesystem::exists(path))
        throw std::runtime_error("input file not found: " + path);
}

std::pair<int, int> parseGrade(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos)
        throw std::runtime_error("grade must be 'i,j', got '" + s + "'");
    return {std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1))};
}

prodtop::BoundingBox parseBbox(const std::string& s) {
    std::istringstream is(s);
    prodtop::BoundingBox b;
    char c1, c2, c3;
    if (!(is >> b.lat_top >> c1 >> b.lon_left >> c2 >> b.lat_bottom >> c3 >> b.lon_right) ||
        c1 != ',' || c2 != ',' || c3 != ',')
        throw std::runtime_error("bbox must be 'lat_top,lon_left,lat_bottom,lon_right'");
    return b;
}

std::set<prodtop::HexCoord> readLandMask(const std::string& path) {
    std::set<prodtop::HexCoord> mask;
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open land mask '" + path + "'");
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty() || line[0] == '#') continue;
        prodtop::HexCoord h;
        char comma;
        std::istringstream is(line);
        if (!(is >> h.q >> comma >> h.r) || comma != ',')
            throw std::runtime_error("bad land-mask line: '" + line + "'");
        mask.insert(h);
    }
    return mask;
}

std::vector<double> parseAlphaList(const std::string& s) {
    std::vector<double> out;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) out.push_back(std::stod(tok));
    if (out.empty()) throw std::runtime_error("empty alpha list");
    return out;
}

// --- subcommand bodies -----------------------------------------------------

int runComplexBuild(const std::string& input, const std::string& out_path, bool summary,
                    bool validate_only) {
    requireReadable(input);
    prodtop::AbstractCellComplex cc = prodtop::readCellComplexJson(input);
    if (summary || validate_only) {
        for (int k = 0; k <= cc.dimension(); ++k)
            std::cout << "N_" << k << " = " << cc.count(k) << "\n";
    }
    if (!validate_only && !out_path.empty()) prodtop::writeCellComplexJson(out_path, cc);
    return 0;
}

int runProduct(const std::string& x_path, const std::string& y_path, const std::string& grade,
               const std::string& emit, double alpha_x, double alpha_y, bool validate_only) {
    requireReadable(x_path);
    requireReadable(y_path);
    auto [i, j] = parseGrade(grade);
    prodtop::ProductComplex z(prodtop::readCellComplexJson(x_path),
                              prodtop::readCellComplexJson(y_path));
    if (validate_only) {
        std::cout << "grade (" << i << "," << j << ") cells: " << z.cellCount(i, j) << "\n";
        return 0;
    }
    prodtop::SparseOperator lap = z.hodgeLaplacian(i, j, alpha_x, alpha_y);
    prodtop::writeMatrixMarket(emit, lap);
    std::cout << "wrote " << lap.rows() << "x" << lap.cols() << " operator (" << lap.nonZeros()
              << " nonzeros) to " << emit << "\n";
    return 0;
}

int runSpectral(const std::string& x_path, const std::string& y_path, const std::string& grade,
                int n_modes, const std::string& out_path, bool validate_only) {
    requireReadable(x_path);
    requireReadable(y_path);
    auto [i, j] = parseGrade(grade);
    prodtop::ProductComplex z(prodtop::readCellComplexJson(x_path),
                              prodtop::readCellComplexJson(y_path));
    const Eigen::Index dim = z.cellCount(i, j);
    if (n_modes > dim) throw std::runtime_error("requested more modes than the grade dimension");
    if (validate_only) {
        std::cout << "grade (" << i << "," << j << ") dimension: " << dim << "\n";
        return 0;
    }
    auto modes = prodtop::productEigenmodes(z, i, j, n_modes);
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot open '" + out_path + "' for writing");
    ReproHeader{"spectral", {{"grade", grade}, {"modes", std::to_string(n_modes)}}}.write(f);
    f << "index,lambda_x,lambda_y,lambda_sum\n";
    f << std::setprecision(12);
    for (std::size_t m = 0; m < modes.size(); ++m)
        f << m << "," << modes[m].lambda_x << "," << modes[m].lambda_y << ","
          << (modes[m].lambda_x + modes[m].lambda_y) << "\n";
    std::cout << "wrote " << modes.size() << " modes to " << out_path << "\n";
    return 0;
}

struct ObsFile {
    prodtop::FlowObservation obs;
    std::vector<std::pair<int, int>> edge_vertices;  // as read, for diagnostics
};

prodtop::FlowObservation readObservations(const std::string& path,
                                          const prodtop::SimplicialComplex& sc) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(f, line)) throw std::runtime_error("'" + path + "': empty file");
    if (line.rfind("t,edge_u,edge_v,value", 0) != 0)
        throw std::runtime_error("'" + path + "': expected header t,edge_u,edge_v,value");

    prodtop::FlowObservation obs;
    obs.edge_count = sc.count(1);
    int max_t = -1;
    while (std::getline(f, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream is(line);
        int t, u, v;
        double value;
        char c1, c2, c3;
        if (!(is >> t >> c1 >> u >> c2 >> v >> c3 >> value))
            throw std::runtime_error("bad observation line: '" + line + "'");
        const Eigen::Index e = sc.indexOf({std::min(u, v), std::max(u, v)});
        if (e < 0)
            throw std::runtime_error("observation on unknown edge (" + std::to_string(u) + "," +
                                     std::to_string(v) + ")");
        obs.entries.emplace_back(t, e, value);
        max_t = std::max(max_t, t);
    }
    obs.time_steps = max_t + 1;
    return obs;
}

int runInterpolate(const std::string& complex_path, const std::string& obs_path, double alpha_s,
                   double alpha_t, double lambda, int time_steps, const std::string& out_path,
                   bool validate_only) {
    requireReadable(complex_path);
    requireReadable(obs_path);
    prodtop::SimplicialComplex sc = prodtop::readSimplicialComplexJson(complex_path);
    prodtop::FlowObservation obs = readObservations(obs_path, sc);
    if (time_steps > 0) obs.time_steps = std::max(obs.time_steps, time_steps);
    obs.validate();
    if (validate_only) {
        std::cout << "edges: " << sc.count(1) << ", T: " << obs.time_steps
                  << ", observations: " << obs.entries.size() << "\n";
        return 0;
    }
    prodtop::InterpolationParams params{alpha_s, alpha_t, lambda};
    prodtop::InterpolationResult res = prodtop::interpolateFlow(sc, obs, params);
    if (res.underdetermined_warning)
        std::cerr << "warning: no observations; the solution is the zero flow\n";

    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot open '" + out_path + "' for writing");
    ReproHeader{"interpolate",
                {{"alpha_s", std::to_string(alpha_s)},
                 {"alpha_t", std::to_string(alpha_t)},
                 {"lambda", std::to_string(lambda)}}}
        .write(f);
    f << "t,edge_u,edge_v,value\n";
    f << std::setprecision(12);
    const auto& edges = sc.simplices(1);
    for (int t = 0; t < obs.time_steps; ++t)
        for (Eigen::Index e = 0; e < sc.count(1); ++e)
            f << t << "," << edges[e][0] << "," << edges[e][1] << "," << res.flow.values(t, e)
              << "\n";
    std::cout << "wrote " << obs.time_steps * sc.count(1) << " flow values to " << out_path << "\n";
    return 0;
}

int runDemoFig1() {
    std::cout << "alpha_t,alpha_s,rel_error\n";
    std::cout << std::setprecision(3) << std::fixed;
    for (const auto& row : prodtop::runFig1Ablation())
        std::cout << row.alpha_t << "," << row.alpha_s << "," << row.rel_error << "\n";
    return 0;
}

int sweepConcurrency() {
    if (const char* env = std::getenv("PRODTOP_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void writeDrifterResults(const std::string& out_path, const ReproHeader& header,
                         const std::vector<std::array<double, 5>>& rows) {
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot open '" + out_path + "' for writing");
    header.write(f);
    f << "alpha_s,alpha_t,train_loss,test_loss,iters\n";
    f << std::setprecision(12);
    for (const auto& r : rows)
        f << r[0] << "," << r[1] << "," << r[2] << "," << r[3] << ","
          << static_cast<long long>(r[4]) << "\n";
}

std::vector<std::array<double, 5>> sweepHyperparameters(
    const prodtop::HexGridComplex& grid, const prodtop::YearlyFlows& train,
    const prodtop::YearlyFlows& test, const std::vector<double>& alphas_s,
    const std::vector<double>& alphas_t) {
    std::vector<std::pair<double, double>> points;
    for (double as : alphas_s)
        for (double at : alphas_t) points.emplace_back(as, at);

    std::vector<std::array<double, 5>> rows(points.size());
    const int n_workers = std::min<int>(sweepConcurrency(), static_cast<int>(points.size()));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t k = next.fetch_add(1);
            if (k >= points.size()) return;
            const auto [as, at] = points[k];
            prodtop::InferenceResult res = prodtop::inferCurrents(grid, train, as, at);
            rows[k] = {as, at, prodtop::cosineLoss(res.currents, train),
                       prodtop::cosineLoss(res.currents, test),
                       static_cast<double>(res.iterations)};
        }
    };
    std::vector<std::thread> threads;
    for (int w = 0; w < n_workers; ++w) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
    return rows;
}

int runDrifter(const std::string& pings_path, const std::string& bbox_str, double hex_size,
               const std::string& mask_path, double split, unsigned seed,
               const std::string& alpha_s_list, const std::string& alpha_t_list,
               const std::string& out_path, bool validate_only) {
    requireReadable(pings_path);
    prodtop::BoundingBox bbox = parseBbox(bbox_str);
    std::set<prodtop::HexCoord> mask;
    if (!mask_path.empty()) {
        requireReadable(mask_path);
        mask = readLandMask(mask_path);
    }
    const auto alphas_s = parseAlphaList(alpha_s_list);
    const auto alphas_t = parseAlphaList(alpha_t_list);

    prodtop::HexGridComplex grid = prodtop::HexGridComplex::build(bbox, hex_size, mask);
    prodtop::IngestStats ingest_stats;
    auto trajectories = prodtop::ingestGdpCsv(pings_path, bbox, 1992, &ingest_stats);
    std::cerr << "ingested " << trajectories.size() << " trajectories ("
              << ingest_stats.skipped_rows << " rows skipped, " << ingest_stats.dropped_rows
              << " dropped)\n";
    if (validate_only) {
        std::cout << "hexes: " << grid.hexCount() << ", edges: " << grid.complex().count(1)
                  << ", trajectories: " << trajectories.size() << "\n";
        return 0;
    }

    auto [train_set, test_set] = prodtop::splitTrainTest(trajectories, split, seed);

    // years present in the training data define the temporal axis
    std::set<int> year_set;
    for (const auto& traj : trajectories)
        for (const auto& ping : traj.pings) year_set.insert(prodtop::yearOfTimestamp(ping.timestamp));
    std::vector<int> years(year_set.begin(), year_set.end());

    prodtop::YearlyFlows train = prodtop::accumulateFlows(grid, train_set, years);
    prodtop::YearlyFlows test = prodtop::accumulateFlows(grid, test_set, years);

    auto rows = sweepHyperparameters(grid, train, test, alphas_s, alphas_t);
    writeDrifterResults(out_path,
                        ReproHeader{"drifter run",
                                    {{"seed", std::to_string(seed)},
                                     {"split", std::to_string(split)},
                                     {"hex", std::to_string(hex_size)}}},
                        rows);
    std::cout << "wrote " << rows.size() << " sweep rows to " << out_path << "\n";
    return 0;
}

int runDrifterSynth(unsigned seed, const std::string& alpha_s_list,
                    const std::string& alpha_t_list, const std::string& out_path,
                    bool validate_only) {
    prodtop::SyntheticScene scene = prodtop::makeSyntheticScene(seed);
    if (validate_only) {
        std::cout << "hexes: " << scene.grid.hexCount()
                  << ", edges: " << scene.grid.complex().count(1)
                  << ", trajectories: " << scene.trajectories.size() << "\n";
        return 0;
    }
    auto [train_set, test_set] = prodtop::splitTrainTest(scene.trajectories, 0.8, seed);
    prodtop::YearlyFlows train = prodtop::accumulateFlows(scene.grid, train_set, scene.years);
    prodtop::YearlyFlows test = prodtop::accumulateFlows(scene.grid, test_set, scene.years);

    auto rows = sweepHyperparameters(scene.grid, train, test, parseAlphaList(alpha_s_list),
                                     parseAlphaList(alpha_t_list));
    writeDrifterResults(out_path, ReproHeader{"drifter synth", {{"seed", std::to_string(seed)}}},
                        rows);
    std::cout << "wrote " << rows.size() << " sweep rows to " << out_path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Signal processing on products of simplicial and cellular complexes"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    // complex build
    auto* complex_cmd = app.add_subcommand("complex", "Complex construction and I/O");
    auto* build_cmd = complex_cmd->add_subcommand("build", "Build a complex from JSON");
    std::string build_input, build_out;
    bool build_summary = false, build_validate = false;
    build_cmd->add_option("--input", build_input, "JSON complex file")->required();
    build_cmd->add_option("--out", build_out, "Output complex file");
    build_cmd->add_flag("--summary", build_summary, "Print cell counts per dimension");
    build_cmd->add_flag("--validate", build_validate, "Check inputs without writing");

    // product
    auto* product_cmd = app.add_subcommand("product", "Product complex operators");
    std::string px, py, pgrade = "1,0", pemit = "laplacian.mtx";
    double palpha_x = 1.0, palpha_y = 1.0;
    bool product_validate = false;
    product_cmd->add_option("--x", px, "Factor X complex JSON")->required();
    product_cmd->add_option("--y", py, "Factor Y complex JSON")->required();
    product_cmd->add_option("--grade", pgrade, "Grade i,j");
    product_cmd->add_option("--emit", pemit, "Matrix Market output path");
    product_cmd->add_option("--alpha-x", palpha_x, "Weight of the X Laplacian");
    product_cmd->add_option("--alpha-y", palpha_y, "Weight of the Y Laplacian");
    product_cmd->add_flag("--validate", product_validate, "Check inputs without computing");

    // spectral
    auto* spectral_cmd = app.add_subcommand("spectral", "Product eigenmode dump");
    std::string sx, sy, sgrade = "0,0", sout = "modes.csv";
    int smodes = 10;
    bool spectral_validate = false;
    spectral_cmd->add_option("--x", sx, "Factor X complex JSON")->required();
    spectral_cmd->add_option("--y", sy, "Factor Y complex JSON")->required();
    spectral_cmd->add_option("--grade", sgrade, "Grade i,j");
    spectral_cmd->add_option("--modes", smodes, "Number of modes");
    spectral_cmd->add_option("--out", sout, "CSV output path");
    spectral_cmd->add_flag("--validate", spectral_validate, "Check inputs without computing");

    // interpolate
    auto* interp_cmd = app.add_subcommand("interpolate", "Spatiotemporal flow interpolation");
    std::string icomplex, iobs, iout = "flow.csv";
    double ialpha_s = 1.0, ialpha_t = 1.0, ilambda = 1e-6;
    int itime_steps = 0;
    bool interp_validate = false;
    interp_cmd->add_option("--complex", icomplex, "Spatial complex JSON")->required();
    interp_cmd->add_option("--obs", iobs, "Observations CSV (t,edge_u,edge_v,value)")->required();
    interp_cmd->add_option("--alpha-s", ialpha_s, "Spatial smoothness weight");
    interp_cmd->add_option("--alpha-t", ialpha_t, "Temporal smoothness weight");
    interp_cmd->add_option("--lambda", ilambda, "Ridge weight (must be positive)");
    interp_cmd->add_option("--time-steps", itime_steps, "Number of snapshots (default: inferred)");
    interp_cmd->add_option("--out", iout, "Flow CSV output path");
    interp_cmd->add_flag("--validate", interp_validate, "Check inputs without computing");

    // demo
    auto* demo_cmd = app.add_subcommand("demo", "Built-in demos");
    auto* fig1_cmd = demo_cmd->add_subcommand("fig1", "Joint space/time interpolation ablation");
    bool fig1_validate = false;
    fig1_cmd->add_flag("--validate", fig1_validate, "Check the demo scene without solving");

    // drifter
    auto* drifter_cmd = app.add_subcommand("drifter", "Ocean-drifter current inference");
    auto* drifter_run = drifter_cmd->add_subcommand("run", "Run on a GDP-style ping CSV");
    std::string dr_pings, dr_bbox = "25,-90,10,-55", dr_mask, dr_out = "results.csv";
    std::string dr_alpha_s = "0,1e-5,1e-4,1e-3,1e-2,1e-1,1";
    std::string dr_alpha_t = "0,1e-5,1e-4,1e-3,1e-2,1e-1,1";
    double dr_hex = 0.3, dr_split = 0.8;
    unsigned dr_seed = 7;
    bool drifter_validate = false;
    drifter_run->add_option("--pings", dr_pings, "CSV of pings: id,timestamp,lat,lon")->required();
    drifter_run->add_option("--bbox", dr_bbox, "lat_top,lon_left,lat_bottom,lon_right");
    drifter_run->add_option("--hex-size", dr_hex, "Hexagon latitude spacing in degrees");
    drifter_run->add_option("--mask", dr_mask, "Land-mask file of hex ids q,r");
    drifter_run->add_option("--split", dr_split, "Training fraction");
    drifter_run->add_option("--seed", dr_seed, "Split seed");
    drifter_run->add_option("--alpha-s", dr_alpha_s, "Comma list of spatial weights");
    drifter_run->add_option("--alpha-t", dr_alpha_t, "Comma list of temporal weights");
    drifter_run->add_option("--out", dr_out, "Results CSV path");
    drifter_run->add_flag("--validate", drifter_validate, "Check inputs without computing");

    auto* drifter_synth = drifter_cmd->add_subcommand("synth", "Desk-scale synthetic benchmark");
    std::string ds_alpha_s = "0,1e-3,1e-2,5e-2", ds_alpha_t = "0,1e-2,1e-1,1";
    std::string ds_out = "synth_results.csv";
    unsigned ds_seed = 7;
    bool synth_validate = false;
    drifter_synth->add_option("--seed", ds_seed, "Scene and split seed");
    drifter_synth->add_option("--alpha-s", ds_alpha_s, "Comma list of spatial weights");
    drifter_synth->add_option("--alpha-t", ds_alpha_t, "Comma list of temporal weights");
    drifter_synth->add_option("--out", ds_out, "Results CSV path");
    drifter_synth->add_flag("--validate", synth_validate, "Check the scene without solving");

    CLI11_PARSE(app, argc, argv);

    try {
        if (build_cmd->parsed())
            return runComplexBuild(build_input, build_out, build_summary, build_validate);
        if (product_cmd->parsed())
            return runProduct(px, py, pgrade, pemit, palpha_x, palpha_y, product_validate);
        if (spectral_cmd->parsed())
            return runSpectral(sx, sy, sgrade, smodes, sout, spectral_validate);
        if (interp_cmd->parsed())
            return runInterpolate(icomplex, iobs, ialpha_s, ialpha_t, ilambda, itime_steps, iout,
                                  interp_validate);
        if (fig1_cmd->parsed()) {
            if (fig1_validate) {
                const auto scene = prodtop::makeFig1Scene();
                std::cout << "edges: " << scene.complex.count(1)
                          << ", T: " << scene.truth.timeSteps()
                          << ", observations: " << scene.observations.entries.size() << "\n";
                return 0;
            }
            return runDemoFig1();
        }
        if (drifter_run->parsed())
            return runDrifter(dr_pings, dr_bbox, dr_hex, dr_mask, dr_split, dr_seed, dr_alpha_s,
                              dr_alpha_t, dr_out, drifter_validate);
        if (drifter_synth->parsed())
            return runDrifterSynth(ds_seed, ds_alpha_s, ds_alpha_t, ds_out, synth_validate);
        std::cerr << "error: no subcommand given\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

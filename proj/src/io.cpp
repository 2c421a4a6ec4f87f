#include "prodtop/io.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace prodtop {

namespace {

nlohmann::json loadJson(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "'");
    nlohmann::json j;
    try {
        f >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error("JSON parse error in '" + path + "': " + e.what());
    }
    return j;
}

}  // namespace

SimplicialComplex readSimplicialComplexJson(const std::string& path) {
    nlohmann::json j = loadJson(path);
    if (!j.contains("top_simplices"))
        throw std::runtime_error("'" + path + "': missing \"top_simplices\"");
    std::vector<SimplicialComplex::Simplex> top;
    for (const auto& t : j["top_simplices"]) {
        SimplicialComplex::Simplex s;
        for (const auto& v : t) s.push_back(v.get<int>());
        top.push_back(std::move(s));
    }
    return SimplicialComplex::fromTopSimplices(top);
}

AbstractCellComplex readCellComplexJson(const std::string& path) {
    nlohmann::json j = loadJson(path);
    if (j.contains("top_simplices")) return scToCc(readSimplicialComplexJson(path));
    if (!j.contains("cells")) throw std::runtime_error("'" + path + "': missing \"cells\"");

    std::vector<std::vector<AbstractCellComplex::Cell>> by_dim;
    for (const auto& c : j["cells"]) {
        AbstractCellComplex::Cell cell;
        cell.id = c.at("id").get<std::string>();
        const int dim = c.at("dim").get<int>();
        if (dim < 0) throw std::runtime_error("negative cell dimension");
        if (c.contains("boundary"))
            for (const auto& be : c["boundary"])
                cell.boundary.push_back({be.at(0).get<std::string>(), be.at(1).get<int>()});
        if (static_cast<int>(by_dim.size()) <= dim) by_dim.resize(dim + 1);
        by_dim[dim].push_back(std::move(cell));
    }
    return AbstractCellComplex::fromCells(std::move(by_dim));
}

void writeSimplicialComplexJson(const std::string& path, const SimplicialComplex& sc) {
    nlohmann::json tops = nlohmann::json::array();
    // top simplices = simplices with no coface; emitting every simplex is
    // also valid, closure reconstructs the same complex
    for (int k = sc.dimension(); k >= 0; --k)
        for (const auto& s : sc.simplices(k)) {
            bool covered = false;
            for (const auto& t : sc.simplices(k + 1)) {
                if (std::includes(t.begin(), t.end(), s.begin(), s.end())) {
                    covered = true;
                    break;
                }
            }
            if (!covered) tops.push_back(s);
        }
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    f << nlohmann::json{{"top_simplices", tops}}.dump(2) << "\n";
}

void writeCellComplexJson(const std::string& path, const AbstractCellComplex& cc) {
    nlohmann::json cells = nlohmann::json::array();
    for (int k = 0; k <= cc.dimension(); ++k) {
        for (const auto& c : cc.cells(k)) {
            nlohmann::json bnd = nlohmann::json::array();
            for (const auto& be : c.boundary) bnd.push_back({be.face_id, be.coefficient});
            cells.push_back({{"id", c.id}, {"dim", k}, {"boundary", bnd}});
        }
    }
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    f << nlohmann::json{{"cells", cells}}.dump(2) << "\n";
}

}  // namespace prodtop

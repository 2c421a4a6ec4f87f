#include "prodtop/simplicial_complex.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace prodtop {

namespace {

// All nonempty proper-and-improper subsets of an ascending vertex tuple.
void collectSubsets(const std::vector<int>& verts,
                    std::vector<std::set<std::vector<int>>>& by_dim) {
    const std::size_t n = verts.size();
    for (std::size_t mask = 1; mask < (1u << n); ++mask) {
        std::vector<int> sub;
        for (std::size_t b = 0; b < n; ++b)
            if (mask & (1u << b)) sub.push_back(verts[b]);
        const std::size_t k = sub.size() - 1;
        if (by_dim.size() <= k) by_dim.resize(k + 1);
        by_dim[k].insert(std::move(sub));
    }
}

}  // namespace

SimplicialComplex SimplicialComplex::fromTopSimplices(const std::vector<Simplex>& top_simplices) {
    std::vector<std::set<Simplex>> by_dim;
    for (const auto& raw : top_simplices) {
        if (raw.empty()) throw std::invalid_argument("empty simplex tuple");
        Simplex s = raw;
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw std::invalid_argument("malformed simplex: repeated vertex");
        collectSubsets(s, by_dim);
    }
    SimplicialComplex sc;
    sc.simplices_by_dim_.reserve(by_dim.size());
    for (auto& level : by_dim)
        sc.simplices_by_dim_.emplace_back(level.begin(), level.end());
    sc.rebuildIndex();
    return sc;
}

SimplicialComplex SimplicialComplex::pathGraph(int n) {
    if (n < 1) throw std::invalid_argument("path graph needs at least one vertex");
    std::vector<Simplex> top;
    if (n == 1) {
        top.push_back({1});
    } else {
        for (int t = 1; t < n; ++t) top.push_back({t, t + 1});
    }
    return fromTopSimplices(top);
}

void SimplicialComplex::rebuildIndex() {
    index_by_dim_.assign(simplices_by_dim_.size(), {});
    for (std::size_t k = 0; k < simplices_by_dim_.size(); ++k)
        for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(simplices_by_dim_[k].size()); ++i)
            index_by_dim_[k][simplices_by_dim_[k][i]] = i;
}

Eigen::Index SimplicialComplex::count(int k) const {
    if (k < 0 || k > dimension()) return 0;
    return static_cast<Eigen::Index>(simplices_by_dim_[k].size());
}

const std::vector<SimplicialComplex::Simplex>& SimplicialComplex::simplices(int k) const {
    static const std::vector<Simplex> kEmpty;
    if (k < 0 || k > dimension()) return kEmpty;
    return simplices_by_dim_[k];
}

Eigen::Index SimplicialComplex::indexOf(const Simplex& s) const {
    const int k = static_cast<int>(s.size()) - 1;
    if (k < 0 || k > dimension()) return -1;
    auto it = index_by_dim_[k].find(s);
    return it == index_by_dim_[k].end() ? -1 : it->second;
}

SparseOperator SimplicialComplex::boundary(int k) const {
    if (k == 0) return SparseOperator::zero(IndexSpace{id_, "dim-1", 0}, space(0));
    if (k < 0) throw std::invalid_argument("boundary: negative dimension");

    const IndexSpace rows = space(k - 1);
    const IndexSpace cols = space(k);
    std::vector<Eigen::Triplet<double>> trips;
    if (k <= dimension()) {
        const auto& cells = simplices_by_dim_[k];
        trips.reserve(cells.size() * (k + 1));
        for (Eigen::Index c = 0; c < static_cast<Eigen::Index>(cells.size()); ++c) {
            const Simplex& s = cells[c];
            for (int m = 0; m <= k; ++m) {
                Simplex face;
                face.reserve(k);
                for (int p = 0; p <= k; ++p)
                    if (p != m) face.push_back(s[p]);
                const Eigen::Index r = index_by_dim_[k - 1].at(face);
                trips.emplace_back(r, c, (m % 2 == 0) ? 1.0 : -1.0);
            }
        }
    }
    Eigen::SparseMatrix<double> mat(rows.size, cols.size);
    mat.setFromTriplets(trips.begin(), trips.end());
    return SparseOperator(rows, cols, std::move(mat));
}

}  // namespace prodtop

#include <doctest.h>

#include <random>

#include "prodtop/cell_complex.hpp"
#include "prodtop/simplicial_complex.hpp"
#include "test_util.hpp"

using namespace prodtop;

TEST_CASE("closure of one filled triangle") {
    auto sc = SimplicialComplex::fromTopSimplices({{1, 2, 3}});
    CHECK(sc.count(0) == 3);
    CHECK(sc.count(1) == 3);
    CHECK(sc.count(2) == 1);
}

TEST_CASE("empty 3-clique has no triangle") {
    auto sc = SimplicialComplex::fromTopSimplices({{1, 2}, {2, 3}, {1, 3}});
    CHECK(sc.count(0) == 3);
    CHECK(sc.count(1) == 3);
    CHECK(sc.count(2) == 0);
}

TEST_CASE("triangle plus dangling edge") {
    auto sc = SimplicialComplex::fromTopSimplices({{1, 2, 3}, {3, 4}});
    CHECK(sc.count(0) == 4);
    CHECK(sc.count(1) == 4);
    CHECK(sc.count(2) == 1);
}

TEST_CASE("duplicate vertex in a tuple is rejected") {
    CHECK_THROWS_AS(SimplicialComplex::fromTopSimplices({{1, 1, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(SimplicialComplex::fromTopSimplices({{}}), std::invalid_argument);
}

TEST_CASE("boundary matrices of the filled triangle") {
    auto sc = SimplicialComplex::fromTopSimplices({{1, 2, 3}});
    Eigen::MatrixXd b1(sc.boundary(1).matrix());
    // edges in order (1,2), (1,3), (2,3); vertices 1, 2, 3
    Eigen::MatrixXd expected1(3, 3);
    expected1 << -1, -1, 0,
                  1,  0, -1,
                  0,  1,  1;
    CHECK((b1 - expected1).cwiseAbs().maxCoeff() == 0.0);

    Eigen::MatrixXd b2(sc.boundary(2).matrix());
    Eigen::MatrixXd expected2(3, 1);
    expected2 << 1, -1, 1;
    CHECK((b2 - expected2).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("B_0 is the empty operator") {
    auto sc = SimplicialComplex::fromTopSimplices({{1, 2}});
    auto b0 = sc.boundary(0);
    CHECK(b0.rows() == 0);
    CHECK(b0.cols() == 2);
}

TEST_CASE("boundary of boundary vanishes on random complexes") {
    std::mt19937 rng(42);
    for (int trial = 0; trial < 120; ++trial) {
        auto sc = testutil::randomComplex(rng, 10, 3, 6);
        for (int k = 1; k <= sc.dimension(); ++k) {
            auto prod = sc.boundary(k) * sc.boundary(k + 1);
            CHECK(prod.maxAbs() == 0.0);
        }
    }
}

TEST_CASE("boundary columns have k+1 alternating nonzeros") {
    std::mt19937 rng(7);
    auto sc = testutil::randomComplex(rng, 9, 3, 5);
    for (int k = 1; k <= sc.dimension(); ++k) {
        const auto op = sc.boundary(k);
        const auto& m = op.matrix();
        for (int c = 0; c < m.outerSize(); ++c) {
            int nnz = 0;
            double expected_sign = 1.0;
            // InnerIterator walks rows ascending; ascending faces omit
            // vertices in ascending position, giving alternating signs
            std::vector<double> values;
            for (Eigen::SparseMatrix<double>::InnerIterator it(m, c); it; ++it) {
                values.push_back(it.value());
                ++nnz;
            }
            CHECK(nnz == k + 1);
            (void)expected_sign;
            for (double v : values) CHECK(std::abs(v) == 1.0);
        }
    }
}

TEST_CASE("downward closure holds for every face") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        auto sc = testutil::randomComplex(rng);
        for (int k = 1; k <= sc.dimension(); ++k) {
            for (const auto& s : sc.simplices(k)) {
                for (std::size_t omit = 0; omit < s.size(); ++omit) {
                    SimplicialComplex::Simplex face;
                    for (std::size_t p = 0; p < s.size(); ++p)
                        if (p != omit) face.push_back(s[p]);
                    CHECK(sc.indexOf(face) >= 0);
                }
            }
        }
    }
}

TEST_CASE("composition with mismatched index spaces is an error") {
    auto sc = SimplicialComplex::fromTopSimplices({{1, 2, 3}});
    CHECK_THROWS_AS(sc.boundary(2) * sc.boundary(1), std::invalid_argument);
}

TEST_CASE("cell complex from a square 2-cell") {
    using Cell = AbstractCellComplex::Cell;
    std::vector<std::vector<Cell>> cells(3);
    for (const char* v : {"v1", "v2", "v3", "v4"}) cells[0].push_back({v, {}});
    cells[1] = {{"e12", {{"v1", -1}, {"v2", 1}}},
                {"e23", {{"v2", -1}, {"v3", 1}}},
                {"e34", {{"v3", -1}, {"v4", 1}}},
                {"e41", {{"v4", -1}, {"v1", 1}}}};
    cells[2] = {{"square", {{"e12", 1}, {"e23", 1}, {"e34", 1}, {"e41", 1}}}};
    auto cc = AbstractCellComplex::fromCells(cells);
    CHECK(cc.boundary(2).rows() == 4);
    CHECK(cc.boundary(2).cols() == 1);
    CHECK((cc.boundary(1) * cc.boundary(2)).maxAbs() == 0.0);
}

TEST_CASE("cell complex construction rejects broken boundaries") {
    using Cell = AbstractCellComplex::Cell;
    std::vector<std::vector<Cell>> dangling(2);
    dangling[0] = {{"v1", {}}};
    dangling[1] = {{"e", {{"v1", -1}, {"missing", 1}}}};
    CHECK_THROWS_AS(AbstractCellComplex::fromCells(dangling), std::invalid_argument);

    // square whose boundary signs do not cancel
    std::vector<std::vector<Cell>> bad(3);
    for (const char* v : {"v1", "v2", "v3"}) bad[0].push_back({v, {}});
    bad[1] = {{"e12", {{"v1", -1}, {"v2", 1}}}, {"e23", {{"v2", -1}, {"v3", 1}}}};
    bad[2] = {{"face", {{"e12", 1}, {"e23", -1}}}};
    CHECK_THROWS_AS(AbstractCellComplex::fromCells(bad), std::invalid_argument);
}

TEST_CASE("path graph as a cell complex matches the simplicial boundary") {
    auto sc = SimplicialComplex::pathGraph(5);
    auto cc = scToCc(sc);
    Eigen::MatrixXd diff =
        Eigen::MatrixXd(sc.boundary(1).matrix()) - Eigen::MatrixXd(cc.boundary(1).matrix());
    CHECK(diff.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("sc_to_cc reproduces boundary operators on random complexes") {
    std::mt19937 rng(123);
    for (int trial = 0; trial < 40; ++trial) {
        auto sc = testutil::randomComplex(rng, 8, 3, 5);
        auto cc = scToCc(sc);
        REQUIRE(cc.dimension() == sc.dimension());
        for (int k = 0; k <= sc.dimension(); ++k) {
            CHECK(cc.count(k) == sc.count(k));
            if (k >= 1) {
                Eigen::MatrixXd diff = Eigen::MatrixXd(sc.boundary(k).matrix()) -
                                       Eigen::MatrixXd(cc.boundary(k).matrix());
                CHECK(diff.cwiseAbs().maxCoeff() == 0.0);
            }
        }
    }
}

TEST_CASE("empty complex converts to an empty cell complex") {
    SimplicialComplex sc;
    auto cc = scToCc(sc);
    CHECK(cc.dimension() == -1);
    CHECK(cc.count(0) == 0);
}

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "prodtop/io.hpp"
#include "prodtop/matrix_market.hpp"
#include "prodtop/simplicial_complex.hpp"
#include "test_util.hpp"

using namespace prodtop;

TEST_CASE("simplicial complex JSON round-trip") {
    const std::string path = "test_sc.json";
    {
        std::ofstream f(path);
        f << R"({"top_simplices": [[1,2,3],[3,4]]})";
    }
    auto sc = readSimplicialComplexJson(path);
    CHECK(sc.count(0) == 4);
    CHECK(sc.count(1) == 4);
    CHECK(sc.count(2) == 1);

    writeSimplicialComplexJson(path, sc);
    auto back = readSimplicialComplexJson(path);
    for (int k = 0; k <= 2; ++k) CHECK(back.count(k) == sc.count(k));
    std::remove(path.c_str());
}

TEST_CASE("cell complex JSON round-trip preserves boundary matrices") {
    std::mt19937 rng(4);
    auto cc = scToCc(testutil::randomComplex(rng));
    const std::string path = "test_cc.json";
    writeCellComplexJson(path, cc);
    auto back = readCellComplexJson(path);
    REQUIRE(back.dimension() == cc.dimension());
    for (int k = 1; k <= cc.dimension(); ++k) {
        Eigen::MatrixXd diff =
            Eigen::MatrixXd(cc.boundary(k).matrix()) - Eigen::MatrixXd(back.boundary(k).matrix());
        CHECK(diff.cwiseAbs().maxCoeff() == 0.0);
    }
    std::remove(path.c_str());
}

TEST_CASE("malformed JSON is a clean error") {
    const std::string path = "test_bad.json";
    {
        std::ofstream f(path);
        f << "{ not json";
    }
    CHECK_THROWS(readSimplicialComplexJson(path));
    std::remove(path.c_str());
    CHECK_THROWS(readSimplicialComplexJson("does_not_exist.json"));
}

TEST_CASE("Matrix Market round-trip is exact for integer operators") {
    std::mt19937 rng(8);
    auto sc = testutil::randomComplex(rng, 8, 2, 6);
    auto op = sc.boundary(1);

    std::stringstream buf;
    writeMatrixMarket(buf, op);
    auto back = readMatrixMarket(buf);
    REQUIRE(back.rows() == op.rows());
    REQUIRE(back.cols() == op.cols());
    Eigen::MatrixXd diff = Eigen::MatrixXd(op.matrix()) - Eigen::MatrixXd(back);
    CHECK(diff.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("Matrix Market reader rejects malformed input") {
    std::stringstream not_mm("hello\n1 1 1\n");
    CHECK_THROWS(readMatrixMarket(not_mm));
    std::stringstream truncated("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 5\n");
    CHECK_THROWS(readMatrixMarket(truncated));
}

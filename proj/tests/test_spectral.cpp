#include <doctest.h>

#include <random>

#include "prodtop/spectral.hpp"
#include "test_util.hpp"

using namespace prodtop;

TEST_CASE("L0 of P3 is the path graph Laplacian") {
    auto p3 = SimplicialComplex::pathGraph(3);
    Eigen::MatrixXd l0(hodgeLaplacian(p3, 0).matrix());
    Eigen::MatrixXd expected(3, 3);
    expected << 1, -1, 0,
               -1, 2, -1,
                0, -1, 1;
    CHECK((l0 - expected).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("L1 of the filled triangle is 3I") {
    auto tri = SimplicialComplex::fromTopSimplices({{1, 2, 3}});
    Eigen::MatrixXd l1(hodgeLaplacian(tri, 1).matrix());
    CHECK((l1 - 3.0 * Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("Hodge Laplacians are symmetric PSD on random complexes") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 40; ++trial) {
        auto sc = testutil::randomComplex(rng, 8, 3, 6);
        for (int k = 0; k <= sc.dimension(); ++k) {
            Eigen::MatrixXd l(hodgeLaplacian(sc, k).matrix());
            CHECK((l - l.transpose()).cwiseAbs().maxCoeff() == 0.0);
            if (l.rows() > 0) {
                Eigen::VectorXd spec = testutil::denseSpectrum(hodgeLaplacian(sc, k).matrix());
                CHECK(spec.minCoeff() >= -1e-10);
            }
        }
    }
}

TEST_CASE("empty 3-clique has harmonic dimension 1 at k=1") {
    auto sc = SimplicialComplex::fromTopSimplices({{1, 2}, {2, 3}, {1, 3}});
    auto dec = hodgeDecompose(sc, 1);
    CHECK(dec.basis_harmonic.cols() == 1);
    CHECK(dec.basis_curl.cols() == 0);
    CHECK(dec.basis_gradient.cols() == 2);
}

TEST_CASE("filled triangle has harmonic dimension 0 at k=1") {
    auto sc = SimplicialComplex::fromTopSimplices({{1, 2, 3}});
    auto dec = hodgeDecompose(sc, 1);
    CHECK(dec.basis_harmonic.cols() == 0);
    CHECK(dec.basis_curl.cols() == 1);
    CHECK(dec.basis_gradient.cols() == 2);
}

TEST_CASE("Hodge pieces are orthogonal, complete, and reconstruct signals") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        auto sc = testutil::randomComplex(rng, 8, 2, 6);
        for (int k = 0; k <= sc.dimension(); ++k) {
            auto dec = hodgeDecompose(sc, k);
            const Eigen::Index n = sc.count(k);
            CHECK(dec.basis_gradient.cols() + dec.basis_curl.cols() + dec.basis_harmonic.cols() ==
                  n);
            auto orth = [&](const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
                if (a.cols() == 0 || b.cols() == 0) return 0.0;
                return (a.transpose() * b).cwiseAbs().maxCoeff();
            };
            CHECK(orth(dec.basis_gradient, dec.basis_curl) <= 1e-10);
            CHECK(orth(dec.basis_gradient, dec.basis_harmonic) <= 1e-10);
            CHECK(orth(dec.basis_curl, dec.basis_harmonic) <= 1e-10);

            Eigen::VectorXd s = Eigen::VectorXd::Random(n);
            Eigen::VectorXd back =
                dec.projectGradient(s) + dec.projectCurl(s) + dec.projectHarmonic(s);
            CHECK((back - s).norm() <= 1e-8 * std::max(1.0, s.norm()));
        }
    }
}

TEST_CASE("eigenmodes of tiny graph Laplacians") {
    auto p2 = SimplicialComplex::pathGraph(2);
    auto modes = eigenmodes(hodgeLaplacian(p2, 0), 2);
    CHECK(modes[0].eigenvalue == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(modes[1].eigenvalue == doctest::Approx(2.0).epsilon(1e-12));

    auto tri = SimplicialComplex::fromTopSimplices({{1, 2}, {2, 3}, {1, 3}});
    auto tri_modes = eigenmodes(hodgeLaplacian(tri, 0), 3);
    CHECK(tri_modes[0].eigenvalue == doctest::Approx(0.0));
    CHECK(tri_modes[1].eigenvalue == doctest::Approx(3.0));
    CHECK(tri_modes[2].eigenvalue == doctest::Approx(3.0));
}

TEST_CASE("eigenmode residuals and orthonormality") {
    std::mt19937 rng(55);
    auto sc = testutil::randomComplex(rng, 10, 2, 8);
    auto L = hodgeLaplacian(sc, 1);
    const int count = static_cast<int>(L.rows());
    auto modes = eigenmodes(L, count);
    for (const auto& m : modes)
        CHECK((L.apply(m.vector) - m.eigenvalue * m.vector).norm() <= 1e-8);
    for (int a = 0; a < count; ++a)
        for (int b = a + 1; b < count; ++b)
            CHECK(std::abs(modes[a].vector.dot(modes[b].vector)) <= 1e-8);
}

TEST_CASE("non-symmetric input is rejected") {
    Eigen::SparseMatrix<double> m(2, 2);
    m.insert(0, 1) = 1.0;
    IndexSpace sp{"t", "dim0", 2};
    CHECK_THROWS_AS(eigenmodes(SparseOperator(sp, sp, m), 1), std::invalid_argument);
}

TEST_CASE("Lanczos path agrees with the dense oracle on a large path graph") {
    auto big = SimplicialComplex::pathGraph(600);  // above the dense cutoff
    auto modes = eigenmodes(hodgeLaplacian(big, 0), 4);
    Eigen::VectorXd oracle = testutil::denseSpectrum(hodgeLaplacian(big, 0).matrix());
    for (int i = 0; i < 4; ++i) {
        CHECK(modes[i].eigenvalue == doctest::Approx(oracle(i)).epsilon(1e-6));
        CHECK((hodgeLaplacian(big, 0).apply(modes[i].vector) -
               modes[i].eigenvalue * modes[i].vector)
                  .norm() <= 1e-6);
    }
}

TEST_CASE("product eigenmodes match the direct spectrum and have small residuals") {
    auto tri = SimplicialComplex::fromTopSimplices({{1, 2}, {2, 3}, {1, 3}});
    auto p2 = SimplicialComplex::pathGraph(2);
    ProductComplex z(scToCc(tri, "X"), scToCc(p2, "Y"));

    const int dim = static_cast<int>(z.cellCount(0, 0));
    auto modes = productEigenmodes(z, 0, 0, dim);
    Eigen::VectorXd sums(dim);
    for (int i = 0; i < dim; ++i) sums(i) = modes[i].lambda_x + modes[i].lambda_y;
    Eigen::VectorXd direct = testutil::denseSpectrum(z.hodgeLaplacian(0, 0).matrix());
    CHECK((sums - direct).cwiseAbs().maxCoeff() <= 1e-8);

    Eigen::MatrixXd lap(z.hodgeLaplacian(0, 0).matrix());
    for (const auto& m : modes)
        CHECK((lap * m.vector - (m.lambda_x + m.lambda_y) * m.vector).norm() <= 1e-8);

    // the zero mode of connected x connected is constant (x) constant
    CHECK(modes[0].lambda_x == doctest::Approx(0.0));
    CHECK(modes[0].lambda_y == doctest::Approx(0.0));
    Eigen::VectorXd v = modes[0].vector;
    CHECK((v.array() - v(0)).abs().maxCoeff() <= 1e-10);
}

TEST_CASE("Kronecker-sum spectrum property on random products at every grade") {
    std::mt19937 rng(77);
    for (int trial = 0; trial < 10; ++trial) {
        auto x = testutil::randomComplex(rng, 5, 2, 4);
        auto y = testutil::randomComplex(rng, 5, 2, 4);
        ProductComplex z(scToCc(x, "X"), scToCc(y, "Y"));
        for (int k = 0; k <= z.dimension(); ++k) {
            for (const auto& [i, j] : z.grades(k)) {
                Eigen::VectorXd direct = testutil::denseSpectrum(z.hodgeLaplacian(i, j).matrix());
                Eigen::VectorXd oracle = testutil::kroneckerSumSpectrum(
                    testutil::denseSpectrum(hodgeLaplacian(x, i).matrix()),
                    testutil::denseSpectrum(hodgeLaplacian(y, j).matrix()));
                CHECK((direct - oracle).cwiseAbs().maxCoeff() <= 1e-8);
            }
        }
    }
}

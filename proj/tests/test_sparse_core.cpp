#include <Eigen/Eigenvalues>

#include "cbspart/graph.hpp"
#include "cbspart/sparse_matrix.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace cbspart;
using cbspart::testing::from_dense;

namespace {

SparseSymMatrix tridiag(int n, double off, double dia) {
    std::vector<Triplet> t;
    for (int i = 0; i < n; ++i) {
        t.push_back({i, i, dia});
        if (i + 1 < n) {
            t.push_back({i, i + 1, off});
            t.push_back({i + 1, i, off});
        }
    }
    return SparseSymMatrix::from_triplets(n, t);
}

SparseSymMatrix identity(int n) { return tridiag(n, 0.0, 1.0); }

Graph path_graph(int n) {
    std::vector<Triplet> t;
    for (int i = 0; i < n; ++i) {
        t.push_back({i, i, 2.0});
        if (i + 1 < n) {
            t.push_back({i, i + 1, -1.0});
            t.push_back({i + 1, i, -1.0});
        }
    }
    return Graph::from_matrix_pattern(SparseSymMatrix::from_triplets(n, t));
}

}  // namespace

TEST_CASE("from_triplets rejects asymmetric input and keeps symmetric input") {
    std::vector<Triplet> bad = {{0, 0, 1.0}, {1, 1, 1.0}, {0, 1, 0.5}, {1, 0, 0.4}};
    CHECK_THROWS_AS(SparseSymMatrix::from_triplets(2, bad), NotSpdError);

    std::vector<Triplet> missing = {{0, 0, 1.0}, {1, 1, 1.0}, {0, 1, 0.5}};
    CHECK_THROWS(SparseSymMatrix::from_triplets(2, missing));

    // tiny asymmetry is averaged away
    std::vector<Triplet> tiny = {{0, 0, 1.0}, {1, 1, 1.0}, {0, 1, 0.5}, {1, 0, 0.5 + 1e-14}};
    SparseSymMatrix a = SparseSymMatrix::from_triplets(2, tiny);
    CHECK(a.coeff(0, 1) == a.coeff(1, 0));
}

TEST_CASE("stored pattern is exactly symmetric") {
    testing::Rng rng(7);
    for (int rep = 0; rep < 10; ++rep) {
        SparseSymMatrix a = testing::random_sparse_spd(20, 0.2, rng);
        double max_asym = 0.0;
        for (int i = 0; i < a.n(); ++i) {
            auto cols = a.row_cols(i);
            auto vals = a.row_values(i);
            for (std::size_t p = 0; p < cols.size(); ++p)
                max_asym = std::max(max_asym, std::abs(vals[p] - a.coeff(cols[p], i)));
        }
        CHECK(max_asym == 0.0);
    }
}

TEST_CASE("diag_scale examples") {
    SparseSymMatrix a = from_dense(Eigen::Matrix2d{{4.0, 2.0}, {2.0, 4.0}});
    auto [s, f] = diag_scale(a);
    CHECK(s.coeff(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(s.coeff(0, 1) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(f[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(f[1] == doctest::Approx(0.5).epsilon(1e-15));

    auto [id_scaled, fid] = diag_scale(identity(5));
    CHECK((id_scaled.to_dense() - Eigen::MatrixXd::Identity(5, 5)).norm() == 0.0);

    auto [t, ft] = diag_scale(tridiag(3, 1.0, 2.0));
    for (int i = 0; i < 3; ++i) CHECK(t.diag(i) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(t.coeff(0, 1) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(t.coeff(1, 2) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("diag_scale rejects nonpositive diagonal with index") {
    std::vector<Triplet> t = {{0, 0, 1.0}, {1, 1, -2.0}};
    SparseSymMatrix a = SparseSymMatrix::from_triplets(2, t);
    CHECK_THROWS_WITH_AS(diag_scale(a), doctest::Contains("index 1"), NotSpdError);
}

TEST_CASE("diag_scale is idempotent up to 1e-14") {
    testing::Rng rng(11);
    SparseSymMatrix a = testing::random_sparse_spd(25, 0.15, rng);
    auto [s1, f1] = diag_scale(a);
    auto [s2, f2] = diag_scale(s1);
    CHECK((s2.to_dense() - s1.to_dense()).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("submatrix examples") {
    SparseSymMatrix a = tridiag(3, -1.0, 2.0);
    SparseSymMatrix s = submatrix(a, {0, 2});
    CHECK((s.to_dense() - Eigen::Matrix2d{{2.0, 0.0}, {0.0, 2.0}}.matrix()).norm() == 0.0);

    SparseSymMatrix full = submatrix(a, {0, 1, 2});
    CHECK((full.to_dense() - a.to_dense()).norm() == 0.0);

    auto [scaled, f] = diag_scale(a);
    SparseSymMatrix one = submatrix(scaled, {1});
    CHECK(one.n() == 1);
    CHECK(one.coeff(0, 0) == doctest::Approx(1.0).epsilon(1e-15));

    CHECK_THROWS(submatrix(a, {}));
    CHECK_THROWS(submatrix(a, {0, 3}));
}

TEST_CASE("connected_components examples") {
    Graph g = path_graph(4);
    auto comps = connected_components(g, {0, 1, 3});
    REQUIRE(comps.size() == 2);
    CHECK(comps[0] == VertexSet{0, 1});
    CHECK(comps[1] == VertexSet{3});

    auto whole = connected_components(g, {0, 1, 2, 3});
    REQUIRE(whole.size() == 1);
    CHECK(whole[0] == VertexSet{0, 1, 2, 3});
}

TEST_CASE("connected_components partition the subset exactly") {
    testing::Rng rng(3);
    for (int rep = 0; rep < 20; ++rep) {
        Graph g = testing::random_connected_graph(30, 0.05, rng);
        auto [i_set, j_set] = testing::random_bipartition(30, rng);
        auto comps = connected_components(g, i_set);
        VertexSet merged;
        for (const auto& c : comps) {
            CHECK(is_sorted_unique(c));
            merged.insert(merged.end(), c.begin(), c.end());
        }
        std::sort(merged.begin(), merged.end());
        CHECK(merged == i_set);
        // deterministic order by smallest contained vertex
        for (std::size_t k = 1; k < comps.size(); ++k)
            CHECK(comps[k - 1].front() < comps[k].front());
    }
}

TEST_CASE("symmetric_permute examples and spectrum preservation") {
    SparseSymMatrix a = tridiag(3, -1.0, 2.0);
    std::vector<int> ident = {0, 1, 2};
    CHECK((symmetric_permute(a, ident).to_dense() - a.to_dense()).norm() == 0.0);

    SparseSymMatrix two = from_dense(Eigen::Matrix2d{{1.0, 0.5}, {0.5, 1.0}});
    CHECK((symmetric_permute(two, {1, 0}).to_dense() - two.to_dense()).norm() == 0.0);

    std::vector<int> perm = {2, 0, 1};
    SparseSymMatrix c = symmetric_permute(a, perm);
    Eigen::MatrixXd ad = a.to_dense(), cd = c.to_dense();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(cd(perm[i], perm[j]) == ad(i, j));

    Eigen::VectorXd ea = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(ad).eigenvalues();
    Eigen::VectorXd ec = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(cd).eigenvalues();
    CHECK((ea - ec).cwiseAbs().maxCoeff() <= 1e-12);

    CHECK_THROWS(symmetric_permute(a, {0, 0, 1}));
    CHECK_THROWS(symmetric_permute(a, {0, 1}));
}

TEST_CASE("symmetric_permute preserves eigenvalue multiset on random matrices") {
    testing::Rng rng(19);
    for (int rep = 0; rep < 5; ++rep) {
        int n = 10 + static_cast<int>(rng() % 41);
        SparseSymMatrix a = testing::random_sparse_spd(n, 0.1, rng);
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        SparseSymMatrix c = symmetric_permute(a, perm);
        Eigen::VectorXd ea =
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a.to_dense()).eigenvalues();
        Eigen::VectorXd ec =
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(c.to_dense()).eigenvalues();
        CHECK((ea - ec).cwiseAbs().maxCoeff() <= 1e-10 * std::max(1.0, ea.cwiseAbs().maxCoeff()));
    }
}

TEST_CASE("matvec agrees with dense multiply") {
    testing::Rng rng(23);
    SparseSymMatrix a = testing::random_sparse_spd(17, 0.2, rng);
    Eigen::VectorXd x = Eigen::VectorXd::Random(17);
    CHECK((a.matvec(x) - a.to_dense() * x).norm() <= 1e-12);
}

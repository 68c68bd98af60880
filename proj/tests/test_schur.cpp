#include <doctest.h>

#include "oracles.hpp"
#include "specband/schur.hpp"

using namespace specband;

namespace {

void check_pair(const SchurPair& s, const Eigen::MatrixXcd& M, const Eigen::MatrixXcd& S) {
    const Index n = M.rows();
    const double scale = std::max(1.0, std::max(M.cwiseAbs().maxCoeff(), S.cwiseAbs().maxCoeff()));
    CHECK((s.Q * s.U * s.Z.adjoint() - M).cwiseAbs().maxCoeff() < 1e-11 * scale);
    CHECK((s.Q * s.T * s.Z.adjoint() - S).cwiseAbs().maxCoeff() < 1e-11 * scale);
    CHECK((s.Q.adjoint() * s.Q - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((s.Z.adjoint() * s.Z - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-12);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < i; ++j) {
            CHECK(std::abs(s.U(i, j)) < 1e-12 * scale);
            CHECK(std::abs(s.T(i, j)) < 1e-12 * scale);
        }
    }
}

}  // namespace

TEST_CASE("1x1 pair is returned as-is") {
    Eigen::MatrixXcd M(1, 1), S(1, 1);
    M << Complex{2.0};
    S << Complex{3.0};
    SchurPair s = generalized_schur(M, S);
    CHECK(std::abs(s.U(0, 0) * s.Q(0, 0) * std::conj(s.Z(0, 0)) - Complex{2.0}) < 1e-14);
    check_pair(s, M, S);
}

TEST_CASE("random 5x5 pair reconstructs") {
    std::normal_distribution<double> g;
    Eigen::MatrixXcd M(5, 5), S(5, 5);
    for (Index i = 0; i < 5; ++i) {
        for (Index j = 0; j < 5; ++j) {
            M(i, j) = Complex{g(oracle::rng()), g(oracle::rng())};
            S(i, j) = Complex{g(oracle::rng()), g(oracle::rng())};
        }
    }
    check_pair(generalized_schur(M, S), M, S);
}

TEST_CASE("already-triangular input is accepted (invariants only)") {
    Eigen::MatrixXd M = Eigen::MatrixXd::Random(6, 6).triangularView<Eigen::Upper>();
    Eigen::MatrixXd S = Eigen::MatrixXd::Identity(6, 6);
    SchurPair s = generalized_schur(M, S);
    check_pair(s, M.cast<Complex>(), S.cast<Complex>());
}

TEST_CASE("50 random real pairs up to 20x20") {
    std::normal_distribution<double> g;
    std::uniform_int_distribution<Index> size(1, 20);
    for (int rep = 0; rep < 50; ++rep) {
        const Index n = size(oracle::rng());
        Eigen::MatrixXd M(n, n), S(n, n);
        for (Index i = 0; i < n; ++i) {
            for (Index j = 0; j < n; ++j) {
                M(i, j) = g(oracle::rng());
                S(i, j) = g(oracle::rng());
            }
        }
        check_pair(generalized_schur(M, S), M.cast<Complex>(), S.cast<Complex>());
    }
}

TEST_CASE("size mismatch is rejected") {
    Eigen::MatrixXcd M(2, 2), S(3, 3);
    M.setZero();
    S.setZero();
    CHECK_THROWS_AS(generalized_schur(M, S), InvalidArgumentError);
}

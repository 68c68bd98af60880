#pragma once

#include <Eigen/Dense>

#include "specband/errors.hpp"

namespace specband {

/// Complex generalized Schur decomposition of a matrix pair:
/// M = Q U Z*, S = Q T Z*, with Q, Z unitary and U, T upper triangular.
struct SchurPair {
    Eigen::MatrixXcd Q, Z;  // unitary
    Eigen::MatrixXcd U, T;  // upper triangular
};

SchurPair generalized_schur(const Eigen::MatrixXcd& M, const Eigen::MatrixXcd& S);

inline SchurPair generalized_schur(const Eigen::MatrixXd& M, const Eigen::MatrixXd& S) {
    return generalized_schur(Eigen::MatrixXcd(M.cast<Complex>()),
                             Eigen::MatrixXcd(S.cast<Complex>()));
}

}  // namespace specband

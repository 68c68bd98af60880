#include "specband/schur.hpp"

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include <string>

namespace specband {

SchurPair generalized_schur(const Eigen::MatrixXcd& M, const Eigen::MatrixXcd& S) {
    if (M.rows() != M.cols() || S.rows() != S.cols() || M.rows() != S.rows()) {
        throw InvalidArgumentError("generalized Schur needs square matrices of equal size");
    }
    const lapack_int n = static_cast<lapack_int>(M.rows());
    SchurPair out;
    out.U = M;
    out.T = S;
    out.Q.resize(n, n);
    out.Z.resize(n, n);
    if (n == 0) return out;

    std::vector<Complex> alpha(n), beta(n);
    lapack_int sdim = 0;
    // zgges: A = Q U Z^H, B = Q T Z^H (column-major, no eigenvalue sorting)
    const lapack_int info = LAPACKE_zgges(
        LAPACK_COL_MAJOR, 'V', 'V', 'N', nullptr, n, out.U.data(), n, out.T.data(), n, &sdim,
        alpha.data(), beta.data(), out.Q.data(), n, out.Z.data(), n);
    if (info != 0) {
        throw Error("generalized Schur (zgges) failed to converge, info = " +
                    std::to_string(info));
    }
    return out;
}

}  // namespace specband

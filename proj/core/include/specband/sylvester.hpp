#pragma once

#include <functional>

#include "specband/almost_banded.hpp"
#include "specband/schur.hpp"

namespace specband {

/// A two-term tensor equation L X M^T + N X S^T = F on an infinite-by-infinite
/// unknown X (columns are x-direction coefficient vectors, one per y mode),
/// with boundary functionals in both directions:
///   B_x X = g_x^T  (K_x rows),   X B_y^T = g_y  (K_y columns).
struct TensorProblem {
    BandedOperator<double> L, N;  // x-direction pair (shared domain/range)
    BandedOperator<double> M, S;  // y-direction pair
    std::vector<Functional<double>> Bx;
    std::vector<Functional<double>> By;
    /// forcing column j (1-based y-range mode): an x-Fun in rangespace(L)
    std::function<Fun<double>(Index)> forcing;
    std::vector<Fun<double>> gx;  // K_x data rows, expanded in the y domain basis
    std::vector<Fun<double>> gy;  // K_y data columns, Funs in the x domain basis
};

/// Finite sections of the y-direction data with the x direction left infinite.
struct SemiDiscreteSystem {
    BandedOperator<double> L, N;
    Eigen::MatrixXd Mn, Sn;         // n x n sections
    Eigen::MatrixXd Bn;             // K_y x n boundary rows
    Eigen::MatrixXd gxn;            // K_x x n (y-coefficients of the x-boundary data)
    std::vector<Fun<double>> Fn;    // first n forcing columns
    std::vector<Fun<double>> gy;    // K_y x-direction data columns
    std::vector<Functional<double>> Bx;
    Index n = 0, Kx = 0, Ky = 0;
};

SemiDiscreteSystem semidiscretize(const TensorProblem& p, Index n);

/// Left-multiply the boundary rows by the inverse of their principal
/// K_y x K_y block so Bn becomes [I, B2]; gy transforms consistently, leaving
/// the constraint set unchanged. Throws SingularBoundaryBlockError.
void normalize_boundary(Eigen::MatrixXd& Bn, std::vector<Fun<double>>& gy);

/// The boundary-folded reduced system: the first K_y unknown columns are
/// eliminated through X1 = gy - X2 B2^T and the first n' = n - K_y equation
/// columns are kept, giving L X2 Mt^T + N X2 St^T = Ft.
struct ReducedSystem {
    Eigen::MatrixXd Mt, St;       // n' x n'
    std::vector<Fun<double>> Ft;  // n' corrected forcing columns
    Eigen::MatrixXd B2;           // K_y x n'
    Eigen::MatrixXd gx2;          // K_x x n'
    Index npr = 0;
};

ReducedSystem eliminate_boundary_columns(const SemiDiscreteSystem& s);

struct SylvesterStats {
    double qz_seconds = 0.0;
    double column_seconds = 0.0;
    Index nopt_max = 0;
    Index ny = 0;
};

/// Back-to-front column recursion: column m solves
///   (U_mm L + T_mm N) y_m = (Ft Q̄) e_m - sum_{p>m} (U_mp L + T_mp N) y_p
/// with boundary rows Bx y_m = gx_rot e_m, each via adaptive QR.
std::vector<Fun<Complex>> bartels_stewart_columns(const BandedOperator<double>& L,
                                                  const BandedOperator<double>& N,
                                                  const SchurPair& schur,
                                                  const std::vector<Fun<double>>& Ft,
                                                  const std::vector<Functional<double>>& Bx,
                                                  const Eigen::MatrixXcd& gx_rot, double tol,
                                                  SylvesterStats* stats = nullptr);

/// X2 = Y Z^T, then X1 = gy - X2 B2^T; imaginary parts of the recovered
/// columns must be negligible for real data (ResidualImagError otherwise).
std::vector<Fun<double>> recover_solution(const std::vector<Fun<Complex>>& Y,
                                          const Eigen::MatrixXcd& Z, const Eigen::MatrixXd& B2,
                                          const std::vector<Fun<double>>& gy);

/// An evaluable semi-discrete solution: u(x, y) = sum_j columns[j](x) * phi_j(y)
/// with phi the y-direction domain basis.
struct PdeSolution {
    std::vector<Fun<double>> columns;
    Space y_space = Space::chebyshev();
    SylvesterStats stats;

    double operator()(double x, double y) const;
};

PdeSolution solve_pde(const TensorProblem& p, Index ny, double tol = 1e-14);

}  // namespace specband

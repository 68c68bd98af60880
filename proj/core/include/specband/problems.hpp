#pragma once

#include <string>

#include "specband/sylvester.hpp"

namespace specband {

/// A canned boundary-value ODE with optional closed-form checks.
struct OdeProblem {
    std::string name;
    AlmostBandedSystem<double> system;
    std::function<double(double)> exact;            // pointwise solution, may be empty
    std::function<double(Index)> exact_coefficient; // 1-based coefficient, may be empty
};

/// u' - u = 0, u(0) = 1 on Taylor series: coefficients 1/(j-1)!.
OdeProblem exp_ode_problem();

/// u' = 0, u(0) = c: the constant solution.
OdeProblem constant_ode_problem(double c);

/// u'' + k^2 u = 0 on [-1,1], u(+-1) = 1: u = cos(kx)/cos(k), in
/// Chebyshev/ultraspherical form.
OdeProblem oscillatory_ode_problem(double k);

/// u_xx + u_yy + c u = f on [-1,1]^2 with Dirichlet data, in ultraspherical
/// form (two-term tensor equation). `forcing_cheb` yields the Chebyshev(x)
/// coefficient column of each Chebyshev(y) forcing mode; boundary data may be
/// empty for homogeneous conditions.
TensorProblem dirichlet_square_problem(double c, std::function<Fun<double>(Index)> forcing_cheb,
                                       std::vector<Fun<double>> gx = {},
                                       std::vector<Fun<double>> gy = {});

/// The benchmark problem: u_xx + u_yy + k2 u = sum of T_k(x) T_j(y) over an
/// nx-by-ny block of ones, homogeneous Dirichlet conditions.
TensorProblem helmholtz_ones_problem(Index nx, Index ny, double k2 = 100.0);

/// Pointwise forcing of the ones block.
double helmholtz_ones_forcing_value(Index nx, Index ny, double x, double y);

struct HelmholtzRun {
    PdeSolution solution;
    Index nx_forcing = 0, ny_forcing = 0;
    Index n_disc = 0;
};

/// Solve the benchmark problem. With fixed_n > 0 the semidiscretization size
/// is pinned (timing-benchmark mode); otherwise it grows geometrically until
/// the trailing solution columns fall below tail_tol relative to the largest
/// column.
HelmholtzRun solve_helmholtz(Index nx, Index ny, double k2, double tol, Index fixed_n = 0,
                             double tail_tol = 1e-6, Index n_cap = 512);

/// Max |u_xx + u_yy + c u - f| over an interior sample grid, computed by
/// coefficient-space differentiation and direct evaluation (never from solver
/// bookkeeping).
double interior_residual(const PdeSolution& sol, double c,
                         const std::function<double(double, double)>& f, int pts = 10);

/// Max boundary mismatch |u - g| sampled along all four edges.
double boundary_residual(const PdeSolution& sol,
                         const std::function<double(double, double)>& g, int pts_per_edge = 10);

}  // namespace specband

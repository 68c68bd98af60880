// Independent oracles for the test suite: dense constructions from the entry
// formulas, trigonometric Chebyshev values, cosine-transform coefficient
// computation, and dense linear solves used as brute-force references.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "specband/almost_banded.hpp"
#include "specband/sylvester.hpp"

namespace oracle {

using specband::Index;

// ---- independent dense leaf matrices (formulas restated on purpose) -------

inline Eigen::MatrixXd dense_taylor_derivative(Index n) {
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    for (Index k = 1; k + 1 <= n; ++k) d(k - 1, k) = static_cast<double>(k);
    return d;
}

inline Eigen::MatrixXd dense_taylor_multiplication(const std::vector<double>& a, Index n) {
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(n, n);
    for (Index k = 1; k <= n; ++k) {
        for (Index j = 1; j <= k; ++j) {
            const Index d = k - j;
            if (d < static_cast<Index>(a.size())) t(k - 1, j - 1) = a[d];
        }
    }
    return t;
}

inline Eigen::MatrixXd dense_conversion_step(int level, Index n) {
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
    for (Index k = 1; k <= n; ++k) {
        if (level == 0) {
            s(k - 1, k - 1) = k == 1 ? 1.0 : 0.5;
            if (k + 2 <= n) s(k - 1, k + 1) = -0.5;
        } else {
            const double lam = level;
            s(k - 1, k - 1) = lam / (lam + k - 1);
            if (k + 2 <= n) s(k - 1, k + 1) = -lam / (lam + k + 1);
        }
    }
    return s;
}

// ---- independent basis values ----------------------------------------------

inline double cheb_value_trig(Index k, double x) {
    return std::cos(static_cast<double>(k) * std::acos(x));
}

/// Chebyshev coefficients of f on [-1,1] via the cosine-sampled transform
/// (naive O(n^2) sum; test-only).
inline std::vector<double> cheb_coeffs(const std::function<double(double)>& f, Index n) {
    std::vector<double> fv(n + 1), c(n + 1);
    for (Index k = 0; k <= n; ++k) fv[k] = f(std::cos(M_PI * k / n));
    for (Index j = 0; j <= n; ++j) {
        double acc = 0.0;
        for (Index k = 0; k <= n; ++k) {
            const double w = (k == 0 || k == n) ? 0.5 : 1.0;
            acc += w * fv[k] * std::cos(M_PI * j * k / n);
        }
        c[j] = 2.0 / n * acc;
    }
    c[0] *= 0.5;
    c[n] *= 0.5;
    return c;
}

// ---- dense sections and solves ---------------------------------------------

/// Leading rows x cols section through the library's entry access (used where
/// the oracle is an independent *solve*, not independent entries).
template <class S>
Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> dense_section(
    const specband::BandedOperator<S>& op, Index rows, Index cols) {
    Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> m =
        Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>::Zero(rows, cols);
    specband::BandedBlock<S> blk = op.block({1, rows});
    const specband::BandRange b = op.bandinds();
    for (Index k = 1; k <= rows; ++k) {
        for (Index j = std::max<Index>(1, k + b.lower); j <= std::min(cols, k + b.upper); ++j) {
            m(k - 1, j - 1) = blk.at(k, j);
        }
    }
    return m;
}

/// Dense bordered solve of the leading n x n stacked section: K boundary rows
/// then the first n-K operator rows.
inline Eigen::VectorXd dense_bordered_solve(const specband::AlmostBandedSystem<double>& sys,
                                            Index n) {
    const Index K = static_cast<Index>(sys.functionals.size());
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
    for (Index i = 0; i < K; ++i) {
        std::vector<double> row = sys.functionals[i].entries({1, n});
        for (Index j = 0; j < n; ++j) A(i, j) = row[j];
        b(i) = sys.bc_values[i];
    }
    A.bottomRows(n - K) = dense_section(sys.op, n - K, n);
    specband::Fun<double> rhs = sys.rhs;
    if (!rhs.is_zero() && rhs.space() != sys.op.rangespace()) {
        rhs = specband::conversion_operator(rhs.space(), sys.op.rangespace()) * rhs;
    }
    for (Index r = 0; r < n - K; ++r) b(K + r) = rhs.coefficient(r + 1);
    return A.lu().solve(b);
}

/// Dense flattened solve of the semi-discretized tensor problem on an
/// nx-by-n coefficient grid: y-boundary rows for every x mode, x-boundary
/// rows for the trailing n - Ky y modes, and operator rows for the first
/// n - Ky equation columns crossed with the first nx - Kx x rows.
inline Eigen::MatrixXd kron_oracle(const specband::TensorProblem& p, Index nx, Index n) {
    using specband::BandedBlock;
    const Index Ky = static_cast<Index>(p.By.size());
    const Index Kx = static_cast<Index>(p.Bx.size());
    const Index npr = n - Ky;
    Eigen::MatrixXd Lx = dense_section(p.L, nx, nx);
    Eigen::MatrixXd Nx = dense_section(p.N, nx, nx);
    Eigen::MatrixXd My = dense_section(p.M, n, n);
    Eigen::MatrixXd Sy = dense_section(p.S, n, n);

    const Index N = nx * n;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(N, N);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(N);
    auto idx = [nx](Index k, Index j) { return j * nx + k; };  // 0-based
    Index r = 0;
    for (Index k = 0; k < nx; ++k) {
        for (Index i = 0; i < Ky; ++i, ++r) {
            std::vector<double> row = p.By[i].entries({1, n});
            for (Index j = 0; j < n; ++j) A(r, idx(k, j)) = row[j];
            b(r) = p.gy[i].coefficient(k + 1);
        }
    }
    for (Index j = Ky; j < n; ++j) {
        for (Index i = 0; i < Kx; ++i, ++r) {
            std::vector<double> row = p.Bx[i].entries({1, nx});
            for (Index k = 0; k < nx; ++k) A(r, idx(k, j)) = row[k];
            b(r) = p.gx[i].coefficient(j + 1);
        }
    }
    for (Index jj = 0; jj < npr; ++jj) {
        specband::Fun<double> f = p.forcing(jj + 1);
        for (Index rr = 0; rr < nx - Kx; ++rr, ++r) {
            for (Index j = 0; j < n; ++j) {
                if (My(jj, j) != 0.0) A.row(r).segment(idx(0, j), nx) += My(jj, j) * Lx.row(rr);
                if (Sy(jj, j) != 0.0) A.row(r).segment(idx(0, j), nx) += Sy(jj, j) * Nx.row(rr);
            }
            b(r) = f.coefficient(rr + 1);
        }
    }
    Eigen::VectorXd x = A.lu().solve(b);
    Eigen::MatrixXd X(nx, n);
    for (Index j = 0; j < n; ++j) X.col(j) = x.segment(idx(0, j), nx);
    return X;
}

/// Coefficient matrix (nx rows) of a PdeSolution for comparison.
inline Eigen::MatrixXd solution_matrix(const specband::PdeSolution& sol, Index nx) {
    Eigen::MatrixXd X = Eigen::MatrixXd::Zero(nx, static_cast<Index>(sol.columns.size()));
    for (Index j = 0; j < static_cast<Index>(sol.columns.size()); ++j) {
        for (Index i = 1; i <= nx; ++i) X(i - 1, j) = sol.columns[j].coefficient(i);
    }
    return X;
}

/// Leading rows x cols section of the stacked system (boundary rows above the
/// operator rows).
inline Eigen::MatrixXd stacked_section(const specband::AlmostBandedSystem<double>& sys, Index rows,
                                       Index cols) {
    const Index K = static_cast<Index>(sys.functionals.size());
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(rows, cols);
    for (Index i = 0; i < K; ++i) {
        std::vector<double> row = sys.functionals[i].entries({1, cols});
        for (Index j = 0; j < cols; ++j) A(i, j) = row[j];
    }
    A.bottomRows(rows - K) = dense_section(sys.op, rows - K, cols);
    return A;
}

/// Apply logged Givens rotations (those with both rows inside the section).
template <class S>
void apply_rotations(const std::vector<specband::GivensRotation<S>>& log,
                     Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>& A) {
    using specband::ScalarTraits;
    for (const auto& g : log) {
        if (g.row2 > A.rows()) continue;
        Eigen::Matrix<S, 1, Eigen::Dynamic> r1 = A.row(g.row1 - 1);
        Eigen::Matrix<S, 1, Eigen::Dynamic> r2 = A.row(g.row2 - 1);
        A.row(g.row1 - 1) = g.alpha * r1 + g.beta * r2;
        A.row(g.row2 - 1) =
            -ScalarTraits<S>::conj(g.beta) * r1 + ScalarTraits<S>::conj(g.alpha) * r2;
    }
}

inline std::mt19937& rng() {
    static std::mt19937 gen(20240817u);
    return gen;
}

/// A random operator tree over {D, T[a], I, +, *} in Taylor space together
/// with its independently-built dense N x N section.
struct TaylorTree {
    specband::BandedOperator<double> op;
    Eigen::MatrixXd dense;
};

inline TaylorTree random_taylor_tree(std::mt19937& gen, int depth, Index N) {
    using specband::BandedOperator;
    std::uniform_int_distribution<int> leaf_kind(0, 2), node_kind(0, 1), a_len(1, 3);
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);
    if (depth == 0 || std::uniform_int_distribution<int>(0, 3)(gen) == 0) {
        switch (leaf_kind(gen)) {
            case 0:
                return {specband::taylor_derivative(), dense_taylor_derivative(N)};
            case 1: {
                std::vector<double> a(a_len(gen));
                for (auto& v : a) v = coeff(gen);
                return {specband::taylor_multiplication<double>(a),
                        dense_taylor_multiplication(a, N)};
            }
            default:
                return {specband::identity_operator<double>(specband::Space::taylor()),
                        Eigen::MatrixXd::Identity(N, N)};
        }
    }
    TaylorTree lhs = random_taylor_tree(gen, depth - 1, N);
    TaylorTree rhs = random_taylor_tree(gen, depth - 1, N);
    if (node_kind(gen) == 0) {
        return {lhs.op + rhs.op, lhs.dense + rhs.dense};
    }
    return {lhs.op * rhs.op, lhs.dense * rhs.dense};
}

}  // namespace oracle

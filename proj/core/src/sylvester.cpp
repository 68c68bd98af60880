#include "specband/sylvester.hpp"

#include <chrono>

namespace specband {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

class ComplexifiedOperatorImpl final : public BandedOperatorImpl<Complex> {
  public:
    explicit ComplexifiedOperatorImpl(BandedOperator<double> inner) : inner_(std::move(inner)) {}
    BandRange bandinds() const override { return inner_.bandinds(); }
    Space domainspace() const override { return inner_.domainspace(); }
    Space rangespace() const override { return inner_.rangespace(); }
    void add_entries(BandedBlock<Complex>& block, IndexRange rows) const override {
        BandedBlock<double> tmp = inner_.block(rows);
        const BandRange b = tmp.bands();
        for (Index k = rows.first; k <= rows.last; ++k) {
            for (Index j = std::max<Index>(1, k + b.lower); j <= k + b.upper; ++j) {
                const double v = tmp.at(k, j);
                if (v != 0.0) block.add(k, j, Complex(v));
            }
        }
    }

  private:
    BandedOperator<double> inner_;
};

class ComplexifiedFunctionalImpl final : public FunctionalImpl<Complex> {
  public:
    explicit ComplexifiedFunctionalImpl(Functional<double> inner) : inner_(std::move(inner)) {}
    Space domainspace() const override { return inner_.domainspace(); }
    void entries(IndexRange cols, Complex* out) const override {
        std::vector<double> v = inner_.entries(cols);
        for (std::size_t i = 0; i < v.size(); ++i) out[i] = Complex(v[i]);
    }

  private:
    Functional<double> inner_;
};

BandedOperator<Complex> complexify(const BandedOperator<double>& op) {
    return BandedOperator<Complex>(std::make_shared<const ComplexifiedOperatorImpl>(op));
}

Functional<Complex> complexify(const Functional<double>& f) {
    return Functional<Complex>(std::make_shared<const ComplexifiedFunctionalImpl>(f));
}

Fun<Complex> to_complex(const Fun<double>& f) {
    std::vector<Complex> c(f.coefficients().begin(), f.coefficients().end());
    return Fun<Complex>(f.space(), std::move(c));
}

/// acc += s * f on raw coefficient vectors (no chopping mid-accumulation).
void axpy(std::vector<Complex>& acc, Complex s, const Fun<Complex>& f) {
    if (acc.size() < f.coefficients().size()) acc.resize(f.coefficients().size(), Complex{});
    for (std::size_t i = 0; i < f.coefficients().size(); ++i) acc[i] += s * f.coefficients()[i];
}

}  // namespace

SemiDiscreteSystem semidiscretize(const TensorProblem& p, Index n) {
    const Index Ky = static_cast<Index>(p.By.size());
    const Index Kx = static_cast<Index>(p.Bx.size());
    if (n <= Ky) throw InvalidArgumentError("semidiscretization needs n > K_y");
    if (p.L.domainspace() != p.N.domainspace() || p.L.rangespace() != p.N.rangespace() ||
        p.M.domainspace() != p.S.domainspace() || p.M.rangespace() != p.S.rangespace()) {
        throw NoConversionError("tensor problem operator pairs must share spaces");
    }
    SemiDiscreteSystem out{p.L, p.N, {}, {}, {}, {}, {}, {}, p.Bx, n, Kx, Ky};

    auto section = [n](const BandedOperator<double>& A) {
        Eigen::MatrixXd sec = Eigen::MatrixXd::Zero(n, n);
        BandedBlock<double> blk = A.block({1, n});
        const BandRange b = A.bandinds();
        for (Index k = 1; k <= n; ++k) {
            for (Index j = std::max<Index>(1, k + b.lower); j <= std::min(n, k + b.upper); ++j) {
                sec(k - 1, j - 1) = blk.at(k, j);
            }
        }
        return sec;
    };
    out.Mn = section(p.M);
    out.Sn = section(p.S);

    out.Bn.resize(Ky, n);
    for (Index i = 0; i < Ky; ++i) {
        std::vector<double> row = p.By[i].entries({1, n});
        for (Index j = 0; j < n; ++j) out.Bn(i, j) = row[j];
    }
    out.gxn = Eigen::MatrixXd::Zero(Kx, n);
    for (Index i = 0; i < Kx; ++i) {
        for (Index j = 1; j <= n; ++j) out.gxn(i, j - 1) = p.gx[i].coefficient(j);
    }
    out.Fn.reserve(n);
    for (Index j = 1; j <= n; ++j) out.Fn.push_back(p.forcing(j));
    out.gy = p.gy;
    return out;
}

void normalize_boundary(Eigen::MatrixXd& Bn, std::vector<Fun<double>>& gy) {
    const Index Ky = Bn.rows();
    if (Ky == 0) return;
    Eigen::MatrixXd principal = Bn.leftCols(Ky);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(principal);
    if (!lu.isInvertible()) {
        throw SingularBoundaryBlockError("principal boundary block is singular");
    }
    Eigen::MatrixXd P = lu.inverse();
    Bn = P * Bn;
    // constraint X Bn^T = gy transforms to gy <- gy P^T
    std::vector<Fun<double>> newgy(gy.size());
    for (Index i = 0; i < Ky; ++i) {
        Fun<double> acc;
        for (Index j = 0; j < Ky; ++j) {
            acc = acc.is_zero() ? P(i, j) * gy[j] : acc + P(i, j) * gy[j];
        }
        newgy[i] = acc;
    }
    gy = std::move(newgy);
}

ReducedSystem eliminate_boundary_columns(const SemiDiscreteSystem& s) {
    const Index n = s.n, Ky = s.Ky;
    const Index npr = n - Ky;
    if (Ky > 0) {
        if (!s.Bn.leftCols(Ky).isApprox(Eigen::MatrixXd::Identity(Ky, Ky), 1e-12)) {
            throw InvalidArgumentError("boundary rows must be normalized to [I, B2] first");
        }
    }
    ReducedSystem out;
    out.npr = npr;
    out.B2 = s.Bn.rightCols(npr);
    out.gx2 = s.gxn.rightCols(npr);

    // fold: G = (Mn^T - Bn^T Mn_Ky^T) with first Ky rows zero; keep the last
    // n' rows (the X2 block) and the first n' equation columns
    auto fold = [&](const Eigen::MatrixXd& A) -> Eigen::MatrixXd {
        if (Ky == 0) return A.transpose();
        Eigen::MatrixXd G = A.transpose() - s.Bn.transpose() * A.leftCols(Ky).transpose();
        return G.bottomRows(npr);
    };
    out.Mt = fold(s.Mn).leftCols(npr).transpose();
    out.St = fold(s.Sn).leftCols(npr).transpose();

    // corrected forcing: Ft[jj] = Fn[jj] - sum_i Mn(jj,i) L gy_i - sum_i Sn(jj,i) N gy_i
    std::vector<Fun<double>> Lgy(Ky), Ngy(Ky);
    for (Index i = 0; i < Ky; ++i) {
        Lgy[i] = s.L * s.gy[i];
        Ngy[i] = s.N * s.gy[i];
    }
    out.Ft.reserve(npr);
    for (Index jj = 0; jj < npr; ++jj) {
        Fun<double> col = s.Fn[jj];
        for (Index i = 0; i < Ky; ++i) {
            col = col - (s.Mn(jj, i) * Lgy[i]) - (s.Sn(jj, i) * Ngy[i]);
        }
        out.Ft.push_back(std::move(col));
    }
    return out;
}

std::vector<Fun<Complex>> bartels_stewart_columns(const BandedOperator<double>& L,
                                                  const BandedOperator<double>& N,
                                                  const SchurPair& schur,
                                                  const std::vector<Fun<double>>& Ft,
                                                  const std::vector<Functional<double>>& Bx,
                                                  const Eigen::MatrixXcd& gx_rot, double tol,
                                                  SylvesterStats* stats) {
    const Index npr = schur.U.rows();
    if (static_cast<Index>(Ft.size()) != npr || gx_rot.cols() != npr) {
        throw InvalidArgumentError("column recursion: inconsistent sizes");
    }
    BandedOperator<Complex> Lc = complexify(L);
    BandedOperator<Complex> Nc = complexify(N);
    std::vector<Functional<Complex>> Bxc;
    for (const auto& f : Bx) Bxc.push_back(complexify(f));
    std::vector<Fun<Complex>> Ftc;
    Ftc.reserve(Ft.size());
    for (const auto& f : Ft) Ftc.push_back(to_complex(f));
    const Space xspace = L.rangespace();

    std::vector<Fun<Complex>> Y(npr);
    for (Index m = npr - 1; m >= 0; --m) {
        // rotated forcing column: (Ft Q̄) e_m
        std::vector<Complex> rhs;
        for (Index jj = 0; jj < npr; ++jj) {
            const Complex q = std::conj(schur.Q(jj, m));
            if (q != Complex{}) axpy(rhs, q, Ftc[jj]);
        }
        // couple in the already-computed columns
        std::vector<Complex> accU, accT;
        for (Index j = m + 1; j < npr; ++j) {
            if (schur.U(m, j) != Complex{}) axpy(accU, schur.U(m, j), Y[j]);
            if (schur.T(m, j) != Complex{}) axpy(accT, schur.T(m, j), Y[j]);
        }
        if (!accU.empty()) axpy(rhs, Complex{-1.0}, Lc * Fun<Complex>(Lc.domainspace(), accU));
        if (!accT.empty()) axpy(rhs, Complex{-1.0}, Nc * Fun<Complex>(Nc.domainspace(), accT));

        const Complex umm = schur.U(m, m), tmm = schur.T(m, m);
        if (std::abs(umm) == 0.0 && std::abs(tmm) == 0.0) {
            throw SingularError("singular operator pencil at column " + std::to_string(m + 1));
        }
        AlmostBandedSystem<Complex> sys{Bxc, umm * Lc + tmm * Nc, Fun<Complex>(xspace, rhs), {}};
        sys.bc_values.resize(Bxc.size());
        for (std::size_t i = 0; i < Bxc.size(); ++i) sys.bc_values[i] = gx_rot(i, m);
        try {
            AdaptiveQRResult<Complex> r = adaptive_qr_solve(sys, {tol, 100000});
            if (stats) stats->nopt_max = std::max(stats->nopt_max, r.n_opt);
            Y[m] = std::move(r.solution);
        } catch (const NoConvergenceError& e) {
            throw NoConvergenceError("column " + std::to_string(m + 1) + ": " + e.what(), e.max_n);
        } catch (const SingularError& e) {
            throw SingularError("column " + std::to_string(m + 1) + ": " + e.what());
        }
    }
    return Y;
}

std::vector<Fun<double>> recover_solution(const std::vector<Fun<Complex>>& Y,
                                          const Eigen::MatrixXcd& Z, const Eigen::MatrixXd& B2,
                                          const std::vector<Fun<double>>& gy) {
    const Index npr = static_cast<Index>(Y.size());
    const Index Ky = B2.rows();
    std::vector<std::vector<Complex>> X2(npr);
    for (Index c = 0; c < npr; ++c) {
        for (Index m = 0; m < npr; ++m) {
            if (Z(c, m) != Complex{}) axpy(X2[c], Z(c, m), Y[m]);
        }
    }
    double max_real = 0.0, max_imag = 0.0;
    for (const auto& col : X2) {
        for (const Complex& v : col) {
            max_real = std::max(max_real, std::abs(v.real()));
            max_imag = std::max(max_imag, std::abs(v.imag()));
        }
    }
    if (max_imag > 1e-10 * std::max(1.0, max_real)) {
        throw ResidualImagError("recovered solution has non-negligible imaginary content");
    }
    const Space xspace = Y.empty() ? Space::chebyshev() : Y.front().space();
    std::vector<Fun<double>> X(Ky + npr);
    for (Index c = 0; c < npr; ++c) {
        std::vector<double> re(X2[c].size());
        for (std::size_t i = 0; i < X2[c].size(); ++i) re[i] = X2[c][i].real();
        X[Ky + c] = Fun<double>(xspace, std::move(re));
    }
    for (Index i = 0; i < Ky; ++i) {
        Fun<double> col = gy[i];
        for (Index c = 0; c < npr; ++c) {
            if (B2(i, c) != 0.0) col = col - B2(i, c) * X[Ky + c];
        }
        X[i] = std::move(col);
    }
    return X;
}

double PdeSolution::operator()(double x, double y) const {
    std::vector<double> vals(columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) vals[j] = evaluate(columns[j], x);
    return evaluate_series<double>(y_space, vals, y);
}

PdeSolution solve_pde(const TensorProblem& p, Index ny, double tol) {
    // reject the degenerate pencil up front: both x-operators identically zero
    // on a probe section
    auto probe_zero = [](const BandedOperator<double>& A) {
        BandedBlock<double> blk = A.block({1, 8});
        const BandRange b = A.bandinds();
        for (Index k = 1; k <= 8; ++k) {
            for (Index j = std::max<Index>(1, k + b.lower); j <= k + b.upper; ++j) {
                if (blk.at(k, j) != 0.0) return false;
            }
        }
        return true;
    };
    if (probe_zero(p.L) && probe_zero(p.N)) {
        throw InvalidArgumentError("degenerate tensor problem: both x-operators vanish");
    }

    SemiDiscreteSystem s = semidiscretize(p, ny);
    normalize_boundary(s.Bn, s.gy);
    ReducedSystem red = eliminate_boundary_columns(s);

    PdeSolution out;
    out.y_space = p.M.domainspace();
    out.stats.ny = ny;

    auto t0 = Clock::now();
    SchurPair schur = generalized_schur(red.Mt, red.St);
    out.stats.qz_seconds = seconds_since(t0);

    t0 = Clock::now();
    Eigen::MatrixXcd gx_rot = red.gx2.cast<Complex>() * schur.Z.conjugate();
    std::vector<Fun<Complex>> Y =
        bartels_stewart_columns(s.L, s.N, schur, red.Ft, s.Bx, gx_rot, tol, &out.stats);
    out.columns = recover_solution(Y, schur.Z, red.B2, s.gy);
    out.stats.column_seconds = seconds_since(t0);
    return out;
}

}  // namespace specband

#include "specband/problems.hpp"

#include <cmath>

namespace specband {

OdeProblem exp_ode_problem() {
    BandedOperator<double> D = taylor_derivative();
    BandedOperator<double> I = identity_operator<double>(Space::taylor());
    AlmostBandedSystem<double> sys{{taylor_evaluation(0.0)}, D - I, Fun<double>(), {1.0}};
    OdeProblem p{"exp", std::move(sys), [](double x) { return std::exp(x); }, nullptr};
    p.exact_coefficient = [](Index j) {
        double f = 1.0;
        for (Index i = 2; i < j; ++i) f *= static_cast<double>(i);
        return 1.0 / f;  // 1/(j-1)!
    };
    return p;
}

OdeProblem constant_ode_problem(double c) {
    AlmostBandedSystem<double> sys{
        {taylor_evaluation(0.0)}, taylor_derivative(), Fun<double>(), {c}};
    return {"constant", std::move(sys), [c](double) { return c; },
            [c](Index j) { return j == 1 ? c : 0.0; }};
}

OdeProblem oscillatory_ode_problem(double k) {
    const Space cheb = Space::chebyshev();
    BandedOperator<double> D2 = ultraspherical_derivative(2);
    BandedOperator<double> S = conversion_operator(cheb, Space::ultraspherical(2));
    AlmostBandedSystem<double> sys{
        {evaluation_functional(cheb, 1.0), evaluation_functional(cheb, -1.0)},
        D2 + (k * k) * S,
        Fun<double>(),
        {1.0, 1.0}};
    return {"oscillatory", std::move(sys),
            [k](double x) { return std::cos(k * x) / std::cos(k); }, nullptr};
}

TensorProblem dirichlet_square_problem(double c, std::function<Fun<double>(Index)> forcing_cheb,
                                       std::vector<Fun<double>> gx, std::vector<Fun<double>> gy) {
    const Space cheb = Space::chebyshev();
    const Space ultra2 = Space::ultraspherical(2);
    BandedOperator<double> D2 = ultraspherical_derivative(2);
    BandedOperator<double> S02 = conversion_operator(cheb, ultra2);

    TensorProblem p{
        /*L=*/D2 + c * S02,
        /*N=*/S02,
        /*M=*/S02,
        /*S=*/D2,
        /*Bx=*/{evaluation_functional(cheb, 1.0), evaluation_functional(cheb, -1.0)},
        /*By=*/{evaluation_functional(cheb, 1.0), evaluation_functional(cheb, -1.0)},
        /*forcing=*/nullptr,
        /*gx=*/std::move(gx),
        /*gy=*/std::move(gy)};
    if (p.gx.empty()) p.gx.assign(2, Fun<double>());
    if (p.gy.empty()) p.gy.assign(2, Fun<double>());

    // forcing columns converted into the range space pair: column jj of
    // (S02x F S02y^T) needs forcing y-modes jj .. jj+4
    p.forcing = [forcing_cheb = std::move(forcing_cheb), S02](Index jj) {
        Fun<double> acc(Space::ultraspherical(2), {});
        for (Index m = jj; m <= jj + 4; ++m) {
            const double w = S02.entry(jj, m);
            if (w == 0.0) continue;
            Fun<double> col = forcing_cheb(m);
            if (col.is_zero()) continue;
            acc = acc + w * (S02 * col);
        }
        return acc;
    };
    return p;
}

TensorProblem helmholtz_ones_problem(Index nx, Index ny, double k2) {
    if (nx < 1 || ny < 1) throw InvalidArgumentError("forcing block must be at least 1x1");
    std::vector<double> ones(static_cast<std::size_t>(nx), 1.0);
    Fun<double> ones_x(Space::chebyshev(), std::move(ones));
    auto forcing_cheb = [ones_x, ny](Index m) {
        return m <= ny ? ones_x : Fun<double>();
    };
    return dirichlet_square_problem(k2, forcing_cheb);
}

double helmholtz_ones_forcing_value(Index nx, Index ny, double x, double y) {
    const std::vector<double> tx = basis_values(Space::chebyshev(), x, nx);
    const std::vector<double> ty = basis_values(Space::chebyshev(), y, ny);
    double sx = 0.0, sy = 0.0;
    for (double v : tx) sx += v;
    for (double v : ty) sy += v;
    return sx * sy;
}

HelmholtzRun solve_helmholtz(Index nx, Index ny, double k2, double tol, Index fixed_n,
                             double tail_tol, Index n_cap) {
    TensorProblem p = helmholtz_ones_problem(nx, ny, k2);
    HelmholtzRun run;
    run.nx_forcing = nx;
    run.ny_forcing = ny;
    if (fixed_n > 0) {
        run.solution = solve_pde(p, fixed_n, tol);
        run.n_disc = fixed_n;
        return run;
    }
    Index n = std::max<Index>(ny + 2, 16);
    for (;;) {
        run.solution = solve_pde(p, n, tol);
        run.n_disc = n;
        const auto& cols = run.solution.columns;
        double maxcol = 0.0, tail = 0.0;
        for (std::size_t j = 0; j < cols.size(); ++j) {
            const double m = cols[j].max_abs_coefficient();
            maxcol = std::max(maxcol, m);
            if (j + 4 >= cols.size()) tail = std::max(tail, m);
        }
        if (maxcol == 0.0 || tail <= tail_tol * maxcol) return run;
        if (n >= n_cap) {
            throw NoConvergenceError(
                "semidiscretization tail did not settle below tolerance by n = " +
                    std::to_string(n_cap),
                n_cap);
        }
        n = std::min<Index>(n_cap, (3 * n) / 2);
    }
}

double interior_residual(const PdeSolution& sol, double c,
                         const std::function<double(double, double)>& f, int pts) {
    const Space cheb = Space::chebyshev();
    BandedOperator<double> D2 = ultraspherical_derivative(2);
    const Index n = static_cast<Index>(sol.columns.size());
    std::vector<Fun<double>> d2cols(n);
    for (Index j = 0; j < n; ++j) d2cols[j] = D2 * sol.columns[j];

    double worst = 0.0;
    for (int ix = 0; ix < pts; ++ix) {
        const double x = -0.95 + 1.9 * ix / (pts - 1);
        std::vector<double> uxx_vals(n), u_vals(n);
        for (Index j = 0; j < n; ++j) {
            uxx_vals[j] = evaluate(d2cols[j], x);
            u_vals[j] = evaluate(sol.columns[j], x);
        }
        const std::vector<double> uyy_coeffs = D2.apply(u_vals);
        for (int iy = 0; iy < pts; ++iy) {
            const double y = -0.95 + 1.9 * iy / (pts - 1);
            const double uxx = evaluate_series<double>(cheb, uxx_vals, y);
            const double uyy =
                evaluate_series<double>(Space::ultraspherical(2), uyy_coeffs, y);
            const double u = evaluate_series<double>(cheb, u_vals, y);
            worst = std::max(worst, std::abs(uxx + uyy + c * u - f(x, y)));
        }
    }
    return worst;
}

double boundary_residual(const PdeSolution& sol,
                         const std::function<double(double, double)>& g, int pts_per_edge) {
    double worst = 0.0;
    for (int i = 0; i < pts_per_edge; ++i) {
        const double t = -1.0 + 2.0 * i / (pts_per_edge - 1);
        for (double e : {1.0, -1.0}) {
            worst = std::max(worst, std::abs(sol(e, t) - (g ? g(e, t) : 0.0)));
            worst = std::max(worst, std::abs(sol(t, e) - (g ? g(t, e) : 0.0)));
        }
    }
    return worst;
}

}  // namespace specband

// Command-line driver: canned ODE/PDE solves and benchmark CSV output.

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "specband/problems.hpp"

namespace sb = specband;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw sb::InvalidArgumentError("cannot open output file: " + path);
    out.precision(17);
    return out;
}

/// Residuals by direct lazy application of the stacked system to the solution.
double ode_residual_norm(const sb::AlmostBandedSystem<double>& sys, const sb::Fun<double>& u) {
    double worst = 0.0;
    for (std::size_t i = 0; i < sys.functionals.size(); ++i) {
        worst = std::max(worst, std::abs(sys.functionals[i](u) - sys.bc_values[i]));
    }
    sb::Fun<double> residual = sys.op * u - sys.rhs;
    worst = std::max(worst, residual.max_abs_coefficient());
    return worst;
}

int run_solve_ode(const std::string& problem, double tol, const std::string& out_path,
                  const std::string& format, long seed) {
    if (problem != "exp" && problem != "const" && problem != "oscillatory") {
        std::cerr << "unknown --problem: " << problem << "\n";
        return 4;
    }
    sb::OdeProblem p = problem == "exp"   ? sb::exp_ode_problem()
                       : problem == "const" ? sb::constant_ode_problem(3.0)
                                            : sb::oscillatory_ode_problem(10.0);

    const auto t0 = Clock::now();
    sb::AdaptiveQRResult<double> r = sb::adaptive_qr_solve(p.system, {tol, 100000});
    const double wall = seconds_since(t0);
    const double residual = ode_residual_norm(p.system, r.solution);

    constexpr int kSamples = 20;
    std::vector<double> xs(kSamples), errs(kSamples);
    for (int i = 0; i < kSamples; ++i) {
        xs[i] = -1.0 + 2.0 * i / (kSamples - 1);
        if (p.system.op.domainspace().kind() == sb::SpaceKind::Taylor) xs[i] = 0.5 * xs[i];
        errs[i] = p.exact ? std::abs(evaluate(r.solution, xs[i]) - p.exact(xs[i])) : 0.0;
    }

    std::ofstream out = open_out(out_path);
    if (format == "json") {
        json j{{"problem", p.name},       {"n_opt", r.n_opt}, {"residual_norm", residual},
               {"wall_seconds", wall},    {"tol", tol},       {"seed", seed},
               {"coefficients", r.solution.coefficients()}};
        json verify = json::array();
        for (int i = 0; i < kSamples; ++i) verify.push_back({{"x", xs[i]}, {"abs_error", errs[i]}});
        j["verification"] = verify;
        out << j.dump(2) << "\n";
    } else {
        out << "# problem=" << p.name << "\n# n_opt=" << r.n_opt
            << "\n# residual_norm=" << residual << "\n# wall_seconds=" << wall
            << "\n# tol=" << tol << "\n# seed=" << seed << "\n";
        out << "j,coefficient,verify_x,verify_abs_error\n";
        const auto& c = r.solution.coefficients();
        const std::size_t rows = std::max<std::size_t>(c.size(), kSamples);
        for (std::size_t i = 0; i < rows; ++i) {
            out << (i + 1) << ",";
            if (i < c.size()) out << c[i];
            out << ",";
            if (i < kSamples) out << xs[i] << "," << errs[i];
            else out << ",";
            out << "\n";
        }
    }
    std::cout << p.name << ": n_opt=" << r.n_opt << " residual=" << residual << " wall=" << wall
              << "s\n";
    return 0;
}

int run_solve_helmholtz(sb::Index nx, sb::Index ny, sb::Index ny_disc, double tol,
                        const std::string& out_path, const std::string& format, long seed) {
    const double k2 = 100.0;
    const auto t0 = Clock::now();
    sb::HelmholtzRun run = sb::solve_helmholtz(nx, ny, k2, tol, ny_disc);
    const double wall = seconds_since(t0);

    auto forcing = [nx, ny](double x, double y) {
        return sb::helmholtz_ones_forcing_value(nx, ny, x, y);
    };
    const double bres = sb::boundary_residual(run.solution, nullptr, 20);
    const double ires = sb::interior_residual(run.solution, k2, forcing, 10);

    std::ofstream out = open_out(out_path);
    if (format == "json") {
        json cols = json::array();
        for (const auto& c : run.solution.columns) cols.push_back(c.coefficients());
        json j{{"problem", "helmholtz"},
               {"nx", nx},
               {"ny", ny},
               {"n_disc", run.n_disc},
               {"k2", k2},
               {"tol", tol},
               {"seed", seed},
               {"t_qz_seconds", run.solution.stats.qz_seconds},
               {"t_solve_seconds", run.solution.stats.column_seconds},
               {"nopt_max", run.solution.stats.nopt_max},
               {"boundary_residual", bres},
               {"interior_residual", ires},
               {"wall_seconds", wall},
               {"columns", cols}};
        out << j.dump(2) << "\n";
    } else {
        out << "# problem=helmholtz\n# nx=" << nx << "\n# ny=" << ny
            << "\n# n_disc=" << run.n_disc << "\n# k2=" << k2 << "\n# tol=" << tol
            << "\n# seed=" << seed << "\n# t_qz_seconds=" << run.solution.stats.qz_seconds
            << "\n# t_solve_seconds=" << run.solution.stats.column_seconds
            << "\n# nopt_max=" << run.solution.stats.nopt_max
            << "\n# boundary_residual=" << bres << "\n# interior_residual=" << ires
            << "\n# wall_seconds=" << wall << "\n";
        out << "i,j,value\n";
        for (std::size_t j = 0; j < run.solution.columns.size(); ++j) {
            const auto& c = run.solution.columns[j].coefficients();
            for (std::size_t i = 0; i < c.size(); ++i) {
                if (c[i] != 0.0) out << (i + 1) << "," << (j + 1) << "," << c[i] << "\n";
            }
        }
    }
    std::cout << "helmholtz: n_disc=" << run.n_disc
              << " boundary_residual=" << bres << " interior_residual=" << ires
              << " t_qz=" << run.solution.stats.qz_seconds
              << "s t_columns=" << run.solution.stats.column_seconds << "s\n";
    return 0;
}

struct BenchRow {
    std::string problem;
    sb::Index ny, nx;
    double t_qz, t_solve;
    sb::Index nopt_max;
};

void write_bench(const std::vector<BenchRow>& rows, const std::string& out_path,
                 const std::string& format) {
    std::ofstream out = open_out(out_path);
    if (format == "json") {
        json arr = json::array();
        for (const auto& r : rows) {
            arr.push_back({{"problem", r.problem},
                           {"ny", r.ny},
                           {"nx", r.nx},
                           {"t_qz_seconds", r.t_qz},
                           {"t_solve_seconds", r.t_solve},
                           {"nopt_max", r.nopt_max}});
        }
        out << arr.dump(2) << "\n";
    } else {
        out << "problem,ny,nx,t_qz_seconds,t_solve_seconds,nopt_max\n";
        for (const auto& r : rows) {
            out << r.problem << "," << r.ny << "," << r.nx << "," << r.t_qz << "," << r.t_solve
                << "," << r.nopt_max << "\n";
        }
    }
}

double median3(double a, double b, double c) {
    return std::max(std::min(a, b), std::min(std::max(a, b), c));
}

int run_bench_ode(std::vector<sb::Index> sizes, double tol, const std::string& out_path,
                  const std::string& format) {
    if (sizes.empty()) sizes = {10, 20, 40};
    std::vector<BenchRow> rows;
    for (sb::Index k : sizes) {
        sb::OdeProblem p = sb::oscillatory_ode_problem(static_cast<double>(k));
        sb::adaptive_qr_solve(p.system, {tol, 100000});  // warmup
        double t[3];
        sb::Index nopt = 0;
        for (int rep = 0; rep < 3; ++rep) {
            const auto t0 = Clock::now();
            sb::AdaptiveQRResult<double> r = sb::adaptive_qr_solve(p.system, {tol, 100000});
            t[rep] = seconds_since(t0);
            nopt = r.n_opt;
        }
        rows.push_back({"ode-oscillatory", 0, k, 0.0, median3(t[0], t[1], t[2]), nopt});
        std::cout << "ode k=" << k << ": t=" << rows.back().t_solve << "s n_opt=" << nopt << "\n";
    }
    write_bench(rows, out_path, format);
    return 0;
}

int run_bench_pde(sb::Index ny, std::vector<sb::Index> sizes, double tol,
                  const std::string& out_path, const std::string& format) {
    if (sizes.empty()) sizes = {250, 500, 1000};
    std::vector<BenchRow> rows;
    for (sb::Index nx : sizes) {
        sb::solve_helmholtz(nx, ny, 100.0, tol, ny);  // warmup, fixed discretization
        double tq[3], tc[3];
        sb::Index nopt = 0;
        for (int rep = 0; rep < 3; ++rep) {
            sb::HelmholtzRun run = sb::solve_helmholtz(nx, ny, 100.0, tol, ny);
            tq[rep] = run.solution.stats.qz_seconds;
            tc[rep] = run.solution.stats.column_seconds;
            nopt = run.solution.stats.nopt_max;
        }
        rows.push_back({"helmholtz", ny, nx, median3(tq[0], tq[1], tq[2]),
                        median3(tc[0], tc[1], tc[2]), nopt});
        std::cout << "pde nx=" << nx << ": t_solve=" << rows.back().t_solve
                  << "s t_qz=" << rows.back().t_qz << "s n_opt=" << nopt << "\n";
    }
    write_bench(rows, out_path, format);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coefficient-space spectral operator solver"};
    app.require_subcommand(1);

    double tol = 1e-14;
    long seed = 0;
    std::string out_path = "out.csv";
    std::string format = "csv";
    std::string problem = "exp";
    sb::Index nx = 20, ny = 20, ny_disc = 0;
    std::vector<sb::Index> sizes;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--tol", tol, "solver tolerance")->check(CLI::PositiveNumber);
        cmd->add_option("--out", out_path, "output file path");
        cmd->add_option("--format", format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--seed", seed, "seed recorded with the output");
    };

    CLI::App* ode = app.add_subcommand("solve-ode", "solve a canned boundary-value ODE");
    ode->add_option("--problem", problem, "exp, const, or oscillatory")
        ->check(CLI::IsMember({"exp", "const", "oscillatory"}));
    add_common(ode);

    CLI::App* hh = app.add_subcommand("solve-helmholtz", "solve the Helmholtz benchmark problem");
    hh->add_option("--nx", nx, "forcing block size in x")->check(CLI::PositiveNumber);
    hh->add_option("--ny", ny, "forcing block size in y")->check(CLI::PositiveNumber);
    hh->add_option("--ny-disc", ny_disc, "fixed semidiscretization size (0 = adaptive)");
    add_common(hh);

    CLI::App* bode = app.add_subcommand("bench-ode", "adaptive QR scaling benchmark");
    bode->add_option("--sizes", sizes, "oscillation parameters k")->delimiter(',');
    add_common(bode);

    CLI::App* bpde = app.add_subcommand("bench-pde", "Helmholtz column-solve scaling benchmark");
    bpde->add_option("--ny", ny, "y discretization")->check(CLI::PositiveNumber);
    bpde->add_option("--sizes", sizes, "forcing sizes nx")->delimiter(',');
    add_common(bpde);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 4;
    }

    if ((app.got_subcommand(hh) || app.got_subcommand(bpde)) && ny < 3) {
        std::cerr << "--ny must be at least 3 for PDE commands\n";
        return 4;
    }
    try {
        if (app.got_subcommand(ode)) return run_solve_ode(problem, tol, out_path, format, seed);
        if (app.got_subcommand(hh))
            return run_solve_helmholtz(nx, ny, ny_disc, tol, out_path, format, seed);
        if (app.got_subcommand(bode)) return run_bench_ode(sizes, tol, out_path, format);
        if (app.got_subcommand(bpde)) return run_bench_pde(ny, sizes, tol, out_path, format);
    } catch (const sb::NoConvergenceError& e) {
        std::cerr << "convergence failure: " << e.what() << "\n";
        return 2;
    } catch (const sb::SingularError& e) {
        std::cerr << "singular system: " << e.what() << "\n";
        return 3;
    } catch (const sb::SingularBoundaryBlockError& e) {
        std::cerr << "singular boundary block: " << e.what() << "\n";
        return 3;
    } catch (const sb::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 4;
}

// Benchmark and verification driver for the exponential Runge-Kutta library.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "erk/bench.hpp"
#include "erk/io.hpp"
#include "erk/stability.hpp"
#include "erk/verification.hpp"

namespace {

erk::AxisSpec parse_axis(const std::string& text) {
    erk::AxisSpec axis;
    if (std::sscanf(text.c_str(), "%lf:%lf:%d", &axis.min, &axis.max, &axis.count) != 3) {
        throw CLI::ValidationError("axis spec must be min:max:count, got '" + text + "'");
    }
    return axis;
}

erk::StageSolver parse_solver(const std::string& name) {
    if (name == "auto") return erk::StageSolver::Auto;
    if (name == "pure") return erk::StageSolver::PureFixedPoint;
    if (name == "linimp") return erk::StageSolver::LinearlyImplicit;
    throw CLI::ValidationError("stage solver must be auto, pure, or linimp");
}

std::vector<std::string> expand_methods(const std::vector<std::string>& names) {
    if (names.size() == 1 && names.front() == "all") return erk::scheme_catalogue();
    return names;
}

std::string join_path(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

void ensure_parent_dir(const std::string& file_path) {
    const auto parent = std::filesystem::path(file_path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
}

struct CommonArgs {
    std::string problem = "henon-heiles";
    erk::ProblemParams params;
    std::string stage_solver = "auto";
    double fp_tol = 1e-14;
    int max_iter = 100;

    void attach(CLI::App* cmd) {
        cmd->add_option("--problem", problem, "henon-heiles | duffing | sine-gordon");
        cmd->add_option("--omega", params.omega, "Duffing frequency");
        cmd->add_option("--k", params.k, "Duffing nonlinearity parameter");
        cmd->add_option("--n-grid", params.n_grid, "sine-Gordon grid points");
        cmd->add_option("--stage-solver", stage_solver, "auto | pure | linimp");
        cmd->add_option("--fp-tol", fp_tol, "fixed-point stopping tolerance");
        cmd->add_option("--max-iter", max_iter, "stage iteration cap");
    }

    erk::SolveOptions solve_options() const {
        erk::SolveOptions opts;
        opts.fp_tol = fp_tol;
        opts.max_iter = max_iter;
        opts.stage_solver = parse_solver(stage_solver);
        return opts;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Implicit exponential Runge-Kutta benchmark harness"};
    // free the short -h so subcommands can expose the spec'd --h stepsize flag
    app.set_help_flag("--help", "print help and exit");
    app.set_config("--config", "", "INI config file; command-line flags take precedence");
    app.require_subcommand(1);

    unsigned seed = 12345;
    app.add_option("--seed", seed, "seed for the randomized invariant checks")
        ->configurable(true);

    // ---- solve ----
    auto* solve_cmd = app.add_subcommand("solve", "integrate one trajectory and write it as CSV");
    solve_cmd->set_help_flag("--help");
    CommonArgs solve_args;
    std::string solve_method, solve_out = "trajectory.csv";
    double solve_t_end = 10.0, solve_h = 0.25;
    bool solve_energy = false;
    solve_cmd->add_option("--method", solve_method)->required();
    solve_args.attach(solve_cmd);
    solve_cmd->add_option("--t-end", solve_t_end);
    solve_cmd->add_option("--h", solve_h);
    solve_cmd->add_flag("--energy", solve_energy, "record the Hamiltonian along the run");
    solve_cmd->add_option("--out", solve_out);

    // ---- converge ----
    auto* conv_cmd = app.add_subcommand("converge", "global-error convergence study");
    conv_cmd->set_help_flag("--help");
    CommonArgs conv_args;
    std::vector<std::string> conv_methods;
    std::vector<double> conv_h_list;
    std::string conv_out = ".";
    double conv_t_end = 10.0;
    int conv_repeats = 5;
    conv_cmd->add_option("--methods", conv_methods, "comma-separated list, or 'all'")
        ->required()
        ->delimiter(',');
    conv_args.attach(conv_cmd);
    conv_cmd->add_option("--t-end", conv_t_end);
    conv_cmd->add_option("--h-list", conv_h_list, "comma-separated stepsizes")
        ->required()
        ->delimiter(',');
    conv_cmd->add_option("--repeats", conv_repeats, "timing repeats per cell");
    conv_cmd->add_option("--out", conv_out, "output directory");

    // ---- energy ----
    auto* energy_cmd = app.add_subcommand("energy", "long-time relative energy drift study");
    energy_cmd->set_help_flag("--help");
    CommonArgs energy_args;
    std::string energy_method, energy_out = ".";
    double energy_t_end = 100.0, energy_h = 1.0 / 30.0;
    energy_cmd->add_option("--method", energy_method)->required();
    energy_args.attach(energy_cmd);
    energy_cmd->add_option("--t-end", energy_t_end);
    energy_cmd->add_option("--h", energy_h);
    energy_cmd->add_option("--out", energy_out, "output directory");

    // ---- stability ----
    auto* stab_cmd = app.add_subcommand("stability", "|R(i k1, i k2)| grid scan");
    stab_cmd->set_help_flag("--help");
    std::string stab_method, stab_k1 = "-10:10:400", stab_k2 = "-10:10:400",
                stab_out = "stability.csv";
    stab_cmd->add_option("--method", stab_method)->required();
    stab_cmd->add_option("--k1", stab_k1, "min:max:count");
    stab_cmd->add_option("--k2", stab_k2, "min:max:count");
    stab_cmd->add_option("--out", stab_out);

    // ---- check ----
    auto* check_cmd = app.add_subcommand("check", "order | symplectic | linear verification");
    check_cmd->set_help_flag("--help");
    CommonArgs check_args;
    std::string check_kind, check_method, check_out = "check.json";
    double check_h = 0.1, check_fd_eps = 1e-6;
    int check_steps = 100;
    std::optional<double> check_tol;
    check_cmd->add_option("kind", check_kind, "order | symplectic | linear")->required();
    check_cmd->add_option("--method", check_method)->required();
    check_args.attach(check_cmd);
    check_cmd->add_option("--h", check_h);
    check_cmd->add_option("--fd-eps", check_fd_eps, "finite-difference step (symplectic)");
    check_cmd->add_option("--steps", check_steps, "step count (linear)");
    check_cmd->add_option("--tol", check_tol, "pass threshold override");
    check_cmd->add_option("--out", check_out);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solve_cmd) {
            const auto problem = erk::make_problem(solve_args.problem, solve_args.params);
            auto opts = solve_args.solve_options();
            opts.record_energy = solve_energy;
            const auto traj = erk::integrate(erk::make_scheme(solve_method), problem,
                                             solve_t_end, solve_h, opts);
            ensure_parent_dir(solve_out);
            erk::emit_trajectory(traj, solve_out);
            std::cout << "wrote " << solve_out << " (" << traj.states.size() << " states)\n";
            return 0;
        }

        if (*conv_cmd) {
            erk::RunConfig config;
            config.problem = conv_args.problem;
            config.params = conv_args.params;
            config.schemes = expand_methods(conv_methods);
            config.t_end = conv_t_end;
            config.stepsizes = conv_h_list;
            config.solve = conv_args.solve_options();
            config.repeats = conv_repeats;

            std::filesystem::create_directories(conv_out);
            const std::string hash = erk::fnv1a_hex(erk::canonical_config_string(config));
            const auto reports = erk::run_convergence(config);
            bool all_ok = true;
            for (const auto& report : reports) {
                const std::string stem =
                    join_path(conv_out, report.problem + "_" + report.scheme);
                erk::emit_convergence(report, stem, hash);
                std::cout << report.scheme << ": slope = "
                          << (report.slope_valid ? std::to_string(report.slope) : "n/a") << "\n";
                for (const auto& row : report.rows) {
                    all_ok = all_ok && row.ok;
                    if (!row.ok) {
                        std::cout << "  h=" << row.h << " FAILED: " << row.failure << "\n";
                    }
                }
            }
            return all_ok ? 0 : 1;
        }

        if (*energy_cmd) {
            erk::RunConfig config;
            config.problem = energy_args.problem;
            config.params = energy_args.params;
            config.schemes = {energy_method};
            config.t_end = energy_t_end;
            config.stepsizes = {energy_h};
            config.solve = energy_args.solve_options();

            std::filesystem::create_directories(energy_out);
            const std::string hash = erk::fnv1a_hex(erk::canonical_config_string(config));
            const auto report = erk::run_energy(config);
            const std::string stem =
                join_path(energy_out, report.problem + "_" + report.scheme + "_energy");
            erk::emit_energy(report, stem, hash);
            std::cout << report.scheme << ": max |RGEH| = " << report.max_abs_rgeh
                      << ", drift rate = " << report.drift_rate << " per unit time\n";
            return std::isfinite(report.max_abs_rgeh) ? 0 : 1;
        }

        if (*stab_cmd) {
            erk::GridSpec grid{parse_axis(stab_k1), parse_axis(stab_k2)};
            const auto scan = erk::stability_scan(erk::make_scheme(stab_method), grid);
            ensure_parent_dir(stab_out);
            erk::emit_stability(scan, stab_out);
            std::size_t stable_cells = 0;
            for (double mag : scan.magnitudes) stable_cells += (mag <= 1.0);
            std::cout << "wrote " << stab_out << "; " << stable_cells << " / "
                      << scan.magnitudes.size() << " cells with |R| <= 1\n";
            return 0;
        }

        if (*check_cmd) {
            const auto scheme = erk::make_scheme(check_method);
            bool pass = false;
            std::vector<double> residuals;
            if (check_kind == "order") {
                const auto report =
                    erk::check_order_conditions(scheme.A, scheme.b, scheme.c, scheme.order);
                residuals = report.residuals;
                pass = report.max_residual <= check_tol.value_or(1e-12);
                std::cout << "order-condition max residual = " << report.max_residual << "\n";
            } else if (check_kind == "symplectic") {
                const auto problem = erk::make_problem(check_args.problem, check_args.params);
                const auto defect =
                    erk::check_symplecticity(scheme, problem, problem.ivp.y0, check_h,
                                             check_fd_eps, check_args.solve_options());
                residuals = {defect.defect_norm};
                pass = defect.defect_norm <= check_tol.value_or(1e-6);
                std::cout << "symplectic defect = " << defect.defect_norm << "\n";
            } else if (check_kind == "linear") {
                const auto problem = erk::make_problem(check_args.problem, check_args.params);
                std::mt19937 rng(seed);
                std::normal_distribution<double> gauss;
                erk::Vector y0(problem.ivp.dim);
                for (int i = 0; i < problem.ivp.dim; ++i) y0(i) = gauss(rng);
                y0.normalize();
                const double err =
                    erk::check_linear_exactness(scheme, problem.ivp.M, y0, check_h, check_steps,
                                                check_args.solve_options());
                residuals = {err};
                pass = err <= check_tol.value_or(1e-11);
                std::cout << "linear exactness error = " << err << "\n";
            } else {
                std::cerr << "unknown check kind '" << check_kind << "'\n";
                return 2;
            }
            ensure_parent_dir(check_out);
            erk::emit_check_report(check_method, check_kind, residuals, pass, check_out);
            std::cout << (pass ? "PASS" : "FAIL") << "\n";
            return pass ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

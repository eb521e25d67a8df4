#include "erk/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <sstream>

namespace erk {

namespace {

double elapsed_seconds(const std::chrono::steady_clock::time_point& begin) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - begin).count();
}

double median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

const char* solver_name(StageSolver s) {
    switch (s) {
        case StageSolver::Auto: return "auto";
        case StageSolver::PureFixedPoint: return "pure";
        case StageSolver::LinearlyImplicit: return "linimp";
    }
    return "?";
}

}  // namespace

std::string canonical_config_string(const RunConfig& config) {
    std::ostringstream os;
    os.precision(17);
    os << "problem=" << config.problem << ";omega=" << config.params.omega
       << ";k=" << config.params.k << ";n_grid=" << config.params.n_grid << ";schemes=";
    for (std::size_t i = 0; i < config.schemes.size(); ++i) {
        if (i) os << ",";
        os << config.schemes[i];
    }
    os << ";t_end=" << config.t_end << ";h_list=";
    for (std::size_t i = 0; i < config.stepsizes.size(); ++i) {
        if (i) os << ",";
        os << config.stepsizes[i];
    }
    os << ";fp_tol=" << config.solve.fp_tol << ";max_iter=" << config.solve.max_iter
       << ";stage_solver=" << solver_name(config.solve.stage_solver)
       << ";repeats=" << config.repeats;
    return os.str();
}

std::optional<double> least_squares_slope(const std::vector<double>& x,
                                          const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) return std::nullopt;
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) return std::nullopt;
    return sxy / sxx;
}

ReferenceSolution reference_solution(const BenchmarkProblem& problem, double t_end,
                                     double output_h, const SolveOptions& opts) {
    if (problem.reference.has_value() &&
        problem.reference->kind == ReferenceSolution::Kind::ExactCallback) {
        return *problem.reference;
    }
    if (t_end == problem.ivp.t0) {
        ReferenceSolution trivial;
        trivial.kind = ReferenceSolution::Kind::FineGrid;
        trivial.grid_times = {problem.ivp.t0};
        const Vector y0 = problem.ivp.y0;
        const double t0 = problem.ivp.t0;
        trivial.eval = [y0, t0](double t) {
            if (t != t0) throw InvalidParameterError("reference eval: time off the stored grid");
            return y0;
        };
        return trivial;
    }
    const int n_out = step_count(problem.ivp.t0, t_end, output_h);

    const ERKScheme ref_scheme = make_scheme("imerk24");
    const double h_ref = output_h / 32.0;

    SolveOptions ref_opts = opts;
    ref_opts.record_energy = false;
    ref_opts.stage_solver = StageSolver::Auto;

    const Trajectory fine = integrate(ref_scheme, problem, t_end, h_ref, ref_opts);
    const Trajectory check = integrate(ref_scheme, problem, t_end, h_ref / 2.0, ref_opts);
    const double richardson = (fine.states.back() - check.states.back()).norm();
    if (!(richardson <= 1e-10)) {
        throw UnreliableReferenceError(
            "reference_solution: Richardson check failed for " + problem.name + " (|y(h_ref) - y(h_ref/2)| = " +
            std::to_string(richardson) + " at t_end)");
    }

    ReferenceSolution ref;
    ref.kind = ReferenceSolution::Kind::FineGrid;
    // States at multiples of output_h; h_ref = output_h/32 lands exactly.
    auto states = std::make_shared<std::vector<Vector>>();
    states->reserve(n_out + 1);
    for (int k = 0; k <= n_out; ++k) {
        states->push_back(fine.states[static_cast<std::size_t>(k) * 32]);
        ref.grid_times.push_back(problem.ivp.t0 + k * output_h);
    }
    const double t0 = problem.ivp.t0;
    ref.eval = [states, t0, output_h, n_out](double t) {
        const double pos = (t - t0) / output_h;
        const auto k = static_cast<long long>(std::llround(pos));
        if (k < 0 || k > n_out || std::abs(pos - static_cast<double>(k)) > 1e-9) {
            throw InvalidParameterError("reference eval: time off the stored grid");
        }
        return (*states)[static_cast<std::size_t>(k)];
    };
    return ref;
}

std::vector<ConvergenceReport> run_convergence(const RunConfig& config) {
    return run_convergence(config, make_problem(config.problem, config.params));
}

std::vector<ConvergenceReport> run_convergence(const RunConfig& config,
                                               const BenchmarkProblem& problem) {
    if (config.schemes.empty() || config.stepsizes.empty()) {
        throw InvalidParameterError("run_convergence: need at least one scheme and stepsize");
    }

    std::vector<double> h_list = config.stepsizes;
    std::sort(h_list.begin(), h_list.end(), std::greater<>());
    for (double h : h_list) step_count(problem.ivp.t0, config.t_end, h);

    const ReferenceSolution ref =
        reference_solution(problem, config.t_end, h_list.back(), config.solve);
    const Vector y_exact = ref.eval(config.t_end);

    std::vector<ConvergenceReport> reports;
    for (const auto& name : config.schemes) {
        const ERKScheme scheme = make_scheme(name);
        ConvergenceReport report;
        report.scheme = name;
        report.problem = problem.name;

        for (double h : h_list) {
            ConvergenceRow row;
            row.h = h;
            try {
                const Trajectory traj = integrate(scheme, problem, config.t_end, h, config.solve);
                row.global_error = (traj.states.back() - y_exact).norm();

                std::vector<double> seconds;
                const int repeats = std::max(1, config.repeats);
                for (int r = 0; r < repeats; ++r) {
                    const auto begin = std::chrono::steady_clock::now();
                    integrate(scheme, problem, config.t_end, h, config.solve);
                    seconds.push_back(elapsed_seconds(begin));
                }
                row.wall_seconds = median(std::move(seconds));
            } catch (const Error& e) {
                row.ok = false;
                row.failure = e.what();
            }
            report.rows.push_back(std::move(row));
        }

        std::vector<double> log_h, log_ge;
        double max_ge = 0.0;
        for (const auto& row : report.rows) {
            if (!row.ok || !(row.global_error > 0.0) || !std::isfinite(row.global_error)) continue;
            max_ge = std::max(max_ge, row.global_error);
            log_h.push_back(std::log(row.h));
            log_ge.push_back(std::log(row.global_error));
        }
        // A study that never leaves the exact-integration floor has no slope.
        if (max_ge > 1e-11) {
            if (const auto slope = least_squares_slope(log_h, log_ge)) {
                report.slope = *slope;
                report.slope_valid = true;
            }
        }
        reports.push_back(std::move(report));
    }
    return reports;
}

EnergyReport run_energy(const RunConfig& config) {
    if (config.schemes.empty() || config.stepsizes.empty()) {
        throw InvalidParameterError("run_energy: need a scheme and a stepsize");
    }
    const BenchmarkProblem problem = make_problem(config.problem, config.params);
    if (!problem.meta.has_value()) {
        throw InvalidParameterError("run_energy: problem has no Hamiltonian metadata");
    }
    const ERKScheme scheme = make_scheme(config.schemes.front());
    const double h = config.stepsizes.front();

    SolveOptions opts = config.solve;
    opts.record_energy = true;
    const Trajectory traj = integrate(scheme, problem, config.t_end, h, opts);

    EnergyReport report;
    report.scheme = scheme.name;
    report.problem = problem.name;
    report.h = h;
    report.times = traj.times;
    const double h0 = traj.energies.front();
    report.rgeh.reserve(traj.energies.size());
    for (double e : traj.energies) {
        const double rel = (e - h0) / h0;
        report.rgeh.push_back(rel);
        report.max_abs_rgeh = std::max(report.max_abs_rgeh, std::abs(rel));
    }
    report.rgeh.front() = 0.0;  // exact by construction
    report.drift_rate = least_squares_slope(report.times, report.rgeh).value_or(0.0);
    return report;
}

}  // namespace erk

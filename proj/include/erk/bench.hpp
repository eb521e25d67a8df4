#pragma once

#include <optional>
#include <string>
#include <vector>

#include "erk/integrator.hpp"

namespace erk {

struct ConvergenceRow {
    double h = 0.0;
    double global_error = 0.0;
    double wall_seconds = 0.0;
    bool ok = true;
    std::string failure;  // diagnostic when ok == false
};

struct ConvergenceReport {
    std::string scheme;
    std::string problem;
    std::vector<ConvergenceRow> rows;  // sorted by decreasing h
    double slope = 0.0;                // least-squares fit of log ge vs log h
    bool slope_valid = false;          // false when degenerate or < 2 usable rows
};

struct EnergyReport {
    std::string scheme;
    std::string problem;
    double h = 0.0;
    std::vector<double> times;
    std::vector<double> rgeh;      // (H(y_n) - H0)/H0, rgeh[0] == 0
    double max_abs_rgeh = 0.0;
    double drift_rate = 0.0;       // least-squares slope of rgeh vs t
};

struct RunConfig {
    std::string problem = "henon-heiles";
    ProblemParams params;
    std::vector<std::string> schemes;
    double t_end = 10.0;
    std::vector<double> stepsizes;
    SolveOptions solve;
    int repeats = 5;  // timing repeats per (scheme, h) cell
};

/// Canonical key=value serialization of the config (hash input and JSON
/// sidecar payload).
std::string canonical_config_string(const RunConfig& config);

/// Exact reference for Duffing; otherwise a fine-grid imerk24 run at
/// h_ref = output_h/32, validated by Richardson comparison against h_ref/2
/// (1e-10 at t_end, else UnreliableReferenceError).
ReferenceSolution reference_solution(const BenchmarkProblem& problem, double t_end,
                                     double output_h, const SolveOptions& opts = {});

/// One report per scheme; global error is the Euclidean norm at t_end,
/// wall time the median of `repeats` integration-only runs.
std::vector<ConvergenceReport> run_convergence(const RunConfig& config);

/// Same study against an explicitly supplied problem (config.problem is
/// ignored); used for synthetic problems outside the named catalogue.
std::vector<ConvergenceReport> run_convergence(const RunConfig& config,
                                               const BenchmarkProblem& problem);

/// Energy drift study for config.schemes.front() at config.stepsizes.front().
EnergyReport run_energy(const RunConfig& config);

/// Least-squares slope of y against x; returns nullopt for fewer than two
/// points or zero x-variance.
std::optional<double> least_squares_slope(const std::vector<double>& x,
                                          const std::vector<double>& y);

}  // namespace erk

#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "erk/problem.hpp"
#include "erk/scheme.hpp"

namespace erk {

enum class StageSolver {
    Auto,             // linearly-implicit for MVERK, pure fixed point otherwise
    PureFixedPoint,   // successive substitution on the full stage map
    LinearlyImplicit  // -M stage terms moved to the left side and pre-factored
};

struct SolveOptions {
    double fp_tol = 1e-14;
    int max_iter = 100;
    StageSolver stage_solver = StageSolver::Auto;
    bool record_energy = false;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<Vector> states;
    std::vector<int> iterations;  // stage iterations per step
    std::vector<double> energies; // H per time; empty unless recorded
};

struct StepResult {
    Vector y;
    int iterations = 0;
};

/// Correction term w_s(z) (SVERK) or \bar w_s(z) (MVERK) evaluated at the
/// step's base point: zero for order 1, -(h^2/2) M f(y0) for order 2, and
/// the family-specific order-4 expressions built from g(y0) = -M y0 + f(y0),
/// the Jacobian action and the Hessian bilinear form. order 3 is not in the
/// catalogue -> UnsupportedOrderError.
Vector correction_term(Family family, int order, const SemiLinearIVP& problem,
                       const Vector& y0, double h);

struct StageSolveResult {
    Vector stages;
    int iterations = 0;
};

/// Fixed-point iteration x <- map(x), stopping when the norm of the
/// difference of two successive iterates drops below fp_tol, or when the
/// residual has stalled (without rebounding) inside the map's own
/// double-precision evaluation noise band, whichever comes first.
/// Exceeding max_iter (or a non-finite iterate) -> NonConvergenceError
/// carrying the final residual. The linearly-implicit stage solver is
/// realized by passing the pre-factored map.
StageSolveResult solve_stages(const std::function<Vector(const Vector&)>& stage_map,
                              const Vector& initial_guess, const SolveOptions& opts);

/// One-step integrator with all (h, M)-dependent operators -- e^{-hM},
/// e^{-c_i hM}, the phi-function weights and the linearly-implicit stage
/// factorization -- computed once at construction and reused for every step
/// of a constant-stepsize run.
class Stepper {
public:
    Stepper(const ERKScheme& scheme, const SemiLinearIVP& problem, double h,
            const SolveOptions& opts);
    ~Stepper();
    Stepper(Stepper&&) noexcept;
    Stepper& operator=(Stepper&&) noexcept;

    StepResult step(const Vector& y) const;

    const ERKScheme& scheme() const;
    double stepsize() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Single SVERK step: stages Y_i = e^{-c_i hM} y + h sum_j a_ij f(Y_j),
/// update y1 = e^{-hM} y + h sum_i b_i f(Y_i) + w_s(z).
StepResult sverk_step(const ERKScheme& scheme, const SemiLinearIVP& problem, const Vector& y,
                      double h, const SolveOptions& opts);

/// Single MVERK step: stages Y_i = y + h sum_j a_ij (-M Y_j + f(Y_j)),
/// update y1 = e^{-hM} y + h sum_i b_i f(Y_i) + \bar w_s(z).
StepResult mverk_step(const ERKScheme& scheme, const SemiLinearIVP& problem, const Vector& y,
                      double h, const SolveOptions& opts);

/// Single step of a phi-weighted (collocation / exponential Euler) scheme.
StepResult phi_erk_step(const ERKScheme& scheme, const SemiLinearIVP& problem, const Vector& y,
                        double h, const SolveOptions& opts);

/// Number of steps for the uniform grid; throws InvalidGridError unless
/// (t_end - t0)/h is a positive integer.
int step_count(double t0, double t_end, double h);

/// Uniform-grid integration over [t0, t_end]; (t_end - t0)/h must be a
/// positive integer. Energies are recorded when opts.record_energy is set
/// and the problem carries Hamiltonian metadata. Step failures propagate as
/// StepFailureError with the failing step index.
Trajectory integrate(const ERKScheme& scheme, const BenchmarkProblem& problem, double t_end,
                     double h, const SolveOptions& opts = {});

}  // namespace erk

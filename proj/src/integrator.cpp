#include "erk/integrator.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace erk {

Vector correction_term(Family family, int order, const SemiLinearIVP& problem,
                       const Vector& y0, double h) {
    if (family == Family::PHI_ERK) {
        throw InvalidParameterError("correction_term: defined for SVERK/MVERK families only");
    }
    if (order != 1 && order != 2 && order != 4) {
        throw UnsupportedOrderError("correction_term: no order-" + std::to_string(order) +
                                    " scheme in the catalogue");
    }
    if (!y0.allFinite()) {
        throw InvalidInputError("correction_term: non-finite state");
    }
    const int n = problem.dim;
    if (order == 1) return Vector::Zero(n);

    const Matrix& M = problem.M;
    const Vector f0 = problem.f(y0);
    const Vector Mf = M * f0;

    Vector w = -(h * h / 2.0) * Mf;
    if (order == 2) return w;

    const auto jac = [&](const Vector& x) { return problem.jac_action(y0, x); };
    const Vector g0 = -(M * y0) + f0;
    const Vector Jg = jac(g0);
    const Vector M2f = M * Mf;

    const double h3 = h * h * h / 6.0;
    const double h4 = h * h * h * h / 24.0;

    if (family == Family::SVERK) {
        // (M - f')Mf - M f'g
        w += h3 * (M2f - jac(Mf) - M * Jg);
        Vector t = -(M * M2f) + jac(M2f);                    // (-M + f') M^2 f
        t += M * (M * Jg);                                   // M^2 f' g
        t -= M * problem.hess_bilinear(y0, g0, g0);          // -M f''(g, g)
        t -= M * jac(-(M * g0) + Jg);                        // -M f'(-M + f') g
        t -= jac(M * Jg);                                    // -f' M f' g
        t -= jac(jac(Mf));                                   // -f' f' M f
        t += 3.0 * problem.hess_bilinear(y0, -Mf, g0);       // 3 f''(-Mf, g)
        w += h4 * t;
    } else {
        // M^2 f - M f' g
        w += h3 * (M2f - M * Jg);
        Vector t = -(M * M2f);                               // -M^3 f
        t += M * (M * Jg);                                   // M^2 f' g
        t -= M * problem.hess_bilinear(y0, g0, g0);          // -M f''(g, g)
        t -= M * jac(-(M * g0) + Jg);                        // -M f'(-M + f') g
        w += h4 * t;
    }
    return w;
}

StageSolveResult solve_stages(const std::function<Vector(const Vector&)>& stage_map,
                              const Vector& initial_guess, const SolveOptions& opts) {
    if (!(opts.fp_tol > 0.0) || opts.max_iter < 1) {
        throw InvalidParameterError("solve_stages: fp_tol must be > 0 and max_iter >= 1");
    }
    constexpr double eps = std::numeric_limits<double>::epsilon();
    Vector current = initial_guess;
    double residual = std::numeric_limits<double>::infinity();
    double best = std::numeric_limits<double>::infinity();
    int stalled = 0;
    for (int iter = 1; iter <= opts.max_iter; ++iter) {
        Vector next = stage_map(current);
        if (!next.allFinite()) {
            throw NonConvergenceError("solve_stages: iterate diverged to non-finite values",
                                      residual, iter);
        }
        residual = (next - current).norm();
        current = std::move(next);
        if (residual < opts.fp_tol) {
            return {std::move(current), iter};
        }
        // Large states can leave fp_tol below the map's own evaluation
        // noise (~||map|| * ulp per application), where the iterates cycle
        // instead of meeting the tolerance. Accept an iterate that has
        // stalled inside that roundoff band without rebounding; a growing
        // residual is never accepted.
        stalled = residual < 0.9 * best ? 0 : stalled + 1;
        best = std::min(best, residual);
        const double floor_band = 1024.0 * eps * (1.0 + current.norm());
        if (stalled >= 10 && residual <= floor_band && residual <= 4.0 * best) {
            return {std::move(current), iter};
        }
    }
    throw NonConvergenceError("solve_stages: no convergence within " +
                                  std::to_string(opts.max_iter) +
                                  " iterations (residual " + std::to_string(residual) + ")",
                              residual, opts.max_iter);
}

namespace {

StageSolver resolve_solver(const ERKScheme& scheme, const SolveOptions& opts) {
    if (opts.stage_solver != StageSolver::Auto) return opts.stage_solver;
    return scheme.family == Family::MVERK ? StageSolver::LinearlyImplicit
                                          : StageSolver::PureFixedPoint;
}

}  // namespace

struct Stepper::Impl {
    ERKScheme scheme;
    const SemiLinearIVP* problem;
    double h;
    SolveOptions opts;
    StageSolver solver;

    Matrix exp_full;                 // e^{-hM}
    std::vector<Matrix> exp_stage;   // e^{-c_i hM} (SVERK, PHI_ERK)
    std::vector<std::vector<Matrix>> phi_a;  // phi-valued stage weights
    std::vector<Matrix> phi_b;               // phi-valued update weights
    Eigen::PartialPivLU<Matrix> stage_lu;    // MVERK linearly-implicit factor
    bool has_lu = false;

    Impl(const ERKScheme& s, const SemiLinearIVP& p, double step_h, const SolveOptions& o)
        : scheme(s), problem(&p), h(step_h), opts(o), solver(resolve_solver(s, o)) {
        const Matrix& M = p.M;
        require_square_finite(M, "Stepper");
        if (M.rows() != p.dim || p.y0.size() != p.dim) {
            throw InvalidInputError("Stepper: problem dimensions are inconsistent");
        }
        exp_full = mat_exp(Matrix(-h * M));

        const int s_count = scheme.stages;
        const int n = p.dim;
        if (scheme.family == Family::SVERK) {
            for (int i = 0; i < s_count; ++i) {
                exp_stage.push_back(mat_exp(Matrix(-scheme.c(i) * h * M)));
            }
        } else if (scheme.family == Family::PHI_ERK) {
            materialize_phi_weights();
        } else {
            if (solver == StageSolver::LinearlyImplicit) {
                // Coupled block system (I + h a_ij M) over all stages.
                Matrix K = Matrix::Identity(s_count * n, s_count * n);
                for (int i = 0; i < s_count; ++i) {
                    for (int j = 0; j < s_count; ++j) {
                        K.block(i * n, j * n, n, n) += h * scheme.A(i, j) * M;
                    }
                }
                stage_lu.compute(K);
                if (stage_lu.rcond() < 1e-15) {
                    throw SingularStageError("mverk_step: stage matrix I + h a_ij M is singular");
                }
                has_lu = true;
            }
        }
    }

    void materialize_phi_weights() {
        const Matrix& M = problem->M;
        const int n = problem->dim;
        const Matrix ident = Matrix::Identity(n, n);
        switch (scheme.phi_variant) {
            case PhiVariant::ExpEulerExplicit: {
                exp_stage = {ident};
                phi_a = {{Matrix::Zero(n, n)}};
                phi_b = {phi_mat(1, Matrix(-h * M))};
                break;
            }
            case PhiVariant::ExpEulerImplicit: {
                const Matrix p1 = phi_mat(1, Matrix(-h * M));
                exp_stage = {exp_full};
                phi_a = {{p1}};
                phi_b = {p1};
                break;
            }
            case PhiVariant::Collocation1: {
                exp_stage = {mat_exp(Matrix(-0.5 * h * M))};
                phi_a = {{Matrix(0.5 * phi_mat(1, Matrix(-0.5 * h * M)))}};
                phi_b = {phi_mat(1, Matrix(-h * M))};
                break;
            }
            case PhiVariant::Collocation2: {
                const double r3 = std::sqrt(3.0);
                const double c1 = scheme.c(0), c2 = scheme.c(1);
                exp_stage = {mat_exp(Matrix(-c1 * h * M)), mat_exp(Matrix(-c2 * h * M))};
                const auto [p11, p21] = phi_pair(Matrix(-c1 * h * M));
                const auto [p12, p22] = phi_pair(Matrix(-c2 * h * M));
                const auto [q1, q2] = phi_pair(Matrix(-h * M));
                phi_a.resize(2);
                phi_a[0] = {Matrix(r3 * c1 * c2 * p11 - r3 * c1 * c1 * p21),
                            Matrix(-r3 * c1 * c1 * p11 + r3 * c1 * c1 * p21)};
                phi_a[1] = {Matrix(r3 * c2 * c2 * p12 - r3 * c2 * c2 * p22),
                            Matrix(-r3 * c1 * c2 * p12 + r3 * c2 * c2 * p22)};
                phi_b = {Matrix(r3 * c2 * q1 - r3 * q2), Matrix(-r3 * c1 * q1 + r3 * q2)};
                break;
            }
            case PhiVariant::None:
                throw Error("phi_erk_step: scheme lacks a phi variant");
        }
    }

    Vector concat_stage_guess(const Vector& y) const {
        const int n = problem->dim;
        const int s = scheme.stages;
        Vector guess(s * n);
        switch (scheme.family) {
            case Family::SVERK:
                for (int i = 0; i < s; ++i) guess.segment(i * n, n) = exp_stage[i] * y;
                break;
            case Family::MVERK:
                for (int i = 0; i < s; ++i) guess.segment(i * n, n) = y;
                break;
            case Family::PHI_ERK: {
                const Vector fy = problem->f(y);
                for (int i = 0; i < s; ++i) {
                    Vector yi = exp_stage[i] * y;
                    for (int j = 0; j < s; ++j) yi += h * (phi_a[i][j] * fy);
                    guess.segment(i * n, n) = yi;
                }
                break;
            }
        }
        return guess;
    }

    StepResult do_step(const Vector& y) const {
        const int n = problem->dim;
        const int s = scheme.stages;

        // Explicit exponential Euler needs no stage solve at all.
        if (scheme.is_explicit()) {
            Vector y1 = exp_full * y + h * (phi_b[0] * problem->f(y));
            return {std::move(y1), 0};
        }

        const auto eval_f_blocks = [&](const Vector& stages, std::vector<Vector>& f_blocks) {
            for (int j = 0; j < s; ++j) f_blocks[j] = problem->f(stages.segment(j * n, n));
        };

        std::function<Vector(const Vector&)> map;
        std::vector<Vector> f_blocks(s);
        switch (scheme.family) {
            case Family::SVERK:
            case Family::PHI_ERK:
                map = [&](const Vector& stages) {
                    eval_f_blocks(stages, f_blocks);
                    Vector next(s * n);
                    for (int i = 0; i < s; ++i) {
                        Vector yi = exp_stage[i] * y;
                        for (int j = 0; j < s; ++j) {
                            if (scheme.family == Family::SVERK) {
                                yi += h * scheme.A(i, j) * f_blocks[j];
                            } else {
                                yi += h * (phi_a[i][j] * f_blocks[j]);
                            }
                        }
                        next.segment(i * n, n) = yi;
                    }
                    return next;
                };
                break;
            case Family::MVERK:
                if (solver == StageSolver::LinearlyImplicit) {
                    map = [&](const Vector& stages) {
                        eval_f_blocks(stages, f_blocks);
                        Vector rhs(s * n);
                        for (int i = 0; i < s; ++i) {
                            Vector ri = y;
                            for (int j = 0; j < s; ++j) ri += h * scheme.A(i, j) * f_blocks[j];
                            rhs.segment(i * n, n) = ri;
                        }
                        return Vector(stage_lu.solve(rhs));
                    };
                } else {
                    map = [&](const Vector& stages) {
                        eval_f_blocks(stages, f_blocks);
                        std::vector<Vector> rhs_blocks(s);
                        for (int j = 0; j < s; ++j) {
                            rhs_blocks[j] = -(problem->M * stages.segment(j * n, n)) + f_blocks[j];
                        }
                        Vector next(s * n);
                        for (int i = 0; i < s; ++i) {
                            Vector yi = y;
                            for (int j = 0; j < s; ++j) yi += h * scheme.A(i, j) * rhs_blocks[j];
                            next.segment(i * n, n) = yi;
                        }
                        return next;
                    };
                }
                break;
        }

        const auto solved = solve_stages(map, concat_stage_guess(y), opts);

        Vector y1 = exp_full * y;
        for (int i = 0; i < s; ++i) {
            const Vector fi = problem->f(solved.stages.segment(i * n, n));
            if (scheme.family == Family::PHI_ERK) {
                y1 += h * (phi_b[i] * fi);
            } else {
                y1 += h * scheme.b(i) * fi;
            }
        }
        if (scheme.family != Family::PHI_ERK) {
            y1 += correction_term(scheme.family, scheme.order, *problem, y, h);
        }
        return {std::move(y1), solved.iterations};
    }
};

Stepper::Stepper(const ERKScheme& scheme, const SemiLinearIVP& problem, double h,
                 const SolveOptions& opts)
    : impl_(std::make_unique<Impl>(scheme, problem, h, opts)) {}

Stepper::~Stepper() = default;
Stepper::Stepper(Stepper&&) noexcept = default;
Stepper& Stepper::operator=(Stepper&&) noexcept = default;

StepResult Stepper::step(const Vector& y) const { return impl_->do_step(y); }
const ERKScheme& Stepper::scheme() const { return impl_->scheme; }
double Stepper::stepsize() const { return impl_->h; }

namespace {

StepResult one_shot(const ERKScheme& scheme, Family expected, const char* where,
                    const SemiLinearIVP& problem, const Vector& y, double h,
                    const SolveOptions& opts) {
    if (scheme.family != expected) {
        throw InvalidParameterError(std::string(where) + ": scheme " + scheme.name +
                                    " is of a different family");
    }
    return Stepper(scheme, problem, h, opts).step(y);
}

}  // namespace

StepResult sverk_step(const ERKScheme& scheme, const SemiLinearIVP& problem, const Vector& y,
                      double h, const SolveOptions& opts) {
    return one_shot(scheme, Family::SVERK, "sverk_step", problem, y, h, opts);
}

StepResult mverk_step(const ERKScheme& scheme, const SemiLinearIVP& problem, const Vector& y,
                      double h, const SolveOptions& opts) {
    return one_shot(scheme, Family::MVERK, "mverk_step", problem, y, h, opts);
}

StepResult phi_erk_step(const ERKScheme& scheme, const SemiLinearIVP& problem, const Vector& y,
                        double h, const SolveOptions& opts) {
    return one_shot(scheme, Family::PHI_ERK, "phi_erk_step", problem, y, h, opts);
}

int step_count(double t0, double t_end, double h) {
    if (!(h > 0.0)) throw InvalidGridError("integrate: stepsize must be positive");
    const double span = t_end - t0;
    const double steps = span / h;
    const auto n = static_cast<long long>(std::llround(steps));
    if (n < 1 || std::abs(static_cast<double>(n) * h - span) > 1e-9 * std::max(1.0, std::abs(span))) {
        throw InvalidGridError("integrate: (t_end - t0)/h = " + std::to_string(steps) +
                               " is not a positive integer");
    }
    return static_cast<int>(n);
}

Trajectory integrate(const ERKScheme& scheme, const BenchmarkProblem& problem, double t_end,
                     double h, const SolveOptions& opts) {
    const int n_steps = step_count(problem.ivp.t0, t_end, h);
    const bool with_energy = opts.record_energy && problem.meta.has_value();

    Stepper stepper(scheme, problem.ivp, h, opts);

    Trajectory traj;
    traj.times.reserve(n_steps + 1);
    traj.states.reserve(n_steps + 1);
    traj.iterations.reserve(n_steps);
    traj.times.push_back(problem.ivp.t0);
    traj.states.push_back(problem.ivp.y0);
    if (with_energy) traj.energies.push_back(energy(*problem.meta, problem.ivp.y0));

    for (int k = 0; k < n_steps; ++k) {
        StepResult result;
        try {
            result = stepper.step(traj.states.back());
        } catch (const Error& e) {
            throw StepFailureError("step " + std::to_string(k) + " failed: " + e.what(), k);
        }
        traj.times.push_back(problem.ivp.t0 + (k + 1) * h);
        traj.states.push_back(std::move(result.y));
        traj.iterations.push_back(result.iterations);
        if (with_energy) traj.energies.push_back(energy(*problem.meta, traj.states.back()));
    }
    return traj;
}

}  // namespace erk

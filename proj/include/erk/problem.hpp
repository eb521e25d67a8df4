#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "erk/linalg.hpp"

namespace erk {

/// Semilinear initial value problem y' + M y = f(y), y(t0) = y0,
/// with the derivative actions needed by the high-order correction terms.
struct SemiLinearIVP {
    int dim = 0;
    Matrix M;
    std::function<Vector(const Vector&)> f;
    /// jac_action(y, v) = f'_y(y) v
    std::function<Vector(const Vector&, const Vector&)> jac_action;
    /// hess_bilinear(y, u, v) = f''_yy(y)(u, v); symmetric in (u, v)
    std::function<Vector(const Vector&, const Vector&, const Vector&)> hess_bilinear;
    Vector y0;
    double t0 = 0.0;

    Vector g(const Vector& y) const { return -(M * y) + f(y); }
};

/// Canonical-structure metadata for Hamiltonian problems. States are ordered
/// in two blocks of canonical_dim entries each, with J = [[0, I], [-I, 0]]
/// in that block ordering; J*M is symmetric for every built-in problem.
struct HamiltonianMeta {
    std::function<double(const Vector&)> hamiltonian;
    int canonical_dim = 0;
};

/// The canonical symplectic matrix [[0, I], [-I, 0]] for block size d.
Matrix symplectic_matrix(int canonical_dim);

struct ReferenceSolution {
    enum class Kind { ExactCallback, FineGrid };
    Kind kind = Kind::ExactCallback;
    std::function<Vector(double)> eval;
    /// FineGrid only: the stored output grid (diagnostic; eval interpolates
    /// exactly on these times and rejects others).
    std::vector<double> grid_times;
};

struct BenchmarkProblem {
    std::string name;
    SemiLinearIVP ivp;
    std::optional<HamiltonianMeta> meta;
    std::optional<ReferenceSolution> reference;
};

/// Hénon–Heiles stellar-motion model, state (x1, x2, y1, y2), dim 4.
BenchmarkProblem henon_heiles();

/// Duffing oscillator, state (p, q), dim 2, with the exact elliptic-function
/// reference q(t) = sn(omega t; k/omega). Requires 0 <= k < omega.
BenchmarkProblem duffing(double omega, double k);

/// Periodic sine-Gordon semi-discretization on [-1, 1] with N grid points,
/// state (U', U), dim 2N. Requires N >= 2.
BenchmarkProblem sine_gordon(int n_grid);

/// The periodic second-difference matrix of the sine-Gordon problem,
/// scaled by 1/dx^2.
Matrix sine_gordon_laplacian(int n_grid);

double energy(const HamiltonianMeta& meta, const Vector& y);

/// Lookup by the CLI-facing names "henon-heiles", "duffing", "sine-gordon".
struct ProblemParams {
    double omega = 30.0;
    double k = 0.01;
    int n_grid = 48;
};
BenchmarkProblem make_problem(const std::string& name, const ProblemParams& params = {});

/// A pure linear flow y' + M y = 0 sharing M (and optionally meta) with
/// the given problem; used by the linear-exactness checks.
BenchmarkProblem zero_f_variant(const BenchmarkProblem& p);

}  // namespace erk

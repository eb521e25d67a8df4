#pragma once

#include <Eigen/Dense>

#include <utility>

#include "erk/errors.hpp"

namespace erk {

/// Dense real square matrix, row-major storage.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

/// Throws InvalidInputError unless A is square with finite entries.
void require_square_finite(const Matrix& a, const char* where);

/// e^A by scaling-and-squaring with diagonal Padé approximants.
/// Degree and scaling follow the standard backward-error norm thresholds.
Matrix mat_exp(const Matrix& a);

/// {phi_1(A), phi_2(A)} from a single augmented-block mat_exp call,
/// where phi_k(z) = \int_0^1 e^{(1-tau) z} tau^{k-1}/(k-1)! dtau.
std::pair<Matrix, Matrix> phi_pair(const Matrix& a);

/// phi_k(A) for k in {1, 2}; other k -> UnsupportedOrderError.
Matrix phi_mat(int k, const Matrix& a);

enum class KrylovKind { Exp, Phi1 };

struct KrylovOptions {
    int subspace_dim = 30;
    double tol = 1e-10;
    /// Problems of dimension <= dense_threshold bypass Arnoldi entirely.
    int dense_threshold = 64;
};

struct KrylovResult {
    Vector y;
    int dim_used = 0;
    bool used_dense = false;
    bool lucky_breakdown = false;
    bool converged = true;
    double residual_estimate = 0.0;
};

/// Approximates e^A v or phi_1(A) v with an Arnoldi (full orthogonalization)
/// Krylov subspace; convergence is monitored with the standard residual
/// estimate on the Hessenberg exponential. A zero basis vector terminates
/// the recursion early with the subspace result (lucky breakdown).
KrylovResult krylov_apply(const Matrix& a, const Vector& v, KrylovKind kind,
                          const KrylovOptions& opts = {});

}  // namespace erk

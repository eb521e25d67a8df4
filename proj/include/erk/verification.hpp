#pragma once

#include <string>
#include <vector>

#include "erk/integrator.hpp"

namespace erk {

struct ConditionReport {
    std::vector<std::string> labels;   // tree-indexed "1".."8"
    std::vector<double> residuals;     // absolute values
    double max_residual = 0.0;
};

/// Evaluates the classical order conditions in summation form with
/// compensated summation: condition 1 for p = 1, conditions 1-2 for p = 2,
/// all eight for p = 4. p = 3 -> UnsupportedOrderError.
ConditionReport check_order_conditions(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                                       const Eigen::VectorXd& c, int target_order);

struct SymplecticDefect {
    Matrix jacobian;       // Psi = d y1 / d y0, by central differences
    double defect_norm = 0.0;  // || Psi^T J Psi - J ||_F
};

/// Finite-difference symplecticity test of the one-step map at state y.
SymplecticDefect check_symplecticity(const ERKScheme& scheme, const BenchmarkProblem& problem,
                                     const Vector& y, double h, double fd_eps = 1e-6,
                                     const SolveOptions& opts = {});

/// || y_n - e^{-n h M} y0 ||_2 after n_steps steps of the scheme applied to
/// y' + M y = 0.
double check_linear_exactness(const ERKScheme& scheme, const Matrix& m, const Vector& y0,
                              double h, int n_steps, const SolveOptions& opts = {});

}  // namespace erk

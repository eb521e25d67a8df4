// Independent classical implicit RK steps (the M = 0 comparison oracles).
#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "erk/linalg.hpp"

namespace oracle {

/// Plain fixed-point substitution on Y_i = y + h sum_j a_ij f(Y_j),
/// iterated well past the library's stage tolerance.
inline erk::Vector classical_irk_step(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                                      const std::function<erk::Vector(const erk::Vector&)>& f,
                                      const erk::Vector& y, double h) {
    const int s = static_cast<int>(b.size());
    std::vector<erk::Vector> stages(s, y);
    for (int iter = 0; iter < 400; ++iter) {
        std::vector<erk::Vector> fs(s);
        for (int j = 0; j < s; ++j) fs[j] = f(stages[j]);
        double delta = 0.0;
        for (int i = 0; i < s; ++i) {
            erk::Vector yi = y;
            for (int j = 0; j < s; ++j) yi += h * a(i, j) * fs[j];
            delta = std::max(delta, (yi - stages[i]).norm());
            stages[i] = yi;
        }
        if (delta < 1e-16) break;
    }
    erk::Vector y1 = y;
    for (int i = 0; i < s; ++i) y1 += h * b(i) * f(stages[i]);
    return y1;
}

inline erk::Vector classical_midpoint_step(const std::function<erk::Vector(const erk::Vector&)>& f,
                                           const erk::Vector& y, double h) {
    Eigen::MatrixXd a(1, 1);
    a << 0.5;
    Eigen::VectorXd b(1);
    b << 1.0;
    return classical_irk_step(a, b, f, y, h);
}

inline erk::Vector classical_gauss2_step(const std::function<erk::Vector(const erk::Vector&)>& f,
                                         const erk::Vector& y, double h) {
    const double r3 = std::sqrt(3.0);
    Eigen::MatrixXd a(2, 2);
    a << 0.25, 0.25 - r3 / 6.0, 0.25 + r3 / 6.0, 0.25;
    Eigen::VectorXd b(2);
    b << 0.5, 0.5;
    return classical_irk_step(a, b, f, y, h);
}

}  // namespace oracle

#include "erk/verification.hpp"

#include <cmath>

namespace erk {

namespace {

/// Neumaier compensated summation.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace

ConditionReport check_order_conditions(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                                       const Eigen::VectorXd& c, int target_order) {
    if (target_order != 1 && target_order != 2 && target_order != 4) {
        throw UnsupportedOrderError("check_order_conditions: the paper lists condition sets "
                                    "for orders 1, 2 and 4 only");
    }
    const auto s = b.size();
    if (a.rows() != s || a.cols() != s || c.size() != s) {
        throw InvalidInputError("check_order_conditions: inconsistent tableau dimensions");
    }

    const Eigen::VectorXd ac = a * c;    // (Ac)_i = sum_j a_ij c_j
    const Eigen::VectorXd ac2 = a * Eigen::VectorXd(c.array().square().matrix());
    const Eigen::VectorXd aac = a * ac;

    struct Condition {
        const char* label;
        double rhs;
        std::function<double(int)> term;
    };
    const std::vector<Condition> all = {
        {"1", 1.0, [&](int i) { return b(i); }},
        {"2", 1.0 / 2.0, [&](int i) { return b(i) * c(i); }},
        {"3", 1.0 / 3.0, [&](int i) { return b(i) * c(i) * c(i); }},
        {"4", 1.0 / 6.0, [&](int i) { return b(i) * ac(i); }},
        {"5", 1.0 / 4.0, [&](int i) { return b(i) * c(i) * c(i) * c(i); }},
        {"6", 1.0 / 8.0, [&](int i) { return b(i) * c(i) * ac(i); }},
        {"7", 1.0 / 12.0, [&](int i) { return b(i) * ac2(i); }},
        {"8", 1.0 / 24.0, [&](int i) { return b(i) * aac(i); }},
    };
    const std::size_t count = target_order == 1 ? 1 : (target_order == 2 ? 2 : 8);

    ConditionReport report;
    for (std::size_t k = 0; k < count; ++k) {
        CompensatedSum sum;
        for (int i = 0; i < s; ++i) sum.add(all[k].term(i));
        sum.add(-all[k].rhs);
        const double residual = std::abs(sum.value());
        report.labels.emplace_back(all[k].label);
        report.residuals.push_back(residual);
        report.max_residual = std::max(report.max_residual, residual);
    }
    return report;
}

SymplecticDefect check_symplecticity(const ERKScheme& scheme, const BenchmarkProblem& problem,
                                     const Vector& y, double h, double fd_eps,
                                     const SolveOptions& opts) {
    if (!problem.meta.has_value()) {
        throw InvalidParameterError("check_symplecticity: problem has no Hamiltonian metadata");
    }
    if (!(fd_eps > 0.0)) {
        throw InvalidParameterError("check_symplecticity: fd_eps must be positive");
    }
    const int n = problem.ivp.dim;
    Stepper stepper(scheme, problem.ivp, h, opts);

    Matrix psi(n, n);
    for (int j = 0; j < n; ++j) {
        Vector yp = y;
        Vector ym = y;
        yp(j) += fd_eps;
        ym(j) -= fd_eps;
        psi.col(j) = (stepper.step(yp).y - stepper.step(ym).y) / (2.0 * fd_eps);
    }

    const Matrix j_canon = symplectic_matrix(problem.meta->canonical_dim);
    SymplecticDefect out;
    out.defect_norm = (psi.transpose() * j_canon * psi - j_canon).norm();
    out.jacobian = std::move(psi);
    return out;
}

double check_linear_exactness(const ERKScheme& scheme, const Matrix& m, const Vector& y0,
                              double h, int n_steps, const SolveOptions& opts) {
    if (n_steps < 1) {
        throw InvalidParameterError("check_linear_exactness: n_steps must be >= 1");
    }
    require_square_finite(m, "check_linear_exactness");

    BenchmarkProblem p;
    p.name = "linear";
    p.ivp.dim = static_cast<int>(m.rows());
    p.ivp.M = m;
    p.ivp.y0 = y0;
    p.ivp.t0 = 0.0;
    p = zero_f_variant(p);

    const Trajectory traj = integrate(scheme, p, n_steps * h, h, opts);
    const Vector exact = mat_exp(Matrix(-static_cast<double>(n_steps) * h * m)) * y0;
    return (traj.states.back() - exact).norm();
}

}  // namespace erk

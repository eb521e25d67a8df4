#include "erk/problem.hpp"

#include <cmath>
#include <numbers>

#include "erk/elliptic.hpp"

namespace erk {

Matrix symplectic_matrix(int canonical_dim) {
    const int d = canonical_dim;
    Matrix j = Matrix::Zero(2 * d, 2 * d);
    j.topRightCorner(d, d) = Matrix::Identity(d, d);
    j.bottomLeftCorner(d, d) = -Matrix::Identity(d, d);
    return j;
}

double energy(const HamiltonianMeta& meta, const Vector& y) {
    return meta.hamiltonian(y);
}

BenchmarkProblem henon_heiles() {
    BenchmarkProblem p;
    p.name = "henon-heiles";

    SemiLinearIVP ivp;
    ivp.dim = 4;
    ivp.M = Matrix::Zero(4, 4);
    ivp.M(0, 2) = -1.0;
    ivp.M(1, 3) = -1.0;
    ivp.M(2, 0) = 1.0;
    ivp.M(3, 1) = 1.0;

    ivp.f = [](const Vector& y) {
        Vector out = Vector::Zero(4);
        out(2) = -2.0 * y(0) * y(1);
        out(3) = -y(0) * y(0) + y(1) * y(1);
        return out;
    };
    ivp.jac_action = [](const Vector& y, const Vector& v) {
        Vector out = Vector::Zero(4);
        out(2) = -2.0 * (y(1) * v(0) + y(0) * v(1));
        out(3) = -2.0 * y(0) * v(0) + 2.0 * y(1) * v(1);
        return out;
    };
    ivp.hess_bilinear = [](const Vector&, const Vector& u, const Vector& v) {
        Vector out = Vector::Zero(4);
        out(2) = -2.0 * (u(0) * v(1) + u(1) * v(0));
        out(3) = -2.0 * u(0) * v(0) + 2.0 * u(1) * v(1);
        return out;
    };

    ivp.y0 = Vector::Zero(4);
    ivp.y0(0) = std::sqrt(11.0 / 96.0);
    ivp.y0(3) = 0.25;
    ivp.t0 = 0.0;
    p.ivp = std::move(ivp);

    HamiltonianMeta meta;
    meta.canonical_dim = 2;
    meta.hamiltonian = [](const Vector& y) {
        const double x1 = y(0), x2 = y(1), p1 = y(2), p2 = y(3);
        return 0.5 * (p1 * p1 + p2 * p2) + 0.5 * (x1 * x1 + x2 * x2) + x1 * x1 * x2 -
               x2 * x2 * x2 / 3.0;
    };
    p.meta = std::move(meta);
    return p;
}

BenchmarkProblem duffing(double omega, double k) {
    if (!(k >= 0.0 && k < omega)) {
        throw InvalidParameterError("duffing: parameters must satisfy 0 <= k < omega");
    }
    BenchmarkProblem p;
    p.name = "duffing";

    SemiLinearIVP ivp;
    ivp.dim = 2;
    ivp.M = Matrix::Zero(2, 2);
    ivp.M(0, 1) = omega * omega;
    ivp.M(1, 0) = -1.0;

    const double k2 = k * k;
    ivp.f = [k2](const Vector& y) {
        Vector out = Vector::Zero(2);
        const double q = y(1);
        out(0) = k2 * (2.0 * q * q * q - q);
        return out;
    };
    ivp.jac_action = [k2](const Vector& y, const Vector& v) {
        Vector out = Vector::Zero(2);
        const double q = y(1);
        out(0) = k2 * (6.0 * q * q - 1.0) * v(1);
        return out;
    };
    ivp.hess_bilinear = [k2](const Vector& y, const Vector& u, const Vector& v) {
        Vector out = Vector::Zero(2);
        out(0) = 12.0 * k2 * y(1) * u(1) * v(1);
        return out;
    };

    ivp.y0 = Vector::Zero(2);
    ivp.y0(0) = omega;  // p(0) = qdot(0) = omega, q(0) = 0
    ivp.t0 = 0.0;
    p.ivp = std::move(ivp);

    HamiltonianMeta meta;
    meta.canonical_dim = 1;
    meta.hamiltonian = [omega, k2](const Vector& y) {
        const double pp = y(0), q = y(1);
        return 0.5 * pp * pp + 0.5 * omega * omega * q * q + 0.5 * k2 * (q * q - q * q * q * q);
    };
    p.meta = std::move(meta);

    ReferenceSolution ref;
    ref.kind = ReferenceSolution::Kind::ExactCallback;
    const double modulus = k / omega;
    ref.eval = [omega, modulus](double t) {
        const auto e = jacobi_elliptic(omega * t, modulus);
        Vector y(2);
        y(0) = omega * e.cn * e.dn;  // d/dt sn(omega t) = omega cn dn
        y(1) = e.sn;
        return y;
    };
    p.reference = std::move(ref);
    return p;
}

Matrix sine_gordon_laplacian(int n_grid) {
    if (n_grid < 2) {
        throw InvalidParameterError("sine_gordon: need at least 2 grid points");
    }
    const int n = n_grid;
    const double dx = 2.0 / n;
    const double scale = 1.0 / (dx * dx);
    Matrix L = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        L(i, i) += 2.0 * scale;
        L(i, (i + 1) % n) += -scale;
        L(i, (i + n - 1) % n) += -scale;
    }
    return L;
}

BenchmarkProblem sine_gordon(int n_grid) {
    const int n = n_grid;
    const Matrix L = sine_gordon_laplacian(n);  // validates n >= 2

    BenchmarkProblem p;
    p.name = "sine-gordon";

    SemiLinearIVP ivp;
    ivp.dim = 2 * n;
    ivp.M = Matrix::Zero(2 * n, 2 * n);
    ivp.M.topRightCorner(n, n) = L;
    ivp.M.bottomLeftCorner(n, n) = -Matrix::Identity(n, n);

    // State is (U', U); the nonlinearity acts on the velocity block only.
    ivp.f = [n](const Vector& y) {
        Vector out = Vector::Zero(2 * n);
        out.head(n) = -y.tail(n).array().sin();
        return out;
    };
    ivp.jac_action = [n](const Vector& y, const Vector& v) {
        Vector out = Vector::Zero(2 * n);
        out.head(n) = -y.tail(n).array().cos() * v.tail(n).array();
        return out;
    };
    ivp.hess_bilinear = [n](const Vector& y, const Vector& u, const Vector& v) {
        Vector out = Vector::Zero(2 * n);
        out.head(n) = y.tail(n).array().sin() * u.tail(n).array() * v.tail(n).array();
        return out;
    };

    ivp.y0 = Vector::Zero(2 * n);
    for (int i = 1; i <= n; ++i) {
        ivp.y0(i - 1) = std::sqrt(static_cast<double>(n)) *
                        (0.01 + std::sin(2.0 * std::numbers::pi * i / n));
        ivp.y0(n + i - 1) = std::numbers::pi;
    }
    ivp.t0 = 0.0;
    p.ivp = std::move(ivp);

    HamiltonianMeta meta;
    meta.canonical_dim = n;
    meta.hamiltonian = [L, n](const Vector& y) {
        const Vector up = y.head(n);
        const Vector u = y.tail(n);
        return 0.5 * up.dot(up) + 0.5 * u.dot(L * u) - u.array().cos().sum();
    };
    p.meta = std::move(meta);
    return p;
}

BenchmarkProblem make_problem(const std::string& name, const ProblemParams& params) {
    if (name == "henon-heiles") return henon_heiles();
    if (name == "duffing") return duffing(params.omega, params.k);
    if (name == "sine-gordon") return sine_gordon(params.n_grid);
    throw InvalidParameterError("unknown problem '" + name +
                                "' (expected henon-heiles, duffing, or sine-gordon)");
}

BenchmarkProblem zero_f_variant(const BenchmarkProblem& p) {
    BenchmarkProblem out = p;
    out.name = p.name + "-linear";
    const int dim = p.ivp.dim;
    out.ivp.f = [dim](const Vector&) { return Vector(Vector::Zero(dim)); };
    out.ivp.jac_action = [dim](const Vector&, const Vector&) {
        return Vector(Vector::Zero(dim));
    };
    out.ivp.hess_bilinear = [dim](const Vector&, const Vector&, const Vector&) {
        return Vector(Vector::Zero(dim));
    };
    out.reference.reset();
    return out;
}

}  // namespace erk

#include "erk/linalg.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace erk {

namespace {

// Diagonal Padé numerator coefficients and backward-error thresholds for
// degrees 3, 5, 7, 9, 13 (Higham's expm selection rule, 1-norm based).
constexpr std::array<double, 4> kPade3 = {120.0, 60.0, 12.0, 1.0};
constexpr std::array<double, 6> kPade5 = {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
constexpr std::array<double, 8> kPade7 = {17297280.0, 8648640.0, 1995840.0, 277200.0,
                                          25200.0,    1512.0,    56.0,      1.0};
constexpr std::array<double, 10> kPade9 = {17643225600.0, 8821612800.0, 2075673600.0,
                                           302702400.0,   30270240.0,   2162160.0,
                                           110880.0,      3960.0,       90.0,
                                           1.0};
constexpr std::array<double, 14> kPade13 = {64764752532480000.0, 32382376266240000.0,
                                            7771770303897600.0,  1187353796428800.0,
                                            129060195264000.0,   10559470521600.0,
                                            670442572800.0,      33522128640.0,
                                            1323241920.0,        40840800.0,
                                            960960.0,            16380.0,
                                            182.0,               1.0};

constexpr double kTheta3 = 1.495585217958292e-2;
constexpr double kTheta5 = 2.539398330063230e-1;
constexpr double kTheta7 = 9.504178996162932e-1;
constexpr double kTheta9 = 2.097847961257068e0;
constexpr double kTheta13 = 5.371920351148152e0;

double norm1(const Matrix& a) { return a.cwiseAbs().colwise().sum().maxCoeff(); }

// (V - U) \ (V + U) where U/V collect the odd/even Padé terms.
Matrix pade_solve(const Matrix& u, const Matrix& v) {
    Matrix p = v + u;
    Matrix q = v - u;
    return q.partialPivLu().solve(p);
}

template <std::size_t N>
Matrix pade_low_degree(const Matrix& a, const std::array<double, N>& b) {
    const auto n = a.rows();
    const Matrix ident = Matrix::Identity(n, n);
    const Matrix a2 = a * a;
    Matrix u_poly = b[1] * ident;
    Matrix v = b[0] * ident;
    Matrix power = ident;
    for (std::size_t j = 2; j < N; j += 2) {
        power = power * a2;
        v += b[j] * power;
        u_poly += b[j + 1] * power;
    }
    return pade_solve(a * u_poly, v);
}

Matrix pade13(const Matrix& a) {
    const auto n = a.rows();
    const auto& b = kPade13;
    const Matrix ident = Matrix::Identity(n, n);
    const Matrix a2 = a * a;
    const Matrix a4 = a2 * a2;
    const Matrix a6 = a2 * a4;
    Matrix u = a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 +
                    b[3] * a2 + b[1] * ident);
    Matrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 +
               b[2] * a2 + b[0] * ident;
    return pade_solve(u, v);
}

}  // namespace

void require_square_finite(const Matrix& a, const char* where) {
    if (a.rows() != a.cols() || a.rows() < 1) {
        throw InvalidInputError(std::string(where) + ": matrix must be square, got " +
                                std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
    }
    if (!a.allFinite()) {
        throw InvalidInputError(std::string(where) + ": matrix has non-finite entries");
    }
}

Matrix mat_exp(const Matrix& a) {
    require_square_finite(a, "mat_exp");
    const double nrm = norm1(a);
    if (nrm <= kTheta3) return pade_low_degree(a, kPade3);
    if (nrm <= kTheta5) return pade_low_degree(a, kPade5);
    if (nrm <= kTheta7) return pade_low_degree(a, kPade7);
    if (nrm <= kTheta9) return pade_low_degree(a, kPade9);

    const int squarings = std::max(0, static_cast<int>(std::ceil(std::log2(nrm / kTheta13))));
    Matrix f = pade13(Matrix(a / std::exp2(squarings)));
    for (int i = 0; i < squarings; ++i) {
        f = f * f;
        if (!f.allFinite()) {
            throw OverflowError("mat_exp: overflow during repeated squaring (||A||_1 = " +
                                std::to_string(nrm) + ")");
        }
    }
    return f;
}

std::pair<Matrix, Matrix> phi_pair(const Matrix& a) {
    require_square_finite(a, "phi_pair");
    const auto n = a.rows();
    // Augmented block matrix [[A, I, 0], [0, 0, I], [0, 0, 0]]: the top row of
    // its exponential is [e^A, phi_1(A), phi_2(A)].
    Matrix aug = Matrix::Zero(3 * n, 3 * n);
    aug.topLeftCorner(n, n) = a;
    aug.block(0, n, n, n) = Matrix::Identity(n, n);
    aug.block(n, 2 * n, n, n) = Matrix::Identity(n, n);
    const Matrix e = mat_exp(aug);
    return {Matrix(e.block(0, n, n, n)), Matrix(e.block(0, 2 * n, n, n))};
}

Matrix phi_mat(int k, const Matrix& a) {
    if (k != 1 && k != 2) {
        throw UnsupportedOrderError("phi_mat: only phi_1 and phi_2 are supported, got k=" +
                                    std::to_string(k));
    }
    auto [phi1, phi2] = phi_pair(a);
    return k == 1 ? phi1 : phi2;
}

namespace {

// e^{H} e_1, phi_1(H) e_1 and phi_2(H) e_1 from one augmented exponential.
struct HessenbergFunctions {
    Vector exp_e1;
    Vector phi1_e1;
    Vector phi2_e1;
};

HessenbergFunctions small_matrix_functions(const Matrix& h) {
    const auto m = h.rows();
    Matrix aug = Matrix::Zero(m + 2, m + 2);
    aug.topLeftCorner(m, m) = h;
    aug(0, m) = 1.0;
    aug(m, m + 1) = 1.0;
    const Matrix e = mat_exp(aug);
    HessenbergFunctions out;
    out.exp_e1 = e.topLeftCorner(m, m).col(0);
    out.phi1_e1 = e.block(0, m, m, 1);
    out.phi2_e1 = e.block(0, m + 1, m, 1);
    return out;
}

}  // namespace

KrylovResult krylov_apply(const Matrix& a, const Vector& v, KrylovKind kind,
                          const KrylovOptions& opts) {
    require_square_finite(a, "krylov_apply");
    const auto n = a.rows();
    if (v.size() != n || !v.allFinite()) {
        throw InvalidInputError("krylov_apply: vector dimension mismatch or non-finite");
    }
    if (opts.subspace_dim < 1 || opts.subspace_dim > n) {
        throw InvalidParameterError("krylov_apply: subspace_dim must be in [1, n]");
    }
    if (!(opts.tol > 0.0)) {
        throw InvalidParameterError("krylov_apply: tol must be positive");
    }

    KrylovResult result;
    const double beta = v.norm();
    if (beta == 0.0) {
        result.y = Vector::Zero(n);
        return result;
    }

    if (n <= opts.dense_threshold) {
        result.y = (kind == KrylovKind::Exp ? mat_exp(a) : phi_mat(1, a)) * v;
        result.used_dense = true;
        result.dim_used = static_cast<int>(n);
        return result;
    }

    const int m_max = opts.subspace_dim;
    const double breakdown_tol =
        static_cast<double>(n) * std::numeric_limits<double>::epsilon() * std::max(norm1(a), 1.0);

    Eigen::MatrixXd basis(n, m_max + 1);
    Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(m_max + 1, m_max);
    basis.col(0) = v / beta;

    int m = 0;
    double hnext = 0.0;
    result.converged = false;
    for (int j = 0; j < m_max; ++j) {
        Vector w = a * basis.col(j);
        for (int i = 0; i <= j; ++i) {
            const double hij = basis.col(i).dot(w);
            hess(i, j) = hij;
            w -= hij * basis.col(i);
        }
        // Second orthogonalization pass keeps the basis orthogonal to
        // working precision for long recurrences.
        for (int i = 0; i <= j; ++i) {
            const double c = basis.col(i).dot(w);
            hess(i, j) += c;
            w -= c * basis.col(i);
        }
        hnext = w.norm();
        hess(j + 1, j) = hnext;
        m = j + 1;
        if (hnext <= breakdown_tol) {
            result.lucky_breakdown = true;
            result.converged = true;
            result.residual_estimate = 0.0;
            break;
        }
        basis.col(j + 1) = w / hnext;
        if (m >= 2 || m == m_max) {
            const auto funcs = small_matrix_functions(Matrix(hess.topLeftCorner(m, m)));
            const Vector& err_vec =
                (kind == KrylovKind::Exp) ? funcs.phi1_e1 : funcs.phi2_e1;
            result.residual_estimate = beta * hnext * std::abs(err_vec(m - 1));
            if (result.residual_estimate <= 0.25 * opts.tol) {
                result.converged = true;
                break;
            }
        }
    }
    if (m == static_cast<int>(n)) result.converged = true;  // full space is exact

    const auto funcs = small_matrix_functions(Matrix(hess.topLeftCorner(m, m)));
    const Vector& small = (kind == KrylovKind::Exp) ? funcs.exp_e1 : funcs.phi1_e1;
    result.y = beta * (basis.leftCols(m) * small);
    result.dim_used = m;
    return result;
}

}  // namespace erk

#include "erk/elliptic.hpp"

#include <algorithm>
#include <cmath>

#include "erk/errors.hpp"

namespace erk {

JacobiElliptic jacobi_elliptic(double u, double modulus) {
    if (!(modulus >= 0.0 && modulus <= 1.0)) {
        throw InvalidParameterError("jacobi_elliptic: modulus must lie in [0, 1]");
    }
    const double m = modulus * modulus;

    if (m == 0.0) {
        return {std::sin(u), std::cos(u), 1.0};
    }
    if (m == 1.0) {
        const double s = std::tanh(u);
        const double c = 1.0 / std::cosh(u);
        return {s, c, c};
    }

    // AGM scale a_{i+1} = (a_i + b_i)/2, b_{i+1} = sqrt(a_i b_i),
    // c_{i+1} = (a_i - b_i)/2, started from (1, kappa', kappa). Extended
    // precision keeps the phase accurate for the large arguments the
    // Duffing reference needs (u = omega * t up to a few thousand).
    constexpr int kMaxLevels = 40;
    long double a[kMaxLevels];
    long double c[kMaxLevels];
    a[0] = 1.0L;
    c[0] = modulus;
    long double b = std::sqrt(1.0L - static_cast<long double>(m));
    int levels = 0;
    while (levels + 1 < kMaxLevels) {
        const long double an = 0.5L * (a[levels] + b);
        const long double cn = 0.5L * (a[levels] - b);
        b = std::sqrt(a[levels] * b);
        ++levels;
        a[levels] = an;
        c[levels] = cn;
        if (std::abs(cn) <= 1e-20L * an) break;
    }

    // Descend: phi_{i-1} = (phi_i + asin(c_i/a_i sin phi_i)) / 2.
    long double phi = std::ldexp(a[levels] * static_cast<long double>(u), levels);
    for (int i = levels; i >= 1; --i) {
        const long double s =
            std::clamp(c[i] / a[i] * std::sin(phi), -1.0L, 1.0L);
        phi = 0.5L * (phi + std::asin(s));
    }

    const double sn = std::clamp(static_cast<double>(std::sin(phi)), -1.0, 1.0);
    const double cn = static_cast<double>(std::cos(phi));
    const double dn = std::sqrt(std::max(0.0, 1.0 - m * sn * sn));
    return {sn, cn, dn};
}

double jacobi_sn(double u, double modulus) { return jacobi_elliptic(u, modulus).sn; }

}  // namespace erk

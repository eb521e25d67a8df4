#include <doctest.h>

#include <cmath>

#include "erk/elliptic.hpp"
#include "erk/errors.hpp"

namespace {

// ODE oracle: integrate sn' = cn dn, cn' = -sn dn, dn' = -m^2 sn cn from
// (0, 1, 1) with classical RK4 at a tiny step. (m here is the modulus.)
erk::JacobiElliptic elliptic_ode_oracle(double u, double modulus) {
    const double m2 = modulus * modulus;
    double y[3] = {0.0, 1.0, 1.0};
    const int steps = 200000;
    const double h = u / steps;
    const auto rhs = [m2](const double s[3], double d[3]) {
        d[0] = s[1] * s[2];
        d[1] = -s[0] * s[2];
        d[2] = -m2 * s[0] * s[1];
    };
    double k1[3], k2[3], k3[3], k4[3], tmp[3];
    for (int step = 0; step < steps; ++step) {
        rhs(y, k1);
        for (int i = 0; i < 3; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
        rhs(tmp, k2);
        for (int i = 0; i < 3; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
        rhs(tmp, k3);
        for (int i = 0; i < 3; ++i) tmp[i] = y[i] + h * k3[i];
        rhs(tmp, k4);
        for (int i = 0; i < 3; ++i) y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return {y[0], y[1], y[2]};
}

}  // namespace

TEST_CASE("jacobi_sn: degenerate moduli") {
    for (double u : {-2.0, 0.3, 1.7, 10.0}) {
        CHECK(erk::jacobi_sn(u, 0.0) == doctest::Approx(std::sin(u)).epsilon(1e-15));
        CHECK(erk::jacobi_sn(u, 1.0) == doctest::Approx(std::tanh(u)).epsilon(1e-15));
    }
}

TEST_CASE("jacobi_sn: modulus range is validated") {
    CHECK_THROWS_AS(erk::jacobi_sn(1.0, -0.1), erk::InvalidParameterError);
    CHECK_THROWS_AS(erk::jacobi_sn(1.0, 1.5), erk::InvalidParameterError);
}

TEST_CASE("jacobi_elliptic agrees with the pendulum-ODE oracle") {
    const auto ref = elliptic_ode_oracle(1.0, 0.5);
    const auto got = erk::jacobi_elliptic(1.0, 0.5);
    CHECK(got.sn == doctest::Approx(ref.sn).epsilon(1e-10));
    CHECK(got.cn == doctest::Approx(ref.cn).epsilon(1e-10));
    CHECK(got.dn == doctest::Approx(ref.dn).epsilon(1e-10));

    const auto ref2 = elliptic_ode_oracle(2.7, 0.9);
    const auto got2 = erk::jacobi_elliptic(2.7, 0.9);
    CHECK(got2.sn == doctest::Approx(ref2.sn).epsilon(1e-9));
    CHECK(got2.cn == doctest::Approx(ref2.cn).epsilon(1e-9));
    CHECK(got2.dn == doctest::Approx(ref2.dn).epsilon(1e-9));
}

TEST_CASE("jacobi_elliptic: |sn| <= 1 and the defining identities hold") {
    for (double modulus : {0.05, 0.3, 0.7, 0.99}) {
        const double m = modulus * modulus;
        for (double u = -12.0; u <= 12.0; u += 0.37) {
            const auto e = erk::jacobi_elliptic(u, modulus);
            CHECK(std::abs(e.sn) <= 1.0);
            CHECK(e.sn * e.sn + e.cn * e.cn == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(e.dn * e.dn + m * e.sn * e.sn == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

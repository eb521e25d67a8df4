#include "erk/stability.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

#include "erk/errors.hpp"

namespace erk {

namespace {

using Cplx = std::complex<double>;

constexpr Cplx kI{0.0, 1.0};

Cplx phi1_scalar(Cplx z) {
    if (std::abs(z) < 0.5) {
        // Taylor series avoids the cancellation in (e^z - 1)/z.
        Cplx term{1.0, 0.0};
        Cplx sum{1.0, 0.0};
        for (int k = 2; k <= 24; ++k) {
            term *= z / static_cast<double>(k);
            sum += term;
        }
        return sum;
    }
    return (std::exp(z) - 1.0) / z;
}

Cplx phi2_scalar(Cplx z) {
    if (std::abs(z) < 0.5) {
        Cplx term{0.5, 0.0};
        Cplx sum{0.5, 0.0};
        for (int k = 3; k <= 25; ++k) {
            term *= z / static_cast<double>(k);
            sum += term;
        }
        return sum;
    }
    return (std::exp(z) - 1.0 - z) / (z * z);
}

const Cplx kSingular{std::numeric_limits<double>::infinity(), 0.0};

bool solve2(Cplx a11, Cplx a12, Cplx a21, Cplx a22, Cplx r1, Cplx r2, Cplx& y1, Cplx& y2) {
    const Cplx det = a11 * a22 - a12 * a21;
    if (std::abs(det) < 1e-14) return false;
    y1 = (r1 * a22 - r2 * a12) / det;
    y2 = (a11 * r2 - a21 * r1) / det;
    return true;
}

/// Scalar specialization of the order-2/4 correction terms with h = 1,
/// M = -i k1, f' = i k2, f(y0) = i k2, f'' = 0.
Cplx scalar_correction(Family family, int order, double k1, double k2) {
    if (order <= 1) return {0.0, 0.0};
    const Cplx m = -kI * k1;
    const Cplx jac = kI * k2;
    const Cplx f0 = kI * k2;
    const Cplx g = kI * (k1 + k2);
    const Cplx mf = m * f0;

    Cplx w = -0.5 * mf;
    if (order == 2) return w;

    if (family == Family::SVERK) {
        w += ((m - jac) * mf - m * jac * g) / 6.0;
        Cplx t = (-m + jac) * m * mf;      // (-M + f') M^2 f
        t += m * m * jac * g;              // M^2 f' g
        t += -m * jac * (-m + jac) * g;    // -M f'(-M + f') g
        t += -jac * m * jac * g;           // -f' M f' g
        t += -jac * jac * mf;              // -f' f' M f
        w += t / 24.0;
    } else {
        w += (m * mf - m * jac * g) / 6.0;
        Cplx t = -m * m * mf;              // -M^3 f
        t += m * m * jac * g;              // M^2 f' g
        t += -m * jac * (-m + jac) * g;    // -M f'(-M + f') g
        w += t / 24.0;
    }
    return w;
}

Cplx sverk_factor(const ERKScheme& s, double k1, double k2) {
    const Cplx ik2 = kI * k2;
    const Cplx e_full = std::exp(kI * k1);
    Cplx update = e_full;
    if (s.stages == 1) {
        const Cplx den = 1.0 - ik2 * s.A(0, 0);
        if (std::abs(den) < 1e-14) return kSingular;
        const Cplx y1 = std::exp(kI * s.c(0) * k1) / den;
        update += ik2 * s.b(0) * y1;
    } else {
        Cplx y1, y2;
        if (!solve2(1.0 - ik2 * s.A(0, 0), -ik2 * s.A(0, 1), -ik2 * s.A(1, 0),
                    1.0 - ik2 * s.A(1, 1), std::exp(kI * s.c(0) * k1),
                    std::exp(kI * s.c(1) * k1), y1, y2)) {
            return kSingular;
        }
        update += ik2 * (s.b(0) * y1 + s.b(1) * y2);
    }
    return update + scalar_correction(Family::SVERK, s.order, k1, k2);
}

Cplx mverk_factor(const ERKScheme& s, double k1, double k2) {
    const Cplx ik2 = kI * k2;
    const Cplx lam = kI * (k1 + k2);  // stage right side (-M + f') y = i(k1 + k2) y
    const Cplx e_full = std::exp(kI * k1);
    Cplx update = e_full;
    if (s.stages == 1) {
        const Cplx den = 1.0 - lam * s.A(0, 0);
        if (std::abs(den) < 1e-14) return kSingular;
        update += ik2 * s.b(0) / den;
    } else {
        Cplx y1, y2;
        if (!solve2(1.0 - lam * s.A(0, 0), -lam * s.A(0, 1), -lam * s.A(1, 0),
                    1.0 - lam * s.A(1, 1), 1.0, 1.0, y1, y2)) {
            return kSingular;
        }
        update += ik2 * (s.b(0) * y1 + s.b(1) * y2);
    }
    return update + scalar_correction(Family::MVERK, s.order, k1, k2);
}

Cplx phi_erk_factor(const ERKScheme& s, double k1, double k2) {
    const Cplx ik2 = kI * k2;
    const Cplx z_full = kI * k1;  // -hM for hM = -i k1
    const Cplx e_full = std::exp(z_full);
    switch (s.phi_variant) {
        case PhiVariant::ExpEulerExplicit:
            return e_full + ik2 * phi1_scalar(z_full);
        case PhiVariant::ExpEulerImplicit: {
            const Cplx den = 1.0 - ik2 * phi1_scalar(z_full);
            if (std::abs(den) < 1e-14) return kSingular;
            return e_full / den;
        }
        case PhiVariant::Collocation1: {
            const Cplx a11 = 0.5 * phi1_scalar(0.5 * z_full);
            const Cplx den = 1.0 - ik2 * a11;
            if (std::abs(den) < 1e-14) return kSingular;
            const Cplx y1 = std::exp(0.5 * z_full) / den;
            return e_full + ik2 * phi1_scalar(z_full) * y1;
        }
        case PhiVariant::Collocation2: {
            const double r3 = std::sqrt(3.0);
            const double c1 = s.c(0), c2 = s.c(1);
            const Cplx z1 = c1 * z_full, z2 = c2 * z_full;
            const Cplx a11 = r3 * c1 * c2 * phi1_scalar(z1) - r3 * c1 * c1 * phi2_scalar(z1);
            const Cplx a12 = -r3 * c1 * c1 * phi1_scalar(z1) + r3 * c1 * c1 * phi2_scalar(z1);
            const Cplx a21 = r3 * c2 * c2 * phi1_scalar(z2) - r3 * c2 * c2 * phi2_scalar(z2);
            const Cplx a22 = -r3 * c1 * c2 * phi1_scalar(z2) + r3 * c2 * c2 * phi2_scalar(z2);
            const Cplx b1 = r3 * c2 * phi1_scalar(z_full) - r3 * phi2_scalar(z_full);
            const Cplx b2 = -r3 * c1 * phi1_scalar(z_full) + r3 * phi2_scalar(z_full);
            Cplx y1, y2;
            if (!solve2(1.0 - ik2 * a11, -ik2 * a12, -ik2 * a21, 1.0 - ik2 * a22,
                        std::exp(z1), std::exp(z2), y1, y2)) {
                return kSingular;
            }
            return e_full + ik2 * (b1 * y1 + b2 * y2);
        }
        case PhiVariant::None:
            break;
    }
    throw Error("amplification_factor: scheme lacks a phi variant");
}

int scan_thread_count() {
    if (const char* env = std::getenv("ERK_BENCH_THREADS")) {
        const int requested = std::atoi(env);
        if (requested >= 1) return requested;
    }
    return 1;
}

}  // namespace

double StabilityGrid::k1_value(int i1) const {
    return spec.k1.min + (spec.k1.max - spec.k1.min) * i1 / (spec.k1.count - 1);
}

double StabilityGrid::k2_value(int i2) const {
    return spec.k2.min + (spec.k2.max - spec.k2.min) * i2 / (spec.k2.count - 1);
}

std::complex<double> amplification_factor(const ERKScheme& scheme, double k1, double k2) {
    switch (scheme.family) {
        case Family::SVERK:
            return sverk_factor(scheme, k1, k2);
        case Family::MVERK:
            return mverk_factor(scheme, k1, k2);
        case Family::PHI_ERK:
            return phi_erk_factor(scheme, k1, k2);
    }
    throw Error("amplification_factor: unreachable family");
}

StabilityGrid stability_scan(const ERKScheme& scheme, const GridSpec& grid) {
    if (grid.k1.count < 2 || grid.k2.count < 2) {
        throw InvalidParameterError("stability_scan: axis counts must be >= 2");
    }
    StabilityGrid out;
    out.spec = grid;
    out.magnitudes.assign(static_cast<std::size_t>(grid.k1.count) * grid.k2.count, 0.0);

    const auto fill_rows = [&](int row_begin, int row_end) {
        for (int i2 = row_begin; i2 < row_end; ++i2) {
            const double k2 = out.k2_value(i2);
            for (int i1 = 0; i1 < grid.k1.count; ++i1) {
                const double k1 = out.k1_value(i1);
                out.magnitudes[static_cast<std::size_t>(i2) * grid.k1.count + i1] =
                    std::abs(amplification_factor(scheme, k1, k2));
            }
        }
    };

    const int threads = std::min(scan_thread_count(), grid.k2.count);
    if (threads <= 1) {
        fill_rows(0, grid.k2.count);
    } else {
        std::vector<std::thread> pool;
        const int chunk = (grid.k2.count + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            const int begin = t * chunk;
            const int end = std::min(grid.k2.count, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(fill_rows, begin, end);
        }
        for (auto& worker : pool) worker.join();
    }
    return out;
}

}  // namespace erk

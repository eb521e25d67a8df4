#pragma once

#include <complex>
#include <vector>

#include "erk/scheme.hpp"

namespace erk {

struct AxisSpec {
    double min = -10.0;
    double max = 10.0;
    int count = 400;
};

struct GridSpec {
    AxisSpec k1;
    AxisSpec k2;
};

/// |R(i k1, i k2)| sampled over a Cartesian grid. Storage is row-major with
/// k2 as the major (outer) index; cells where the scalar stage system is
/// singular hold +infinity.
struct StabilityGrid {
    GridSpec spec;
    std::vector<double> magnitudes;

    double at(int i2, int i1) const { return magnitudes[static_cast<std::size_t>(i2) * spec.k1.count + i1]; }
    double k1_value(int i1) const;
    double k2_value(int i2) const;
};

/// One step of the scheme applied to the partitioned Dahlquist equation
/// y' = i lambda_1 y + i lambda_2 y with the i lambda_1 part treated
/// exponentially: hM = -i k1, h f(y) = i k2 y, y0 = 1. Implicit scalar
/// stages are solved in closed form; the correction terms w_s / \bar w_s
/// participate. A singular stage system yields an infinite result.
std::complex<double> amplification_factor(const ERKScheme& scheme, double k1, double k2);

StabilityGrid stability_scan(const ERKScheme& scheme, const GridSpec& grid);

}  // namespace erk

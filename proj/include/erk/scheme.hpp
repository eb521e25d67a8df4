#pragma once

#include <string>
#include <vector>

#include "erk/linalg.hpp"

namespace erk {

enum class Family { SVERK, MVERK, PHI_ERK };

/// PHI_ERK tableau entries are phi-function valued and get materialized per
/// (h, M) at step time; this marker selects the materialization rule.
enum class PhiVariant {
    None,             // constant-coefficient families
    ExpEulerExplicit, // y1 = e^{-hM} y + h phi_1(-hM) f(y)
    ExpEulerImplicit, // y1 = e^{-hM} y + h phi_1(-hM) f(y1)
    Collocation1,     // one-stage collocation at c = 1/2
    Collocation2      // two-stage collocation at the Gauss nodes
};

/// Method descriptor. For PHI_ERK schemes, A and b hold the M -> 0 limit of
/// the phi-valued weights (the classical midpoint/Gauss values), which is
/// what the order-condition checks evaluate.
struct ERKScheme {
    std::string name;
    Family family = Family::SVERK;
    int order = 1;
    int stages = 1;
    Eigen::MatrixXd A;
    Eigen::VectorXd b;
    Eigen::VectorXd c;
    PhiVariant phi_variant = PhiVariant::None;

    bool is_explicit() const { return phi_variant == PhiVariant::ExpEulerExplicit; }
};

/// Builds a catalogued scheme by name. Known names:
///   imsverk1, eeuler, imeeuler,
///   imsverk12, immverk12, imerk12,
///   imsverk24, immverk24, imerk24.
/// Unknown names -> UnknownMethodError.
ERKScheme make_scheme(const std::string& name);

/// All catalogue names, in the order first / second / fourth-order trios.
const std::vector<std::string>& scheme_catalogue();

}  // namespace erk

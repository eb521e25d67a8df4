#include "erk/scheme.hpp"

#include <cmath>

namespace erk {

namespace {

ERKScheme one_stage(const std::string& name, Family family, int order, double a11, double b1,
                    double c1, PhiVariant variant = PhiVariant::None) {
    ERKScheme s;
    s.name = name;
    s.family = family;
    s.order = order;
    s.stages = 1;
    s.A = Eigen::MatrixXd::Constant(1, 1, a11);
    s.b = Eigen::VectorXd::Constant(1, b1);
    s.c = Eigen::VectorXd::Constant(1, c1);
    s.phi_variant = variant;
    return s;
}

ERKScheme gauss2(const std::string& name, Family family, PhiVariant variant) {
    const double r3 = std::sqrt(3.0);
    ERKScheme s;
    s.name = name;
    s.family = family;
    s.order = 4;
    s.stages = 2;
    s.A.resize(2, 2);
    s.A << 0.25, 0.25 - r3 / 6.0, 0.25 + r3 / 6.0, 0.25;
    s.b.resize(2);
    s.b << 0.5, 0.5;
    s.c.resize(2);
    s.c << 0.5 - r3 / 6.0, 0.5 + r3 / 6.0;
    s.phi_variant = variant;
    return s;
}

void validate_nodes(const ERKScheme& s) {
    // The node assumption c_i = sum_j a_ij underpins the order >= 2 schemes;
    // the first-order symplectic method deliberately has c_1 != a_11.
    if (s.order < 2) return;
    for (int i = 0; i < s.stages; ++i) {
        const double defect = std::abs(s.c(i) - s.A.row(i).sum());
        if (defect > 1e-14) {
            throw Error("make_scheme: node condition violated for " + s.name);
        }
    }
}

}  // namespace

ERKScheme make_scheme(const std::string& name) {
    ERKScheme s;
    if (name == "imsverk1") {
        // First-order symplectic SVERK: b1 = 1, c1 = 1, a11 = 1/2.
        s = one_stage(name, Family::SVERK, 1, 0.5, 1.0, 1.0);
    } else if (name == "eeuler") {
        s = one_stage(name, Family::PHI_ERK, 1, 0.0, 1.0, 0.0, PhiVariant::ExpEulerExplicit);
    } else if (name == "imeeuler") {
        s = one_stage(name, Family::PHI_ERK, 1, 1.0, 1.0, 1.0, PhiVariant::ExpEulerImplicit);
    } else if (name == "imsverk12") {
        s = one_stage(name, Family::SVERK, 2, 0.5, 1.0, 0.5);
    } else if (name == "immverk12") {
        s = one_stage(name, Family::MVERK, 2, 0.5, 1.0, 0.5);
    } else if (name == "imerk12") {
        s = one_stage(name, Family::PHI_ERK, 2, 0.5, 1.0, 0.5, PhiVariant::Collocation1);
    } else if (name == "imsverk24") {
        s = gauss2(name, Family::SVERK, PhiVariant::None);
    } else if (name == "immverk24") {
        s = gauss2(name, Family::MVERK, PhiVariant::None);
    } else if (name == "imerk24") {
        s = gauss2(name, Family::PHI_ERK, PhiVariant::Collocation2);
    } else {
        throw UnknownMethodError("unknown method '" + name + "'");
    }
    validate_nodes(s);
    return s;
}

const std::vector<std::string>& scheme_catalogue() {
    static const std::vector<std::string> names = {
        "imsverk1",  "eeuler",    "imeeuler",  "imsverk12", "immverk12",
        "imerk12",   "imsverk24", "immverk24", "imerk24"};
    return names;
}

}  // namespace erk

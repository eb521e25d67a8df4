#pragma once

namespace erk {

struct JacobiElliptic {
    double sn;
    double cn;
    double dn;
};

/// Jacobi elliptic functions sn, cn, dn of argument u and MODULUS kappa
/// (so the parameter is m = kappa^2), computed by the descending
/// Landen/arithmetic-geometric-mean transformation.
/// kappa outside [0, 1] -> InvalidParameterError.
JacobiElliptic jacobi_elliptic(double u, double modulus);

/// sn(u; modulus); |sn| <= 1.
double jacobi_sn(double u, double modulus);

}  // namespace erk

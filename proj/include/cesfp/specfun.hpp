#pragma once

namespace cesfp::specfun {

/// Kummer's confluent hypergeometric function 1F1(a; b; z).
///
/// Negative z is evaluated through e^z 1F1(b-a; b; -z) so that the summed
/// series has same-sign terms whenever b-a > 0. Non-positive integer `a`
/// (after the transformation) is summed as the exact finite polynomial.
/// Accurate to ~1e-12 relative for |z| <= 100, |a| <= 50, 0 < b <= 50.
///
/// Throws DomainError if b is zero or a negative integer, OverflowError if the
/// value is not representable.
double hyp1f1(double a, double b, double z);

/// d/dz 1F1(a; b; z) = (a/b) 1F1(a+1; b+1; z).
double hyp1f1_z_derivative(double a, double b, double z);

/// Physicists' Hermite polynomial H_n(x), n <= 200.
double hermite_h(int n, double x);

/// Associated Laguerre polynomial L_n^(alpha)(x), n <= 200, alpha > -1.
double laguerre_l(int n, double alpha, double x);

/// log Gamma(x) for x > 0.
double ln_gamma(double x);

}  // namespace cesfp::specfun

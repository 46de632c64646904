#pragma once

namespace endopriv {

/// Regularized incomplete beta function I_x(a, b) = B(x; a, b) / B(a, b).
///
/// Evaluated with the modified Lentz continued fraction. For
/// x > (a + 1) / (a + b + 2) the symmetry I_x(a, b) = 1 - I_{1-x}(b, a) is
/// applied so the fraction is always evaluated in its fast-converging region.
/// Absolute accuracy is 1e-10 or better; throws std::domain_error for
/// a <= 0, b <= 0 or x outside [0, 1], and std::runtime_error if the fraction
/// fails to converge in 500 iterations.
double regularized_incomplete_beta(double x, double a, double b);

}  // namespace endopriv

#pragma once

// Element-counting model of entropy growth for the baker map with strong
// diffusion. After t steps the density matrix holds 2^t diagonal elements of
// value 2^-t and, for n = 1..t, 2^{t+n-1} off-diagonal elements of value
// 2^-t (1-alpha)^n, giving
//   Tr rho^2 = 2^-t [1 + (1-alpha)^2 (x^t - 1)/(x - 1)],  x = 2 (1-alpha)^2.

namespace qmaps {

struct ToyModelParams {
  double alpha = 0.0;
  int t = 0;
};

double toy_purity(const ToyModelParams& params);
/// ln Tr rho^2, evaluated without forming 2^t.
double toy_log_purity(const ToyModelParams& params);
/// -ln Tr rho^2.
double toy_entropy(const ToyModelParams& params);
/// Finite-difference slope S(t+1) - S(t).
double toy_slope(double alpha, int t);
/// Large-t slope min(ln 2, -2 ln(1-alpha)).
double asymptotic_slope(double alpha);
/// 1 - 2^{-1/2}, where 2 (1-alpha)^2 = 1.
double alpha_critical();

} // namespace qmaps

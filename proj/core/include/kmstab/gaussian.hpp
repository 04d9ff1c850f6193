#pragma once

// Scalar standard-normal machinery used throughout the library.
//
// Everything here is expressed in terms of the standard normal density
// phi and distribution function Phi.  The less common pieces:
//
//   h_function(x, y)  = x*Phi(y - x) - phi(y - x)
//       shows up when integrating (u + x) * phi(u) over a half line; it is
//       the building block of every stable-region inequality.
//   tail_cutoff(t)    = the point d with P(Z > d) = t.
//   tail_mean(x)      = E[Z | Z > x] = phi(x) / (1 - Phi(x)), the mean of
//       the upper tail (inverse Mills ratio).

namespace kmstab {

// Standard normal density.
double normal_pdf(double x);

// Phi(x), via the complementary error function. Absolute error stays at
// machine level over the whole axis; relative error is preserved in the
// left tail.
double normal_cdf(double x);

// 1 - Phi(x) with relative accuracy preserved in the *right* tail.
double normal_tail(double x);

// P(a < Z <= b) without cancellation when both ends sit in the same tail.
// Accepts infinite endpoints.
double normal_interval_mass(double a, double b);

// Inverse of normal_cdf on (0, 1).  Safeguarded Newton iteration with a
// bisection fallback; the result q satisfies |Phi(q) - p| <= 1e-12 (far
// tighter in practice).  Throws std::domain_error outside (0, 1).
double normal_quantile(double p);

// x*Phi(-x + y) - phi(-x + y).
double h_function(double x, double y);

// d(t): the cutoff with upper-tail mass t, i.e. 1 - Phi(d(t)) = t.
// Strictly decreasing in t; d(1/2) = 0. Domain (0, 1).
double tail_cutoff(double t);

// r(x): mean of the upper tail of Z beyond x. Defined for x < 37; beyond
// that the tail mass underflows and we refuse (std::overflow_error).
double tail_mean(double x);

} // namespace kmstab

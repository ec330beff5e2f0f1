#pragma once

namespace cusumlab {

// Gamma function via the Lanczos approximation (g = 7, 9 fixed coefficients),
// with the reflection formula below 0.5.  Relative error <= 1e-10 on (0, 50],
// which is the range the moment formulas use.  Throws for z <= 0.
double gamma_fn(double z);

// Standard normal quantile, Wichura's AS241 rational approximation (PPND16,
// ~1e-15 relative accuracy).  Chosen over ziggurat-style samplers so that
// normal streams are bit-stable across platforms.  p must lie in (0, 1).
double normal_quantile(double p);

// Standard normal CDF via erfc.
double normal_cdf(double x);

// E|N(0, variance)|^r = 2^{r/2} Gamma((r+1)/2) variance^{r/2} / sqrt(pi).
// r = 2 returns the variance exactly (no gamma evaluation on that path).
double abs_normal_moment(double r, double variance);

} // namespace cusumlab

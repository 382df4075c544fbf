#pragma once

#include <complex>

namespace flagres {

using Complex = std::complex<double>;

/// Guard used for divisions and branch cuts when evaluating expressions.
inline constexpr double kEvalGuard = 1e-9;

/// Principal value of z^e via polar form. Shared by the tree evaluator and every
/// grid kernel so all evaluation paths agree bit for bit.
Complex principal_pow(double re, double im, double exponent);

/// Distance from z to the closed negative real axis.
double distance_to_branch_cut(double re, double im);

namespace arith {
namespace {

// Fixed operation order; the SIMD kernels replicate these formulas exactly.
[[maybe_unused]] inline void mul(double ar, double ai, double br, double bi, double& rr, double& ri) {
  const double re = ar * br - ai * bi;
  const double im = ar * bi + ai * br;
  rr = re;
  ri = im;
}

[[maybe_unused]] inline void div(double ar, double ai, double br, double bi, double& rr, double& ri) {
  const double d = br * br + bi * bi;
  const double re = (ar * br + ai * bi) / d;
  const double im = (ai * br - ar * bi) / d;
  rr = re;
  ri = im;
}

[[maybe_unused]] inline double norm2(double re, double im) { return re * re + im * im; }

// n >= 1, left-to-right binary exponentiation starting at the top bit.
[[maybe_unused]] inline void ipow(double ar, double ai, unsigned n, double& rr, double& ri) {
  int top = 31;
  while (!((n >> top) & 1u)) --top;
  double xr = ar, xi = ai;
  for (int bit = top - 1; bit >= 0; --bit) {
    mul(xr, xi, xr, xi, xr, xi);
    if ((n >> bit) & 1u) mul(xr, xi, ar, ai, xr, xi);
  }
  rr = xr;
  ri = xi;
}

}  // namespace
}  // namespace arith

}  // namespace flagres

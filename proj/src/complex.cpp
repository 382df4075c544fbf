#include "flagres/complex.hpp"

#include "flagres/error.hpp"

#include <cmath>

namespace flagres {

Complex principal_pow(double re, double im, double exponent) {
  const double r = std::hypot(re, im);
  const double phi = std::atan2(im, re);
  const double mag = std::pow(r, exponent);
  const double ang = exponent * phi;
  return {mag * std::cos(ang), mag * std::sin(ang)};
}

double distance_to_branch_cut(double re, double im) {
  if (re >= 0.0) return std::hypot(re, im);
  return std::fabs(im);
}

const char* to_string(EvalErrorKind kind) noexcept {
  switch (kind) {
    case EvalErrorKind::DivisionByZero: return "division-by-zero";
    case EvalErrorKind::BranchCut: return "branch-cut";
    case EvalErrorKind::DenominatorVanishes: return "denominator-vanishes";
    case EvalErrorKind::Overflow: return "overflow";
    case EvalErrorKind::UnboundVariable: return "unbound-variable";
  }
  return "unknown";
}

}  // namespace flagres

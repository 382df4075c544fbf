#pragma once

#include "flagres/complex.hpp"
#include "flagres/expr.hpp"

#include <cstddef>
#include <map>
#include <span>
#include <utility>
#include <vector>

namespace flagres {

/// Holomorphic differential form sum c_I dz_I with strictly increasing index
/// tuples I and Expr coefficients; zero coefficients are never stored.
class DifferentialForm {
public:
  using Index = std::vector<std::size_t>;

  DifferentialForm(std::size_t nvars, std::size_t degree) : nvars_(nvars), degree_(degree) {}

  static DifferentialForm function(std::size_t nvars, const Expr& f);
  /// sum coeffs[i] dz_i
  static DifferentialForm one_form(std::size_t nvars, std::span<const Expr> coeffs);
  /// dz_{i1} ^ ... ^ dz_{ik} in the given (not necessarily sorted) order.
  static DifferentialForm basis(std::size_t nvars, const Index& indices);

  std::size_t nvars() const noexcept { return nvars_; }
  std::size_t degree() const noexcept { return degree_; }
  const std::map<Index, Expr>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  Expr coefficient(const Index& sorted_indices) const;

  /// Adds c dz_{indices}, reordering the indices with the permutation sign.
  void add_term(Index indices, const Expr& c);

  DifferentialForm operator+(const DifferentialForm& o) const;
  DifferentialForm operator-(const DifferentialForm& o) const;
  DifferentialForm operator-() const;
  DifferentialForm scale(const Expr& c) const;

  /// Structural equality of normalized coefficients.
  bool operator==(const DifferentialForm& o) const;

private:
  void check_compatible(const DifferentialForm& o) const;

  std::size_t nvars_;
  std::size_t degree_;
  std::map<Index, Expr> terms_;
};

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b);
/// k-fold wedge power; a^0 is the constant function 1.
DifferentialForm wedge_power(const DifferentialForm& a, unsigned k);
DifferentialForm d(const DifferentialForm& a);

/// df / f.
DifferentialForm log_derivative(std::size_t nvars, const Expr& f);

/// True when every coefficient expands to the zero polynomial.
bool is_zero_polynomial_form(const DifferentialForm& a, const VarList& vars);

/// psi_j = (2 pi i)^(two_pi_i_exponent) * form.
struct PsiForm {
  DifferentialForm form;
  int two_pi_i_exponent;
};

/// theta12 ^ (d theta2)^j ^ (d theta12)^(k1 - j), degree 2 k1 + 1.
PsiForm psi_form(const DifferentialForm& theta12, const DifferentialForm& theta2, unsigned j, unsigned k1);

/// Largest modulus of any coefficient of d(a) over the sample points.
double closedness_defect(const DifferentialForm& a, std::span<const std::vector<Complex>> points);

/// d(a) below `tol` in modulus at every sample point.
bool check_closed(const DifferentialForm& a, std::span<const std::vector<Complex>> points, double tol = 1e-9);

/// lhs = sum_{j=0}^{k2} binom(k1+1, j) theta12 ^ (d theta2)^j ^ (d theta12)^(k1-j),
/// rhs = theta1 ^ (d theta1)^k1 with theta1 = theta2 + theta12.
/// The two agree only up to exact forms; callers compare residues, never the forms.
std::pair<DifferentialForm, DifferentialForm> gv_combination(const DifferentialForm& theta2,
                                                             const DifferentialForm& theta12, unsigned k1,
                                                             unsigned k2);

}  // namespace flagres

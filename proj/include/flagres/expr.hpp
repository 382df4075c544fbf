#pragma once

#include "flagres/complex.hpp"
#include "flagres/poly.hpp"
#include "flagres/rational.hpp"

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace flagres {

/// Node kinds of a normalized expression. Quotients a/b are stored as a * b^(-1).
enum class ExprKind { Constant = 0, Variable = 1, Power = 2, Product = 3, Sum = 4 };

class Expr;

namespace detail {
struct ExprNode;
}

/// Immutable, normalized analytic expression over chart variables (referenced by
/// index). Every constructor normalizes: sums and products are flattened, like
/// terms and like factors are collected, constants folded, and children sorted in
/// a canonical order. Normalization is structural only; it never expands products
/// of sums.
class Expr {
public:
  Expr();  // the constant 0

  static Expr constant(const Rational& value);
  static Expr constant(long value) { return constant(Rational(value)); }
  static Expr variable(std::size_t index);

  static Expr sum(std::vector<Expr> terms);
  static Expr product(std::vector<Expr> factors);
  static Expr power(const Expr& base, const Rational& exponent);

  ExprKind kind() const noexcept;
  const Rational& value() const;       // Constant
  std::size_t var_index() const;       // Variable
  const Rational& exponent() const;    // Power
  const Expr& base() const;            // Power
  std::span<const Expr> children() const;  // Sum, Product

  bool is_zero() const;
  bool is_constant() const { return kind() == ExprKind::Constant; }
  bool is_constant(long v) const;
  /// True when no variable occurs anywhere in the tree.
  bool is_closed() const;
  /// Largest variable index + 1, or 0 for closed expressions.
  std::size_t variable_bound() const;
  std::size_t hash() const noexcept;

  /// Canonical total order on normalized expressions.
  friend int compare(const Expr& a, const Expr& b);
  friend bool operator==(const Expr& a, const Expr& b) { return compare(a, b) == 0; }
  friend bool operator<(const Expr& a, const Expr& b) { return compare(a, b) < 0; }

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);

  const detail::ExprNode* node() const noexcept { return node_.get(); }

private:
  explicit Expr(std::shared_ptr<const detail::ExprNode> node) : node_(std::move(node)) {}
  friend struct ExprBuilder;

  std::shared_ptr<const detail::ExprNode> node_;
};

struct ExprHash {
  std::size_t operator()(const Expr& e) const noexcept { return e.hash(); }
};

/// Parses the expression grammar: identifiers, integer literals, + - * / ^,
/// parentheses and unary minus. `^` binds tightest and is right-associative; its
/// exponent must reduce to a rational constant.
Expr parse(std::string_view text, std::span<const std::string> vars);

/// Prints text that parses back to the same normalized expression.
std::string print(const Expr& e, std::span<const std::string> vars);

/// Rebuilds e bottom-up through the normalizing constructors.
Expr normalize(const Expr& e);

/// Tree evaluation with the principal branch for fractional powers.
/// Raises EvalError on branch-cut proximity, near-zero divisors and overflow.
Complex eval(const Expr& e, std::span<const Complex> point, double guard = kEvalGuard);

Expr diff(const Expr& e, std::size_t var);

/// Substitutes `replacement[i]` for variable i.
Expr substitute(const Expr& e, std::span<const Expr> replacement);

/// Exact expansion; throws NonPolynomialError naming the offending node.
Polynomial to_polynomial(const Expr& e, const VarList& vars);

/// Taylor polynomial of e at `point` up to total degree `degree`, written in the
/// shifted variables (x - point). Throws NonPolynomialError when e is not analytic
/// at the point with rational Taylor coefficients.
Polynomial taylor(const Expr& e, const VarList& vars, std::span<const Rational> point,
                  unsigned degree);

Expr from_polynomial(const Polynomial& p);

}  // namespace flagres

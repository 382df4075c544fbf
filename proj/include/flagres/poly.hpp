#pragma once

#include "flagres/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace flagres {

using VarList = std::shared_ptr<const std::vector<std::string>>;

VarList make_vars(std::vector<std::string> names);

/// Exponent vector, one entry per ambient variable.
class Monomial {
public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {}

  static Monomial variable(std::size_t nvars, std::size_t index, std::uint32_t power = 1);

  std::size_t size() const noexcept { return exps_.size(); }
  std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
  std::uint32_t& operator[](std::size_t i) { return exps_[i]; }
  const std::vector<std::uint32_t>& exponents() const noexcept { return exps_; }

  std::uint64_t degree() const noexcept;
  bool is_one() const noexcept;
  bool divides(const Monomial& other) const;
  /// Index of the variable if this is a pure power x_i^k with k > 0.
  std::optional<std::size_t> pure_power_variable() const;

  Monomial operator*(const Monomial& other) const;
  /// Requires divides(other) to hold in the direction other / *this.
  Monomial quotient_of(const Monomial& other) const;
  Monomial lcm(const Monomial& other) const;
  bool coprime(const Monomial& other) const;

  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;

private:
  std::vector<std::uint32_t> exps_;
};

/// Lex and grevlex are global well-orders. Local is negative grevlex: lower total
/// degree ranks higher, so the constant monomial is the largest.
enum class MonomialOrder { Lex, GrevLex, Local };

const char* to_string(MonomialOrder order) noexcept;

/// Negative, zero or positive as a is smaller, equal or larger than b.
int compare(MonomialOrder order, const Monomial& a, const Monomial& b);

inline bool is_global(MonomialOrder order) { return order != MonomialOrder::Local; }

struct Term {
  Monomial monomial;
  Rational coeff;
};

/// Sparse polynomial over the rationals. Zero coefficients are never stored.
class Polynomial {
public:
  Polynomial() = default;
  explicit Polynomial(VarList vars);

  static Polynomial constant(VarList vars, const Rational& c);
  static Polynomial variable(VarList vars, std::size_t index);
  static Polynomial monomial(VarList vars, Monomial m, const Rational& c);

  const VarList& vars() const noexcept { return vars_; }
  std::size_t nvars() const noexcept { return vars_ ? vars_->size() : 0; }
  const std::map<Monomial, Rational>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  std::uint64_t total_degree() const;
  /// Lowest total degree among terms (order of vanishing at the origin).
  std::uint64_t order() const;

  /// Terms sorted from largest to smallest under the order.
  std::vector<Term> sorted_terms(MonomialOrder order) const;
  /// Throws AlgebraError on the zero polynomial.
  Term leading_term(MonomialOrder order) const;

  void add_term(const Monomial& m, const Rational& c);

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial scale(const Rational& c) const;
  Polynomial mul_term(const Monomial& m, const Rational& c) const;
  Polynomial pow(unsigned n) const;

  /// Drops every term of total degree above max_degree.
  Polynomial truncate(std::uint64_t max_degree) const;
  Rational evaluate(std::span<const Rational> point) const;
  /// p(x + shift): moves `shift` to the origin.
  Polynomial translate(std::span<const Rational> shift) const;
  Polynomial derivative(std::size_t index) const;

  bool same_ambient(const Polynomial& other) const;
  bool operator==(const Polynomial& other) const;

  /// Grevlex-descending human readable form, e.g. "x^2 - 3/2*x*y + 1".
  std::string to_string() const;

private:
  void check_ambient(const Polynomial& other) const;

  VarList vars_;
  std::map<Monomial, Rational> terms_;
};

struct DivisionResult {
  Polynomial remainder;
  std::vector<Polynomial> quotients;
};

/// Multivariate division by an ordered divisor list. Global orders only.
DivisionResult reduce(const Polynomial& f, std::span<const Polynomial> divisors, MonomialOrder order);

}  // namespace flagres

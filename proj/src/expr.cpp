#include "flagres/expr.hpp"

#include "flagres/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

namespace flagres {

namespace detail {

struct ExprNode {
  ExprKind kind = ExprKind::Constant;
  Rational value;  // constant value or power exponent
  std::size_t var = 0;
  std::vector<Expr> children;  // power: {base}
  std::size_t hash = 0;
  std::size_t var_bound = 0;
};

}  // namespace detail

namespace {

std::size_t hash_rational(const Rational& q) {
  const auto n = mpz_fdiv_ui(q.get_num().get_mpz_t(), 2147483647ul);
  const auto d = mpz_fdiv_ui(q.get_den().get_mpz_t(), 2147483647ul);
  return std::hash<unsigned long>{}(n * 31u + d + (sgn(q) < 0 ? 17u : 0u));
}

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2));
}

}  // namespace

struct ExprBuilder {
  static Expr make(detail::ExprNode node) {
    std::size_t h = static_cast<std::size_t>(node.kind) * 1000003u;
    std::size_t bound = 0;
    switch (node.kind) {
      case ExprKind::Constant: h = mix(h, hash_rational(node.value)); break;
      case ExprKind::Variable:
        h = mix(h, node.var);
        bound = node.var + 1;
        break;
      case ExprKind::Power: h = mix(h, hash_rational(node.value)); [[fallthrough]];
      case ExprKind::Product:
      case ExprKind::Sum:
        for (const auto& c : node.children) {
          h = mix(h, c.hash());
          bound = std::max(bound, c.variable_bound());
        }
        break;
    }
    node.hash = h;
    node.var_bound = bound;
    return Expr(std::make_shared<const detail::ExprNode>(std::move(node)));
  }

  static Expr raw_constant(const Rational& v) {
    detail::ExprNode n;
    n.kind = ExprKind::Constant;
    n.value = v;
    return make(std::move(n));
  }

  static Expr raw_variable(std::size_t i) {
    detail::ExprNode n;
    n.kind = ExprKind::Variable;
    n.var = i;
    return make(std::move(n));
  }

  static Expr raw_power(const Expr& base, const Rational& e) {
    detail::ExprNode n;
    n.kind = ExprKind::Power;
    n.value = e;
    n.children = {base};
    return make(std::move(n));
  }

  static Expr raw_nary(ExprKind kind, std::vector<Expr> children) {
    detail::ExprNode n;
    n.kind = kind;
    n.children = std::move(children);
    return make(std::move(n));
  }
};

namespace {

// Splits a non-constant term into (numeric coefficient, coefficient-free rest).
std::pair<Rational, Expr> split_coefficient(const Expr& t) {
  if (t.kind() == ExprKind::Product) {
    auto ch = t.children();
    if (ch.front().kind() == ExprKind::Constant) {
      if (ch.size() == 2) return {ch.front().value(), ch[1]};
      return {ch.front().value(), ExprBuilder::raw_nary(ExprKind::Product, {ch.begin() + 1, ch.end()})};
    }
  }
  return {Rational(1), t};
}

Expr with_coefficient(const Rational& c, const Expr& rest) {
  if (c == 1) return rest;
  std::vector<Expr> ch{ExprBuilder::raw_constant(c)};
  if (rest.kind() == ExprKind::Product)
    ch.insert(ch.end(), rest.children().begin(), rest.children().end());
  else
    ch.push_back(rest);
  return ExprBuilder::raw_nary(ExprKind::Product, std::move(ch));
}

bool term_is_negative(const Expr& t) {
  if (t.kind() == ExprKind::Constant) return t.value() < 0;
  return split_coefficient(t).first < 0;
}

int cmp_rational(const Rational& a, const Rational& b) {
  const int c = cmp(a, b);
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

}  // namespace

// ---------------------------------------------------------------- basics

Expr::Expr() : Expr(ExprBuilder::raw_constant(0)) {}

Expr Expr::constant(const Rational& value) { return ExprBuilder::raw_constant(value); }

Expr Expr::variable(std::size_t index) { return ExprBuilder::raw_variable(index); }

ExprKind Expr::kind() const noexcept { return node_->kind; }

const Rational& Expr::value() const {
  if (kind() != ExprKind::Constant) throw Error("Expr::value on a non-constant node");
  return node_->value;
}

std::size_t Expr::var_index() const {
  if (kind() != ExprKind::Variable) throw Error("Expr::var_index on a non-variable node");
  return node_->var;
}

const Rational& Expr::exponent() const {
  if (kind() != ExprKind::Power) throw Error("Expr::exponent on a non-power node");
  return node_->value;
}

const Expr& Expr::base() const {
  if (kind() != ExprKind::Power) throw Error("Expr::base on a non-power node");
  return node_->children.front();
}

std::span<const Expr> Expr::children() const { return node_->children; }

bool Expr::is_zero() const { return kind() == ExprKind::Constant && node_->value == 0; }

bool Expr::is_constant(long v) const { return kind() == ExprKind::Constant && node_->value == v; }

bool Expr::is_closed() const { return node_->var_bound == 0; }

std::size_t Expr::variable_bound() const { return node_->var_bound; }

std::size_t Expr::hash() const noexcept { return node_->hash; }

int compare(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return 0;
  const auto ka = static_cast<int>(a.kind()), kb = static_cast<int>(b.kind());
  if (ka != kb) return ka < kb ? -1 : 1;
  switch (a.kind()) {
    case ExprKind::Constant: return cmp_rational(a.node_->value, b.node_->value);
    case ExprKind::Variable:
      if (a.node_->var != b.node_->var) return a.node_->var < b.node_->var ? -1 : 1;
      return 0;
    case ExprKind::Power: {
      const int c = compare(a.base(), b.base());
      if (c) return c;
      return cmp_rational(a.node_->value, b.node_->value);
    }
    case ExprKind::Product:
    case ExprKind::Sum: {
      auto ca = a.children(), cb = b.children();
      const std::size_t n = std::min(ca.size(), cb.size());
      for (std::size_t i = 0; i < n; ++i)
        if (const int c = compare(ca[i], cb[i])) return c;
      if (ca.size() != cb.size()) return ca.size() < cb.size() ? -1 : 1;
      return 0;
    }
  }
  return 0;
}

// ---------------------------------------------------------------- normalizing constructors

Expr Expr::sum(std::vector<Expr> terms) {
  Rational constant = 0;
  std::map<Expr, Rational> collected;
  std::function<void(const Expr&)> absorb = [&](const Expr& t) {
    switch (t.kind()) {
      case ExprKind::Constant: constant += t.value(); break;
      case ExprKind::Sum:
        for (const auto& c : t.children()) absorb(c);
        break;
      default: {
        auto [c, rest] = split_coefficient(t);
        collected[rest] += c;
      }
    }
  };
  for (const auto& t : terms) absorb(t);
  std::vector<Expr> out;
  for (const auto& [rest, c] : collected)
    if (c != 0) out.push_back(with_coefficient(c, rest));
  if (constant != 0) out.push_back(ExprBuilder::raw_constant(constant));
  if (out.empty()) return Expr::constant(0);
  if (out.size() == 1) return out.front();
  return ExprBuilder::raw_nary(ExprKind::Sum, std::move(out));
}

Expr Expr::product(std::vector<Expr> factors) {
  Rational coeff = 1;
  std::map<Expr, Rational> powers;
  std::function<void(const Expr&)> absorb = [&](const Expr& f) {
    switch (f.kind()) {
      case ExprKind::Constant: coeff *= f.value(); break;
      case ExprKind::Product:
        for (const auto& c : f.children()) absorb(c);
        break;
      case ExprKind::Power: powers[f.base()] += f.exponent(); break;
      default: powers[f] += 1;
    }
  };
  for (const auto& f : factors) absorb(f);
  if (coeff == 0) return Expr::constant(0);

  std::vector<Expr> out;
  bool needs_pass = false;
  for (const auto& [base, e] : powers) {
    if (e == 0) continue;
    Expr p = power(base, e);
    if (p.kind() == ExprKind::Constant || p.kind() == ExprKind::Product) needs_pass = true;
    out.push_back(std::move(p));
  }
  if (needs_pass) {
    out.push_back(ExprBuilder::raw_constant(coeff));
    return product(std::move(out));
  }
  std::sort(out.begin(), out.end());
  if (out.empty()) return ExprBuilder::raw_constant(coeff);
  if (coeff == 1 && out.size() == 1) return out.front();
  if (coeff != 1) out.insert(out.begin(), ExprBuilder::raw_constant(coeff));
  return ExprBuilder::raw_nary(ExprKind::Product, std::move(out));
}

Expr Expr::power(const Expr& base, const Rational& e) {
  if (e == 0) return constant(1);
  if (e == 1) return base;
  const bool integral = is_integer(e);
  switch (base.kind()) {
    case ExprKind::Constant: {
      const Rational& v = base.value();
      if (v == 0) {
        if (e > 0) return constant(0);
        throw EvalError(EvalErrorKind::DivisionByZero, "division by zero in a constant expression");
      }
      if (integral) return constant(pow_int(v, e.get_num().get_si()));
      if (v == 1) return constant(1);
      if (v > 0) {
        if (auto r = exact_root(v, e.get_den().get_ui())) return constant(pow_int(*r, e.get_num().get_si()));
      }
      return ExprBuilder::raw_power(base, e);
    }
    case ExprKind::Power:
      if (integral) return power(base.base(), base.exponent() * e);
      return ExprBuilder::raw_power(base, e);
    case ExprKind::Product: {
      if (integral) {
        std::vector<Expr> fs;
        for (const auto& c : base.children()) fs.push_back(power(c, e));
        return product(std::move(fs));
      }
      auto [c, rest] = split_coefficient(base);
      if (c != 1 && c > 0) {
        if (auto r = exact_root(c, e.get_den().get_ui()))
          return product({constant(pow_int(*r, e.get_num().get_si())), ExprBuilder::raw_power(rest, e)});
      }
      return ExprBuilder::raw_power(base, e);
    }
    case ExprKind::Variable:
    case ExprKind::Sum: return ExprBuilder::raw_power(base, e);
  }
  return ExprBuilder::raw_power(base, e);
}

Expr operator+(const Expr& a, const Expr& b) { return Expr::sum({a, b}); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::sum({a, -b}); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::product({a, b}); }
Expr operator/(const Expr& a, const Expr& b) { return Expr::product({a, Expr::power(b, -1)}); }
Expr operator-(const Expr& a) { return Expr::product({Expr::constant(-1), a}); }

Expr normalize(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Constant:
    case ExprKind::Variable: return e;
    case ExprKind::Power: return Expr::power(normalize(e.base()), e.exponent());
    case ExprKind::Product:
    case ExprKind::Sum: {
      std::vector<Expr> ch;
      for (const auto& c : e.children()) ch.push_back(normalize(c));
      return e.kind() == ExprKind::Sum ? Expr::sum(std::move(ch)) : Expr::product(std::move(ch));
    }
  }
  return e;
}

// ---------------------------------------------------------------- parser

namespace {

class Parser {
public:
  Parser(std::string_view text, std::span<const std::string> vars) : text_(text), vars_(vars) {}

  Expr run() {
    Expr e = expr();
    skip_ws();
    if (pos_ < text_.size()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return e;
  }

private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr expr() {
    std::vector<Expr> terms{term()};
    for (;;) {
      if (accept('+'))
        terms.push_back(term());
      else if (accept('-'))
        terms.push_back(-term());
      else
        break;
    }
    return Expr::sum(std::move(terms));
  }

  Expr term() {
    Expr acc = unary();
    for (;;) {
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        skip_ws();
        const std::size_t at = pos_;
        Expr d = unary();
        if (d.is_zero()) throw ParseError("division by zero", at);
        acc = acc / d;
      } else {
        break;
      }
    }
    return acc;
  }

  Expr unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (accept('^')) {
      skip_ws();
      const std::size_t at = pos_;
      Expr ex = unary();
      if (ex.kind() != ExprKind::Constant) throw ParseError("exponent must be a rational constant", at);
      try {
        return Expr::power(base, ex.value());
      } catch (const EvalError&) {
        throw ParseError("zero raised to a negative power", at);
      }
    }
    return base;
  }

  Expr primary() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return Expr::constant(Rational(Integer(std::string(text_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      const std::string_view name = text_.substr(start, pos_ - start);
      for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) return Expr::variable(i);
      throw ParseError("undeclared variable '" + std::string(name) + "'", start);
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  std::string_view text_;
  std::span<const std::string> vars_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text, std::span<const std::string> vars) { return Parser(text, vars).run(); }

// ---------------------------------------------------------------- printer

namespace {

std::string print_node(const Expr& e, std::span<const std::string> vars);

std::string var_name(std::size_t i, std::span<const std::string> vars) {
  return i < vars.size() ? vars[i] : "x" + std::to_string(i);
}

std::string print_factor(const Expr& f, std::span<const std::string> vars) {
  if (f.kind() == ExprKind::Sum) return "(" + print_node(f, vars) + ")";
  return print_node(f, vars);
}

std::string print_node(const Expr& e, std::span<const std::string> vars) {
  switch (e.kind()) {
    case ExprKind::Constant: return to_string(e.value());
    case ExprKind::Variable: return var_name(e.var_index(), vars);
    case ExprKind::Power: {
      const Expr& b = e.base();
      const bool atom = b.kind() == ExprKind::Variable ||
                        (b.kind() == ExprKind::Constant && is_integer(b.value()) && b.value() >= 0);
      std::string out = atom ? print_node(b, vars) : "(" + print_node(b, vars) + ")";
      const Rational& x = e.exponent();
      out += "^";
      out += (is_integer(x) && x >= 0) ? to_string(x) : "(" + to_string(x) + ")";
      return out;
    }
    case ExprKind::Product: {
      auto ch = e.children();
      std::string out;
      std::size_t i = 0;
      if (ch.front().kind() == ExprKind::Constant) {
        const Rational& c = ch.front().value();
        out = c == -1 ? "-" : to_string(c) + "*";
        i = 1;
      }
      for (bool first = true; i < ch.size(); ++i, first = false) {
        if (!first) out += "*";
        out += print_factor(ch[i], vars);
      }
      return out;
    }
    case ExprKind::Sum: {
      std::string out;
      bool first = true;
      for (const auto& t : e.children()) {
        if (first) {
          out = print_node(t, vars);
          first = false;
          continue;
        }
        if (term_is_negative(t)) {
          out += " - ";
          out += print_node(-t, vars);
        } else {
          out += " + ";
          out += print_node(t, vars);
        }
      }
      return out;
    }
  }
  return {};
}

}  // namespace

std::string print(const Expr& e, std::span<const std::string> vars) { return print_node(e, vars); }

// ---------------------------------------------------------------- evaluation

namespace {

struct Value {
  double re, im;
};

Value eval_node(const Expr& e, std::span<const Complex> point, double guard) {
  switch (e.kind()) {
    case ExprKind::Constant: return {to_double(e.value()), 0.0};
    case ExprKind::Variable: {
      const auto i = e.var_index();
      if (i >= point.size())
        throw EvalError(EvalErrorKind::UnboundVariable, "variable index " + std::to_string(i) + " unassigned");
      return {point[i].real(), point[i].imag()};
    }
    case ExprKind::Sum: {
      Value acc{0.0, 0.0};
      bool first = true;
      for (const auto& c : e.children()) {
        const Value v = eval_node(c, point, guard);
        if (first) {
          acc = v;
          first = false;
        } else {
          acc.re = acc.re + v.re;
          acc.im = acc.im + v.im;
        }
      }
      return acc;
    }
    case ExprKind::Product: {
      Value acc{1.0, 0.0};
      bool first = true;
      for (const auto& c : e.children()) {
        const Value v = eval_node(c, point, guard);
        if (first) {
          acc = v;
          first = false;
        } else {
          arith::mul(acc.re, acc.im, v.re, v.im, acc.re, acc.im);
        }
      }
      return acc;
    }
    case ExprKind::Power: {
      const Value b = eval_node(e.base(), point, guard);
      const Rational& x = e.exponent();
      if (is_integer(x)) {
        const long n = x.get_num().get_si();
        Value p;
        arith::ipow(b.re, b.im, static_cast<unsigned>(n < 0 ? -n : n), p.re, p.im);
        if (n > 0) return p;
        if (arith::norm2(b.re, b.im) < guard * guard)
          throw EvalError(EvalErrorKind::DivisionByZero, "division by zero");
        Value r;
        arith::div(1.0, 0.0, p.re, p.im, r.re, r.im);
        return r;
      }
      if (distance_to_branch_cut(b.re, b.im) <= guard)
        throw EvalError(EvalErrorKind::BranchCut, "fractional power base too close to the branch cut");
      const Complex r = principal_pow(b.re, b.im, to_double(x));
      return {r.real(), r.imag()};
    }
  }
  return {0.0, 0.0};
}

}  // namespace

Complex eval(const Expr& e, std::span<const Complex> point, double guard) {
  const Value v = eval_node(e, point, guard);
  if (!std::isfinite(v.re) || !std::isfinite(v.im))
    throw EvalError(EvalErrorKind::Overflow, "non-finite expression value");
  return {v.re, v.im};
}

// ---------------------------------------------------------------- calculus

Expr diff(const Expr& e, std::size_t var) {
  if (e.variable_bound() <= var) return Expr::constant(0);
  switch (e.kind()) {
    case ExprKind::Constant: return Expr::constant(0);
    case ExprKind::Variable: return Expr::constant(e.var_index() == var ? 1 : 0);
    case ExprKind::Sum: {
      std::vector<Expr> ts;
      for (const auto& c : e.children()) ts.push_back(diff(c, var));
      return Expr::sum(std::move(ts));
    }
    case ExprKind::Product: {
      auto ch = e.children();
      std::vector<Expr> ts;
      for (std::size_t i = 0; i < ch.size(); ++i) {
        Expr d = diff(ch[i], var);
        if (d.is_zero()) continue;
        std::vector<Expr> fs(ch.begin(), ch.end());
        fs[i] = d;
        ts.push_back(Expr::product(std::move(fs)));
      }
      return Expr::sum(std::move(ts));
    }
    case ExprKind::Power: {
      Expr d = diff(e.base(), var);
      if (d.is_zero()) return Expr::constant(0);
      return Expr::product({Expr::constant(e.exponent()), Expr::power(e.base(), e.exponent() - 1), d});
    }
  }
  return Expr::constant(0);
}

Expr substitute(const Expr& e, std::span<const Expr> replacement) {
  switch (e.kind()) {
    case ExprKind::Constant: return e;
    case ExprKind::Variable:
      return e.var_index() < replacement.size() ? replacement[e.var_index()] : e;
    case ExprKind::Power: return Expr::power(substitute(e.base(), replacement), e.exponent());
    case ExprKind::Sum:
    case ExprKind::Product: {
      std::vector<Expr> ch;
      for (const auto& c : e.children()) ch.push_back(substitute(c, replacement));
      return e.kind() == ExprKind::Sum ? Expr::sum(std::move(ch)) : Expr::product(std::move(ch));
    }
  }
  return e;
}

// ---------------------------------------------------------------- polynomial bridge

Polynomial to_polynomial(const Expr& e, const VarList& vars) {
  switch (e.kind()) {
    case ExprKind::Constant: return Polynomial::constant(vars, e.value());
    case ExprKind::Variable:
      if (e.var_index() >= vars->size()) throw AmbientMismatch();
      return Polynomial::variable(vars, e.var_index());
    case ExprKind::Sum: {
      Polynomial p(vars);
      for (const auto& c : e.children()) p = p + to_polynomial(c, vars);
      return p;
    }
    case ExprKind::Product: {
      Polynomial p = Polynomial::constant(vars, 1);
      for (const auto& c : e.children()) p = p * to_polynomial(c, vars);
      return p;
    }
    case ExprKind::Power:
      if (is_integer(e.exponent()) && e.exponent() >= 0)
        return to_polynomial(e.base(), vars).pow(static_cast<unsigned>(e.exponent().get_num().get_ui()));
      throw NonPolynomialError("non-polynomial node: " + print(e, *vars));
  }
  throw NonPolynomialError("non-polynomial node");
}

namespace {

Polynomial mul_truncated(const Polynomial& a, const Polynomial& b, unsigned degree) {
  Polynomial r(a.vars());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      if (ma.degree() + mb.degree() > degree) continue;
      r.add_term(ma * mb, ca * cb);
    }
  return r;
}

Polynomial taylor_node(const Expr& e, const VarList& vars, std::span<const Rational> point, unsigned degree) {
  switch (e.kind()) {
    case ExprKind::Constant: return Polynomial::constant(vars, e.value());
    case ExprKind::Variable: {
      const auto i = e.var_index();
      if (i >= vars->size()) throw AmbientMismatch();
      return (Polynomial::variable(vars, i) + Polynomial::constant(vars, point[i])).truncate(degree);
    }
    case ExprKind::Sum: {
      Polynomial p(vars);
      for (const auto& c : e.children()) p = p + taylor_node(c, vars, point, degree);
      return p;
    }
    case ExprKind::Product: {
      Polynomial p = Polynomial::constant(vars, 1);
      for (const auto& c : e.children()) p = mul_truncated(p, taylor_node(c, vars, point, degree), degree);
      return p;
    }
    case ExprKind::Power: {
      const Polynomial s = taylor_node(e.base(), vars, point, degree);
      const Rational& x = e.exponent();
      if (is_integer(x) && x >= 0) {
        Polynomial r = Polynomial::constant(vars, 1);
        for (unsigned long k = 0; k < x.get_num().get_ui(); ++k) r = mul_truncated(r, s, degree);
        return r;
      }
      const Rational c0 = s.constant_term();
      if (c0 == 0)
        throw NonPolynomialError("not analytic at the expansion point: " + print(e, *vars));
      Rational lead;
      if (is_integer(x)) {
        lead = pow_int(c0, x.get_num().get_si());
      } else {
        auto root = c0 > 0 ? exact_root(c0, x.get_den().get_ui()) : std::nullopt;
        if (!root) throw NonPolynomialError("Taylor coefficients are not rational for " + print(e, *vars));
        lead = pow_int(*root, x.get_num().get_si());
      }
      // (c0 (1 + t))^x = c0^x * sum_k binom(x, k) t^k, with t of order >= 1.
      const Polynomial t = (s - Polynomial::constant(vars, c0)).scale(Rational(1) / c0);
      Polynomial series = Polynomial::constant(vars, 1);
      Polynomial tk = Polynomial::constant(vars, 1);
      for (unsigned k = 1; k <= degree; ++k) {
        tk = mul_truncated(tk, t, degree);
        if (tk.is_zero()) break;
        series = series + tk.scale(binomial(x, k));
      }
      return series.scale(lead);
    }
  }
  return Polynomial(vars);
}

}  // namespace

Polynomial taylor(const Expr& e, const VarList& vars, std::span<const Rational> point, unsigned degree) {
  if (point.size() != vars->size()) throw AmbientMismatch();
  return taylor_node(e, vars, point, degree);
}

Expr from_polynomial(const Polynomial& p) {
  std::vector<Expr> terms;
  for (const auto& [m, c] : p.terms()) {
    std::vector<Expr> fs{Expr::constant(c)};
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i]) fs.push_back(Expr::power(Expr::variable(i), m[i]));
    terms.push_back(Expr::product(std::move(fs)));
  }
  return Expr::sum(std::move(terms));
}

}  // namespace flagres

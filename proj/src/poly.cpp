#include "flagres/poly.hpp"

#include "flagres/error.hpp"

#include <algorithm>
#include <sstream>

namespace flagres {

VarList make_vars(std::vector<std::string> names) {
  return std::make_shared<const std::vector<std::string>>(std::move(names));
}

// ---------------------------------------------------------------- Monomial

Monomial Monomial::variable(std::size_t nvars, std::size_t index, std::uint32_t power) {
  Monomial m(nvars);
  m.exps_.at(index) = power;
  return m;
}

std::uint64_t Monomial::degree() const noexcept {
  std::uint64_t d = 0;
  for (auto e : exps_) d += e;
  return d;
}

bool Monomial::is_one() const noexcept {
  return std::all_of(exps_.begin(), exps_.end(), [](auto e) { return e == 0; });
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] > other.exps_[i]) return false;
  return true;
}

std::optional<std::size_t> Monomial::pure_power_variable() const {
  std::optional<std::size_t> found;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] == 0) continue;
    if (found) return std::nullopt;
    found = i;
  }
  return found;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] += other.exps_[i];
  return r;
}

Monomial Monomial::quotient_of(const Monomial& other) const {
  Monomial r(other);
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] -= exps_[i];
  return r;
}

Monomial Monomial::lcm(const Monomial& other) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] = std::max(exps_[i], other.exps_[i]);
  return r;
}

bool Monomial::coprime(const Monomial& other) const {
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] != 0 && other.exps_[i] != 0) return false;
  return true;
}

// ---------------------------------------------------------------- orders

const char* to_string(MonomialOrder order) noexcept {
  switch (order) {
    case MonomialOrder::Lex: return "lex";
    case MonomialOrder::GrevLex: return "grevlex";
    case MonomialOrder::Local: return "local";
  }
  return "?";
}

namespace {

int compare_lex(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
  return 0;
}

// Equal degree tie-break of grevlex: the last differing exponent, smaller wins.
int compare_revlex_tail(const Monomial& a, const Monomial& b) {
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  return 0;
}

}  // namespace

int compare(MonomialOrder order, const Monomial& a, const Monomial& b) {
  switch (order) {
    case MonomialOrder::Lex: return compare_lex(a, b);
    case MonomialOrder::GrevLex: {
      const auto da = a.degree(), db = b.degree();
      if (da != db) return da > db ? 1 : -1;
      return compare_revlex_tail(a, b);
    }
    case MonomialOrder::Local: {
      const auto da = a.degree(), db = b.degree();
      if (da != db) return da < db ? 1 : -1;
      return compare_revlex_tail(a, b);
    }
  }
  return 0;
}

// ---------------------------------------------------------------- Polynomial

Polynomial::Polynomial(VarList vars) : vars_(std::move(vars)) {}

Polynomial Polynomial::constant(VarList vars, const Rational& c) {
  Polynomial p(std::move(vars));
  p.add_term(Monomial(p.nvars()), c);
  return p;
}

Polynomial Polynomial::variable(VarList vars, std::size_t index) {
  Polynomial p(std::move(vars));
  p.add_term(Monomial::variable(p.nvars(), index), 1);
  return p;
}

Polynomial Polynomial::monomial(VarList vars, Monomial m, const Rational& c) {
  Polynomial p(std::move(vars));
  p.add_term(m, c);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Polynomial::constant_term() const {
  auto it = terms_.find(Monomial(nvars()));
  return it == terms_.end() ? Rational(0) : it->second;
}

std::uint64_t Polynomial::total_degree() const {
  std::uint64_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

std::uint64_t Polynomial::order() const {
  std::uint64_t d = UINT64_MAX;
  for (const auto& [m, c] : terms_) d = std::min(d, m.degree());
  return d;
}

std::vector<Term> Polynomial::sorted_terms(MonomialOrder order) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [m, c] : terms_) out.push_back({m, c});
  std::sort(out.begin(), out.end(),
            [order](const Term& a, const Term& b) { return compare(order, a.monomial, b.monomial) > 0; });
  return out;
}

Term Polynomial::leading_term(MonomialOrder order) const {
  if (terms_.empty()) throw AlgebraError("leading term of the zero polynomial");
  auto best = terms_.begin();
  for (auto it = std::next(best); it != terms_.end(); ++it)
    if (compare(order, it->first, best->first) > 0) best = it;
  return {best->first, best->second};
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  if (m.size() != nvars()) throw AmbientMismatch();
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

bool Polynomial::same_ambient(const Polynomial& other) const {
  if (vars_ == other.vars_) return true;
  if (!vars_ || !other.vars_) return nvars() == other.nvars();
  return *vars_ == *other.vars_;
}

void Polynomial::check_ambient(const Polynomial& other) const {
  if (!same_ambient(other)) throw AmbientMismatch();
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  check_ambient(other);
  Polynomial r(*this);
  for (const auto& [m, c] : other.terms_) r.add_term(m, c);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  check_ambient(other);
  Polynomial r(*this);
  for (const auto& [m, c] : other.terms_) r.add_term(m, -c);
  return r;
}

Polynomial Polynomial::operator-() const { return scale(-1); }

Polynomial Polynomial::operator*(const Polynomial& other) const {
  check_ambient(other);
  Polynomial r(vars_);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : other.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

Polynomial Polynomial::scale(const Rational& c) const {
  Polynomial r(vars_);
  if (c == 0) return r;
  for (const auto& [m, a] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, a * c);
  return r;
}

Polynomial Polynomial::mul_term(const Monomial& mono, const Rational& c) const {
  Polynomial r(vars_);
  if (c == 0) return r;
  for (const auto& [m, a] : terms_) r.terms_.emplace(m * mono, a * c);
  return r;
}

Polynomial Polynomial::pow(unsigned n) const {
  Polynomial result = constant(vars_, 1);
  Polynomial base = *this;
  while (n) {
    if (n & 1u) result = result * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

Polynomial Polynomial::truncate(std::uint64_t max_degree) const {
  Polynomial r(vars_);
  for (const auto& [m, c] : terms_)
    if (m.degree() <= max_degree) r.terms_.emplace_hint(r.terms_.end(), m, c);
  return r;
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  if (point.size() != nvars()) throw AmbientMismatch();
  Rational total = 0;
  for (const auto& [m, c] : terms_) {
    Rational v = c;
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i]) v *= pow_int(point[i], m[i]);
    total += v;
  }
  return total;
}

Polynomial Polynomial::translate(std::span<const Rational> shift) const {
  if (shift.size() != nvars()) throw AmbientMismatch();
  std::vector<Polynomial> shifted;
  for (std::size_t i = 0; i < nvars(); ++i)
    shifted.push_back(variable(vars_, i) + constant(vars_, shift[i]));
  Polynomial r(vars_);
  for (const auto& [m, c] : terms_) {
    Polynomial t = constant(vars_, c);
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i]) t = t * shifted[i].pow(m[i]);
    r = r + t;
  }
  return r;
}

Polynomial Polynomial::derivative(std::size_t index) const {
  Polynomial r(vars_);
  for (const auto& [m, c] : terms_) {
    if (m[index] == 0) continue;
    Monomial d(m);
    d[index] -= 1;
    r.add_term(d, c * m[index]);
  }
  return r;
}

bool Polynomial::operator==(const Polynomial& other) const {
  return same_ambient(other) && terms_ == other.terms_;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : sorted_terms(MonomialOrder::GrevLex)) {
    Rational c = t.coeff;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    c = abs(c);
    const bool one = t.monomial.is_one();
    if (one || c != 1) {
      os << flagres::to_string(c);
      if (!one) os << "*";
    }
    bool firstvar = true;
    for (std::size_t i = 0; i < t.monomial.size(); ++i) {
      if (!t.monomial[i]) continue;
      if (!firstvar) os << "*";
      firstvar = false;
      os << (vars_ ? (*vars_)[i] : "x" + std::to_string(i));
      if (t.monomial[i] > 1) os << "^" << t.monomial[i];
    }
  }
  return os.str();
}

DivisionResult reduce(const Polynomial& f, std::span<const Polynomial> divisors, MonomialOrder order) {
  if (!is_global(order)) throw AlgebraError("reduce requires a global monomial order");
  std::vector<Term> leads;
  for (const auto& d : divisors) {
    if (!d.same_ambient(f)) throw AmbientMismatch();
    leads.push_back(d.leading_term(order));
  }
  DivisionResult out{Polynomial(f.vars()), std::vector<Polynomial>(divisors.size(), Polynomial(f.vars()))};
  Polynomial p = f;
  while (!p.is_zero()) {
    const Term lt = p.leading_term(order);
    bool divided = false;
    for (std::size_t i = 0; i < divisors.size(); ++i) {
      if (!leads[i].monomial.divides(lt.monomial)) continue;
      const Monomial q = leads[i].monomial.quotient_of(lt.monomial);
      const Rational c = lt.coeff / leads[i].coeff;
      out.quotients[i].add_term(q, c);
      p = p - divisors[i].mul_term(q, c);
      divided = true;
      break;
    }
    if (!divided) {
      out.remainder.add_term(lt.monomial, lt.coeff);
      p.add_term(lt.monomial, -lt.coeff);
    }
  }
  return out;
}

}  // namespace flagres

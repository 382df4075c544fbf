#include "flagres/rational.hpp"

#include "flagres/error.hpp"

#include <cctype>

namespace flagres {

namespace {

bool valid_integer_text(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_integer_text(num) || !valid_integer_text(den) || den.front() == '-' || den.front() == '+')
    throw SchemaError("malformed rational '" + std::string(text) + "'");
  std::string n(num);
  if (n.front() == '+') n.erase(0, 1);
  Integer p(n), q{std::string(den)};
  if (q == 0) throw SchemaError("zero denominator in '" + std::string(text) + "'");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double to_double(const Rational& q) { return q.get_d(); }

bool is_integer(const Rational& q) { return q.get_den() == 1; }

std::optional<Rational> exact_root(const Rational& value, unsigned long q) {
  if (value < 0) return std::nullopt;
  if (q == 1) return value;
  Integer num_root, den_root;
  if (mpz_root(num_root.get_mpz_t(), value.get_num().get_mpz_t(), q) == 0) return std::nullopt;
  if (mpz_root(den_root.get_mpz_t(), value.get_den().get_mpz_t(), q) == 0) return std::nullopt;
  Rational r(num_root, den_root);
  r.canonicalize();
  return r;
}

Rational pow_int(const Rational& value, long e) {
  if (e < 0) return Rational(1) / pow_int(value, -e);
  Integer n, d;
  mpz_pow_ui(n.get_mpz_t(), value.get_num().get_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(d.get_mpz_t(), value.get_den().get_mpz_t(), static_cast<unsigned long>(e));
  Rational r(n, d);
  r.canonicalize();
  return r;
}

Rational binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(r);
}

Rational binomial(const Rational& e, long k) {
  if (k < 0) return 0;
  Rational r = 1;
  for (long i = 0; i < k; ++i) r = r * (e - i) / (i + 1);
  return r;
}

long factorial(int n) {
  long r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace flagres

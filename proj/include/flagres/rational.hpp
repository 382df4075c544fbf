#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace flagres {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p", "-p" or "p/q" (canonicalized). Throws SchemaError on malformed text.
Rational parse_rational(std::string_view text);

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);

double to_double(const Rational& q);

bool is_integer(const Rational& q);

/// Exact q-th root of a nonnegative rational, if it is rational.
std::optional<Rational> exact_root(const Rational& value, unsigned long q);

/// value^e for integer e; value must be nonzero when e < 0.
Rational pow_int(const Rational& value, long e);

Rational binomial(long n, long k);

/// Generalized binomial coefficient e choose k for rational e.
Rational binomial(const Rational& e, long k);

long factorial(int n);

}  // namespace flagres

#pragma once
// Independent reference computations for the test suites. Nothing here calls the
// library's ideal or quadrature code.

#include "flagres/expr.hpp"
#include "flagres/poly.hpp"

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

namespace oracle {

using flagres::Complex;
using flagres::Monomial;
using flagres::Polynomial;
using flagres::Rational;

inline std::vector<Monomial> monomials_below(std::size_t n, std::uint32_t k) {
  std::vector<Monomial> out;
  Monomial m(n);
  // Odometer over exponent vectors with total degree < k.
  while (true) {
    out.push_back(m);
    std::size_t i = 0;
    for (; i < n; ++i) {
      m[i] += 1;
      if (m.degree() < k) break;
      m[i] = 0;
    }
    if (i == n) break;
  }
  return out;
}

/// dim_Q Q[x]/(I + m^k) by row reduction of the truncated products mono * g.
inline std::uint64_t truncated_quotient_dimension(const std::vector<Polynomial>& gens, std::uint32_t k) {
  const std::size_t n = gens.front().nvars();
  const auto monos = monomials_below(n, k);
  // Echelon rows keyed by their pivot (largest monomial in std::map order).
  std::map<Monomial, std::map<Monomial, Rational>> echelon;
  for (const auto& g : gens)
    for (const auto& m : monos) {
      std::map<Monomial, Rational> row;
      for (const auto& [gm, c] : g.terms()) {
        Monomial prod = gm * m;
        if (prod.degree() < k) row[prod] += c;
      }
      for (auto it = row.begin(); it != row.end();) it = it->second == 0 ? row.erase(it) : std::next(it);
      while (!row.empty()) {
        const auto pivot = std::prev(row.end());
        auto e = echelon.find(pivot->first);
        if (e == echelon.end()) {
          const Monomial key = pivot->first;
          echelon.emplace(key, std::move(row));
          break;
        }
        const Rational f = pivot->second / e->second.rbegin()->second;
        for (const auto& [em, ec] : e->second) {
          Rational& slot = row[em];
          slot -= f * ec;
          if (slot == 0) row.erase(em);
        }
      }
    }
  return monos.size() - echelon.size();
}

/// Local multiplicity at the origin: the truncated dimensions increase until two
/// consecutive values agree, at which point m^k lies in the local ideal.
inline std::optional<std::uint64_t> brute_force_multiplicity(const std::vector<Polynomial>& gens,
                                                             std::uint32_t max_k = 400) {
  std::uint64_t prev = truncated_quotient_dimension(gens, 1);
  for (std::uint32_t k = 2; k <= max_k; ++k) {
    const std::uint64_t cur = truncated_quotient_dimension(gens, k);
    if (cur == prev) return cur;
    prev = cur;
  }
  return std::nullopt;
}

inline Complex central_difference(const flagres::Expr& e, std::vector<Complex> point, std::size_t var,
                                  double h = 1e-5) {
  auto at = [&](double s) {
    std::vector<Complex> p = point;
    p[var] += s;
    return flagres::eval(e, p);
  };
  return (at(h) - at(-h)) / (2.0 * h);
}

inline std::vector<Complex> random_point(std::mt19937_64& rng, std::size_t n, double radius) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Complex> p;
  while (p.size() < n) {
    const Complex z(u(rng), u(rng));
    if (std::abs(z) <= 1.0) p.push_back(radius * z);
  }
  return p;
}

/// Random polynomial with small integer coefficients and bounded total degree.
inline Polynomial random_polynomial(std::mt19937_64& rng, const flagres::VarList& vars, unsigned max_degree,
                                    unsigned terms) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<unsigned> deg(0, max_degree);
  Polynomial p(vars);
  for (unsigned t = 0; t < terms; ++t) {
    Monomial m(vars->size());
    unsigned d = deg(rng);
    std::uniform_int_distribution<std::size_t> pick(0, vars->size() - 1);
    while (d-- > 0) m[pick(rng)] += 1;
    p.add_term(m, Rational(coeff(rng)));
  }
  return p;
}

}  // namespace oracle

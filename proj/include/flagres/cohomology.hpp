#pragma once

#include "flagres/rational.hpp"

#include <string>
#include <vector>

namespace flagres {

/// sum c_i h^i in H^*(P^n) = Q[h]/(h^(n+1)).
class CohomologyClass {
public:
  explicit CohomologyClass(int n);
  CohomologyClass(int n, std::vector<Rational> coeffs);

  static CohomologyClass hyperplane_power(int n, int k);

  int dimension() const noexcept { return n_; }
  const std::vector<Rational>& coeffs() const noexcept { return c_; }
  const Rational& operator[](int i) const { return c_.at(static_cast<std::size_t>(i)); }

  CohomologyClass operator+(const CohomologyClass& o) const;
  CohomologyClass operator-(const CohomologyClass& o) const;
  CohomologyClass operator*(const CohomologyClass& o) const;
  CohomologyClass scale(const Rational& s) const;
  CohomologyClass pow(unsigned k) const;
  bool operator==(const CohomologyClass& o) const = default;

  std::string to_string() const;

private:
  int n_;
  std::vector<Rational> c_;
};

/// O(a_1) + ... + O(a_r).
struct SplitSheaf {
  std::vector<long> twists;

  std::size_t rank() const { return twists.size(); }
  long degree() const;
};

/// prod (1 + a_i h), truncated.
CohomologyClass total_chern(const SplitSheaf& s, int n);
CohomologyClass first_chern(const SplitSheaf& s, int n);

/// Coefficient of h^n.
Rational integrate(const CohomologyClass& c);

/// Integral of (c1(F2) - c1(F1))^(n-1-j) * ((n+1)h - c1(F2))^(1+j) over P^n.
Rational flag_residue_total(int n, const SplitSheaf& F1, const SplitSheaf& F2, int j);

Rational slope(const SplitSheaf& s);

struct PositivityReport {
  long a = 0;
  long b = 0;
  Rational value;            // (a - b)^n
  bool nonneg = false;
  bool precondition_ok = false;  // slope(F) >= slope(F1)
  std::string note;
};

PositivityReport residue_positivity_check(int n, const SplitSheaf& F, const SplitSheaf& F1);

}  // namespace flagres

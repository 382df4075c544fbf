#include "flagres/cohomology.hpp"

#include "flagres/error.hpp"

#include <numeric>

namespace flagres {

CohomologyClass::CohomologyClass(int n) : n_(n), c_(static_cast<std::size_t>(n) + 1) {
  if (n < 0) throw Error("negative projective dimension");
}

CohomologyClass::CohomologyClass(int n, std::vector<Rational> coeffs) : CohomologyClass(n) {
  if (coeffs.size() > c_.size()) throw Error("too many coefficients for the truncated ring");
  std::copy(coeffs.begin(), coeffs.end(), c_.begin());
}

CohomologyClass CohomologyClass::hyperplane_power(int n, int k) {
  CohomologyClass r(n);
  if (k >= 0 && k <= n) r.c_[static_cast<std::size_t>(k)] = 1;
  return r;
}

CohomologyClass CohomologyClass::operator+(const CohomologyClass& o) const {
  if (n_ != o.n_) throw AmbientMismatch();
  CohomologyClass r = *this;
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
  return r;
}

CohomologyClass CohomologyClass::operator-(const CohomologyClass& o) const { return *this + o.scale(-1); }

CohomologyClass CohomologyClass::operator*(const CohomologyClass& o) const {
  if (n_ != o.n_) throw AmbientMismatch();
  CohomologyClass r(n_);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; i + j < c_.size(); ++j) r.c_[i + j] += c_[i] * o.c_[j];
  return r;
}

CohomologyClass CohomologyClass::scale(const Rational& s) const {
  CohomologyClass r = *this;
  for (auto& v : r.c_) v *= s;
  return r;
}

CohomologyClass CohomologyClass::pow(unsigned k) const {
  CohomologyClass r = hyperplane_power(n_, 0);
  for (unsigned i = 0; i < k; ++i) r = r * *this;
  return r;
}

std::string CohomologyClass::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    const bool neg = c_[i] < 0;
    const Rational mag = neg ? Rational(-c_[i]) : c_[i];
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    const bool show = i == 0 || mag != 1;
    if (show) out += flagres::to_string(mag);
    if (i > 0) {
      if (show) out += "*";
      out += "h";
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out.empty() ? "0" : out;
}

long SplitSheaf::degree() const { return std::accumulate(twists.begin(), twists.end(), 0L); }

CohomologyClass total_chern(const SplitSheaf& s, int n) {
  CohomologyClass r = CohomologyClass::hyperplane_power(n, 0);
  for (long a : s.twists) r = r * (CohomologyClass::hyperplane_power(n, 0) + CohomologyClass::hyperplane_power(n, 1).scale(a));
  return r;
}

CohomologyClass first_chern(const SplitSheaf& s, int n) {
  return CohomologyClass::hyperplane_power(n, 1).scale(s.degree());
}

Rational integrate(const CohomologyClass& c) { return c[c.dimension()]; }

Rational flag_residue_total(int n, const SplitSheaf& F1, const SplitSheaf& F2, int j) {
  if (n < 1) throw Error("projective dimension must be positive");
  if (j < 0 || j > n - 1) throw Error("j must lie in [0, n-1]");
  const CohomologyClass h = CohomologyClass::hyperplane_power(n, 1);
  const CohomologyClass n12 = first_chern(F2, n) - first_chern(F1, n);
  const CohomologyClass n2 = h.scale(n + 1) - first_chern(F2, n);
  return integrate(n12.pow(static_cast<unsigned>(n - 1 - j)) * n2.pow(static_cast<unsigned>(1 + j)));
}

Rational slope(const SplitSheaf& s) {
  if (s.rank() == 0) throw Error("slope of a rank-zero sheaf");
  return Rational(s.degree()) / Rational(static_cast<long>(s.rank()));
}

PositivityReport residue_positivity_check(int n, const SplitSheaf& F, const SplitSheaf& F1) {
  PositivityReport r;
  r.a = F.degree();
  r.b = F1.degree();
  r.value = pow_int(Rational(r.a - r.b), n);
  r.nonneg = r.value >= 0;
  r.precondition_ok = slope(F) >= slope(F1);
  if (!r.precondition_ok) r.note = "slope(F) < slope(F1): semi-stability proxy violated";
  return r;
}

}  // namespace flagres

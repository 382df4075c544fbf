#include "flagres/forms.hpp"

#include "flagres/error.hpp"

#include <algorithm>
#include <cmath>

namespace flagres {

DifferentialForm DifferentialForm::function(std::size_t nvars, const Expr& f) {
  DifferentialForm r(nvars, 0);
  r.add_term({}, f);
  return r;
}

DifferentialForm DifferentialForm::one_form(std::size_t nvars, std::span<const Expr> coeffs) {
  if (coeffs.size() != nvars) throw AmbientMismatch();
  DifferentialForm r(nvars, 1);
  for (std::size_t i = 0; i < nvars; ++i) r.add_term({i}, coeffs[i]);
  return r;
}

DifferentialForm DifferentialForm::basis(std::size_t nvars, const Index& indices) {
  DifferentialForm r(nvars, indices.size());
  r.add_term(indices, Expr::constant(1));
  return r;
}

Expr DifferentialForm::coefficient(const Index& sorted_indices) const {
  auto it = terms_.find(sorted_indices);
  return it == terms_.end() ? Expr::constant(0) : it->second;
}

void DifferentialForm::add_term(Index indices, const Expr& c) {
  if (indices.size() != degree_) throw Error("form index length does not match the degree");
  for (auto i : indices)
    if (i >= nvars_) throw AmbientMismatch();
  if (c.is_zero()) return;
  // Insertion sort, counting transpositions.
  bool negate = false;
  for (std::size_t i = 1; i < indices.size(); ++i)
    for (std::size_t j = i; j > 0 && indices[j - 1] > indices[j]; --j) {
      std::swap(indices[j - 1], indices[j]);
      negate = !negate;
    }
  if (std::adjacent_find(indices.begin(), indices.end()) != indices.end()) return;
  const Expr term = negate ? -c : c;
  auto it = terms_.find(indices);
  if (it == terms_.end()) {
    terms_.emplace(std::move(indices), term);
    return;
  }
  it->second = it->second + term;
  if (it->second.is_zero()) terms_.erase(it);
}

void DifferentialForm::check_compatible(const DifferentialForm& o) const {
  if (nvars_ != o.nvars_) throw AmbientMismatch();
  if (degree_ != o.degree_) throw Error("adding forms of different degrees");
}

DifferentialForm DifferentialForm::operator+(const DifferentialForm& o) const {
  check_compatible(o);
  DifferentialForm r = *this;
  for (const auto& [idx, c] : o.terms_) r.add_term(idx, c);
  return r;
}

DifferentialForm DifferentialForm::operator-(const DifferentialForm& o) const { return *this + (-o); }

DifferentialForm DifferentialForm::operator-() const { return scale(Expr::constant(-1)); }

DifferentialForm DifferentialForm::scale(const Expr& c) const {
  DifferentialForm r(nvars_, degree_);
  for (const auto& [idx, v] : terms_) r.add_term(idx, c * v);
  return r;
}

bool DifferentialForm::operator==(const DifferentialForm& o) const {
  if (nvars_ != o.nvars_ || degree_ != o.degree_ || terms_.size() != o.terms_.size()) return false;
  for (const auto& [idx, c] : terms_) {
    auto it = o.terms_.find(idx);
    if (it == o.terms_.end() || !(it->second == c)) return false;
  }
  return true;
}

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b) {
  if (a.nvars() != b.nvars()) throw AmbientMismatch();
  DifferentialForm r(a.nvars(), a.degree() + b.degree());
  if (r.degree() > r.nvars()) return r;
  for (const auto& [ia, ca] : a.terms())
    for (const auto& [ib, cb] : b.terms()) {
      DifferentialForm::Index idx = ia;
      idx.insert(idx.end(), ib.begin(), ib.end());
      r.add_term(std::move(idx), ca * cb);
    }
  return r;
}

DifferentialForm wedge_power(const DifferentialForm& a, unsigned k) {
  DifferentialForm r = DifferentialForm::function(a.nvars(), Expr::constant(1));
  for (unsigned i = 0; i < k; ++i) r = wedge(r, a);
  return r;
}

DifferentialForm d(const DifferentialForm& a) {
  DifferentialForm r(a.nvars(), a.degree() + 1);
  if (r.degree() > r.nvars()) return r;
  for (const auto& [idx, c] : a.terms())
    for (std::size_t i = 0; i < a.nvars(); ++i) {
      if (std::find(idx.begin(), idx.end(), i) != idx.end()) continue;
      const Expr dc = diff(c, i);
      if (dc.is_zero()) continue;
      DifferentialForm::Index j{i};
      j.insert(j.end(), idx.begin(), idx.end());
      r.add_term(std::move(j), dc);
    }
  return r;
}

DifferentialForm log_derivative(std::size_t nvars, const Expr& f) {
  if (f.is_zero()) throw Error("logarithmic derivative of zero");
  DifferentialForm r(nvars, 1);
  const Expr inv = Expr::power(f, Rational(-1));
  for (std::size_t i = 0; i < nvars; ++i) r.add_term({i}, diff(f, i) * inv);
  return r;
}

bool is_zero_polynomial_form(const DifferentialForm& a, const VarList& vars) {
  for (const auto& [idx, c] : a.terms())
    if (!to_polynomial(c, vars).is_zero()) return false;
  return true;
}

PsiForm psi_form(const DifferentialForm& theta12, const DifferentialForm& theta2, unsigned j, unsigned k1) {
  if (theta12.degree() != 1 || theta2.degree() != 1) throw Error("theta forms must be 1-forms");
  if (theta12.nvars() != theta2.nvars()) throw AmbientMismatch();
  if (j > k1) throw Error("psi index j must satisfy 0 <= j <= k1");
  DifferentialForm f = wedge(theta12, wedge_power(d(theta2), j));
  f = wedge(f, wedge_power(d(theta12), k1 - j));
  return {std::move(f), -static_cast<int>(k1) - 1};
}

double closedness_defect(const DifferentialForm& a, std::span<const std::vector<Complex>> points) {
  const DifferentialForm da = d(a);
  double worst = 0.0;
  for (const auto& p : points)
    for (const auto& [idx, c] : da.terms()) worst = std::max(worst, std::abs(eval(c, p)));
  return worst;
}

bool check_closed(const DifferentialForm& a, std::span<const std::vector<Complex>> points, double tol) {
  return closedness_defect(a, points) < tol;
}

std::pair<DifferentialForm, DifferentialForm> gv_combination(const DifferentialForm& theta2,
                                                             const DifferentialForm& theta12, unsigned k1,
                                                             unsigned k2) {
  DifferentialForm lhs(theta12.nvars(), 2 * k1 + 1);
  for (unsigned j = 0; j <= k2 && j <= k1; ++j) {
    const Rational c = binomial(static_cast<long>(k1) + 1, static_cast<long>(j));
    lhs = lhs + psi_form(theta12, theta2, j, k1).form.scale(Expr::constant(c));
  }
  const DifferentialForm theta1 = theta2 + theta12;
  DifferentialForm rhs = wedge(theta1, wedge_power(d(theta1), k1));
  return {std::move(lhs), std::move(rhs)};
}

}  // namespace flagres

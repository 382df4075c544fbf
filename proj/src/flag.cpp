#include "flagres/flag.hpp"

#include "flagres/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace flagres {

namespace {

constexpr double kAgreementTolerance = 1e-6;
constexpr double kLocalSampleRadius = 0.25;
constexpr unsigned kMaxTaylorDegree = 16;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(15);
  os << v;
  return os.str();
}

std::string fmt(Complex v) {
  if (v.imag() == 0.0) return fmt(v.real());
  return fmt(v.real()) + (v.imag() < 0 ? " - " : " + ") + fmt(std::fabs(v.imag())) + "i";
}

bool is_polynomial(std::span<const Expr> es, const VarList& vars) {
  try {
    for (const auto& e : es) (void)to_polynomial(e, vars);
    return true;
  } catch (const NonPolynomialError&) {
    return false;
  }
}

std::vector<Polynomial> polynomials(std::span<const Expr> es, const VarList& vars) {
  std::vector<Polynomial> out;
  for (const auto& e : es) out.push_back(to_polynomial(e, vars));
  return out;
}

// Evaluates `fn` at `count` admissible sample points, skipping points where evaluation fails.
template <typename Fn>
void for_samples(std::size_t n, std::size_t count, std::uint64_t seed, double radius, std::span<const Complex> center,
                 Fn&& fn) {
  std::size_t done = 0, tried = 0;
  auto pts = sample_points(n, 5 * count, seed, radius, center);
  for (const auto& p : pts) {
    ++tried;
    try {
      fn(p);
      if (++done == count) return;
    } catch (const EvalError&) {
    }
  }
  throw EvalError(EvalErrorKind::DivisionByZero,
                  "only " + std::to_string(done) + " of " + std::to_string(tried) + " sample points were evaluable");
}

ResidueEstimate scaled(ResidueEstimate e, const Rational& factor) {
  const double f = to_double(factor);
  e.value *= f;
  for (auto& [nodes, v] : e.node_history) v *= f;
  if (e.snapped_integer && is_integer(factor)) e.snapped_integer = *e.snapped_integer * factor.get_num().get_si();
  else e.snapped_integer.reset();
  return e;
}

TheoremCheck agreement(const Rational& exact, const ResidueEstimate& est) {
  const double residual = std::abs(est.value - Complex(to_double(exact), 0.0));
  TheoremCheck c{"algebraic and numeric oracles agree", false, ""};
  c.passed = est.converged && residual < kAgreementTolerance &&
             (!is_integer(exact) || (est.snapped_integer && Rational(static_cast<long>(*est.snapped_integer)) == exact));
  c.detail = "algebraic " + to_string(exact) + ", numeric " + fmt(est.value) + ", residual " + fmt(residual) +
             (est.converged ? "" : ", not converged");
  return c;
}

void require_point(const FlagChart& c, const ChartPoint& p) {
  if (p.approx.size() != c.n()) throw Error("point dimension does not match the chart");
  if (p.exact && p.exact->size() != c.n()) throw Error("point dimension does not match the chart");
}

DifferentialForm theta2_of(const FlagChart& c) { return log_derivative(c.n(), c.integrating_factor->first); }

TheoremCheck cross_term_check(const FlagChart& c, const ChartPoint& p) {
  const DifferentialForm theta2 = theta2_of(c);
  const auto pts = sample_points(c.n(), 50, 0x7e7a2, kLocalSampleRadius, p.approx);
  const double defect = closedness_defect(theta2, pts);
  return {"cross term vanishes (d theta2 = 0 for theta2 = df/f)", defect < 1e-9,
          "max |d theta2| over 50 samples: " + fmt(defect)};
}

}  // namespace

// ---------------------------------------------------------------- chart data

ChartPoint ChartPoint::from_exact(std::vector<Rational> coords) {
  ChartPoint p;
  for (const auto& q : coords) p.approx.emplace_back(to_double(q), 0.0);
  p.exact = std::move(coords);
  return p;
}

bool ResidueReport::passed() const {
  if (numeric && !numeric->converged) return false;
  return std::all_of(checks.begin(), checks.end(), [](const TheoremCheck& c) { return c.passed; });
}

std::vector<std::vector<Complex>> sample_points(std::size_t n, std::size_t count, std::uint64_t seed, double radius,
                                                std::span<const Complex> center) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::vector<Complex>> pts(count, std::vector<Complex>(n));
  for (auto& p : pts)
    for (std::size_t k = 0; k < n; ++k) {
      const double r = radius * std::sqrt(unit(rng));
      const double t = 2.0 * std::numbers::pi * unit(rng);
      p[k] = std::polar(r, t) + (center.empty() ? Complex{} : center[k]);
    }
  return pts;
}

void FlagChart::validate() const {
  const std::size_t n = vars.size();
  if (n == 0) throw Error("chart has no variables");
  if (X.size() != n) throw Error("vector field has " + std::to_string(X.size()) + " components, expected " + std::to_string(n));
  if (omega.size() != n) throw Error("1-form has " + std::to_string(omega.size()) + " coefficients, expected " + std::to_string(n));
  for (const auto& e : X) if (e.variable_bound() > n) throw AmbientMismatch();
  for (const auto& e : omega) if (e.variable_bound() > n) throw AmbientMismatch();
  if (k1 + k2 > n) throw Error("codimensions exceed the dimension");
  if (theta12 && (theta12->degree() != 1 || theta12->nvars() != n)) throw Error("theta12 must be a 1-form on the chart");
  if (integrating_factor) {
    const auto& [f, g] = *integrating_factor;
    std::vector<Expr> dg;
    for (std::size_t i = 0; i < n; ++i) dg.push_back(diff(g, i));
    double worst = 0.0;
    for_samples(n, 50, 0x1f3c5, 0.4, {}, [&](const std::vector<Complex>& p) {
      const Complex fv = eval(f, p);
      for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(eval(omega[i], p) - fv * eval(dg[i], p)));
    });
    if (!(worst < 1e-9)) throw Error("integrating factor does not satisfy omega = f dg (max residual " + fmt(worst) + ")");
  }
}

FlagCheck check_flag_detailed(const FlagChart& c) {
  const std::size_t n = c.n();
  if (c.X.size() != n || c.omega.size() != n) throw Error("component counts do not match the chart");
  std::vector<Expr> terms;
  for (std::size_t i = 0; i < n; ++i) terms.push_back(c.X[i] * c.omega[i]);
  const Expr contraction = Expr::sum(std::move(terms));
  FlagCheck r;
  if (contraction.is_zero()) {
    r.holds = r.symbolic = true;
    return r;
  }
  try {
    r.holds = to_polynomial(contraction, c.var_list()).is_zero();
    r.symbolic = true;
    if (!r.holds) {
      for (const auto& p : sample_points(n, 100, 0x5eed, 0.4))
        r.max_residual = std::max(r.max_residual, std::abs(eval(contraction, p)));
    }
    return r;
  } catch (const NonPolynomialError&) {
  }
  for_samples(n, 100, 0x5eed, 0.4, {}, [&](const std::vector<Complex>& p) {
    r.max_residual = std::max(r.max_residual, std::abs(eval(contraction, p)));
  });
  r.holds = r.max_residual < 1e-9;
  return r;
}

bool check_flag(const FlagChart& c) { return check_flag_detailed(c).holds; }

IdealPresentation singular_locus_vf(const FlagChart& c) {
  const VarList vars = c.var_list();
  return present_ideal(polynomials(c.X, vars), vars);
}

IdealPresentation singular_locus_form(const FlagChart& c) {
  const VarList vars = c.var_list();
  return present_ideal(polynomials(c.omega, vars), vars);
}

// ---------------------------------------------------------------- multiplicities

std::vector<Polynomial> local_generators(std::span<const Expr> components, const VarList& vars,
                                         std::span<const Rational> point, unsigned degree) {
  std::vector<Polynomial> out;
  for (const auto& e : components) {
    try {
      out.push_back(to_polynomial(e, vars).translate(point));
    } catch (const NonPolynomialError&) {
      out.push_back(taylor(e, vars, point, degree));
    }
  }
  return out;
}

GermMultiplicity germ_multiplicity(std::span<const Expr> components, const VarList& vars,
                                   std::span<const Rational> point, const MoraOptions& opts) {
  GermMultiplicity g;
  if (is_polynomial(components, vars)) {
    const auto polys = polynomials(components, vars);
    std::vector<Polynomial> shifted;
    for (const auto& p : polys) shifted.push_back(p.translate(point));
    g.mu = local_multiplicity(polys, point, opts);
    g.polynomial = true;
    if (g.mu > 0) g.max_standard_degree = local_algebra(shifted, opts).max_standard_degree;
    return g;
  }
  g.polynomial = false;
  unsigned degree = 2;
  while (degree <= kMaxTaylorDegree) {
    const auto gens = local_generators(components, vars, point, degree);
    std::optional<LocalAlgebra> la;
    try {
      la = local_algebra(gens, opts);
    } catch (const AlgebraError&) {
      // The truncation may have lost the isolation; retry at a higher degree.
      degree += 2;
      continue;
    }
    if (la->max_standard_degree + 1 <= degree) {
      g.mu = la->multiplicity;
      g.truncation_degree = degree;
      g.max_standard_degree = la->max_standard_degree;
      return g;
    }
    degree = static_cast<unsigned>(la->max_standard_degree + 1);
  }
  throw AlgebraError("germ is not finite at the point (no certified Taylor truncation up to degree " +
                     std::to_string(kMaxTaylorDegree) + ")");
}

Rational form_residue_factor(std::size_t n) {
  Rational f = factorial(static_cast<int>(n) - 1);
  if (n % 2) f = -f;
  return f;
}

// ---------------------------------------------------------------- residues

ResidueReport res_cn_vf(const FlagChart& c, const ChartPoint& p, const QuadSettings& s) {
  require_point(c, p);
  ResidueReport r{"c_n(F1)", p, {}, {}, {}, {}};
  if (p.exact) {
    const GermMultiplicity g = germ_multiplicity(c.X, c.var_list(), *p.exact);
    r.algebraic = Rational(static_cast<long>(g.mu));
    r.notes.push_back(g.polynomial ? "mu(f; p) from a local standard basis"
                                   : "mu(f; p) from a certified Taylor truncation of degree " +
                                         std::to_string(g.truncation_degree));
  }
  r.numeric = jacobian_residue(c.X, p.approx, s);
  if (r.algebraic) {
    r.checks.push_back(agreement(*r.algebraic, *r.numeric));
  } else {
    r.checks.push_back({"numeric multiplicity is an integer", r.numeric->snapped_integer.has_value(),
                        "numeric " + fmt(r.numeric->value)});
  }
  return r;
}

ResidueReport res_cn_form(const FlagChart& c, const ChartPoint& p, const QuadSettings& s) {
  require_point(c, p);
  const Rational factor = form_residue_factor(c.n());
  ResidueReport r{"c_n(F2)", p, {}, {}, {}, {}};
  if (p.exact) {
    const GermMultiplicity g = germ_multiplicity(c.omega, c.var_list(), *p.exact);
    r.algebraic = factor * Rational(static_cast<long>(g.mu));
    r.notes.push_back("mu(g; p) = " + std::to_string(g.mu) + "; residue = " + to_string(factor) + " * mu(g; p)");
  }
  r.numeric = scaled(jacobian_residue(c.omega, p.approx, s), factor);
  if (r.algebraic) {
    r.checks.push_back(agreement(*r.algebraic, *r.numeric));
  } else {
    r.checks.push_back({"numeric residue is an integer", r.numeric->snapped_integer.has_value(),
                        "numeric " + fmt(r.numeric->value)});
  }
  return r;
}

ResidueReport verify_comparison(const FlagChart& c, const ChartPoint& p, const QuadSettings& s) {
  require_point(c, p);
  const std::size_t n = c.n();
  const VarList vars = c.var_list();
  const Rational factor = form_residue_factor(n);
  ResidueReport r{"comparison", p, {}, {}, {}, {}};

  const FlagCheck fc = check_flag_detailed(c);
  r.checks.push_back({"flag condition", fc.holds,
                      fc.symbolic ? "contraction cancels exactly" : "max |X . omega| = " + fmt(fc.max_residual)});

  if (p.exact) {
    std::optional<GermMultiplicity> mf, mg;
    std::string ef, eg;
    try {
      mf = germ_multiplicity(c.X, vars, *p.exact);
    } catch (const AlgebraError& e) {
      ef = e.what();
    }
    try {
      mg = germ_multiplicity(c.omega, vars, *p.exact);
    } catch (const AlgebraError& e) {
      eg = e.what();
    }

    // (i) equality of the two ideals in the local ring at p.
    TheoremCheck ideal{"ideal equality (f) = (g) at p", false, ""};
    try {
      if (is_polynomial(c.X, vars) && is_polynomial(c.omega, vars)) {
        const auto lf = local_generators(c.X, vars, *p.exact, 0);
        const auto lg = local_generators(c.omega, vars, *p.exact, 0);
        ideal.passed = local_ideals_equal(lf, lg);
        const bool global = ideals_equal(polynomials(c.X, vars), polynomials(c.omega, vars));
        ideal.detail = std::string("local: ") + (ideal.passed ? "equal" : "different") +
                       "; global: " + (global ? "equal" : "different");
      } else if (mf && mg) {
        const auto degree = static_cast<unsigned>(std::max(mf->max_standard_degree, mg->max_standard_degree) + 1);
        const auto lf = local_generators(c.X, vars, *p.exact, degree);
        const auto lg = local_generators(c.omega, vars, *p.exact, degree);
        ideal.passed = local_ideals_equal(lf, lg);
        ideal.detail = std::string("local (Taylor degree ") + std::to_string(degree) + "): " +
                       (ideal.passed ? "equal" : "different");
      } else {
        ideal.detail = "not isolated: " + (ef.empty() ? eg : ef);
      }
    } catch (const AlgebraError& e) {
      ideal.detail = e.what();
    }
    r.checks.push_back(ideal);

    // (ii) equal multiplicities.
    TheoremCheck mu{"mu(f; p) = mu(g; p)", false, ""};
    if (mf && mg) {
      mu.passed = mf->mu == mg->mu;
      mu.detail = "mu(f) = " + std::to_string(mf->mu) + ", mu(g) = " + std::to_string(mg->mu);
      r.algebraic = factor * Rational(static_cast<long>(mg->mu));
    } else {
      mu.detail = ef.empty() ? "mu(g): " + eg : "mu(f): " + ef;
    }
    r.checks.push_back(mu);
  }

  // (iii) the residue ratio, from the numeric oracles.
  const ResidueEstimate e1 = jacobian_residue(c.X, p.approx, s);
  const ResidueEstimate e2 = scaled(jacobian_residue(c.omega, p.approx, s), factor);
  TheoremCheck ratio{"Res_cn(F2) = " + to_string(factor) + " * Res_cn(F1)", false, ""};
  ratio.detail = "Res_cn(F1) = " + fmt(e1.value) + ", Res_cn(F2) = " + fmt(e2.value);
  if (e1.converged && e2.converged && e1.snapped_integer && e2.snapped_integer) {
    if (*e1.snapped_integer == 0) {
      ratio.detail += "; Res_cn(F1) = 0, p is not a singular point";
    } else {
      const Rational q = Rational(static_cast<long>(*e2.snapped_integer)) / Rational(static_cast<long>(*e1.snapped_integer));
      ratio.passed = q == factor;
      ratio.detail += "; ratio " + to_string(q);
    }
  } else {
    ratio.detail += "; estimates did not converge to integers";
  }
  r.checks.push_back(ratio);
  r.numeric = e2;
  return r;
}

ResidueReport res_c1n_flag(const FlagChart& c, const ChartPoint& p, const QuadSettings& s) {
  require_point(c, p);
  if (!c.integrating_factor)
    throw Unsupported("Res_{c_1^n} of the flag requires an integrating factor omega = f dg");
  ResidueReport r{"c_1^n", p, {}, {}, {}, {}};
  const Expr tr = jacobian_trace(c.X);
  bool trace_zero = tr.is_zero();
  if (!trace_zero) {
    try {
      trace_zero = to_polynomial(tr, c.var_list()).is_zero();
    } catch (const NonPolynomialError&) {
    }
  }
  if (trace_zero) {
    r.algebraic = Rational(0);
    r.notes.push_back("tr(JX) vanishes identically, so the residue is 0");
  } else {
    r.notes.push_back("tr(JX) = " + print(tr, c.vars));
  }
  r.checks.push_back(cross_term_check(c, p));
  r.notes.push_back("Res_{c_1^n}(F, N12; p) = Res_{c_1^n}(F1, N1; p) since the mixed term vanishes");
  r.numeric = baumbott_c1n_residue(c.X, p.approx, s);
  if (r.algebraic) {
    const double residual = std::abs(r.numeric->value);
    r.checks.push_back({"numeric residue vanishes", residual < 1e-8, "|estimate| = " + fmt(residual)});
  }
  return r;
}

ResidueReport verify_binomial_identity(const FlagChart& c, const ChartPoint& p, const QuadSettings& s) {
  require_point(c, p);
  const std::size_t n = c.n();
  const unsigned k1 = c.k1 == 0 ? static_cast<unsigned>(n - 1) : c.k1;
  if (k1 != n - 1 || c.k2 != 1) throw Unsupported("binomial identity check needs k1 = n - 1 and k2 = 1");
  if (!c.integrating_factor)
    throw Unsupported("the BB^1 term is only computable here through an integrating factor (d theta2 = 0)");
  ResidueReport r{"binomial identity", p, {}, {}, {}, {}};
  r.checks.push_back(cross_term_check(c, p));

  const ResidueEstimate bb_f1 = baumbott_c1n_residue(c.X, p.approx, s);
  QuadSettings half = s;
  half.radii = s.radii.empty() ? std::vector<double>(n, 0.5) : s.radii;
  if (half.radii.size() == 1) half.radii.assign(n, half.radii.front());
  for (double& v : half.radii) v /= 2.0;
  const ResidueEstimate bb0 = baumbott_c1n_residue(c.X, p.approx, half);
  const Complex bb1{0.0, 0.0};
  const Complex lhs = bb0.value + static_cast<double>(n) * bb1;
  const double residual = std::abs(lhs - bb_f1.value);
  const double tol = 1e-8 * std::max(1.0, std::abs(bb_f1.value));
  r.checks.push_back({"BB0 + n BB1 = BB(F1)", residual < tol && bb0.converged && bb_f1.converged,
                      "BB0 = " + fmt(bb0.value) + " (torus radii halved), BB1 = 0, BB(F1) = " + fmt(bb_f1.value) +
                          ", residual " + fmt(residual)});
  if (c.theta12)
    r.notes.push_back("psi_j has degree " + std::to_string(2 * k1 + 1) + " > n, so it vanishes on this chart");
  r.notes.push_back("BB0 evaluated as the c_1^n torus integral on an independent torus");
  r.numeric = bb_f1;
  return r;
}

Prop35Result check_prop35(const FlagChart& c) {
  const std::size_t n = c.n();
  const VarList vars = c.var_list();
  if (c.omega.size() != n || c.X.size() != n) throw Error("component counts do not match the chart");
  if (!c.omega[0].is_constant(1))
    throw Error("chart is not in the normal form omega = dz_1");
  for (std::size_t i = 1; i < n; ++i)
    if (!c.omega[i].is_zero()) throw Error("chart is not in the normal form omega = dz_1");
  const auto f = polynomials(c.X, vars);
  if (!f[0].is_zero()) throw AlgebraError("flag condition fails: f_1 = " + f[0].to_string() + " is not zero");
  std::vector<Polynomial> rest(f.begin() + 1, f.end());
  Prop35Result r;
  if (rest.empty()) {
    r.holds = true;
    r.detail = "X vanishes identically";
    return r;
  }
  const GroebnerBasis gb = groebner(rest, MonomialOrder::GrevLex, vars);
  if (gb.is_unit()) {
    r.holds = true;
    r.detail = "f_2, ..., f_n have no common zero: F1 is regular here";
  } else {
    r.holds = !is_zero_dimensional(gb);
    r.detail = r.holds ? "S(F1) = {f_2 = ... = f_n = 0} is positive dimensional"
                       : "S(F1) is zero-dimensional, contradicting the proposition";
  }
  return r;
}

}  // namespace flagres

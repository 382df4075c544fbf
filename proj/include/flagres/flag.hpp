#pragma once

#include "flagres/expr.hpp"
#include "flagres/forms.hpp"
#include "flagres/ideal.hpp"
#include "flagres/quad.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace flagres {

/// Local presentation of a flag with dim F1 = 1 and codim F2 = 1: a vector field X
/// tangent to the leaves of the foliation defined by the 1-form omega.
struct FlagChart {
  std::vector<std::string> vars;
  std::vector<Expr> X;
  std::vector<Expr> omega;
  unsigned k1 = 0;  // defaults to n - 1
  unsigned k2 = 1;
  /// (f, g) with omega = f dg.
  std::optional<std::pair<Expr, Expr>> integrating_factor;
  std::optional<DifferentialForm> theta12;

  std::size_t n() const { return vars.size(); }
  VarList var_list() const { return make_vars(vars); }
  /// Component counts; when an integrating factor is present, omega - f dg must
  /// vanish numerically at random sample points.
  void validate() const;
};

/// Exact (rational) and floating coordinates of a point; exact ones enable the
/// algebraic path.
struct ChartPoint {
  std::vector<Complex> approx;
  std::optional<std::vector<Rational>> exact;

  static ChartPoint from_exact(std::vector<Rational> coords);
  static ChartPoint origin(std::size_t n) { return from_exact(std::vector<Rational>(n, Rational(0))); }
};

struct TheoremCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ResidueReport {
  std::string task;
  ChartPoint point;
  std::optional<Rational> algebraic;
  std::optional<ResidueEstimate> numeric;
  std::vector<TheoremCheck> checks;
  std::vector<std::string> notes;

  /// All checks pass and the numeric estimate (if any) converged.
  bool passed() const;
};

/// Deterministic sample points in the polydisc of the given radius around `center`.
std::vector<std::vector<Complex>> sample_points(std::size_t n, std::size_t count, std::uint64_t seed,
                                                double radius = 0.4, std::span<const Complex> center = {});

struct FlagCheck {
  bool holds = false;
  bool symbolic = false;  // decided by exact cancellation rather than sampling
  double max_residual = 0.0;
};

FlagCheck check_flag_detailed(const FlagChart& c);
bool check_flag(const FlagChart& c);

IdealPresentation singular_locus_vf(const FlagChart& c);
IdealPresentation singular_locus_form(const FlagChart& c);

/// Local multiplicity of an analytic germ at an exact point. Polynomial germs go
/// straight to the local standard basis; other germs are replaced by Taylor
/// truncations of degree D, accepted once D exceeds the highest standard
/// monomial degree (then the truncated and the analytic ideal coincide).
struct GermMultiplicity {
  std::uint64_t mu = 0;
  bool polynomial = true;
  unsigned truncation_degree = 0;
  std::uint64_t max_standard_degree = 0;
};

GermMultiplicity germ_multiplicity(std::span<const Expr> components, const VarList& vars,
                                   std::span<const Rational> point, const MoraOptions& opts = {});

/// Generators of the germ's ideal in the local ring at `point`, in shifted
/// coordinates; Taylor truncations of degree `degree` for analytic germs.
std::vector<Polynomial> local_generators(std::span<const Expr> components, const VarList& vars,
                                         std::span<const Rational> point, unsigned degree);

ResidueReport res_cn_vf(const FlagChart& c, const ChartPoint& p, const QuadSettings& s = {});
ResidueReport res_cn_form(const FlagChart& c, const ChartPoint& p, const QuadSettings& s = {});
ResidueReport verify_comparison(const FlagChart& c, const ChartPoint& p, const QuadSettings& s = {});
ResidueReport res_c1n_flag(const FlagChart& c, const ChartPoint& p, const QuadSettings& s = {});
ResidueReport verify_binomial_identity(const FlagChart& c, const ChartPoint& p, const QuadSettings& s = {});

struct Prop35Result {
  bool holds = false;
  std::string detail;
};

/// For omega = dz_1: the flag condition forces f_1 = 0 and the zeros of X are
/// then never isolated. Throws when the chart is not in that normal form or f_1 != 0.
Prop35Result check_prop35(const FlagChart& c);

/// (-1)^n (n-1)!
Rational form_residue_factor(std::size_t n);

}  // namespace flagres

#pragma once

#include "flagres/complex.hpp"
#include "flagres/expr.hpp"
#include "flagres/kernel.hpp"

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace flagres {

inline constexpr double kDenominatorGuard = 1e-8;
inline constexpr double kSnapTolerance = 1e-6;

/// Product torus { |z_k - center_k| = radius_k }.
struct TorusSpec {
  std::vector<Complex> center;
  std::vector<double> radii;
  unsigned nodes_per_circle = 8;  // power of two, >= 4

  void validate(std::size_t nvars) const;
};

struct ResidueEstimate {
  Complex value{};
  std::vector<std::pair<unsigned, Complex>> node_history;
  bool converged = false;
  std::optional<long long> snapped_integer;
  std::vector<double> radii_used;
  /// +1, or -1 when the product torus runs against the cycle { |X_i| = eps }.
  int orientation = 1;
  /// Empty unless something noteworthy happened (radius shrinking, non-integer result).
  std::string diagnostic;
};

struct QuadSettings {
  std::vector<double> radii;  // empty: 1/2 in every variable
  double rel_tol = 1e-10;
  unsigned initial_nodes = 8;
  unsigned max_nodes = 256;
  double denominator_guard = kDenominatorGuard;
  int max_radius_halvings = 6;
  double snap_tolerance = kSnapTolerance;
  /// Kernel for grid evaluation; defaults to the runtime-selected one.
  std::optional<kernel::KernelKind> kernel;
};

/// (2 pi i)^(-n) times the torus integral of numerator / prod(denominators) dz_1...dz_n.
struct ResidueProblem {
  Expr numerator;
  std::vector<Expr> denominators;
  std::vector<Complex> center;
};

/// Product trapezoid rule: the grid mean of integrand * prod(z_k - center_k),
/// summed pairwise in fixed grid order.
Complex grothendieck_residue(const Expr& numerator, std::span<const Expr> denominators, const TorusSpec& torus,
                             double denominator_guard = kDenominatorGuard,
                             std::optional<kernel::KernelKind> kernel = std::nullopt);

/// Doubles the node count from settings.initial_nodes until two successive
/// estimates agree within max(rel_tol, rel_tol * |value|) or max_nodes is reached.
/// Radii are fixed (settings.radii or the default); evaluation errors propagate.
ResidueEstimate refine_until_stable(const ResidueProblem& problem, const QuadSettings& settings = {});

/// refine_until_stable, halving the radii when a guard trips.
ResidueEstimate estimate_residue(const ResidueProblem& problem, const QuadSettings& settings = {});

/// Winding numbers W_ik of X_i around the k-th circle of the torus. The torus is
/// homologous to sign(det W) times the cycle { |X_i| = eps } when each X_i is
/// dominated by one monomial on it; det W = 0 means the torus is not adapted.
struct TorusOrientation {
  std::vector<std::vector<long long>> winding;
  long long degree = 0;  // det W
  bool integral = true;  // every W_ik within 0.05 of an integer
  int sign() const { return degree < 0 ? -1 : 1; }
  bool adapted() const { return integral && degree != 0; }
};
TorusOrientation torus_orientation(std::span<const Expr> X, std::span<const Complex> center,
                                   std::span<const double> radii, const QuadSettings& settings = {});

Expr jacobian_determinant(std::span<const Expr> X);
Expr jacobian_trace(std::span<const Expr> X);

/// Residue of det(JX) / prod(X_i) at `point`: the multiplicity of the zero. The
/// torus integral is multiplied by the orientation sign of torus_orientation.
ResidueEstimate jacobian_residue(std::span<const Expr> X, std::span<const Complex> point,
                                 const QuadSettings& settings = {});

/// Residue of tr(JX)^n / prod(X_i) at `point`.
ResidueEstimate baumbott_c1n_residue(std::span<const Expr> X, std::span<const Complex> point,
                                     const QuadSettings& settings = {});

/// Fixed-order pairwise summation: a binary counter of partial sums.
class PairwiseAccumulator {
public:
  void add(Complex v);
  Complex total() const;
  std::size_t count() const { return count_; }

private:
  std::vector<Complex> slots_;
  std::vector<bool> used_;
  std::size_t count_ = 0;
};

}  // namespace flagres
